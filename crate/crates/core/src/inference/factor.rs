use alloc::vec;
use alloc::vec::Vec;

use crate::index::{strides, volume, Odometer};
use crate::model::TabularCpd;

/// Non-negative table over an ordered scope of variable indices.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Factor {
    pub scope: Vec<usize>,
    pub cards: Vec<usize>,
    pub values: Vec<f64>,
}

impl Factor {
    pub fn scalar(value: f64) -> Self {
        Factor {
            scope: Vec::new(),
            cards: Vec::new(),
            values: vec![value],
        }
    }

    /// Scope is the parents followed by the child, matching the CPD layout.
    pub fn from_cpd(cpd: &TabularCpd, cards: &[usize]) -> Self {
        let scope: Vec<usize> = cpd
            .parents
            .iter()
            .chain(core::iter::once(&cpd.child))
            .map(|v| v.0)
            .collect();
        let fcards = scope.iter().map(|&v| cards[v]).collect();
        Factor {
            scope,
            cards: fcards,
            values: cpd.table.clone(),
        }
    }

    pub fn contains(&self, var: usize) -> bool {
        self.scope.contains(&var)
    }

    pub fn product(&self, other: &Factor) -> Factor {
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        for (&v, &c) in other.scope.iter().zip(&other.cards) {
            if !scope.contains(&v) {
                scope.push(v);
                cards.push(c);
            }
        }
        let pos_self: Vec<usize> = self
            .scope
            .iter()
            .map(|v| scope.iter().position(|s| s == v).unwrap())
            .collect();
        let pos_other: Vec<usize> = other
            .scope
            .iter()
            .map(|v| scope.iter().position(|s| s == v).unwrap())
            .collect();
        let st_self = strides(&self.cards);
        let st_other = strides(&other.cards);
        let mut values = Vec::with_capacity(volume(&cards));
        let mut odo = Odometer::new(&cards);
        while let Some(a) = odo.current() {
            let i: usize = pos_self.iter().zip(&st_self).map(|(&p, &s)| a[p] * s).sum();
            let j: usize = pos_other
                .iter()
                .zip(&st_other)
                .map(|(&p, &s)| a[p] * s)
                .sum();
            values.push(self.values[i] * other.values[j]);
            odo.advance();
        }
        Factor {
            scope,
            cards,
            values,
        }
    }

    /// Restricts `var` to `state` and drops it from the scope.
    pub fn reduce(&self, var: usize, state: usize) -> Factor {
        self.project(var, |values, base, stride, _| values[base + state * stride])
    }

    pub fn sum_out(&self, var: usize) -> Factor {
        self.project(var, |values, base, stride, card| {
            (0..card).map(|s| values[base + s * stride]).sum()
        })
    }

    fn project(&self, var: usize, pick: impl Fn(&[f64], usize, usize, usize) -> f64) -> Factor {
        let Some(pos) = self.scope.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let st = strides(&self.cards);
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        scope.remove(pos);
        cards.remove(pos);
        let rest_strides: Vec<usize> = st
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &s)| s)
            .collect();
        let mut values = Vec::with_capacity(volume(&cards));
        let mut odo = Odometer::new(&cards);
        while let Some(a) = odo.current() {
            let base: usize = a.iter().zip(&rest_strides).map(|(&d, &s)| d * s).sum();
            values.push(pick(&self.values, base, st[pos], self.cards[pos]));
            odo.advance();
        }
        Factor {
            scope,
            cards,
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_marginal() {
        let a = Factor {
            scope: vec![0],
            cards: vec![2],
            values: vec![0.3, 0.7],
        };
        let ba = Factor {
            scope: vec![0, 1],
            cards: vec![2, 2],
            values: vec![0.9, 0.1, 0.2, 0.8],
        };
        let joint = a.product(&ba);
        let b = joint.sum_out(0);
        assert_eq!(b.scope, vec![1]);
        assert!((b.values[0] - (0.27 + 0.14)).abs() < 1e-12);
        let reduced = joint.reduce(1, 1);
        assert_eq!(reduced.scope, vec![0]);
        assert!((reduced.values[1] - 0.56).abs() < 1e-12);
    }
}
