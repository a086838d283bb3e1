use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::index::{volume, Odometer};

/// A total two-argument function over an effect state space.
///
/// `get(x, y)` is the value for new cause summary `x` combined with the
/// accumulated effect `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTable {
    states: usize,
    values: Vec<usize>,
}

impl BinaryTable {
    /// Builds a table from row-major values (`x` major, `y` minor).
    pub fn from_values(states: usize, values: Vec<usize>) -> Self {
        BinaryTable { states, values }
    }

    pub fn from_fn(states: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut values = Vec::with_capacity(states * states);
        for x in 0..states {
            for y in 0..states {
                values.push(f(x, y));
            }
        }
        BinaryTable { states, values }
    }

    pub fn or() -> Self {
        BinaryTable::from_fn(2, |x, y| x | y)
    }

    pub fn and() -> Self {
        BinaryTable::from_fn(2, |x, y| x & y)
    }

    pub fn xor() -> Self {
        BinaryTable::from_fn(2, |x, y| x ^ y)
    }

    pub fn max(states: usize) -> Self {
        BinaryTable::from_fn(states, usize::max)
    }

    /// Addition of state indices, clamped at the top state.
    pub fn saturating_sum(states: usize) -> Self {
        BinaryTable::from_fn(states, |x, y| (x + y).min(states - 1))
    }

    pub fn left_projection(states: usize) -> Self {
        BinaryTable::from_fn(states, |x, _| x)
    }

    pub fn constant(states: usize, value: usize) -> Self {
        BinaryTable::from_fn(states, |_, _| value)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.states + y]
    }

    /// True when the table has `states²` entries that all lie in the state space.
    pub fn is_well_formed(&self) -> bool {
        self.values.len() == self.states * self.states
            && self.values.iter().all(|&v| v < self.states)
    }
}

/// A total function of `arity` effect-valued arguments.
///
/// Values are row-major over the argument tuple, last argument fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    states: usize,
    arity: usize,
    values: Vec<usize>,
}

impl FunctionTable {
    pub fn from_values(states: usize, arity: usize, values: Vec<usize>) -> Self {
        FunctionTable {
            states,
            arity,
            values,
        }
    }

    pub fn from_fn(states: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let radices = vec![states; arity];
        let mut values = Vec::with_capacity(volume(&radices));
        let mut odo = Odometer::new(&radices);
        while let Some(args) = odo.current() {
            values.push(f(args));
            odo.advance();
        }
        FunctionTable {
            states,
            arity,
            values,
        }
    }

    /// Left fold of `op` over the arguments, seeded with `seed`:
    /// `acc = op(arg, acc)` for each argument in turn.
    pub fn from_fold(op: &BinaryTable, arity: usize, seed: usize) -> Self {
        FunctionTable::from_fn(op.states(), arity, |args| {
            args.iter().fold(seed, |acc, &a| op.get(a, acc))
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.states + a);
        self.values[idx]
    }

    pub fn is_well_formed(&self) -> bool {
        let expected = self
            .states
            .checked_pow(self.arity as u32)
            .unwrap_or(usize::MAX);
        self.values.len() == expected && self.values.iter().all(|&v| v < self.states)
    }
}

/// The deterministic function merging cause summaries into the effect.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Combiner {
    /// Boolean or; binary effects only.
    Or,
    /// Maximum over the ordered effect states.
    Max,
    /// Sum of state indices, saturating at the top state.
    SaturatingSum,
    /// Boolean exclusive or; binary effects only.
    Xor,
    /// A custom binary function applied at every chain stage.
    Binary(BinaryTable),
    /// An arbitrary function of all arguments at once.
    Table(FunctionTable),
}

impl Combiner {
    pub fn name(&self) -> String {
        match self {
            Combiner::Or => "or".into(),
            Combiner::Max => "max".into(),
            Combiner::SaturatingSum => "sum".into(),
            Combiner::Xor => "xor".into(),
            Combiner::Binary(_) => "binary_table".into(),
            Combiner::Table(_) => "table".into(),
        }
    }

    /// The binary function applied by folding, if this combiner has one and
    /// it is defined on a `states`-state effect.
    pub fn binary(&self, states: usize) -> Option<BinaryTable> {
        match self {
            Combiner::Or if states == 2 => Some(BinaryTable::or()),
            Combiner::Xor if states == 2 => Some(BinaryTable::xor()),
            Combiner::Max if states >= 1 => Some(BinaryTable::max(states)),
            Combiner::SaturatingSum if states >= 1 => Some(BinaryTable::saturating_sum(states)),
            Combiner::Binary(t) if t.states() == states && t.is_well_formed() => Some(t.clone()),
            _ => None,
        }
    }

    pub fn is_binary(&self) -> bool {
        !matches!(self, Combiner::Table(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_table_matches_direct_fold() {
        let sum = BinaryTable::saturating_sum(3);
        let f = FunctionTable::from_fold(&sum, 3, 0);
        assert_eq!(f.get(&[1, 1, 0]), 2);
        assert_eq!(f.get(&[0, 1, 0]), 1);
        assert_eq!(f.get(&[2, 2, 2]), 2);
        assert!(f.is_well_formed());
    }

    #[test]
    fn named_combiners_respect_domain() {
        assert!(Combiner::Or.binary(3).is_none());
        assert!(Combiner::Xor.binary(2).is_some());
        assert_eq!(Combiner::Max.binary(5).unwrap().get(3, 1), 3);
    }

    #[test]
    fn malformed_binary_table_detected() {
        assert!(!BinaryTable::from_values(2, vec![0, 1, 2, 1]).is_well_formed());
        assert!(!BinaryTable::from_values(2, vec![0, 1, 1]).is_well_formed());
    }
}
