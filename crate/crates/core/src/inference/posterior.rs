use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::factor::Factor;
use super::graph::{moralize, triangulate, Heuristic};
use crate::error::{Error, Result};
use crate::model::{Family, Network, VarId};
use crate::semantics::expand_to_cpd;

/// Observed states keyed by variable.
pub type Evidence = BTreeMap<VarId, usize>;

/// Normalising constants below this are treated as zero.
pub const EVIDENCE_ZERO: f64 = 1e-300;

/// Variable elimination over a fixed network. Causal-independence families
/// are expanded once on construction.
#[derive(Debug, Clone)]
pub struct InferenceEngine {
    cards: Vec<usize>,
    names: Vec<alloc::string::String>,
    factors: Vec<Factor>,
    order: Vec<usize>,
}

impl InferenceEngine {
    pub fn new(network: &Network) -> Result<Self> {
        let cards = network.cardinalities();
        let factors = network
            .families
            .iter()
            .map(|f| match f {
                Family::Table(cpd) => Ok(Factor::from_cpd(cpd, &cards)),
                Family::Ci(ci) => {
                    expand_to_cpd(network, ci).map(|cpd| Factor::from_cpd(&cpd, &cards))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let order = triangulate(&moralize(network), Heuristic::MinFill, &cards).order;
        Ok(InferenceEngine {
            cards,
            names: network.variables.iter().map(|v| v.name.clone()).collect(),
            factors,
            order,
        })
    }

    /// Marginal of `query` given `evidence`.
    pub fn posterior(&self, evidence: &Evidence, query: VarId) -> Result<Vec<f64>> {
        let n = self.cards.len();
        if query.0 >= n {
            return Err(Error::UnknownVariable(query.0));
        }
        for (&var, &state) in evidence {
            if var.0 >= n {
                return Err(Error::UnknownVariable(var.0));
            }
            if state >= self.cards[var.0] {
                return Err(Error::InvalidState {
                    variable: self.names[var.0].clone(),
                    state,
                });
            }
        }

        let mut pool: Vec<Factor> = self
            .factors
            .iter()
            .map(|f| {
                evidence
                    .iter()
                    .filter(|(v, _)| v.0 != query.0)
                    .fold(f.clone(), |acc, (v, &s)| acc.reduce(v.0, s))
            })
            .collect();
        for &var in &self.order {
            if var == query.0 || evidence.contains_key(&VarId(var)) {
                continue;
            }
            let (touching, rest): (Vec<Factor>, Vec<Factor>) =
                pool.into_iter().partition(|f| f.contains(var));
            pool = rest;
            if touching.is_empty() {
                continue;
            }
            let product = touching
                .iter()
                .skip(1)
                .fold(touching[0].clone(), |acc, f| acc.product(f));
            pool.push(product.sum_out(var));
        }

        let joint = pool
            .iter()
            .fold(Factor::scalar(1.0), |acc, f| acc.product(f));
        let card = self.cards[query.0];
        let mut marginal = vec![0.0; card];
        if joint.scope.is_empty() {
            // Query has no factor left, which only happens when it is observed.
            marginal.fill(joint.values[0] / card as f64);
        } else {
            debug_assert_eq!(joint.scope, vec![query.0]);
            marginal.copy_from_slice(&joint.values);
        }
        if let Some(&observed) = evidence.get(&query) {
            for (s, m) in marginal.iter_mut().enumerate() {
                if s != observed {
                    *m = 0.0;
                }
            }
        }
        let z: f64 = marginal.iter().sum();
        if z.is_nan() || z <= EVIDENCE_ZERO {
            return Err(Error::InconsistentEvidence);
        }
        Ok(marginal.into_iter().map(|m| m / z).collect())
    }
}

/// One-shot [`InferenceEngine::posterior`].
pub fn posterior(network: &Network, evidence: &Evidence, query: VarId) -> Result<Vec<f64>> {
    InferenceEngine::new(network)?.posterior(evidence, query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn chain_marginal_and_evidence() {
        let net = generators::chain(3);
        let p2 = posterior(&net, &Evidence::new(), VarId(1)).unwrap();
        assert!((p2[1] - (0.6 * 0.1 + 0.4 * 0.8)).abs() < 1e-12);
        let mut ev = Evidence::new();
        ev.insert(VarId(2), 1);
        let p1 = posterior(&net, &ev, VarId(0)).unwrap();
        let joint1 = |x1: usize| {
            let prior = [0.6, 0.4][x1];
            let t = [[0.9, 0.1], [0.2, 0.8]];
            prior * (0..2).map(|x2| t[x1][x2] * t[x2][1]).sum::<f64>()
        };
        let expect = joint1(1) / (joint1(0) + joint1(1));
        assert!((p1[1] - expect).abs() < 1e-12);
    }

    #[test]
    fn observed_query_is_point_mass() {
        let net = generators::chain(2);
        let mut ev = Evidence::new();
        ev.insert(VarId(0), 1);
        assert_eq!(posterior(&net, &ev, VarId(0)).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn impossible_evidence() {
        let net = generators::noisy_or(&[0.8], None);
        let mut ev = Evidence::new();
        ev.insert(VarId(0), 0);
        ev.insert(VarId(1), 1);
        assert_eq!(
            posterior(&net, &ev, VarId(1)),
            Err(Error::InconsistentEvidence)
        );
    }

    #[test]
    fn bad_state() {
        let net = generators::chain(2);
        let mut ev = Evidence::new();
        ev.insert(VarId(0), 2);
        assert!(matches!(
            posterior(&net, &ev, VarId(1)),
            Err(Error::InvalidState { .. })
        ));
    }
}
