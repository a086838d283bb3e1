use alloc::vec::Vec;

use super::graph::{moralize, triangulate, Heuristic, Triangulation};
use crate::model::{Network, VarId};

/// Cliques of a triangulated moral graph together with their state-space sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub cliques: Vec<Vec<VarId>>,
    /// Product of cardinalities of the largest clique.
    pub largest: u64,
    /// Sum over cliques of the product of cardinalities.
    pub total: u64,
    pub elimination_order: Vec<VarId>,
}

impl CliqueReport {
    pub fn from_triangulation(t: &Triangulation, cards: &[usize]) -> Self {
        let size = |c: &Vec<usize>| {
            c.iter()
                .fold(1u64, |acc, &v| acc.saturating_mul(cards[v] as u64))
        };
        let sizes: Vec<u64> = t.cliques.iter().map(size).collect();
        CliqueReport {
            cliques: t
                .cliques
                .iter()
                .map(|c| c.iter().map(|&v| VarId(v)).collect())
                .collect(),
            largest: sizes.iter().copied().max().unwrap_or(0),
            total: sizes.iter().fold(0u64, |acc, &s| acc.saturating_add(s)),
            elimination_order: t.order.iter().map(|&v| VarId(v)).collect(),
        }
    }
}

/// Moralises, triangulates and reports the clique sizes of `network`.
pub fn clique_stats(network: &Network, heuristic: Heuristic) -> CliqueReport {
    let cards = network.cardinalities();
    let t = triangulate(&moralize(network), heuristic, &cards);
    CliqueReport::from_triangulation(&t, &cards)
}
