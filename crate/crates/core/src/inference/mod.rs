//! Moralisation, triangulation, clique statistics and exact inference.

mod cliques;
mod factor;
mod graph;
mod posterior;

pub use cliques::{clique_stats, CliqueReport};
pub(crate) use graph::Eliminator;
pub use graph::{is_chordal, moralize, triangulate, Heuristic, Triangulation, UndirectedGraph};
pub use posterior::{posterior, Evidence, InferenceEngine, EVIDENCE_ZERO};
