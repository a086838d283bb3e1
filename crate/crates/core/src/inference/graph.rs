use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::Network;

/// Simple undirected graph over vertices `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new(len: usize) -> Self {
        UndirectedGraph {
            adj: vec![BTreeSet::new(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Adds vertex `len()` and returns it.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }
}

/// Moral graph: every parent–child edge plus an edge between every pair of
/// co-parents. Causal-independence families count their causes as parents,
/// which gives the same graph as their expanded tables.
pub fn moralize(network: &Network) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(network.len());
    for family in &network.families {
        let child = family.child().0;
        let parents = family.parents();
        for (i, p) in parents.iter().enumerate() {
            g.add_edge(p.0, child);
            for q in &parents[i + 1..] {
                g.add_edge(p.0, q.0);
            }
        }
    }
    g
}

/// Greedy elimination heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    /// Fewest fill edges added.
    #[default]
    MinFill,
    /// Smallest state space of the vertex and its neighbours.
    MinWeight,
}

/// Result of [`triangulate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    /// Input graph plus fill edges; chordal.
    pub filled: UndirectedGraph,
    /// Elimination order; a perfect elimination order of `filled`.
    pub order: Vec<usize>,
    pub fill_edges: Vec<(usize, usize)>,
    /// Maximal cliques of `filled`, in order of the vertex that created them.
    pub cliques: Vec<Vec<usize>>,
}

/// Working state of vertex elimination.
#[derive(Debug, Clone)]
pub(crate) struct Eliminator {
    pub(crate) graph: UndirectedGraph,
    pub(crate) eliminated: Vec<bool>,
}

impl Eliminator {
    pub(crate) fn new(graph: UndirectedGraph) -> Self {
        let n = graph.len();
        Eliminator {
            graph,
            eliminated: vec![false; n],
        }
    }

    fn live_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !self.eliminated[u])
    }

    pub(crate) fn live_degree(&self, v: usize) -> usize {
        self.live_neighbors(v).count()
    }

    pub(crate) fn fill_in(&self, v: usize) -> usize {
        let ns: Vec<usize> = self.live_neighbors(v).collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !self.graph.has_edge(a, b) {
                    missing += 1;
                }
            }
        }
        missing
    }

    fn weight(&self, v: usize, weights: &[usize]) -> u128 {
        self.live_neighbors(v).fold(weights[v] as u128, |acc, u| {
            acc.saturating_mul(weights[u] as u128)
        })
    }

    pub(crate) fn score(&self, v: usize, heuristic: Heuristic, weights: &[usize]) -> u128 {
        match heuristic {
            Heuristic::MinFill => self.fill_in(v) as u128,
            Heuristic::MinWeight => self.weight(v, weights),
        }
    }

    /// Eliminates `v`, connecting its live neighbours. Returns the clique
    /// `{v} ∪ N(v)` (sorted) and the fill edges added.
    pub(crate) fn eliminate(&mut self, v: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
        let ns: Vec<usize> = self.live_neighbors(v).collect();
        let mut fill = Vec::new();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !self.graph.has_edge(a, b) {
                    self.graph.add_edge(a, b);
                    fill.push((a.min(b), a.max(b)));
                }
            }
        }
        self.eliminated[v] = true;
        let mut clique = ns;
        clique.push(v);
        clique.sort_unstable();
        (clique, fill)
    }
}

/// Triangulates `graph` by greedy vertex elimination; ties go to the lowest
/// vertex index. `weights` are the vertex cardinalities used by
/// [`Heuristic::MinWeight`].
pub fn triangulate(
    graph: &UndirectedGraph,
    heuristic: Heuristic,
    weights: &[usize],
) -> Triangulation {
    let n = graph.len();
    let mut elim = Eliminator::new(graph.clone());
    let mut order = Vec::with_capacity(n);
    let mut fill_edges = Vec::new();
    let mut candidates = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !elim.eliminated[v])
            .min_by_key(|&v| (elim.score(v, heuristic, weights), v))
            .expect("a live vertex remains");
        let (clique, fill) = elim.eliminate(v);
        order.push(v);
        fill_edges.extend(fill);
        candidates.push(clique);
    }
    Triangulation {
        filled: elim.graph,
        order,
        fill_edges,
        cliques: maximal_cliques(candidates),
    }
}

/// Drops every candidate contained in another. Candidates produced by
/// elimination are pairwise distinct.
pub(crate) fn maximal_cliques(candidates: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<usize>> = candidates
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    candidates
        .into_iter()
        .enumerate()
        .filter(|(i, c)| {
            !sets
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.len() > c.len() && c.iter().all(|v| s.contains(v)))
        })
        .map(|(_, c)| c)
        .collect()
}

/// Chordality test by maximum cardinality search followed by a perfect
/// elimination order check.
pub fn is_chordal(graph: &UndirectedGraph) -> bool {
    let n = graph.len();
    let mut numbered = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], core::cmp::Reverse(v)))
            .expect("unnumbered vertex");
        numbered[v] = true;
        visit.push(v);
        for &u in graph.neighbors(v) {
            if !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    // The reverse visit order is a perfect elimination order iff chordal.
    let peo: Vec<usize> = visit.into_iter().rev().collect();
    let mut position = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        position[v] = i;
    }
    peo.iter().all(|&v| {
        let later: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| position[u] > position[v])
            .collect();
        match later.iter().min_by_key(|&&u| position[u]) {
            None => true,
            Some(&parent) => later
                .iter()
                .all(|&u| u == parent || graph.has_edge(parent, u)),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn four_cycle_gets_one_chord() {
        let g = cycle(4);
        assert!(!is_chordal(&g));
        let t = triangulate(&g, Heuristic::MinFill, &[2; 4]);
        assert_eq!(t.fill_edges.len(), 1);
        assert!(is_chordal(&t.filled));
        assert_eq!(t.cliques.len(), 2);
    }

    #[test]
    fn chordal_graph_needs_no_fill() {
        let mut g = cycle(4);
        g.add_edge(0, 2);
        assert!(is_chordal(&g));
        let t = triangulate(&g, Heuristic::MinWeight, &[2, 3, 2, 3]);
        assert!(t.fill_edges.is_empty());
    }

    #[test]
    fn larger_cycles_triangulate() {
        for n in 4..9 {
            let t = triangulate(&cycle(n), Heuristic::MinFill, &vec![2; n]);
            assert_eq!(t.fill_edges.len(), n - 3);
            assert!(is_chordal(&t.filled));
        }
    }

    #[test]
    fn maximal_clique_filter() {
        let out = maximal_cliques(vec![vec![0, 1], vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(out, vec![vec![0, 1, 2], vec![2, 3]]);
    }
}
