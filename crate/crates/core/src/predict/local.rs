//! Neighborhood indices: common neighbors, Adamic-Adar, resource allocation.

use crate::graph::{Graph, NodeId};

use super::{collect_roots, ScoreTable, ScoredPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalIndex {
    CommonNeighbors,
    AdamicAdar,
    ResourceAllocation,
}

impl LocalIndex {
    /// Contribution of a shared neighbor of degree `k` (always `k >= 2`).
    #[inline]
    fn weight(self, k: usize) -> f64 {
        match self {
            LocalIndex::CommonNeighbors => 1.0,
            LocalIndex::AdamicAdar => 1.0 / (k as f64).ln(),
            LocalIndex::ResourceAllocation => 1.0 / k as f64,
        }
    }
}

fn pair_score(g: &Graph, x: NodeId, y: NodeId, index: LocalIndex) -> f64 {
    debug_assert_ne!(x, y);
    g.common_neighbors(x, y)
        .fold(0.0, |s, z| s + index.weight(g.degree(z)))
}

/// `|N(x) ∩ N(y)|`
pub fn score_cn(g: &Graph, x: NodeId, y: NodeId) -> f64 {
    pair_score(g, x, y, LocalIndex::CommonNeighbors)
}

/// Sum of `1 / ln k(z)` over shared neighbors `z`.
pub fn score_aa(g: &Graph, x: NodeId, y: NodeId) -> f64 {
    pair_score(g, x, y, LocalIndex::AdamicAdar)
}

/// Sum of `1 / k(z)` over shared neighbors `z`.
pub fn score_ra(g: &Graph, x: NodeId, y: NodeId) -> f64 {
    pair_score(g, x, y, LocalIndex::ResourceAllocation)
}

/// Score all pairs at distance exactly two.
///
/// For root `x`, contributions are accumulated over `z ∈ N(x)` in increasing
/// order, which is the same summation order as the pairwise functions, so
/// both paths give bit-identical values.
pub fn score_local_all(g: &Graph, index: LocalIndex) -> ScoreTable {
    let n = g.num_nodes();
    let weights: Vec<f64> = (0..n as NodeId)
        .map(|z| {
            let k = g.degree(z);
            if k >= 2 {
                index.weight(k)
            } else {
                0.0
            }
        })
        .collect();
    let entries = collect_roots(g, |x| {
        let mut acc = vec![0.0f64; n];
        let mut seen = vec![false; n];
        let mut touched: Vec<NodeId> = Vec::new();
        for &z in g.neighbors(x) {
            let w = weights[z as usize];
            let nz = g.neighbors(z);
            for &y in &nz[nz.partition_point(|&y| y <= x)..] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    touched.push(y);
                }
                acc[y as usize] += w;
            }
        }
        touched.sort_unstable();
        let nx = g.neighbors(x);
        touched
            .into_iter()
            .filter(|y| nx.binary_search(y).is_err())
            .map(|y| ScoredPair {
                a: x,
                b: y,
                score: acc[y as usize],
            })
            .collect()
    });
    ScoreTable::from_unsorted(entries, g.num_non_edges())
}
