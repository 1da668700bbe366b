//! Immutable undirected simple graph and the structural statistics built on it.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::par::*;

/// Dense node index in `[0, num_nodes)`.
pub type NodeId = u32;

/// Undirected simple graph with sorted adjacency lists.
///
/// Node ids are dense. The label each node carried in the input is kept in a
/// side table so results can be reported in the original namespace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    labels: Vec<i64>,
}

/// Build a graph from arbitrary integer-labelled pairs.
///
/// Self-loops are dropped and duplicate or reversed pairs collapse to one
/// edge. Labels are remapped to dense ids in increasing label order. A label
/// that only occurs in self-loops becomes an isolated node.
pub fn build_graph<I>(pairs: I) -> Result<Graph>
where
    I: IntoIterator<Item = (i64, i64)>,
{
    let pairs: Vec<(i64, i64)> = pairs.into_iter().collect();
    let labels: Vec<i64> = pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let index: HashMap<i64, NodeId> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as NodeId))
        .collect();
    let edges = pairs.iter().map(|(a, b)| (index[a], index[b]));
    Graph::assemble(labels.len(), edges, labels)
}

impl Graph {
    /// Build a graph on nodes `0..num_nodes` whose labels equal their ids.
    pub fn from_dense_edges<I>(num_nodes: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges
            .iter()
            .find(|&&(a, b)| a as usize >= num_nodes || b as usize >= num_nodes)
        {
            return Err(Error::InvalidNode(a.max(b) as u64));
        }
        Graph::assemble(num_nodes, edges, (0..num_nodes as i64).collect())
    }

    /// A graph on the same node set (ids and labels) with a different edge set.
    pub fn with_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = self.num_nodes();
        let edges: Vec<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges
            .iter()
            .find(|&&(a, b)| a as usize >= n || b as usize >= n)
        {
            return Err(Error::InvalidNode(a.max(b) as u64));
        }
        Graph::assemble(n, edges, self.labels.clone())
    }

    fn assemble<I>(num_nodes: usize, edges: I, labels: Vec<i64>) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if num_nodes == 0 {
            return Err(Error::EmptyGraph);
        }
        debug_assert_eq!(labels.len(), num_nodes);
        let mut canonical: Vec<(NodeId, NodeId)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        canonical.sort_unstable();
        canonical.dedup();

        let mut adjacency = vec![Vec::new(); num_nodes];
        for &(a, b) in &canonical {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: canonical,
            labels,
        })
    }

    /// Copy with every degree-0 node removed and ids compacted (labels kept).
    pub fn without_isolates(&self) -> Result<Graph> {
        let mut remap = vec![NodeId::MAX; self.num_nodes()];
        let mut labels = Vec::new();
        for (v, slot) in remap.iter_mut().enumerate() {
            if !self.adjacency[v].is_empty() {
                *slot = labels.len() as NodeId;
                labels.push(self.labels[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (remap[a as usize], remap[b as usize]));
        Graph::assemble(labels.len(), edges, labels)
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: each edge once as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        let (small, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.neighbors(small).binary_search(&other).is_ok()
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        (v as usize) < self.num_nodes()
    }

    /// Original label of `v`.
    pub fn label(&self, v: NodeId) -> i64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Label to id lookup table.
    pub fn label_index(&self) -> HashMap<i64, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as NodeId))
            .collect()
    }

    /// Common neighbors of `x` and `y` in increasing id order.
    pub fn common_neighbors(&self, x: NodeId, y: NodeId) -> SortedIntersection<'_> {
        SortedIntersection::new(self.neighbors(x), self.neighbors(y))
    }

    /// Number of unordered pairs that are not edges.
    pub fn num_non_edges(&self) -> u64 {
        let n = self.num_nodes() as u64;
        n * (n - 1) / 2 - self.num_edges() as u64
    }
}

/// Merge-based intersection of two sorted slices.
pub struct SortedIntersection<'a> {
    a: &'a [NodeId],
    b: &'a [NodeId],
}

impl<'a> SortedIntersection<'a> {
    pub fn new(a: &'a [NodeId], b: &'a [NodeId]) -> Self {
        SortedIntersection { a, b }
    }
}

impl Iterator for SortedIntersection<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        while let (Some(&x), Some(&y)) = (self.a.first(), self.b.first()) {
            if x < y {
                self.a = &self.a[1..];
            } else if y < x {
                self.b = &self.b[1..];
            } else {
                self.a = &self.a[1..];
                self.b = &self.b[1..];
                return Some(x);
            }
        }
        None
    }
}

/// Size of the intersection of two sorted slices.
#[inline]
pub fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Edges among the neighbors of `v`.
fn closed_pairs_at(g: &Graph, v: NodeId) -> u64 {
    let nv = g.neighbors(v);
    let twice: usize = nv
        .iter()
        .map(|&u| intersection_size(g.neighbors(u), nv))
        .sum();
    (twice / 2) as u64
}

/// Number of triangles through each node.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    (0..g.num_nodes() as NodeId)
        .into_par_iter()
        .map(|v| closed_pairs_at(g, v))
        .collect()
}

/// Local clustering `2|E_v| / (k_v (k_v - 1))`, or `None` when `k_v < 2`.
pub fn local_clustering(g: &Graph, v: NodeId) -> Result<Option<f64>> {
    if !g.contains_node(v) {
        return Err(Error::InvalidNode(v as u64));
    }
    let k = g.degree(v);
    if k < 2 {
        return Ok(None);
    }
    let closed = closed_pairs_at(g, v) as f64;
    Ok(Some(2.0 * closed / (k * (k - 1)) as f64))
}

/// Total number of triangles, each counted once.
pub fn triangle_count(g: &Graph) -> u64 {
    (0..g.num_nodes() as NodeId)
        .into_par_iter()
        .map(|v| {
            let nv = g.neighbors(v);
            let higher = &nv[nv.partition_point(|&u| u <= v)..];
            higher
                .iter()
                .map(|&u| {
                    let nu = g.neighbors(u);
                    let above_u = &nu[nu.partition_point(|&w| w <= u)..];
                    intersection_size(above_u, higher) as u64
                })
                .sum::<u64>()
        })
        .sum()
}

/// How nodes with fewer than two neighbors enter the averaged clustering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClusteringConvention {
    /// Leave them out of both numerator and denominator.
    #[default]
    ExcludeLowDegree,
    /// Count them as `C_i = 0` and divide by `|V|`.
    LowDegreeAsZero,
}

/// Averaged clustering under `convention`.
pub fn average_clustering(g: &Graph, convention: ClusteringConvention) -> f64 {
    let closed = triangles_per_node(g);
    average_clustering_from(g, &closed, convention)
}

pub(crate) fn average_clustering_from(
    g: &Graph,
    closed: &[u64],
    convention: ClusteringConvention,
) -> f64 {
    let mut sum = 0.0;
    let mut counted = 0usize;
    for (list, &t) in g.adjacency.iter().zip(closed) {
        let k = list.len();
        if k >= 2 {
            sum += 2.0 * t as f64 / (k * (k - 1)) as f64;
            counted += 1;
        }
    }
    let denominator = match convention {
        ClusteringConvention::ExcludeLowDegree => counted,
        ClusteringConvention::LowDegreeAsZero => g.num_nodes(),
    };
    if denominator == 0 {
        0.0
    } else {
        sum / denominator as f64
    }
}

/// Sizes of the connected components, largest first.
pub fn component_sizes(g: &Graph) -> Vec<usize> {
    let n = g.num_nodes();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start as NodeId);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Summary statistics of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub num_nodes: usize,
    pub num_edges: usize,
    /// `2|E| / |V|`
    pub avg_degree: f64,
    pub avg_clustering: f64,
    /// Fraction of nodes in the largest connected component.
    pub gcc_fraction: f64,
    /// degree -> number of nodes with that degree
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    graph_stats_with(g, ClusteringConvention::default())
}

pub fn graph_stats_with(g: &Graph, convention: ClusteringConvention) -> GraphStats {
    let n = g.num_nodes();
    let mut degree_histogram = BTreeMap::new();
    for list in &g.adjacency {
        *degree_histogram.entry(list.len()).or_insert(0) += 1;
    }
    let largest = component_sizes(g).first().copied().unwrap_or(0);
    GraphStats {
        num_nodes: n,
        num_edges: g.num_edges(),
        avg_degree: 2.0 * g.num_edges() as f64 / n as f64,
        avg_clustering: average_clustering(g, convention),
        gcc_fraction: largest as f64 / n as f64,
        degree_histogram,
    }
}
