//! Graph sources: Barabási–Albert generation and edge-list files.
//!
//! Edge-list format: one edge per line as two whitespace-separated integer
//! labels. Blank lines and lines starting with `#` are skipped. A line whose
//! two labels are equal declares a node without adding an edge; the writer
//! uses this to preserve isolated nodes.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, NodeId};
use crate::seed;

/// Parameters of `BA(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaParams {
    pub n: usize,
    /// Edges attached by each new node.
    pub m: usize,
    pub seed: u64,
}

impl BaParams {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        BaParams { n, m, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.n <= self.m {
            return Err(Error::InvalidParameter(format!(
                "BA requires m >= 1 and n > m (got n={}, m={})",
                self.n, self.m
            )));
        }
        if self.n > NodeId::MAX as usize {
            return Err(Error::InvalidParameter(format!("n={} too large", self.n)));
        }
        Ok(())
    }
}

/// Generate a Barabási–Albert graph.
///
/// Starts from a clique on `m + 1` nodes. Every later node draws `m` distinct
/// targets with probability proportional to current degree; a draw that hits
/// a target already chosen for the same node is discarded and repeated.
/// The result has `m(m+1)/2 + (n - m - 1) m` edges.
pub fn generate_ba(params: BaParams) -> Result<Graph> {
    params.validate()?;
    let BaParams { n, m, seed } = params;
    let mut rng = seed::rng(seed);

    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // each node appears once per incident edge endpoint
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * edges.capacity());
    for a in 0..=m as NodeId {
        for b in a + 1..=m as NodeId {
            edges.push((a, b));
            endpoints.push(a);
            endpoints.push(b);
        }
    }

    let mut chosen: Vec<NodeId> = Vec::with_capacity(m);
    for v in (m + 1) as NodeId..n as NodeId {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::from_dense_edges(n, edges)
}

/// Preprocessing applied by [`load_edge_list`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    /// Remove degree-0 nodes after loading.
    pub drop_isolates: bool,
    /// Treat every listed pair as an undirected edge. When false the input is
    /// read as directed and only reciprocated pairs become edges.
    pub symmetrize: bool,
}

impl LoadOptions {
    /// Self-loops are always removed; this is not configurable.
    pub const fn drops_self_loops(&self) -> bool {
        true
    }
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            drop_isolates: false,
            symmetrize: true,
        }
    }
}

/// Parse edge-list text. `origin` is only used in error messages.
pub fn parse_edge_list<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<(i64, i64)>> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| Error::MalformedLine {
            path: origin.to_path_buf(),
            line: idx + 1,
            reason,
        };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(malformed(format!(
                "expected 2 tokens, found {}",
                tokens.len()
            )));
        }
        let parse = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| malformed(format!("`{t}` is not an integer")))
        };
        pairs.push((parse(tokens[0])?, parse(tokens[1])?));
    }
    Ok(pairs)
}

/// Load an edge-list file and apply `opts`.
pub fn load_edge_list(path: impl AsRef<Path>, opts: LoadOptions) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let pairs = parse_edge_list(BufReader::new(file), path)?;
    graph_from_pairs(pairs, opts)
}

/// Apply `opts` to already-parsed pairs.
pub fn graph_from_pairs(pairs: Vec<(i64, i64)>, opts: LoadOptions) -> Result<Graph> {
    let pairs = if opts.symmetrize {
        pairs
    } else {
        let directed: HashSet<(i64, i64)> = pairs.iter().copied().collect();
        pairs
            .into_iter()
            .flat_map(|(a, b)| {
                if a == b || directed.contains(&(b, a)) {
                    [(a, b), (a, b)]
                } else {
                    // unreciprocated: keep both endpoints as nodes only
                    [(a, a), (b, b)]
                }
            })
            .collect()
    };
    let g = build_graph(pairs)?;
    if opts.drop_isolates {
        g.without_isolates()
    } else {
        Ok(g)
    }
}

/// Write `g` as an edge list using original labels. Isolated nodes are
/// written as `label label` so that loading restores them.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    for &(a, b) in g.edges() {
        writeln!(out, "{} {}", g.label(a), g.label(b))?;
    }
    for v in 0..g.num_nodes() as NodeId {
        if g.degree(v) == 0 {
            writeln!(out, "{0} {0}", g.label(v))?;
        }
    }
    out.flush()
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_edge_list(g, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

/// Tail exponent `gamma` of `p(k) ~ k^-gamma`.
///
/// The histogram is restricted to `k >= k_min`, grouped into logarithmic
/// bins (ratio 2), converted to a per-degree density, and fitted by least
/// squares on log-log axes.
pub fn power_law_exponent(histogram: &BTreeMap<usize, f64>, k_min: usize) -> Option<f64> {
    let k_min = k_min.max(1);
    let total: f64 = histogram
        .iter()
        .filter(|(&k, _)| k >= k_min)
        .map(|(_, &c)| c)
        .sum();
    if total <= 0.0 {
        return None;
    }
    let k_max = *histogram.keys().next_back()?;
    let mut points = Vec::new();
    let mut lo = k_min;
    while lo <= k_max {
        let hi = (lo * 2).min(k_max + 1); // exclusive
        let mass: f64 = histogram.range(lo..hi).map(|(_, &c)| c).sum();
        if mass > 0.0 {
            let density = mass / total / (hi - lo) as f64;
            let center = ((lo as f64 - 0.5) * (hi as f64 - 0.5)).sqrt();
            points.push((center.ln(), density.ln()));
        }
        lo *= 2;
    }
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(-sxy / sxx)
}
