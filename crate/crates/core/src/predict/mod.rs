//! Similarity indices for unlinked node pairs.
//!
//! Every kernel works root by root: for root `x` it produces scores for the
//! pairs `(x, y)` with `y > x` that are not edges. Roots are independent and
//! are processed in parallel; results are concatenated in root order and then
//! sorted by a total order, so the output does not depend on scheduling.
//!
//! Only strictly positive scores are materialized. Every other non-edge has
//! score 0 and is accounted for through [`ScoreTable::universe_size`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::par::*;

mod katz;
mod local;
mod rooted_pr;
mod srw;

pub use katz::{
    katz_scores_from, score_katz_all, spectral_radius, KATZ_MAX_TERMS, KATZ_TERM_TOLERANCE,
};
pub use local::{score_aa, score_cn, score_local_all, score_ra, LocalIndex};
pub use rooted_pr::{rooted_pagerank_vector, score_rooted_pr_all, PR_MAX_ITERATIONS, PR_TOLERANCE};
pub use srw::{score_srw_all, walk_probabilities};

/// How the two directed rooted-PageRank values of a pair are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PairCombine {
    /// `pi_x(y) + pi_y(x)`
    #[default]
    Sum,
    /// `max(pi_x(y), pi_y(x))`
    Max,
}

/// A similarity index and its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PredictorSpec {
    CommonNeighbors,
    AdamicAdar,
    ResourceAllocation,
    Katz { beta: f64 },
    RootedPageRank { beta: f64, combine: PairCombine },
    SuperposedRandomWalk { steps: usize },
}

pub const DEFAULT_SRW_STEPS: usize = 3;

impl PredictorSpec {
    pub fn rooted_pagerank(beta: f64) -> Self {
        PredictorSpec::RootedPageRank {
            beta,
            combine: PairCombine::Sum,
        }
    }

    pub fn srw() -> Self {
        PredictorSpec::SuperposedRandomWalk {
            steps: DEFAULT_SRW_STEPS,
        }
    }

    /// Short method name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            PredictorSpec::CommonNeighbors => "cn",
            PredictorSpec::AdamicAdar => "aa",
            PredictorSpec::ResourceAllocation => "ra",
            PredictorSpec::Katz { .. } => "katz",
            PredictorSpec::RootedPageRank { .. } => "pr",
            PredictorSpec::SuperposedRandomWalk { .. } => "srw",
        }
    }

    /// Parameter string for reports, empty for parameter-free indices.
    pub fn params(&self) -> String {
        match *self {
            PredictorSpec::Katz { beta } => format!("beta={beta}"),
            PredictorSpec::RootedPageRank {
                beta,
                combine: PairCombine::Sum,
            } => format!("beta={beta}"),
            PredictorSpec::RootedPageRank {
                beta,
                combine: PairCombine::Max,
            } => format!("beta={beta};combine=max"),
            PredictorSpec::SuperposedRandomWalk { steps } => format!("steps={steps}"),
            _ => String::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            PredictorSpec::Katz { beta } if !(beta > 0.0 && beta.is_finite()) => {
                bad(format!("katz beta must be positive, got {beta}"))
            }
            PredictorSpec::RootedPageRank { beta, .. } if !(beta > 0.0 && beta < 1.0) => bad(
                format!("rooted pagerank beta must lie in (0, 1), got {beta}"),
            ),
            PredictorSpec::SuperposedRandomWalk { steps: 0 } => {
                bad("srw steps must be >= 1".into())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PredictorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            f.write_str(self.name())
        } else {
            write!(f, "{}({})", self.name(), params)
        }
    }
}

/// Parses `cn`, `aa`, `ra`, `katz:<beta>`, `pr:<beta>`, `pr-max:<beta>`,
/// `srw` and `srw:<steps>`.
impl FromStr for PredictorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let beta = |arg: Option<&str>| -> Result<f64> {
            let a = arg.ok_or_else(|| {
                Error::InvalidParameter(format!("method `{name}` needs a beta, e.g. `{name}:0.1`"))
            })?;
            a.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad beta `{a}`")))
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "cn" => PredictorSpec::CommonNeighbors,
            "aa" => PredictorSpec::AdamicAdar,
            "ra" => PredictorSpec::ResourceAllocation,
            "katz" => PredictorSpec::Katz { beta: beta(arg)? },
            "pr" => PredictorSpec::rooted_pagerank(beta(arg)?),
            "pr-max" => PredictorSpec::RootedPageRank {
                beta: beta(arg)?,
                combine: PairCombine::Max,
            },
            "srw" => PredictorSpec::SuperposedRandomWalk {
                steps: match arg {
                    None => DEFAULT_SRW_STEPS,
                    Some(a) => a
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad step count `{a}`")))?,
                },
            },
            other => return Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScoredPair {
    /// smaller endpoint
    pub a: NodeId,
    pub b: NodeId,
    pub score: f64,
}

/// Candidate pairs with positive score, sorted by descending score.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreTable {
    pub entries: Vec<ScoredPair>,
    /// Number of non-edges of the scoring graph, including those with score 0.
    pub universe_size: u64,
}

impl ScoreTable {
    /// Sort by descending score, then ascending pair.
    pub(crate) fn from_unsorted(mut entries: Vec<ScoredPair>, universe_size: u64) -> Self {
        entries.par_sort_unstable_by(rank_order);
        ScoreTable {
            entries,
            universe_size,
        }
    }

    /// Pairs with score 0 that are not materialized.
    pub fn implicit_zeros(&self) -> u64 {
        self.universe_size - self.entries.len() as u64
    }

    pub fn scores_by_pair(&self) -> HashMap<(NodeId, NodeId), f64> {
        self.entries.iter().map(|e| ((e.a, e.b), e.score)).collect()
    }

    /// Score of an unordered pair, 0 when absent.
    pub fn score_of(&self, x: NodeId, y: NodeId) -> f64 {
        let key = (x.min(y), x.max(y));
        self.entries
            .iter()
            .find(|e| (e.a, e.b) == key)
            .map_or(0.0, |e| e.score)
    }
}

pub(crate) fn rank_order(x: &ScoredPair, y: &ScoredPair) -> Ordering {
    y.score
        .total_cmp(&x.score)
        .then(x.a.cmp(&y.a))
        .then(x.b.cmp(&y.b))
}

/// Run `per_root` for every root in parallel and concatenate in root order.
pub(crate) fn collect_roots<F>(g: &Graph, per_root: F) -> Vec<ScoredPair>
where
    F: Fn(NodeId) -> Vec<ScoredPair> + Sync + Send,
{
    (0..g.num_nodes() as NodeId)
        .into_par_iter()
        .flat_map_iter(per_root)
        .collect()
}

/// Emit `(x, y, score(y))` for every `y > x` not adjacent to `x` with a
/// positive score.
pub(crate) fn emit_dense<F>(g: &Graph, x: NodeId, score: F) -> Vec<ScoredPair>
where
    F: Fn(NodeId) -> f64,
{
    let nbrs = g.neighbors(x);
    let mut next_nbr = nbrs.partition_point(|&u| u <= x);
    let mut out = Vec::new();
    for y in x + 1..g.num_nodes() as NodeId {
        if next_nbr < nbrs.len() && nbrs[next_nbr] == y {
            next_nbr += 1;
            continue;
        }
        let s = score(y);
        if s > 0.0 {
            out.push(ScoredPair {
                a: x,
                b: y,
                score: s,
            });
        }
    }
    out
}

/// Score every candidate pair of `g` under `spec`.
pub fn score_all(g: &Graph, spec: &PredictorSpec) -> Result<ScoreTable> {
    spec.validate()?;
    match *spec {
        PredictorSpec::CommonNeighbors => Ok(score_local_all(g, LocalIndex::CommonNeighbors)),
        PredictorSpec::AdamicAdar => Ok(score_local_all(g, LocalIndex::AdamicAdar)),
        PredictorSpec::ResourceAllocation => Ok(score_local_all(g, LocalIndex::ResourceAllocation)),
        PredictorSpec::Katz { beta } => score_katz_all(g, beta),
        PredictorSpec::RootedPageRank { beta, combine } => score_rooted_pr_all(g, beta, combine),
        PredictorSpec::SuperposedRandomWalk { steps } => Ok(score_srw_all(g, steps)),
    }
}
