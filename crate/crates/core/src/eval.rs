//! Train/test splitting, precision of the top-ranked pairs, and per-class
//! score distributions.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::predict::ScoreTable;
use crate::seed;

pub const DEFAULT_TEST_FRACTION: f64 = 0.1;

/// Partition of a graph's edges into a training and a held-out set.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub train_edges: Vec<(NodeId, NodeId)>,
    pub test_edges: Vec<(NodeId, NodeId)>,
    pub seed: u64,
    pub test_fraction: f64,
}

impl Split {
    /// Graph on the full node set containing only the training edges.
    pub fn train_graph(&self, full: &Graph) -> Graph {
        full.with_edges(self.train_edges.iter().copied())
            .expect("split edges come from the same graph")
    }
}

/// Hold out `round(test_fraction * |E|)` edges chosen uniformly without
/// replacement. Both parts are returned in canonical edge order.
pub fn split_edges(g: &Graph, seed: u64, test_fraction: f64) -> Result<Split> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    let m = g.num_edges();
    let k = (test_fraction * m as f64).round() as usize;
    if k == 0 || k == m {
        return Err(Error::InvalidParameter(format!(
            "test fraction {test_fraction} of {m} edges leaves an empty part"
        )));
    }
    let mut rng = seed::rng(seed);
    let mut held_out = vec![false; m];
    for i in index::sample(&mut rng, m, k) {
        held_out[i] = true;
    }
    let (test, train): (Vec<_>, Vec<_>) =
        g.edges().iter().zip(&held_out).partition(|(_, &out)| out);
    Ok(Split {
        train_edges: train.into_iter().map(|(&e, _)| e).collect(),
        test_edges: test.into_iter().map(|(&e, _)| e).collect(),
        seed,
        test_fraction,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionResult {
    /// Number of held-out edges, and the number of ranked pairs inspected.
    pub n: usize,
    /// Expected number of held-out edges among the top `n` pairs.
    pub hits: f64,
    pub precision: f64,
}

fn canonical(e: (NodeId, NodeId)) -> (NodeId, NodeId) {
    (e.0.min(e.1), e.0.max(e.1))
}

/// Precision of the `n = |test_edges|` highest-scoring pairs.
///
/// Pairs tied at the cutoff are credited by expectation: if `t` tied pairs
/// compete for the last `q` slots and `h` of them are held-out edges, they
/// contribute `h * q / t`. Unmaterialized pairs form one tie group at score 0.
pub fn precision_at_n(
    train: &Graph,
    scores: &ScoreTable,
    test_edges: &[(NodeId, NodeId)],
) -> Result<PrecisionResult> {
    let n = test_edges.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty test set".into()));
    }
    let mut test = HashSet::with_capacity(n);
    for &e in test_edges {
        let (a, b) = canonical(e);
        if !train.contains_node(b) || a == b {
            return Err(Error::InvalidNode(b as u64));
        }
        if train.has_edge(a, b) {
            return Err(Error::LeakedEdge(train.label(a), train.label(b)));
        }
        test.insert((a, b));
    }

    let entries = &scores.entries;
    let mut slots = n as u64;
    let mut hits = 0.0;
    let mut positives_seen = 0u64;
    let mut i = 0;
    while i < entries.len() {
        let score = entries[i].score;
        let mut j = i;
        let mut h = 0u64;
        while j < entries.len() && entries[j].score == score {
            if test.contains(&(entries[j].a, entries[j].b)) {
                h += 1;
            }
            j += 1;
        }
        positives_seen += h;
        let t = (j - i) as u64;
        if slots > 0 {
            let q = slots.min(t);
            hits += h as f64 * q as f64 / t as f64;
            slots -= q;
        }
        i = j;
    }
    let zeros = scores.implicit_zeros();
    if slots > 0 && zeros > 0 {
        let h0 = test.len() as u64 - positives_seen;
        hits += h0 as f64 * slots.min(zeros) as f64 / zeros as f64;
    }
    Ok(PrecisionResult {
        n,
        hits,
        precision: hits / n as f64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassSummary {
    pub count: u64,
    pub mean: f64,
    pub std_dev: f64,
}

impl ClassSummary {
    fn from_moments(count: u64, sum: f64, sum_sq: f64) -> Self {
        if count == 0 {
            return ClassSummary {
                count,
                mean: 0.0,
                std_dev: 0.0,
            };
        }
        let mean = sum / count as f64;
        let var = if count > 1 {
            ((sum_sq - count as f64 * mean * mean) / (count - 1) as f64).max(0.0)
        } else {
            0.0
        };
        ClassSummary {
            count,
            mean,
            std_dev: var.sqrt(),
        }
    }
}

/// Cap on the number of negative pairs histogrammed, and the seed of the
/// subsample drawn when the negative class is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegativeSampling {
    pub max_pairs: u64,
    pub seed: u64,
}

impl Default for NegativeSampling {
    fn default() -> Self {
        NegativeSampling {
            max_pairs: 1_000_000,
            seed: 0,
        }
    }
}

/// Score histograms of held-out edges (positive) and of pairs that are not
/// edges of the full graph (negative).
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreDistribution {
    pub bin_width: f64,
    /// bin index `floor(score / bin_width)` -> count
    pub positive_hist: BTreeMap<u64, u64>,
    pub negative_hist: BTreeMap<u64, u64>,
    pub positive: ClassSummary,
    pub negative: ClassSummary,
    /// Size of the negative class before any subsampling.
    pub negative_population: u64,
    /// Seed used when the negative class was subsampled.
    pub sampling_seed: Option<u64>,
}

impl ScoreDistribution {
    /// Standardized mean difference: `(mean_pos - mean_neg) / s_pooled`
    /// with `s_pooled^2 = ((n_p - 1) s_p^2 + (n_n - 1) s_n^2) / (n_p + n_n - 2)`.
    pub fn separation(&self) -> f64 {
        let (p, q) = (&self.positive, &self.negative);
        let dof = (p.count + q.count).saturating_sub(2);
        let diff = p.mean - q.mean;
        if dof == 0 {
            return 0.0;
        }
        let pooled = ((p.count.saturating_sub(1)) as f64 * p.std_dev.powi(2)
            + (q.count.saturating_sub(1)) as f64 * q.std_dev.powi(2))
            / dof as f64;
        if pooled > 0.0 {
            diff / pooled.sqrt()
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    /// CSV with header `class,bin_lo,bin_hi,count`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "class,bin_lo,bin_hi,count")?;
        for (class, hist) in [
            ("positive", &self.positive_hist),
            ("negative", &self.negative_hist),
        ] {
            for (&bin, &count) in hist {
                let lo = bin as f64 * self.bin_width;
                writeln!(out, "{class},{lo},{},{count}", lo + self.bin_width)?;
            }
        }
        Ok(())
    }
}

fn bin_of(score: f64, width: f64) -> u64 {
    (score / width).floor() as u64
}

/// Histogram the scores of held-out edges against those of non-edges.
///
/// `scores` must come from the training graph. The negative class is every
/// candidate pair that is not a held-out edge, including unmaterialized
/// zero-score pairs. Above `sampling.max_pairs` a uniform subsample is used.
pub fn score_distributions(
    scores: &ScoreTable,
    test_edges: &[(NodeId, NodeId)],
    bin_width: f64,
    sampling: NegativeSampling,
) -> Result<ScoreDistribution> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    let test: HashSet<(NodeId, NodeId)> = test_edges.iter().map(|&e| canonical(e)).collect();

    let mut positive_hist = BTreeMap::new();
    let mut pos = (0u64, 0.0f64, 0.0f64);
    let mut negatives: Vec<f64> = Vec::new();
    for e in &scores.entries {
        if test.contains(&(e.a, e.b)) {
            *positive_hist.entry(bin_of(e.score, bin_width)).or_insert(0) += 1;
            pos.0 += 1;
            pos.1 += e.score;
            pos.2 += e.score * e.score;
        } else {
            negatives.push(e.score);
        }
    }
    let zero_positives = test.len() as u64 - pos.0;
    if zero_positives > 0 {
        *positive_hist.entry(0).or_insert(0) += zero_positives;
        pos.0 += zero_positives;
    }
    let zero_negatives = scores.implicit_zeros().saturating_sub(zero_positives);
    let population = negatives.len() as u64 + zero_negatives;

    let mut negative_hist = BTreeMap::new();
    let mut neg = (0u64, 0.0f64, 0.0f64);
    let mut add_negative = |s: f64| {
        *negative_hist.entry(bin_of(s, bin_width)).or_insert(0) += 1;
        neg.0 += 1;
        neg.1 += s;
        neg.2 += s * s;
    };
    let sampling_seed = if population > sampling.max_pairs {
        let mut rng = seed::rng(sampling.seed);
        for i in index::sample(&mut rng, population as usize, sampling.max_pairs as usize) {
            add_negative(negatives.get(i).copied().unwrap_or(0.0));
        }
        Some(sampling.seed)
    } else {
        negatives.iter().for_each(|&s| add_negative(s));
        for _ in 0..zero_negatives {
            add_negative(0.0);
        }
        None
    };

    Ok(ScoreDistribution {
        bin_width,
        positive_hist,
        negative_hist,
        positive: ClassSummary::from_moments(pos.0, pos.1, pos.2),
        negative: ClassSummary::from_moments(neg.0, neg.1, neg.2),
        negative_population: population,
        sampling_seed,
    })
}
