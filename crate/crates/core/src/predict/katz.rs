//! Katz index by truncated power series.
//!
//! For root `x` the series `sum_l beta^l A^l e_x` is accumulated one term at a
//! time and stops once the largest entry of the last added term drops below
//! [`KATZ_TERM_TOLERANCE`]. `A^l` counts walks, not simple paths.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

use super::{collect_roots, emit_dense, ScoreTable};

pub const KATZ_TERM_TOLERANCE: f64 = 1e-9;
pub const KATZ_MAX_TERMS: usize = 1000;

/// Spectral radius of the adjacency matrix by power iteration on `A + I`.
///
/// The shift makes the dominant eigenvalue unique in modulus, which plain
/// power iteration on `A` lacks for bipartite graphs.
pub fn spectral_radius(g: &Graph) -> f64 {
    let n = g.num_nodes();
    if g.num_edges() == 0 {
        return 0.0;
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = vec![0.0; n];
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        for (u, out) in w.iter_mut().enumerate() {
            *out = v[u]
                + g.neighbors(u as NodeId)
                    .iter()
                    .map(|&z| v[z as usize])
                    .sum::<f64>();
        }
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (a, b) in v.iter_mut().zip(&w) {
            *a = b / norm;
        }
        if (rayleigh - lambda).abs() <= 1e-13 * rayleigh {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
    }
    lambda - 1.0
}

/// Katz scores of `x` against every node, and the number of series terms used.
pub fn katz_scores_from(g: &Graph, x: NodeId, beta: f64) -> Result<(Vec<f64>, usize)> {
    let n = g.num_nodes();
    let mut term = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut total = vec![0.0; n];
    term[x as usize] = 1.0;
    for l in 1..=KATZ_MAX_TERMS {
        let mut max_abs: f64 = 0.0;
        for (u, out) in next.iter_mut().enumerate() {
            let s: f64 = g
                .neighbors(u as NodeId)
                .iter()
                .map(|&z| term[z as usize])
                .sum();
            *out = beta * s;
            max_abs = max_abs.max(*out);
        }
        for (t, add) in total.iter_mut().zip(&next) {
            *t += add;
        }
        std::mem::swap(&mut term, &mut next);
        if max_abs < KATZ_TERM_TOLERANCE {
            return Ok((total, l));
        }
    }
    Err(Error::NoConvergence {
        iterations: KATZ_MAX_TERMS,
        residual: term.iter().cloned().fold(0.0, f64::max),
    })
}

/// Katz scores for all non-edges. Fails if `beta >= 1 / rho(A)`.
pub fn score_katz_all(g: &Graph, beta: f64) -> Result<ScoreTable> {
    let rho = spectral_radius(g);
    if beta * rho >= 1.0 {
        return Err(Error::Divergence {
            beta,
            spectral_radius: rho,
        });
    }
    let failure = std::sync::Mutex::new(None);
    let entries = collect_roots(g, |x| match katz_scores_from(g, x, beta) {
        Ok((scores, _)) => emit_dense(g, x, |y| scores[y as usize]),
        Err(e) => {
            failure.lock().unwrap().get_or_insert(e);
            Vec::new()
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(ScoreTable::from_unsorted(entries, g.num_non_edges()))
}
