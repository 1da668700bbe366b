//! Rooted PageRank: the stationary distribution of a walk that restarts at
//! its root with probability `1 - beta` at every step.
//!
//! For an undirected graph the rooted vectors satisfy
//! `pi_x(y) / k_y = pi_y(x) / k_x`, since `(1 - beta)(D - beta A)^-1` is
//! symmetric. The reverse direction of each pair is therefore read off the
//! root-`x` solution instead of being stored for every root.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

use super::{collect_roots, emit_dense, PairCombine, ScoreTable};

/// L1 change between successive iterates at which the fixed point is accepted.
pub const PR_TOLERANCE: f64 = 1e-10;
pub const PR_MAX_ITERATIONS: usize = 100_000;

/// Solve `pi = (1 - beta) e_x + beta T^T pi` with `T = D^-1 A` by fixed-point
/// iteration. An isolated root yields the zero vector.
pub fn rooted_pagerank_vector(g: &Graph, x: NodeId, beta: f64) -> Result<Vec<f64>> {
    let n = g.num_nodes();
    if g.degree(x) == 0 {
        return Ok(vec![0.0; n]);
    }
    let mut pi = vec![0.0; n];
    pi[x as usize] = 1.0;
    let mut spread = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..PR_MAX_ITERATIONS {
        for (u, s) in spread.iter_mut().enumerate() {
            let k = g.degree(u as NodeId);
            *s = if k > 0 { pi[u] / k as f64 } else { 0.0 };
        }
        residual = 0.0;
        for (y, out) in next.iter_mut().enumerate() {
            let inflow: f64 = g
                .neighbors(y as NodeId)
                .iter()
                .map(|&u| spread[u as usize])
                .sum();
            *out = beta * inflow;
            if y == x as usize {
                *out += 1.0 - beta;
            }
            residual += (*out - pi[y]).abs();
        }
        std::mem::swap(&mut pi, &mut next);
        if residual < PR_TOLERANCE {
            return Ok(pi);
        }
    }
    Err(Error::NoConvergence {
        iterations: PR_MAX_ITERATIONS,
        residual,
    })
}

/// Rooted PageRank scores for all non-edges, symmetrized by `combine`.
pub fn score_rooted_pr_all(g: &Graph, beta: f64, combine: PairCombine) -> Result<ScoreTable> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rooted pagerank beta must lie in (0, 1), got {beta}"
        )));
    }
    let failure = std::sync::Mutex::new(None);
    let entries = collect_roots(g, |x| {
        let kx = g.degree(x) as f64;
        if kx == 0.0 {
            return Vec::new();
        }
        match rooted_pagerank_vector(g, x, beta) {
            Ok(pi) => emit_dense(g, x, |y| {
                let forward = pi[y as usize];
                if forward == 0.0 {
                    return 0.0;
                }
                let backward = forward * kx / g.degree(y) as f64;
                match combine {
                    PairCombine::Sum => forward + backward,
                    PairCombine::Max => forward.max(backward),
                }
            }),
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                Vec::new()
            }
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(ScoreTable::from_unsorted(entries, g.num_non_edges()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{generate_ba, BaParams};

    #[test]
    fn single_edge_closed_form() {
        let g = Graph::from_dense_edges(2, [(0, 1)]).unwrap();
        for beta in [0.1, 0.5, 0.9] {
            let pi = rooted_pagerank_vector(&g, 0, beta).unwrap();
            assert!((pi[1] - beta / (1.0 + beta)).abs() < 1e-9, "beta {beta}");
            assert!((pi[0] - 1.0 / (1.0 + beta)).abs() < 1e-9);
        }
        let pi = rooted_pagerank_vector(&g, 0, 0.5).unwrap();
        assert!((pi[1] - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn restart_dominated_limit() {
        let g = generate_ba(BaParams::new(50, 2, 1)).unwrap();
        let t = score_rooted_pr_all(&g, 1e-6, PairCombine::Sum).unwrap();
        assert!(t.entries.iter().all(|e| e.score < 1e-11));
    }

    #[test]
    fn vectors_conserve_probability() {
        let g = generate_ba(BaParams::new(80, 3, 2)).unwrap();
        for x in [0, 7, 79] {
            for beta in [0.1, 0.5, 0.9] {
                let pi = rooted_pagerank_vector(&g, x, beta).unwrap();
                assert!((pi.iter().sum::<f64>() - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn symmetrization_matches_explicit_two_root_solution() {
        let g = generate_ba(BaParams::new(40, 2, 6)).unwrap();
        let beta = 0.7;
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|x| rooted_pagerank_vector(&g, x, beta).unwrap())
            .collect();
        for (combine, f) in [
            (
                PairCombine::Sum,
                (|a: f64, b: f64| a + b) as fn(f64, f64) -> f64,
            ),
            (PairCombine::Max, f64::max),
        ] {
            let table = score_rooted_pr_all(&g, beta, combine).unwrap();
            let got = table.scores_by_pair();
            for x in 0..40u32 {
                for y in x + 1..40 {
                    if g.has_edge(x, y) {
                        continue;
                    }
                    let expected = f(rows[x as usize][y as usize], rows[y as usize][x as usize]);
                    assert!((got[&(x, y)] - expected).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn isolated_nodes_score_zero() {
        let g = Graph::from_dense_edges(4, [(0, 1), (1, 2)]).unwrap();
        let t = score_rooted_pr_all(&g, 0.5, PairCombine::Sum).unwrap();
        assert!(t.entries.iter().all(|e| e.a != 3 && e.b != 3));
        assert_eq!(t.entries.len(), 1);
    }
}
