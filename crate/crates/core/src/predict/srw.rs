//! Superposed random walk over a fixed number of steps.
//!
//! `LRW_t(x,y) = k_x/(2|E|) pi_xy(t) + k_y/(2|E|) pi_yx(t)` and
//! `SRW(x,y) = sum_{t=1..steps} LRW_t(x,y)`. Because `k_x P^t[x,y]` equals
//! `k_y P^t[y,x]`, both terms of `LRW_t` are equal and only walks from `x`
//! need to be propagated.

use crate::graph::{Graph, NodeId};

use super::{collect_roots, emit_dense, ScoreTable};

/// `pi_x(t)` for `t = 1..=steps`, with `pi_x(0) = e_x` and
/// `pi_x(t) = P^T pi_x(t-1)`. Rows are indexed by `t - 1`.
pub fn walk_probabilities(g: &Graph, x: NodeId, steps: usize) -> Vec<Vec<f64>> {
    let n = g.num_nodes();
    let mut out = Vec::with_capacity(steps);
    let mut current = vec![0.0; n];
    if g.degree(x) == 0 {
        return vec![current; steps];
    }
    current[x as usize] = 1.0;
    let mut spread = vec![0.0; n];
    for _ in 0..steps {
        for (u, s) in spread.iter_mut().enumerate() {
            let k = g.degree(u as NodeId);
            *s = if k > 0 { current[u] / k as f64 } else { 0.0 };
        }
        let next: Vec<f64> = (0..n as NodeId)
            .map(|y| g.neighbors(y).iter().map(|&u| spread[u as usize]).sum())
            .collect();
        out.push(next.clone());
        current = next;
    }
    out
}

/// SRW scores for all non-edges.
pub fn score_srw_all(g: &Graph, steps: usize) -> ScoreTable {
    let m = g.num_edges();
    if m == 0 || steps == 0 {
        return ScoreTable::from_unsorted(Vec::new(), g.num_non_edges());
    }
    let entries = collect_roots(g, |x| {
        let kx = g.degree(x);
        if kx == 0 {
            return Vec::new();
        }
        let probs = walk_probabilities(g, x, steps);
        let scale = kx as f64 / m as f64;
        emit_dense(g, x, |y| {
            scale * probs.iter().map(|row| row[y as usize]).sum::<f64>()
        })
    });
    ScoreTable::from_unsorted(entries, g.num_non_edges())
}
