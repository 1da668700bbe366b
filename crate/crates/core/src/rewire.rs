//! Degree-preserving rewiring that raises the averaged clustering coefficient.
//!
//! Each step draws two edges `(A,B)` and `(C,D)` with four distinct endpoints
//! and compares the current pairing against `{(A,C),(B,D)}` and
//! `{(A,D),(B,C)}`. The pairing closing the most triangles is installed.
//! Pairings that would duplicate an existing edge are not candidates. Ties
//! keep the current pairing, so the global triangle count never decreases.
//!
//! With [`RewireObjective::Clustering`] the pairing is chosen by the change in
//! the summed local clustering coefficients instead; the triangle count may
//! then fall.
//!
//! Triangle changes are evaluated locally from the neighborhoods of the four
//! endpoints, and per-node triangle counts are maintained incrementally so
//! the averaged clustering can be tracked without recounting.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{
    average_clustering_from, component_sizes, triangles_per_node, ClusteringConvention, Graph,
    NodeId,
};
use crate::seed;

/// Quantity a swap must strictly increase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RewireObjective {
    /// Global triangle count.
    #[default]
    Triangles,
    /// Sum of local clustering coefficients. Triangles may decrease.
    Clustering,
}

impl std::str::FromStr for RewireObjective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangles" => Ok(RewireObjective::Triangles),
            "clustering" => Ok(RewireObjective::Clustering),
            _ => Err(Error::InvalidParameter(format!(
                "unknown rewiring objective `{s}` (expected triangles or clustering)"
            ))),
        }
    }
}

impl std::fmt::Display for RewireObjective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RewireObjective::Triangles => "triangles",
            RewireObjective::Clustering => "clustering",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewireConfig {
    pub target_c: f64,
    pub seed: u64,
    pub max_steps: u64,
    /// Consecutive unchanged steps before giving up. `None` means `50 * |E|`.
    pub stall_limit: Option<u64>,
    /// Accept once `|C - target_c| <= tolerance`.
    pub tolerance: f64,
    /// Record a trajectory point every this many swaps.
    pub record_every: u64,
    pub objective: RewireObjective,
}

impl RewireConfig {
    pub fn new(target_c: f64, seed: u64) -> Self {
        RewireConfig {
            target_c,
            seed,
            max_steps: 500_000_000,
            stall_limit: None,
            tolerance: 0.005,
            record_every: 1000,
            objective: RewireObjective::Triangles,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.target_c;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "target clustering must lie in (0, 1), got {t}"
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance < t) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must lie in (0, target), got {}",
                self.tolerance
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter(
                "record_every must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub step: u64,
    pub swaps: u64,
    pub triangles: u64,
    pub clustering: f64,
}

#[derive(Clone, Debug)]
pub struct RewireOutcome {
    pub graph: Graph,
    pub initial_c: f64,
    pub achieved_c: f64,
    pub steps_taken: u64,
    pub swaps: u64,
    pub reached_target: bool,
    /// The chain stopped after `stall_limit` consecutive unchanged steps.
    pub stalled: bool,
    pub triangles_before: u64,
    pub triangles_after: u64,
    pub gcc_before: f64,
    pub gcc_after: f64,
    pub trajectory: Vec<TrajectoryPoint>,
}

/// Result of a single rewiring attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// Edges were swapped; `gain` is the change in the triangle count.
    Swapped { gain: i64 },
    /// No candidate beat the current pairing.
    Unchanged,
    /// The two drawn edges share an endpoint (or fewer than two edges exist).
    Degenerate,
}

impl StepOutcome {
    pub fn changed(self) -> bool {
        matches!(self, StepOutcome::Swapped { .. })
    }
}

/// Mutable working copy of a graph for rewiring.
#[derive(Clone, Debug)]
pub struct Rewirer {
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    template: Graph,
    /// triangles through each node
    closed: Vec<u64>,
    triangles: u64,
    objective: RewireObjective,
    /// `2 / (k (k-1))` for nodes with `k >= 2`, else 0
    weight: Vec<f64>,
    counted: usize,
    clustering_sum: f64,
    scratch: [Vec<NodeId>; 4],
}

impl Rewirer {
    pub fn new(g: &Graph) -> Self {
        let n = g.num_nodes();
        let adjacency: Vec<Vec<NodeId>> =
            (0..n as NodeId).map(|v| g.neighbors(v).to_vec()).collect();
        let closed = triangles_per_node(g);
        let triangles = closed.iter().sum::<u64>() / 3;
        let weight: Vec<f64> = adjacency
            .iter()
            .map(|l| {
                let k = l.len();
                if k >= 2 {
                    2.0 / (k * (k - 1)) as f64
                } else {
                    0.0
                }
            })
            .collect();
        let counted = adjacency.iter().filter(|l| l.len() >= 2).count();
        let clustering_sum = closed
            .iter()
            .zip(&weight)
            .map(|(&t, &w)| t as f64 * w)
            .sum();
        Rewirer {
            adjacency,
            edges: g.edges().to_vec(),
            template: g.clone(),
            closed,
            triangles,
            objective: RewireObjective::Triangles,
            weight,
            counted,
            clustering_sum,
            scratch: Default::default(),
        }
    }

    pub fn with_objective(mut self, objective: RewireObjective) -> Self {
        self.objective = objective;
        self
    }

    pub fn triangles(&self) -> u64 {
        self.triangles
    }

    /// Running averaged clustering (nodes with `k >= 2`).
    pub fn clustering(&self) -> f64 {
        if self.counted == 0 {
            0.0
        } else {
            self.clustering_sum / self.counted as f64
        }
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    pub fn to_graph(&self) -> Graph {
        self.template
            .with_edges(self.edges.iter().copied())
            .expect("rewiring keeps node ids in range")
    }

    fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        let (x, y) = if self.adjacency[a as usize].len() <= self.adjacency[b as usize].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adjacency[x as usize].binary_search(&y).is_ok()
    }

    /// Common neighbors of `x` and `y` other than `skip`, written to `out`.
    fn common_into(&self, x: NodeId, y: NodeId, skip: [NodeId; 2], out: &mut Vec<NodeId>) {
        out.clear();
        let (a, b) = (&self.adjacency[x as usize], &self.adjacency[y as usize]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] != skip[0] && a[i] != skip[1] {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    fn count_common(&self, x: NodeId, y: NodeId, skip: [NodeId; 2]) -> u64 {
        let (a, b) = (&self.adjacency[x as usize], &self.adjacency[y as usize]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] != skip[0] && a[i] != skip[1] {
                        count += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Draw two edges uniformly at random and attempt a swap.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> StepOutcome {
        let m = self.edges.len();
        if m < 2 {
            return StepOutcome::Degenerate;
        }
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        self.try_swap(i, j)
    }

    /// Attempt a swap between edges at positions `i` and `j` of the internal
    /// edge list (`A,B` from `i`, `C,D` from `j`).
    pub fn try_swap(&mut self, i: usize, j: usize) -> StepOutcome {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        if i == j || a == c || a == d || b == c || b == d {
            return StepOutcome::Degenerate;
        }
        let none = [NodeId::MAX; 2];
        let choice = match self.objective {
            RewireObjective::Triangles => self.best_by_triangles(a, b, c, d),
            RewireObjective::Clustering => self.best_by_clustering(a, b, c, d),
        };
        let Some([(p, q), (r, s)]) = choice else {
            return StepOutcome::Unchanged;
        };

        let mut scratch = std::mem::take(&mut self.scratch);
        self.common_into(a, b, none, &mut scratch[0]);
        self.common_into(c, d, none, &mut scratch[1]);
        self.common_into(p, q, [r, s], &mut scratch[2]);
        self.common_into(r, s, [p, q], &mut scratch[3]);
        for (zs, (x, y), sign) in [
            (&scratch[0], (a, b), -1i64),
            (&scratch[1], (c, d), -1),
            (&scratch[2], (p, q), 1),
            (&scratch[3], (r, s), 1),
        ] {
            for &z in zs {
                for v in [x, y, z] {
                    let v = v as usize;
                    self.closed[v] = (self.closed[v] as i64 + sign) as u64;
                    self.clustering_sum += sign as f64 * self.weight[v];
                }
            }
        }

        self.unlink(a, b);
        self.unlink(c, d);
        self.link(p, q);
        self.link(r, s);
        self.edges[i] = (p.min(q), p.max(q));
        self.edges[j] = (r.min(s), r.max(s));

        let lost = (scratch[0].len() + scratch[1].len()) as u64;
        let gained = (scratch[2].len() + scratch[3].len()) as u64;
        self.scratch = scratch;
        self.triangles = self.triangles + gained - lost;
        StepOutcome::Swapped {
            gain: gained as i64 - lost as i64,
        }
    }

    fn candidates(
        &self,
        a: NodeId,
        b: NodeId,
        c: NodeId,
        d: NodeId,
    ) -> impl Iterator<Item = [(NodeId, NodeId); 2]> + '_ {
        // (A,C)+(B,D) first, then (A,D)+(B,C)
        [[(a, c), (b, d)], [(a, d), (b, c)]]
            .into_iter()
            .filter(|&[(p, q), (r, s)]| !self.has_edge(p, q) && !self.has_edge(r, s))
    }

    fn best_by_triangles(
        &self,
        a: NodeId,
        b: NodeId,
        c: NodeId,
        d: NodeId,
    ) -> Option<[(NodeId, NodeId); 2]> {
        let none = [NodeId::MAX; 2];
        let mut best = self.count_common(a, b, none) + self.count_common(c, d, none);
        let mut choice = None;
        for pairing in self.candidates(a, b, c, d) {
            let [(p, q), (r, s)] = pairing;
            // after removing (A,B),(C,D) the partners drop out of the neighborhoods
            let closed = self.count_common(p, q, [r, s]) + self.count_common(r, s, [p, q]);
            if closed > best {
                best = closed;
                choice = Some(pairing);
            }
        }
        choice
    }

    /// Clustering-sum contribution of the triangles closed by edge `(x,y)`.
    fn triangle_weight(
        &self,
        x: NodeId,
        y: NodeId,
        skip: [NodeId; 2],
        buf: &mut Vec<NodeId>,
    ) -> f64 {
        self.common_into(x, y, skip, buf);
        let base = self.weight[x as usize] + self.weight[y as usize];
        buf.iter()
            .map(|&z| base + self.weight[z as usize])
            .fold(0.0, |s, w| s + w)
    }

    fn best_by_clustering(
        &self,
        a: NodeId,
        b: NodeId,
        c: NodeId,
        d: NodeId,
    ) -> Option<[(NodeId, NodeId); 2]> {
        let none = [NodeId::MAX; 2];
        let mut buf = Vec::new();
        let mut best =
            self.triangle_weight(a, b, none, &mut buf) + self.triangle_weight(c, d, none, &mut buf);
        let mut choice = None;
        for pairing in self.candidates(a, b, c, d) {
            let [(p, q), (r, s)] = pairing;
            let closed = self.triangle_weight(p, q, [r, s], &mut buf)
                + self.triangle_weight(r, s, [p, q], &mut buf);
            if closed > best {
                best = closed;
                choice = Some(pairing);
            }
        }
        choice
    }

    fn unlink(&mut self, x: NodeId, y: NodeId) {
        for (u, v) in [(x, y), (y, x)] {
            let list = &mut self.adjacency[u as usize];
            let pos = list.binary_search(&v).expect("edge present");
            list.remove(pos);
        }
    }

    fn link(&mut self, x: NodeId, y: NodeId) {
        for (u, v) in [(x, y), (y, x)] {
            let list = &mut self.adjacency[u as usize];
            let pos = list.binary_search(&v).expect_err("edge absent");
            list.insert(pos, v);
        }
    }

    /// Exact averaged clustering from the maintained per-node counts.
    pub fn exact_clustering(&self) -> f64 {
        let g = self.to_graph();
        average_clustering_from(&g, &self.closed, ClusteringConvention::ExcludeLowDegree)
    }
}

/// One rewiring step on an immutable graph. Returns the new graph and whether
/// any edges moved.
pub fn rewire_step<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (Graph, bool) {
    let mut rewirer = Rewirer::new(g);
    let changed = rewirer.step(rng).changed();
    if changed {
        (rewirer.to_graph(), true)
    } else {
        (g.clone(), false)
    }
}

/// Rewire until the averaged clustering is within `tolerance` of the target,
/// the chain stalls, or `max_steps` is exhausted.
pub fn rewire_to_target(g: &Graph, cfg: &RewireConfig) -> Result<RewireOutcome> {
    cfg.validate()?;
    let mut rewirer = Rewirer::new(g).with_objective(cfg.objective);
    let initial_c = rewirer.exact_clustering();
    if cfg.target_c <= initial_c {
        return Err(Error::TargetBelowCurrent {
            target: cfg.target_c,
            current: initial_c,
        });
    }
    let stall_limit = cfg.stall_limit.unwrap_or(50 * g.num_edges() as u64).max(1);
    let triangles_before = rewirer.triangles();
    let gcc_before = gcc_fraction(g);
    let mut rng = seed::rng(cfg.seed);

    let within = |c: f64| (c - cfg.target_c).abs() <= cfg.tolerance;
    let mut trajectory = vec![TrajectoryPoint {
        step: 0,
        swaps: 0,
        triangles: triangles_before,
        clustering: initial_c,
    }];
    let mut reached = within(initial_c);
    let mut stalled = false;
    let (mut steps, mut swaps, mut unchanged_run) = (0u64, 0u64, 0u64);
    while !reached && steps < cfg.max_steps {
        steps += 1;
        if rewirer.step(&mut rng).changed() {
            swaps += 1;
            unchanged_run = 0;
            if swaps % cfg.record_every == 0 {
                trajectory.push(TrajectoryPoint {
                    step: steps,
                    swaps,
                    triangles: rewirer.triangles(),
                    clustering: rewirer.clustering(),
                });
            }
            reached = within(rewirer.clustering());
        } else {
            unchanged_run += 1;
            if unchanged_run >= stall_limit {
                stalled = true;
                break;
            }
        }
    }

    let graph = rewirer.to_graph();
    let achieved_c = rewirer.exact_clustering();
    let triangles_after = rewirer.triangles();
    if trajectory.last().map(|p| p.step) != Some(steps) {
        trajectory.push(TrajectoryPoint {
            step: steps,
            swaps,
            triangles: triangles_after,
            clustering: achieved_c,
        });
    }
    if stalled {
        log::warn!(
            "rewiring stalled after {steps} steps at C = {achieved_c:.4} (target {})",
            cfg.target_c
        );
    }
    Ok(RewireOutcome {
        gcc_after: gcc_fraction(&graph),
        graph,
        initial_c,
        achieved_c,
        steps_taken: steps,
        swaps,
        reached_target: within(achieved_c),
        stalled,
        triangles_before,
        triangles_after,
        gcc_before,
        trajectory,
    })
}

fn gcc_fraction(g: &Graph) -> f64 {
    component_sizes(g)[0] as f64 / g.num_nodes() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{average_clustering, triangle_count};
    use crate::ingest::{generate_ba, BaParams};
    use proptest::prelude::*;

    fn dense(n: usize, edges: &[(NodeId, NodeId)]) -> Graph {
        Graph::from_dense_edges(n, edges.iter().copied()).unwrap()
    }

    fn index_of(r: &Rewirer, e: (NodeId, NodeId)) -> usize {
        r.edges.iter().position(|&x| x == e).unwrap()
    }

    #[test]
    fn four_cycle_is_unchanged() {
        let g = dense(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let mut r = Rewirer::new(&g);
        let (i, j) = (index_of(&r, (0, 1)), index_of(&r, (2, 3)));
        assert_eq!(r.try_swap(i, j), StepOutcome::Unchanged);
        assert_eq!(r.to_graph(), g);
    }

    #[test]
    fn disjoint_edges_are_unchanged() {
        let g = dense(4, &[(0, 1), (2, 3)]);
        let mut r = Rewirer::new(&g);
        assert_eq!(r.try_swap(0, 1), StepOutcome::Unchanged);
    }

    #[test]
    fn swap_closing_a_triangle_is_selected() {
        // 1-0-2 is an open wedge; swapping (1,3),(2,4) into (1,2),(3,4) closes it
        let g = dense(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]);
        let mut r = Rewirer::new(&g);
        let (i, j) = (index_of(&r, (1, 3)), index_of(&r, (2, 4)));
        assert_eq!(r.try_swap(i, j), StepOutcome::Swapped { gain: 1 });
        let h = r.to_graph();
        assert!(h.has_edge(1, 2) && h.has_edge(3, 4));
        assert_eq!(triangle_count(&h), 1);
        assert_eq!(h.degrees(), g.degrees());
        assert!((r.clustering() - average_clustering(&h, Default::default())).abs() < 1e-12);
    }

    #[test]
    fn shared_endpoint_is_degenerate() {
        let g = dense(3, &[(0, 1), (1, 2)]);
        let mut r = Rewirer::new(&g);
        assert_eq!(r.try_swap(0, 1), StepOutcome::Degenerate);
        let single = dense(2, &[(0, 1)]);
        let mut rng = seed::rng(0);
        assert_eq!(
            Rewirer::new(&single).step(&mut rng),
            StepOutcome::Degenerate
        );
    }

    #[test]
    fn target_below_current_is_rejected() {
        let g = dense(3, &[(0, 1), (1, 2), (0, 2)]);
        let err = rewire_to_target(&g, &RewireConfig::new(0.5, 1)).unwrap_err();
        assert!(err
            .to_string()
            .starts_with("target below current clustering"));
    }

    #[test]
    fn unattainable_target_stalls() {
        let g = generate_ba(BaParams::new(200, 2, 5)).unwrap();
        let mut cfg = RewireConfig::new(0.9999, 3).with_tolerance(1e-5);
        cfg.stall_limit = Some(5_000);
        let out = rewire_to_target(&g, &cfg).unwrap();
        assert!(!out.reached_target);
        assert!(out.stalled);
        assert_eq!(out.graph.degrees(), g.degrees());
        assert!(out.triangles_after >= out.triangles_before);
    }

    #[test]
    fn reaches_moderate_target_and_is_reproducible() {
        let g = generate_ba(BaParams::new(400, 4, 9)).unwrap();
        let cfg = RewireConfig::new(0.3, 17).with_tolerance(0.01);
        let a = rewire_to_target(&g, &cfg).unwrap();
        assert!(a.reached_target, "achieved {}", a.achieved_c);
        assert!((a.achieved_c - 0.3).abs() <= 0.01);
        assert!((average_clustering(&a.graph, Default::default()) - a.achieved_c).abs() < 1e-12);
        assert_eq!(a.graph.degrees(), g.degrees());
        assert_eq!(triangle_count(&a.graph), a.triangles_after);
        let b = rewire_to_target(&g, &cfg).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.steps_taken, b.steps_taken);
        for w in a.trajectory.windows(2) {
            assert!(w[1].triangles >= w[0].triangles);
        }
    }

    /// All three pairings evaluated by full recount on a rebuilt graph.
    fn brute_force_choice(g: &Graph, e1: (NodeId, NodeId), e2: (NodeId, NodeId)) -> Graph {
        let (a, b) = e1;
        let (c, d) = e2;
        let base: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != e1 && e != e2)
            .collect();
        let mut best = (triangle_count(g), g.clone());
        for pairing in [[(a, c), (b, d)], [(a, d), (b, c)]] {
            if pairing.iter().any(|&(x, y)| g.has_edge(x, y)) {
                continue;
            }
            let cand = g.with_edges(base.iter().copied().chain(pairing)).unwrap();
            let t = triangle_count(&cand);
            if t > best.0 {
                best = (t, cand);
            }
        }
        best.1
    }

    proptest! {
        #[test]
        fn local_choice_matches_global_recount(
            n in 6usize..14,
            raw in proptest::collection::vec((0u32..14, 0u32..14), 8..40),
            pick in (0usize..1000, 0usize..1000),
        ) {
            let raw: Vec<_> = raw.into_iter().map(|(a, b)| (a % n as u32, b % n as u32)).collect();
            let g = Graph::from_dense_edges(n, raw).unwrap();
            prop_assume!(g.num_edges() >= 2);
            let i = pick.0 % g.num_edges();
            let j = pick.1 % g.num_edges();
            let (e1, e2) = (g.edges()[i], g.edges()[j]);
            prop_assume!(i != j && e1.0 != e2.0 && e1.0 != e2.1 && e1.1 != e2.0 && e1.1 != e2.1);

            let mut r = Rewirer::new(&g);
            let before = r.triangles();
            r.try_swap(i, j);
            let got = r.to_graph();
            prop_assert_eq!(&got, &brute_force_choice(&g, e1, e2));
            prop_assert_eq!(r.triangles(), triangle_count(&got));
            prop_assert!(r.triangles() >= before);
            prop_assert_eq!(got.degrees(), g.degrees());
            prop_assert_eq!(&r.closed, &triangles_per_node(&got));
        }

        #[test]
        fn clustering_objective_picks_best_pairing(
            n in 6usize..14,
            raw in proptest::collection::vec((0u32..14, 0u32..14), 8..40),
            pick in (0usize..1000, 0usize..1000),
        ) {
            let raw: Vec<_> = raw.into_iter().map(|(a, b)| (a % n as u32, b % n as u32)).collect();
            let g = Graph::from_dense_edges(n, raw).unwrap();
            prop_assume!(g.num_edges() >= 2);
            let i = pick.0 % g.num_edges();
            let j = pick.1 % g.num_edges();
            let ((a, b), (c, d)) = (g.edges()[i], g.edges()[j]);
            prop_assume!(i != j && a != c && a != d && b != c && b != d);

            let rest: Vec<_> = g.edges().iter().copied().filter(|&e| e != (a, b) && e != (c, d)).collect();
            let c_of = |h: &Graph| average_clustering(h, Default::default());
            let mut best = c_of(&g);
            for pairing in [[(a, c), (b, d)], [(a, d), (b, c)]] {
                if pairing.iter().all(|&(x, y)| !g.has_edge(x, y)) {
                    best = best.max(c_of(&g.with_edges(rest.iter().copied().chain(pairing)).unwrap()));
                }
            }
            let mut r = Rewirer::new(&g).with_objective(RewireObjective::Clustering);
            r.try_swap(i, j);
            let got = r.to_graph();
            prop_assert!(c_of(&got) >= best - 1e-12);
            prop_assert!((r.clustering() - c_of(&got)).abs() < 1e-12);
            prop_assert_eq!(r.triangles(), triangle_count(&got));
            prop_assert_eq!(got.degrees(), g.degrees());
        }
    }
}
