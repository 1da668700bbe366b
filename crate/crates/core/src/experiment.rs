//! End-to-end experiment runner: base graph, clustering levels, repeated
//! train/test trials, precision table and score distributions.
//!
//! # Plan file
//!
//! A plan is a flat `key = value` text file. Blank lines and `#` comments are
//! ignored; relative paths resolve against the plan file's directory.
//!
//! | key                  | value                                             | default          |
//! |----------------------|---------------------------------------------------|------------------|
//! | `source`             | `ba` or `edgelist`                                | required         |
//! | `ba.n`, `ba.m`       | BA size and attachment count                      | required for ba  |
//! | `ba.seed`            | generation seed                                   | derived          |
//! | `input`              | edge-list path                                    | required for edgelist |
//! | `drop_isolates`      | `true`/`false`                                    | `true`           |
//! | `symmetrize`         | `true`/`false`                                    | `true`           |
//! | `clustering_targets` | comma-separated, strictly increasing              | empty (as-is)    |
//! | `methods`            | comma-separated method specs (`cn`, `katz:0.005`) | all, default grids |
//! | `trials`             | splits per level                                  | 10               |
//! | `master_seed`        | integer                                           | 0                |
//! | `output_dir`         | directory for CSV output                          | none             |
//! | `test_fraction`      | held-out share of edges                           | 0.1              |
//! | `rewire_tolerance`   | accepted `|C - target|`                           | 0.005            |
//! | `rewire_max_steps`   | step budget per level                             | 500000000        |
//! | `rewire_objective`   | `clustering` or `triangles`                       | `clustering`     |
//! | `bin_width`          | histogram bin width for CN/RA distributions       | 1.0 (CN), RA uses width/20 |
//! | `distributions`      | `true`/`false`                                    | `true`           |

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::eval::{
    precision_at_n, score_distributions, split_edges, NegativeSampling, ScoreDistribution,
    DEFAULT_TEST_FRACTION,
};
use crate::graph::{graph_stats, Graph};
use crate::ingest::{generate_ba, load_edge_list, BaParams, LoadOptions};
use crate::par::*;
use crate::predict::{score_all, PredictorSpec};
use crate::rewire::{rewire_to_target, RewireConfig, RewireObjective};
use crate::seed::derive_seed;

pub const KATZ_BETAS: [f64; 3] = [0.05, 0.005, 0.0005];
pub const PR_BETAS: [f64; 3] = [0.1, 0.5, 0.9];

/// The six indices with the default parameter grids.
pub fn default_methods() -> Vec<PredictorSpec> {
    let mut methods = vec![
        PredictorSpec::CommonNeighbors,
        PredictorSpec::AdamicAdar,
        PredictorSpec::ResourceAllocation,
        PredictorSpec::srw(),
    ];
    methods.extend(KATZ_BETAS.iter().map(|&beta| PredictorSpec::Katz { beta }));
    methods.extend(
        PR_BETAS
            .iter()
            .map(|&beta| PredictorSpec::rooted_pagerank(beta)),
    );
    methods
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    Ba(BaParams),
    EdgeList { path: PathBuf, options: LoadOptions },
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::Ba(p) => generate_ba(*p),
            GraphSource::EdgeList { path, options } => load_edge_list(path, *options),
        }
    }

    fn describe(&self) -> String {
        match self {
            GraphSource::Ba(p) => format!("BA({},{}) seed {}", p.n, p.m, p.seed),
            GraphSource::EdgeList { path, .. } => path.display().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub source: GraphSource,
    /// Empty means: use the graph as loaded.
    pub clustering_targets: Vec<f64>,
    pub methods: Vec<PredictorSpec>,
    pub trials: usize,
    pub master_seed: u64,
    pub output_dir: Option<PathBuf>,
    pub test_fraction: f64,
    pub rewire_tolerance: f64,
    pub rewire_max_steps: u64,
    pub rewire_objective: RewireObjective,
    /// Bin width for CN histograms; RA uses `bin_width / 20`.
    pub bin_width: f64,
    pub distributions: bool,
}

impl ExperimentPlan {
    pub fn new(source: GraphSource) -> Self {
        ExperimentPlan {
            source,
            clustering_targets: Vec::new(),
            methods: default_methods(),
            trials: 10,
            master_seed: 0,
            output_dir: None,
            test_fraction: DEFAULT_TEST_FRACTION,
            rewire_tolerance: 0.005,
            rewire_max_steps: 500_000_000,
            rewire_objective: RewireObjective::Clustering,
            bin_width: 1.0,
            distributions: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let plan_err = |m: String| Err(Error::Plan(m));
        if self.trials == 0 {
            return plan_err("trials must be positive".into());
        }
        if self.methods.is_empty() {
            return plan_err("no methods".into());
        }
        if self.clustering_targets.windows(2).any(|w| w[1] <= w[0]) {
            return plan_err("clustering_targets must be strictly increasing".into());
        }
        if let Some(&t) = self
            .clustering_targets
            .iter()
            .find(|&&t| !(t > 0.0 && t < 1.0))
        {
            return plan_err(format!("clustering target {t} outside (0, 1)"));
        }
        for m in &self.methods {
            m.validate()?;
        }
        Ok(())
    }

    /// Parse plan text. `base_dir` anchors relative paths.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Plan(format!("line {}: expected key = value", i + 1)))?;
            if kv
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                return Err(Error::Plan(format!(
                    "line {}: duplicate key `{}`",
                    i + 1,
                    k.trim()
                )));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        fn num<T: std::str::FromStr>(key: &str, v: String) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Plan(format!("`{key}`: cannot parse `{v}`")))
        }
        fn boolean(key: &str, v: String) -> Result<bool> {
            match v.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(Error::Plan(format!(
                    "`{key}`: expected true/false, got `{v}`"
                ))),
            }
        }
        let resolve = |p: String| {
            let p = PathBuf::from(p);
            if p.is_absolute() {
                p
            } else {
                base_dir.join(p)
            }
        };

        let master_seed: u64 = take("master_seed")
            .map(|v| num("master_seed", v))
            .transpose()?
            .unwrap_or(0);
        let source = match take("source").as_deref() {
            Some("ba") => {
                let n = num(
                    "ba.n",
                    take("ba.n").ok_or_else(|| Error::Plan("missing `ba.n`".into()))?,
                )?;
                let m = num(
                    "ba.m",
                    take("ba.m").ok_or_else(|| Error::Plan("missing `ba.m`".into()))?,
                )?;
                let seed = match take("ba.seed") {
                    Some(v) => num("ba.seed", v)?,
                    None => derive_seed(master_seed, &[0]),
                };
                GraphSource::Ba(BaParams::new(n, m, seed))
            }
            Some("edgelist") => {
                let path =
                    resolve(take("input").ok_or_else(|| Error::Plan("missing `input`".into()))?);
                let options = LoadOptions {
                    drop_isolates: take("drop_isolates")
                        .map(|v| boolean("drop_isolates", v))
                        .transpose()?
                        .unwrap_or(true),
                    symmetrize: take("symmetrize")
                        .map(|v| boolean("symmetrize", v))
                        .transpose()?
                        .unwrap_or(true),
                };
                GraphSource::EdgeList { path, options }
            }
            Some(other) => return Err(Error::Plan(format!("unknown source `{other}`"))),
            None => return Err(Error::Plan("missing `source`".into())),
        };

        let mut plan = ExperimentPlan::new(source);
        plan.master_seed = master_seed;
        if let Some(v) = take("clustering_targets") {
            plan.clustering_targets = v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| num("clustering_targets", s.to_string()))
                .collect::<Result<_>>()?;
        }
        if let Some(v) = take("methods") {
            plan.methods = v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<_>>()?;
        }
        if let Some(v) = take("trials") {
            plan.trials = num("trials", v)?;
        }
        if let Some(v) = take("output_dir") {
            plan.output_dir = Some(resolve(v));
        }
        if let Some(v) = take("test_fraction") {
            plan.test_fraction = num("test_fraction", v)?;
        }
        if let Some(v) = take("rewire_tolerance") {
            plan.rewire_tolerance = num("rewire_tolerance", v)?;
        }
        if let Some(v) = take("rewire_max_steps") {
            plan.rewire_max_steps = num("rewire_max_steps", v)?;
        }
        if let Some(v) = take("rewire_objective") {
            plan.rewire_objective = v.parse()?;
        }
        if let Some(v) = take("bin_width") {
            plan.bin_width = num("bin_width", v)?;
        }
        if let Some(v) = take("distributions") {
            plan.distributions = boolean("distributions", v)?;
        }
        if let Some(k) = kv.keys().next() {
            return Err(Error::Plan(format!("unknown key `{k}`")));
        }
        plan.validate()?;
        Ok(plan)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }
}

/// One clustering level of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelInfo {
    pub index: usize,
    pub target_c: Option<f64>,
    pub achieved_c: f64,
    pub reached_target: bool,
    pub steps: u64,
    pub swaps: u64,
    pub gcc_fraction: f64,
    /// Why the level did not reach its target, if it did not.
    pub note: Option<String>,
}

/// Precision of one method in one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub level: usize,
    pub trial: usize,
    pub method: PredictorSpec,
    pub precision: std::result::Result<f64, String>,
    /// Standardized mean difference of positive vs negative scores (CN, RA).
    pub separation: Option<f64>,
}

/// Aggregate over trials for one (level, method) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub level: usize,
    pub target_c: Option<f64>,
    pub achieved_c: f64,
    pub method: PredictorSpec,
    /// `None` when every trial failed.
    pub mean_precision: Option<f64>,
    pub std_precision: Option<f64>,
    pub trials: usize,
    /// Set when the level missed its target or trials failed.
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelDistribution {
    pub level: usize,
    pub method: PredictorSpec,
    pub distribution: ScoreDistribution,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub source: String,
    pub master_seed: u64,
    pub version: &'static str,
    pub backend: &'static str,
    pub started_unix_secs: u64,
    pub finished_unix_secs: u64,
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub levels: Vec<LevelInfo>,
    pub rows: Vec<ReportRow>,
    pub trials: Vec<TrialRecord>,
    /// CN and RA distributions of trial 0 at each level.
    pub distributions: Vec<LevelDistribution>,
    pub provenance: Provenance,
}

impl ExperimentReport {
    pub fn row(&self, level: usize, method: &PredictorSpec) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.level == level && &r.method == method)
    }

    pub fn write_report_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "level,target_c,achieved_c,method,params,mean_precision,std_precision,trials,flag"
        )?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.level,
                r.target_c.map_or(String::new(), |t| t.to_string()),
                r.achieved_c,
                r.method.name(),
                r.method.params(),
                r.mean_precision.map_or(String::new(), |v| v.to_string()),
                r.std_precision.map_or(String::new(), |v| v.to_string()),
                r.trials,
                r.flag.as_deref().unwrap_or("").replace(',', ";"),
            )?;
        }
        Ok(())
    }

    pub fn write_precision_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "method,params,C,trial,precision")?;
        for t in &self.trials {
            if let Ok(p) = t.precision {
                let c = self.levels[t.level].achieved_c;
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    t.method.name(),
                    t.method.params(),
                    c,
                    t.trial,
                    p
                )?;
            }
        }
        Ok(())
    }

    pub fn write_levels_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "level,target_c,achieved_c,reached,steps,swaps,gcc_fraction,note"
        )?;
        for l in &self.levels {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                l.index,
                l.target_c.map_or(String::new(), |t| t.to_string()),
                l.achieved_c,
                l.reached_target,
                l.steps,
                l.swaps,
                l.gcc_fraction,
                l.note.as_deref().unwrap_or("").replace(',', ";"),
            )?;
        }
        Ok(())
    }

    /// Write `report.csv`, `precision.csv`, `levels.csv`, one
    /// `dist_level<i>_<method>.csv` per stored distribution and
    /// `provenance.txt` into `dir`.
    pub fn write_outputs(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let write = |name: String, f: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>| {
            let path = dir.join(name);
            let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Error::io(&path, e))
        };
        write("report.csv".into(), &|w| self.write_report_csv(w))?;
        write("precision.csv".into(), &|w| self.write_precision_csv(w))?;
        write("levels.csv".into(), &|w| self.write_levels_csv(w))?;
        for d in &self.distributions {
            write(
                format!("dist_level{}_{}.csv", d.level, d.method.name()),
                &|w| d.distribution.write_csv(w),
            )?;
        }
        let p = &self.provenance;
        write("provenance.txt".into(), &|w| {
            writeln!(w, "source = {}", p.source)?;
            writeln!(w, "master_seed = {}", p.master_seed)?;
            writeln!(w, "version = {}", p.version)?;
            writeln!(w, "backend = {}", p.backend)?;
            writeln!(w, "started_unix_secs = {}", p.started_unix_secs)?;
            writeln!(w, "finished_unix_secs = {}", p.finished_unix_secs)
        })
    }
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Build the graph for every clustering level. Each level starts from the
/// pristine base graph.
pub fn prepare_levels(base: &Graph, plan: &ExperimentPlan) -> Vec<(LevelInfo, Graph)> {
    if plan.clustering_targets.is_empty() {
        let stats = graph_stats(base);
        return vec![(
            LevelInfo {
                index: 0,
                target_c: None,
                achieved_c: stats.avg_clustering,
                reached_target: true,
                steps: 0,
                swaps: 0,
                gcc_fraction: stats.gcc_fraction,
                note: None,
            },
            base.clone(),
        )];
    }
    plan.clustering_targets
        .iter()
        .copied()
        .enumerate()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(index, target)| {
            let mut cfg =
                RewireConfig::new(target, derive_seed(plan.master_seed, &[1, index as u64]))
                    .with_tolerance(plan.rewire_tolerance);
            cfg.max_steps = plan.rewire_max_steps;
            cfg.objective = plan.rewire_objective;
            match rewire_to_target(base, &cfg) {
                Ok(out) => {
                    let note = (!out.reached_target).then(|| {
                        format!(
                            "target {target} not reached ({}; C = {:.4})",
                            if out.stalled {
                                "stalled"
                            } else {
                                "step budget exhausted"
                            },
                            out.achieved_c
                        )
                    });
                    (
                        LevelInfo {
                            index,
                            target_c: Some(target),
                            achieved_c: out.achieved_c,
                            reached_target: out.reached_target,
                            steps: out.steps_taken,
                            swaps: out.swaps,
                            gcc_fraction: out.gcc_after,
                            note,
                        },
                        out.graph,
                    )
                }
                Err(e) => {
                    let stats = graph_stats(base);
                    (
                        LevelInfo {
                            index,
                            target_c: Some(target),
                            achieved_c: stats.avg_clustering,
                            reached_target: false,
                            steps: 0,
                            swaps: 0,
                            gcc_fraction: stats.gcc_fraction,
                            note: Some(e.to_string()),
                        },
                        base.clone(),
                    )
                }
            }
        })
        .collect()
}

struct CellOutput {
    records: Vec<TrialRecord>,
    distributions: Vec<LevelDistribution>,
}

fn run_cell(plan: &ExperimentPlan, level: usize, graph: &Graph, trial: usize) -> CellOutput {
    let coords = [level as u64, trial as u64];
    let split_seed = derive_seed(plan.master_seed, &[2, coords[0], coords[1]]);
    let sample_seed = derive_seed(plan.master_seed, &[3, coords[0], coords[1]]);
    let fail_all = |msg: String| CellOutput {
        records: plan
            .methods
            .iter()
            .map(|&method| TrialRecord {
                level,
                trial,
                method,
                precision: Err(msg.clone()),
                separation: None,
            })
            .collect(),
        distributions: Vec::new(),
    };
    let split = match split_edges(graph, split_seed, plan.test_fraction) {
        Ok(s) => s,
        Err(e) => return fail_all(e.to_string()),
    };
    let train = split.train_graph(graph);

    let mut out = CellOutput {
        records: Vec::with_capacity(plan.methods.len()),
        distributions: Vec::new(),
    };
    for &method in &plan.methods {
        let scored = score_all(&train, &method);
        let precision = scored.as_ref().map_err(|e| e.to_string()).and_then(|t| {
            precision_at_n(&train, t, &split.test_edges)
                .map(|p| p.precision)
                .map_err(|e| e.to_string())
        });
        let width = match method {
            PredictorSpec::CommonNeighbors => Some(plan.bin_width),
            PredictorSpec::ResourceAllocation => Some(plan.bin_width / 20.0),
            _ => None,
        };
        let mut separation = None;
        if let (Some(width), Ok(table)) = (width.filter(|_| plan.distributions), &scored) {
            let sampling = NegativeSampling {
                seed: sample_seed,
                ..Default::default()
            };
            if let Ok(d) = score_distributions(table, &split.test_edges, width, sampling) {
                separation = Some(d.separation());
                if trial == 0 {
                    out.distributions.push(LevelDistribution {
                        level,
                        method,
                        distribution: d,
                    });
                }
            }
        }
        out.records.push(TrialRecord {
            level,
            trial,
            method,
            precision,
            separation,
        });
    }
    out
}

fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Some((mean, var.sqrt()))
}

/// Run every (level, trial) cell of `plan` on an already built base graph.
pub fn run_on_graph(base: &Graph, plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let started = unix_now();
    let levels = prepare_levels(base, plan);

    let cells: Vec<(usize, usize)> = (0..levels.len())
        .flat_map(|l| (0..plan.trials).map(move |t| (l, t)))
        .collect();
    let outputs: Vec<CellOutput> = cells
        .into_par_iter()
        .map(|(l, t)| run_cell(plan, l, &levels[l].1, t))
        .collect();

    let mut trials = Vec::new();
    let mut distributions = Vec::new();
    for o in outputs {
        trials.extend(o.records);
        distributions.extend(o.distributions);
    }

    let mut rows = Vec::new();
    for (info, _) in &levels {
        for method in &plan.methods {
            let mut values = Vec::new();
            let mut errors = Vec::new();
            for r in trials
                .iter()
                .filter(|r| r.level == info.index && &r.method == method)
            {
                match &r.precision {
                    Ok(p) => values.push(*p),
                    Err(e) => errors.push(e.clone()),
                }
            }
            let stats = mean_std(&values);
            let mut flags: Vec<String> = info.note.iter().cloned().collect();
            if let Some(first) = errors.first() {
                flags.push(format!("{} trial(s) failed: {first}", errors.len()));
            }
            rows.push(ReportRow {
                level: info.index,
                target_c: info.target_c,
                achieved_c: info.achieved_c,
                method: *method,
                mean_precision: stats.map(|s| s.0),
                std_precision: stats.map(|s| s.1),
                trials: values.len(),
                flag: (!flags.is_empty()).then(|| flags.join("; ")),
            });
        }
    }

    let report = ExperimentReport {
        levels: levels.into_iter().map(|(info, _)| info).collect(),
        rows,
        trials,
        distributions,
        provenance: Provenance {
            source: plan.source.describe(),
            master_seed: plan.master_seed,
            version: env!("CARGO_PKG_VERSION"),
            backend: crate::par::backend(),
            started_unix_secs: started,
            finished_unix_secs: unix_now(),
        },
    };
    if let Some(dir) = &plan.output_dir {
        report.write_outputs(dir)?;
    }
    Ok(report)
}

/// Load the plan's source graph and run the experiment.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let base = plan.source.load()?;
    run_on_graph(&base, plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_plan() -> ExperimentPlan {
        let mut plan = ExperimentPlan::new(GraphSource::Ba(BaParams::new(150, 3, 5)));
        plan.clustering_targets = vec![0.15, 0.3];
        plan.methods = vec![
            PredictorSpec::CommonNeighbors,
            PredictorSpec::ResourceAllocation,
            PredictorSpec::Katz { beta: 5.0 },
        ];
        plan.trials = 3;
        plan.master_seed = 11;
        plan
    }

    #[test]
    fn parse_full_plan() {
        let text = "
            # clustering sweep
            source = ba
            ba.n = 4000
            ba.m = 5
            clustering_targets = 0.1, 0.2,0.3
            methods = cn, aa, katz:0.005, pr:0.1, srw
            trials = 4
            master_seed = 9
            output_dir = out
            distributions = false
            rewire_objective = triangles
        ";
        let plan = ExperimentPlan::parse(text, Path::new("/plans")).unwrap();
        assert_eq!(
            plan.source,
            GraphSource::Ba(BaParams::new(4000, 5, derive_seed(9, &[0])))
        );
        assert_eq!(plan.clustering_targets, vec![0.1, 0.2, 0.3]);
        assert_eq!(plan.methods.len(), 5);
        assert_eq!(plan.trials, 4);
        assert_eq!(plan.output_dir, Some(PathBuf::from("/plans/out")));
        assert!(!plan.distributions);
        assert_eq!(plan.rewire_objective, RewireObjective::Triangles);
    }

    #[test]
    fn parse_edgelist_plan_defaults() {
        let plan =
            ExperimentPlan::parse("source = edgelist\ninput = net.txt", Path::new("d")).unwrap();
        assert_eq!(
            plan.source,
            GraphSource::EdgeList {
                path: PathBuf::from("d/net.txt"),
                options: LoadOptions {
                    drop_isolates: true,
                    symmetrize: true
                }
            }
        );
        assert_eq!(plan.methods, default_methods());
        assert_eq!(plan.methods.len(), 10);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "source = ba\nba.n = 10",
            "source = ba\nba.n = 10\nba.m = 2\nclustering_targets = 0.3, 0.2",
            "source = ba\nba.n = 10\nba.m = 2\nfoo = 1",
            "source = ba\nba.n = 10\nba.m = 2\ntrials = 0",
            "source = ba\nba.n = 10\nba.m = 2\nmethods = cn, nope",
            "source = web",
            "source = ba\nsource = ba",
            "no equals sign",
        ] {
            let err = ExperimentPlan::parse(bad, Path::new(".")).unwrap_err();
            assert!(
                matches!(err, Error::Plan(_) | Error::InvalidParameter(_)),
                "{bad}: {err}"
            );
        }
    }

    #[test]
    fn report_is_complete_and_flags_failures() {
        let report = run_experiment(&small_plan()).unwrap();
        assert_eq!(report.levels.len(), 2);
        assert_eq!(report.rows.len(), 2 * 3);
        for row in &report.rows {
            if let PredictorSpec::Katz { .. } = row.method {
                assert_eq!(row.trials, 0);
                assert!(row.flag.as_deref().unwrap().contains("diverges"));
            } else {
                assert_eq!(row.trials, 3);
                assert!((0.0..=1.0).contains(&row.mean_precision.unwrap()));
            }
        }
        assert_eq!(report.distributions.len(), 2 * 2);
        assert!(report.levels.iter().all(|l| l.reached_target));
    }

    #[test]
    fn same_seed_reproduces_bit_exactly() {
        let a = run_experiment(&small_plan()).unwrap();
        let b = run_experiment(&small_plan()).unwrap();
        assert_eq!(a.levels, b.levels);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.distributions, b.distributions);
    }

    #[test]
    fn unreachable_level_is_flagged() {
        let mut plan = small_plan();
        plan.clustering_targets = vec![0.01];
        plan.methods = vec![PredictorSpec::CommonNeighbors];
        let report = run_experiment(&plan).unwrap();
        let row = &report.rows[0];
        let flag = row.flag.as_deref().unwrap();
        assert!(flag.contains("target below current"), "{flag}");
        assert_eq!(row.trials, 3);
    }

    #[test]
    fn writes_csv_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let mut plan = small_plan();
        plan.output_dir = Some(dir.path().to_path_buf());
        run_experiment(&plan).unwrap();
        for f in [
            "report.csv",
            "precision.csv",
            "levels.csv",
            "provenance.txt",
            "dist_level0_cn.csv",
            "dist_level1_ra.csv",
        ] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        let report = fs::read_to_string(dir.path().join("report.csv")).unwrap();
        assert_eq!(report.lines().count(), 1 + 6);
        let precision = fs::read_to_string(dir.path().join("precision.csv")).unwrap();
        assert_eq!(
            precision.lines().next(),
            Some("method,params,C,trial,precision")
        );
        assert_eq!(precision.lines().count(), 1 + 2 * 2 * 3);
    }
}
