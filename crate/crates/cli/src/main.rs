//! `linkpred` command-line tool.
//!
//! Every subcommand writes CSV with a header row. On failure a single line
//! `error: <kind>: <message>` goes to stderr and the exit code is nonzero.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linkpred::eval::{score_distributions, split_edges, NegativeSampling, DEFAULT_TEST_FRACTION};
use linkpred::experiment::ExperimentPlan;
use linkpred::graph::{graph_stats_with, ClusteringConvention};
use linkpred::ingest::{generate_ba, load_edge_list, save_edge_list, BaParams, LoadOptions};
use linkpred::predict::{PairCombine, DEFAULT_SRW_STEPS};
use linkpred::rewire::{rewire_to_target, RewireConfig, RewireObjective};
use linkpred::{score_all, Graph, PredictorSpec};

#[derive(Debug, Parser)]
#[command(
    name = "linkpred",
    version,
    about = "Similarity-based link prediction under varying clustering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a BA(n, m) graph as an edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print |V|, |E|, <k>, C and the giant-component fraction.
    Stats {
        path: PathBuf,
        #[command(flatten)]
        load: LoadArgs,
        /// Count degree-0/1 nodes as C_i = 0 instead of excluding them.
        #[arg(long)]
        low_degree_as_zero: bool,
    },
    /// Rewire to a target clustering while preserving every degree.
    Rewire {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target_c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
        #[arg(long, default_value_t = 500_000_000)]
        max_steps: u64,
        #[arg(long, value_enum, default_value_t = Objective::Triangles)]
        objective: Objective,
        /// Trajectory CSV; defaults to `<out>.trajectory.csv`.
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Score candidate pairs and write the top k.
    Predict {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        top: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Run a plan file and print the report.
    Experiment {
        plan: PathBuf,
        /// Overrides `output_dir` from the plan.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Hold out edges and histogram positive vs negative scores.
    ScoreDist {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, default_value_t = 1.0)]
        bin_width: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TEST_FRACTION)]
        test_fraction: f64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        load: LoadArgs,
    },
}

#[derive(Debug, Args)]
struct LoadArgs {
    /// Remove degree-0 nodes after loading.
    #[arg(long)]
    drop_isolates: bool,
    /// Treat lines as directed arcs and keep only reciprocated pairs.
    #[arg(long)]
    mutual_only: bool,
}

impl LoadArgs {
    fn load(&self, path: &Path) -> Result<Graph> {
        let options = LoadOptions {
            drop_isolates: self.drop_isolates,
            symmetrize: !self.mutual_only,
        };
        Ok(load_edge_list(path, options)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Cn,
    Aa,
    Ra,
    Katz,
    Pr,
    Srw,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Combine {
    Sum,
    Max,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Objective {
    Triangles,
    Clustering,
}

#[derive(Debug, Args)]
struct MethodArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Katz or rooted PageRank parameter.
    #[arg(long)]
    beta: Option<f64>,
    /// Walk length for SRW.
    #[arg(long)]
    steps: Option<usize>,
    /// How rooted PageRank merges the two directions of a pair.
    #[arg(long, value_enum, default_value_t = Combine::Sum)]
    combine: Combine,
}

impl MethodArgs {
    fn spec(&self) -> Result<PredictorSpec> {
        let beta = |default: f64| self.beta.unwrap_or(default);
        let spec = match self.method {
            Method::Cn => PredictorSpec::CommonNeighbors,
            Method::Aa => PredictorSpec::AdamicAdar,
            Method::Ra => PredictorSpec::ResourceAllocation,
            Method::Katz => PredictorSpec::Katz { beta: beta(0.0005) },
            Method::Pr => PredictorSpec::RootedPageRank {
                beta: beta(0.1),
                combine: match self.combine {
                    Combine::Sum => PairCombine::Sum,
                    Combine::Max => PairCombine::Max,
                },
            },
            Method::Srw => PredictorSpec::SuperposedRandomWalk {
                steps: self.steps.unwrap_or(DEFAULT_SRW_STEPS),
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Generate {
            n,
            m,
            seed,
            out: path,
        } => {
            let g = generate_ba(BaParams::new(n, m, seed))?;
            save_edge_list(&g, &path)?;
            log::info!(
                "wrote BA({n},{m}) with {} edges to {}",
                g.num_edges(),
                path.display()
            );
        }
        Command::Stats {
            path,
            load,
            low_degree_as_zero,
        } => {
            let g = load.load(&path)?;
            let convention = if low_degree_as_zero {
                ClusteringConvention::LowDegreeAsZero
            } else {
                ClusteringConvention::ExcludeLowDegree
            };
            let s = graph_stats_with(&g, convention);
            writeln!(
                out,
                "network,nodes,edges,avg_degree,clustering,gcc_fraction"
            )?;
            writeln!(
                out,
                "{},{},{},{:.4},{:.4},{:.4}",
                path.file_stem().map_or("".into(), |s| s.to_string_lossy()),
                s.num_nodes,
                s.num_edges,
                s.avg_degree,
                s.avg_clustering,
                s.gcc_fraction
            )?;
        }
        Command::Rewire {
            input,
            target_c,
            seed,
            out: path,
            tolerance,
            max_steps,
            objective,
            trajectory,
            load,
        } => {
            let g = load.load(&input)?;
            let mut cfg = RewireConfig::new(target_c, seed).with_tolerance(tolerance);
            cfg.max_steps = max_steps;
            cfg.objective = match objective {
                Objective::Triangles => RewireObjective::Triangles,
                Objective::Clustering => RewireObjective::Clustering,
            };
            let o = rewire_to_target(&g, &cfg)?;
            save_edge_list(&o.graph, &path)?;
            let tpath = trajectory.unwrap_or_else(|| {
                let mut p = path.clone().into_os_string();
                p.push(".trajectory.csv");
                p.into()
            });
            let mut t = create(&tpath)?;
            writeln!(t, "step,swaps,triangles,clustering")?;
            for p in &o.trajectory {
                writeln!(t, "{},{},{},{}", p.step, p.swaps, p.triangles, p.clustering)?;
            }
            t.flush()?;
            writeln!(
                out,
                "initial_c,achieved_c,steps,swaps,reached,stalled,triangles_before,triangles_after"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                o.initial_c,
                o.achieved_c,
                o.steps_taken,
                o.swaps,
                o.reached_target,
                o.stalled,
                o.triangles_before,
                o.triangles_after
            )?;
        }
        Command::Predict {
            input,
            method,
            top,
            out: path,
            load,
        } => {
            let g = load.load(&input)?;
            let spec = method.spec()?;
            let table = score_all(&g, &spec)?;
            let mut w = create(&path)?;
            writeln!(w, "node_a,node_b,score")?;
            for e in table.entries.iter().take(top) {
                writeln!(w, "{},{},{}", g.label(e.a), g.label(e.b), e.score)?;
            }
            w.flush()?;
        }
        Command::Experiment { plan, out_dir } => {
            let mut plan = ExperimentPlan::from_file(&plan)?;
            if out_dir.is_some() {
                plan.output_dir = out_dir;
            }
            let report = linkpred::experiment::run_experiment(&plan)?;
            report.write_report_csv(&mut out)?;
        }
        Command::ScoreDist {
            input,
            method,
            bin_width,
            seed,
            test_fraction,
            out: path,
            load,
        } => {
            let g = load.load(&input)?;
            let spec = method.spec()?;
            let split = split_edges(&g, seed, test_fraction)?;
            let train = split.train_graph(&g);
            let table = score_all(&train, &spec)?;
            let sampling = NegativeSampling {
                seed,
                ..Default::default()
            };
            let d = score_distributions(&table, &split.test_edges, bin_width, sampling)?;
            let mut w = create(&path)?;
            d.write_csv(&mut w)?;
            w.flush()?;
            writeln!(out, "class,count,mean,std_dev,separation")?;
            let sep = d.separation();
            for (class, s) in [("positive", &d.positive), ("negative", &d.negative)] {
                writeln!(out, "{class},{},{},{},{sep}", s.count, s.mean, s.std_dev)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(e) = e.downcast_ref::<linkpred::Error>() {
        e.kind()
    } else if e.downcast_ref::<io::Error>().is_some() {
        "io"
    } else {
        "other"
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("error: usage: {}", one_line(first));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", error_kind(&e), one_line(&format!("{e:#}")));
            ExitCode::FAILURE
        }
    }
}
