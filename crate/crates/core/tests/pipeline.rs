use std::fs;

use linkpred::experiment::ExperimentPlan;
use linkpred::ingest::{generate_ba, load_edge_list, save_edge_list, BaParams, LoadOptions};
use linkpred::{graph_stats, PredictorSpec};

#[test]
fn edge_list_plan_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate_ba(BaParams::new(250, 3, 4)).unwrap();
    save_edge_list(&g, dir.path().join("net.txt")).unwrap();
    let reloaded = load_edge_list(dir.path().join("net.txt"), LoadOptions::default()).unwrap();
    assert_eq!(reloaded, g);

    let plan_path = dir.path().join("plan.txt");
    fs::write(
        &plan_path,
        "source = edgelist\ninput = net.txt\nmethods = cn, aa, ra, srw\ntrials = 4\nmaster_seed = 3\noutput_dir = results\n",
    )
    .unwrap();
    let plan = ExperimentPlan::from_file(&plan_path).unwrap();
    let report = linkpred::experiment::run_experiment(&plan).unwrap();

    assert_eq!(report.levels.len(), 1);
    assert_eq!(report.levels[0].achieved_c, graph_stats(&g).avg_clustering);
    assert_eq!(report.rows.len(), 4);
    assert!(report
        .rows
        .iter()
        .all(|r| r.trials == 4 && r.flag.is_none()));
    let precision = fs::read_to_string(dir.path().join("results/precision.csv")).unwrap();
    assert_eq!(precision.lines().count(), 1 + 4 * 4);
    let cn = report.row(0, &PredictorSpec::CommonNeighbors).unwrap();
    let trials: Vec<f64> = report
        .trials
        .iter()
        .filter(|t| t.method == PredictorSpec::CommonNeighbors)
        .map(|t| *t.precision.as_ref().unwrap())
        .collect();
    let mean = trials.iter().sum::<f64>() / 4.0;
    assert!((cn.mean_precision.unwrap() - mean).abs() < 1e-15);
}
