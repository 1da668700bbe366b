use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn linkpred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkpred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn stats_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = dir.path().join("k3.txt");
    fs::write(&k3, "1 2\n2 3\n3 1\n").unwrap();
    let o = linkpred(&["stats", p(&k3)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "network,nodes,edges,avg_degree,clustering,gcc_fraction\nk3,3,3,2.0000,1.0000,1.0000\n"
    );
}

#[test]
fn generate_then_stats_matches_ba_edge_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ba.txt");
    let o = linkpred(&[
        "generate",
        "--n",
        "1000",
        "--m",
        "5",
        "--seed",
        "3",
        "--out",
        p(&g),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = linkpred(&["stats", p(&g)]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[1..4], &["1000", "4985", "9.9700"]);
}

#[test]
fn rewire_writes_graph_and_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ba.txt");
    let out = dir.path().join("rewired.txt");
    linkpred(&[
        "generate",
        "--n",
        "300",
        "--m",
        "3",
        "--seed",
        "1",
        "--out",
        p(&g),
    ]);
    let o = linkpred(&[
        "rewire",
        "--in",
        p(&g),
        "--target-c",
        "0.2",
        "--seed",
        "4",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("initial_c,achieved_c,steps"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let achieved: f64 = row[1].parse().unwrap();
    assert!((achieved - 0.2).abs() <= 0.005);
    assert_eq!(row[4], "true");
    let traj = fs::read_to_string(dir.path().join("rewired.txt.trajectory.csv")).unwrap();
    assert_eq!(traj.lines().next(), Some("step,swaps,triangles,clustering"));
    assert!(traj.lines().count() >= 3);

    let o = linkpred(&["stats", p(&out)]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("rewired,300,894,"), "{row}");
}

#[test]
fn predict_uses_original_labels() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("path.txt");
    fs::write(&g, "10 20\n20 30\n30 40\n").unwrap();
    let scores = dir.path().join("scores.csv");
    let o = linkpred(&[
        "predict",
        "--in",
        p(&g),
        "--method",
        "cn",
        "--top",
        "5",
        "--out",
        p(&scores),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        fs::read_to_string(&scores).unwrap(),
        "node_a,node_b,score\n10,30,1\n20,40,1\n"
    );
    for method in [
        &["--method", "katz", "--beta", "0.1"][..],
        &["--method", "pr", "--beta", "0.5"],
        &["--method", "srw"],
        &["--method", "aa"],
        &["--method", "ra"],
    ] {
        let mut args = vec!["predict", "--in", p(&g), "--top", "2", "--out", p(&scores)];
        args.extend_from_slice(method);
        let o = linkpred(&args);
        assert!(o.status.success(), "{method:?}: {}", stderr(&o));
        assert_eq!(fs::read_to_string(&scores).unwrap().lines().count(), 3);
    }
}

#[test]
fn errors_are_one_line_with_kind() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n3\n").unwrap();
    let o = linkpred(&["stats", p(&bad)]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: malformed_line: "), "{err}");
    assert!(err.contains(":2:"), "{err}");

    let missing = dir.path().join("missing.txt");
    let err = stderr(&linkpred(&["stats", p(&missing)]));
    assert!(err.starts_with("error: io: "), "{err}");

    let k3 = dir.path().join("k3.txt");
    fs::write(&k3, "0 1\n1 2\n2 0\n0 3\n").unwrap();
    let out = dir.path().join("o.csv");
    let o = linkpred(&[
        "predict",
        "--in",
        p(&k3),
        "--method",
        "katz",
        "--beta",
        "0.9",
        "--top",
        "3",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error: divergence: "),
        "{}",
        stderr(&o)
    );

    let o = linkpred(&["rewire", "--in", p(&k3)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: usage: "), "{err}");
}

#[test]
fn experiment_runs_plan_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.txt");
    fs::write(
        &plan,
        "source = ba\nba.n = 200\nba.m = 3\nclustering_targets = 0.2\nmethods = cn, ra, katz:0.5\ntrials = 2\nmaster_seed = 1\noutput_dir = out\n",
    )
    .unwrap();
    let o = linkpred(&["experiment", p(&plan)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = stdout(&o);
    assert!(report.starts_with("level,target_c,achieved_c,method,params,mean_precision"));
    assert_eq!(report.lines().count(), 4);
    assert!(report
        .lines()
        .any(|l| l.contains("katz") && l.contains("diverges")));
    assert_eq!(
        report,
        fs::read_to_string(dir.path().join("out/report.csv")).unwrap()
    );
    assert!(dir.path().join("out/dist_level0_cn.csv").exists());

    let again = linkpred(&["experiment", p(&plan)]);
    assert_eq!(stdout(&again), report);
}

#[test]
fn score_dist_summarizes_both_classes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ba.txt");
    linkpred(&[
        "generate",
        "--n",
        "300",
        "--m",
        "4",
        "--seed",
        "2",
        "--out",
        p(&g),
    ]);
    let out = dir.path().join("dist.csv");
    let o = linkpred(&[
        "score-dist",
        "--in",
        p(&g),
        "--method",
        "cn",
        "--seed",
        "5",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "class,count,mean,std_dev,separation");
    assert!(lines[1].starts_with("positive,"));
    assert!(lines[2].starts_with("negative,"));
    let hist = fs::read_to_string(&out).unwrap();
    assert_eq!(hist.lines().next(), Some("class,bin_lo,bin_hi,count"));
}
