use std::process::{Command, Output};

use serde_json::Value;

fn taugraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taugraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn csv_column(text: &str, col: usize) -> Vec<String> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).expect("column").to_string())
        .collect()
}

#[test]
fn enumerate_forests_matches_lifted_cayley() {
    let o = taugraph(&["--family", "forests", "--n-max", "6", "enumerate"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("n,a_n,c_n,b_n,r_n,growth_estimate\n"));
    // Rooted-forest sums of n^{n-2}: the classical labelled-forest counts.
    assert_eq!(csv_column(&text, 1), ["1", "1", "2", "7", "38", "291", "2932"]);
    assert_eq!(csv_column(&text, 3), ["0"; 7]);
}

#[test]
fn enumerate_trees_view_gives_cayley_weight() {
    let o = taugraph(&["--family", "trees", "--lambda", "2", "--nu", "3", "--n-min", "5", "--n-max", "5", "enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_column(&stdout(&o), 2), ["6000"]);
}

#[test]
fn closed_form_growth_estimates_approach_e() {
    let o = taugraph(&["--family", "forests", "--n-max", "60", "enumerate", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    let g: Vec<f64> = csv_column(&stdout(&o), 5)
        .iter()
        .skip(1)
        .map(|s| s.parse().expect("growth estimate"))
        .collect();
    assert!(g.windows(2).skip(3).all(|w| w[1] > w[0]), "{g:?}");
    assert!(g.iter().all(|&x| x < std::f64::consts::E));
    assert!(*g.last().unwrap() > 2.2);
}

#[test]
fn constants_reports() {
    let o = taugraph(&["constants", "--gamma", "27.226878"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let beta: f64 = v["beta"].as_str().unwrap().parse().unwrap();
    let alpha: f64 = v["alpha"].as_str().unwrap().parse().unwrap();
    assert!((beta - 26.207554).abs() < 1e-4);
    assert!((alpha - 0.961843).abs() < 1e-5);

    let o = taugraph(&["constants", "--gamma", &std::f64::consts::E.to_string()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["beta"].is_null());
    assert_eq!(v["alpha"], "0");

    let o = taugraph(&["--family", "forests", "--nu", "2", "constants"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let conn: f64 = v["conn_limit"].as_str().unwrap().parse().unwrap();
    assert!((conn - (-1.0f64).exp()).abs() < 1e-11);
}

#[test]
fn verify_suites() {
    for suite in ["exp-formula", "planar-constants", "forests-connectivity"] {
        let o = taugraph(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["name"], suite);
        if suite == "forests-connectivity" {
            let p = v["measured"]["p500"].as_f64().unwrap();
            assert!((p - (-0.5f64).exp()).abs() <= 0.01);
        }
    }
}

#[test]
fn sampling_is_deterministic_and_summarised() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for out in [&a, &b] {
        let o = taugraph(&[
            "--family",
            "series-parallel",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
            "sample",
            "--n",
            "5",
            "--draws",
            "200",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 200);

    let o = taugraph(&["stats", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["draws"], 200);
    let hist: u64 = v["kappa_histogram"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(hist, 200);
}

#[test]
fn every_sample_method_runs() {
    for (method, extra) in [
        ("mcmc", vec!["--burn-in", "100", "--thin", "2"]),
        ("boltzmann", vec![]),
        ("trees", vec![]),
    ] {
        let mut args = vec!["--family", "forests", "--n-max", "4", "sample", "--method", method, "--n", "6", "--draws", "20"];
        args.extend(extra);
        let o = taugraph(&args);
        assert_eq!(o.status.code(), Some(0), "{method}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).lines().count(), 20);
    }
}

#[test]
fn pendant_density_of_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("trees.jsonl");
    let h = dir.path().join("k1.txt");
    std::fs::write(&h, "1\n").unwrap();
    let o = taugraph(&["--out", samples.to_str().unwrap(), "sample", "--method", "trees", "--n", "200", "--draws", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let o = taugraph(&[
        "pendant",
        samples.to_str().unwrap(),
        "--graph",
        h.to_str().unwrap(),
        "--gamma",
        &std::f64::consts::E.to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mean: f64 = v["mean_density"].as_str().unwrap().parse().unwrap();
    let limit: f64 = v["limit"].as_str().unwrap().parse().unwrap();
    assert!((limit - 1.0 / std::f64::consts::E).abs() < 1e-11);
    assert!((mean - limit).abs() < 0.02);
}

#[test]
fn families_check_reports_closure() {
    let o = taugraph(&["--family", "forests", "--n-max", "5", "families-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bridge_addable"]["holds"], true);
    assert_eq!(v["decomposable"]["holds"], true);
    assert_eq!(v["addable"], true);

    let o = taugraph(&["--family", "ex-k-disjoint-cycles:2", "--n-max", "6", "families-check"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decomposable"]["holds"], false);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("table.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"family":"all","lambda":"1/2","nu":"2","n_max":4,"out":{:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = taugraph(&["--config", cfg.to_str().unwrap(), "enumerate"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    // All graphs on 2 vertices: ν² + λν.
    assert_eq!(csv_column(&text, 1)[2], "5");
    let missing = dir.path().join("missing").join("x.csv");
    let o = taugraph(&["--config", cfg.to_str().unwrap(), "--out", missing.to_str().unwrap(), "census"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(taugraph(&["--family", "nonsense", "census"]).status.code(), Some(2));
    assert_eq!(taugraph(&["--n-max", "8", "--enumeration-cap", "8", "census"]).status.code(), Some(3));
    assert_eq!(taugraph(&["--n-max", "9", "enumerate"]).status.code(), Some(3));
    assert_eq!(taugraph(&["--config", "/no/such/file.json", "census"]).status.code(), Some(2));
    assert_eq!(taugraph(&["constants", "--gamma=-1"]).status.code(), Some(2));
}
