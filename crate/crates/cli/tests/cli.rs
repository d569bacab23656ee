use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dimspec"));
    c.env_remove("DIMSPEC_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(name: &str, args: &[&str]) -> PathBuf {
    let path = scratch(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", s(&path)]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_reports_point_count() {
    let path = scratch("f1_1e-6.pts");
    let o = run(&["generate", "--family", "power", "--lambda", "1", "--delta", "1e-6", "-o", s(&path)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("points 1000001 delta 1e-6 diameter 1"), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1_000_002);
}

#[test]
fn generate_moran_endpoints() {
    let path = scratch("moran.pts");
    let o = run(&[
        "generate", "--family", "moran", "--L", "0.05", "--alpha", "2", "--beta", "1.5", "--depth", "3", "-o", s(&path),
    ]);
    assert_eq!(code(&o), 0);
    // 4 * 20 * 400 intervals, two endpoints each
    assert!(stdout(&o).starts_with("points 64000 "), "{}", stdout(&o));
}

#[test]
fn missing_flags_are_usage_errors() {
    assert_eq!(code(&run(&["generate", "--delta", "1e-3"])), 2);
    assert_eq!(code(&run(&["generate", "--family", "power", "--delta", "1e-3"])), 2);
    assert_eq!(code(&run(&["generate", "--family", "power", "--lambda", "-1", "--delta", "1e-3"])), 2);
    assert_eq!(code(&run(&["sweep"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn unwritable_output_fails() {
    let o = run(&["generate", "--family", "interval", "--delta", "1e-2", "-o", "/nonexistent/dir/x.pts"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn singleton_sweep_is_zero() {
    let path = scratch("one.pts");
    std::fs::write(&path, "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=one\n5.0000000000000000e-1\n").unwrap();
    let o = run(&["sweep", s(&path)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("theta,kind,value,slope_fit,admissible_rungs,witness_R"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    for r in rows {
        assert_eq!(r.split(',').nth(2), Some("0"), "{r}");
    }
}

#[test]
fn sweep_rows_are_ordered_and_reproducible() {
    let set = generate("f1_1e-5.pts", &["--family", "power", "--lambda", "1", "--delta", "1e-5"]);
    let (a, b) = (scratch("sweep_a.csv"), scratch("sweep_b.csv"));
    for out in [&a, &b] {
        let o = run(&["sweep", s(&set), "-o", s(out)]);
        assert_eq!(code(&o), 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    let rows: Vec<(f64, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[1].to_string())
        })
        .collect();
    assert!(!rows.is_empty() && rows.len() <= 18);
    for w in rows.windows(2) {
        assert!(w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 == "assouad" && w[1].1 == "lower"));
    }

    let threaded = bin().env("DIMSPEC_THREADS", "2").args(["sweep", s(&set)]).output().unwrap();
    assert_eq!(threaded.stdout, text.as_bytes());
}

#[test]
fn sweep_with_no_admissible_theta_exits_3() {
    let set = generate("tiny.pts", &["--family", "power", "--lambda", "1", "--delta", "1e-2"]);
    let o = run(&["sweep", s(&set), "--start", "0.1", "--stop", "0.2"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.lines().filter(|l| l.starts_with("skipped")).count(), 4, "{err}");
}

#[test]
fn compare_against_oracles() {
    let set = generate("f1_cmp.pts", &["--family", "power", "--lambda", "1", "--delta", "1e-6"]);
    let sweep = scratch("f1_cmp.csv");
    let o = run(&["sweep", s(&set), "--start", "0.2", "--stop", "0.6", "--kind", "assouad", "-o", s(&sweep)]);
    assert_eq!(code(&o), 0);

    let good = run(&["compare", s(&sweep), "--oracle", "f-lambda", "--lambda", "1", "--band", "0.1"]);
    assert_eq!(code(&good), 0, "{}", stdout(&good));
    let out = stdout(&good);
    assert!(out.starts_with("theta,estimated,oracle,abs_error,within_band\n"));
    assert!(out.lines().last().unwrap().ends_with("result=pass"));

    let bad = run(&["compare", s(&sweep), "--oracle", "f-lambda", "--lambda", "3"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).lines().any(|l| l.ends_with(",false")));

    // the sweep holds no lower rows
    assert_eq!(code(&run(&["compare", s(&sweep), "--oracle", "f-lambda", "--lambda", "1", "--kind", "lower"])), 2);
    assert_eq!(code(&run(&["compare", s(&sweep), "--oracle", "spiral", "--b", "0.5"])), 2);
    assert_eq!(code(&run(&["compare", s(&sweep), "--oracle", "moran", "--alpha", "2"])), 2);
}

#[test]
fn compare_rejects_empty_sweeps() {
    let header_only = scratch("empty.csv");
    std::fs::write(&header_only, "theta,kind,value,slope_fit,admissible_rungs,witness_R\n").unwrap();
    assert_eq!(code(&run(&["compare", s(&header_only), "--oracle", "f-lambda", "--lambda", "1"])), 2);
    let blank = scratch("blank.csv");
    std::fs::write(&blank, "").unwrap();
    assert_eq!(code(&run(&["compare", s(&blank), "--oracle", "f-lambda", "--lambda", "1"])), 2);
}

#[test]
fn validate_reports() {
    let interval = generate("interval.pts", &["--family", "interval", "--delta", "1e-5"]);
    let o = run(&["validate", s(&interval), "--stop", "0.4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["all_pass"], true);
    assert!(!report["checks"].as_array().unwrap().is_empty());

    let f1 = generate("f1_val.pts", &["--family", "power", "--lambda", "1", "--delta", "1e-5"]);
    let o = run(&["validate", s(&f1), "--stop", "0.4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn corrupted_files_are_input_errors() {
    let path = scratch("corrupt.pts");
    std::fs::write(&path, "dimspec-pts v1 d=1 delta=1e-3 metric=euclidean label=x\n0.5\nnot-a-number\n").unwrap();
    assert_eq!(code(&run(&["validate", s(&path)])), 2);
    assert_eq!(code(&run(&["sweep", s(&path)])), 2);
    std::fs::write(&path, "garbage\n").unwrap();
    assert_eq!(code(&run(&["estimate", s(&path)])), 2);
    assert_eq!(code(&run(&["validate", s(&scratch("missing.pts"))])), 2);
}

#[test]
fn estimate_formats() {
    let set = generate("f2.pts", &["--family", "power", "--lambda", "2", "--delta", "1e-8"]);
    let o = run(&["estimate", s(&set), "--theta", "0.5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"], 10001);
    let q = v["quantities"].as_array().unwrap();
    assert_eq!(q.len(), 6);
    let upper = q.iter().find(|q| q["name"] == "upper_box").unwrap();
    assert!((upper["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.1);

    let o = run(&["estimate", s(&set), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("quantity,value,admissible\nupper_box,"));
    assert_eq!(code(&run(&["estimate", s(&set), "--theta", "1.5"])), 2);
}

#[test]
fn schedule_overrides() {
    let set = generate("f1_sched.pts", &["--family", "power", "--lambda", "1", "--delta", "1e-5"]);
    let o = run(&["sweep", s(&set), "--rho", "0.5", "--tail", "1", "--start", "0.5", "--stop", "0.5"]);
    assert_eq!(code(&o), 0);
    let o = run(&["sweep", s(&set), "--r-max", "0.25", "--count", "30", "--start", "0.5", "--stop", "0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["sweep", s(&set), "--rho", "1.5"])), 2);
    assert_eq!(code(&run(&["sweep", s(&set), "--aligned", "0.05,2,1.5,3", "--rho", "0.5"])), 2);
    assert_eq!(code(&run(&["sweep", s(&set), "--aligned", "0.05,2"])), 2);
}

#[test]
fn bad_thread_count_is_rejected() {
    let set = generate("one_thread.pts", &["--family", "interval", "--delta", "1e-2"]);
    let o = bin().env("DIMSPEC_THREADS", "zero").args(["estimate", s(&set)]).output().unwrap();
    assert_eq!(code(&o), 2);
}
