mod common;

use std::fs;
use std::process::Command;

use common::{golden_mismatches, run_cli, scenario};

fn path(name: &str) -> String {
    scenario(name).to_str().unwrap().to_string()
}

fn cells(csv: &str, row: usize) -> Vec<(String, String)> {
    let mut lines = csv.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let values: Vec<String> = lines
        .nth(row)
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    header.into_iter().zip(values).collect()
}

fn cell(csv: &str, row: usize, column: &str) -> String {
    cells(csv, row)
        .into_iter()
        .find(|(k, _)| k == column)
        .unwrap_or_else(|| panic!("no column {column}"))
        .1
}

#[test]
fn goldens_are_byte_identical() {
    let bad = golden_mismatches();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn reference_solve_row() {
    let out = run_cli(&["solve", &path("game_reference")]);
    assert_eq!(out.code, 0);
    assert_eq!(cell(&out.stdout, 0, "rho_star"), "2");
    assert_eq!(cell(&out.stdout, 0, "n_star"), "0.5");
    assert_eq!(cell(&out.stdout, 0, "interior"), "true");
    assert!(out.stderr.is_empty());
}

#[test]
fn output_is_stable_across_runs() {
    let args = [
        "sweep",
        &path("extended_anchor"),
        "--param",
        "a_w",
        "--from",
        "0.2",
        "--to",
        "3",
        "--steps",
        "30",
    ];
    let a = run_cli(&args);
    let b = run_cli(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 32);
    assert!(!a.stdout.contains('\r'));
}

#[test]
fn sweep_reaches_zero_at_threshold() {
    let out = run_cli(&[
        "sweep",
        &path("game_reference"),
        "--param",
        "a_w",
        "--from",
        "0.5",
        "--to",
        "7",
        "--steps",
        "13",
    ]);
    assert_eq!(out.code, 0);
    for row in 0..14 {
        let a_w: f64 = cell(&out.stdout, row, "param_value").parse().unwrap();
        let n: f64 = cell(&out.stdout, row, "n_star").parse().unwrap();
        assert_eq!(n == 0.0, a_w >= 6.0, "a_w {a_w} n {n}");
    }
}

#[test]
fn sweep_files_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fertgame"))
        .args([
            "sweep",
            &path("game_reference"),
            "--param",
            "a_w",
            "--from",
            "0.5",
            "--to",
            "7",
            "--steps",
            "13",
        ])
        .args(["--out", "sweep.csv", "--svg", "sweep.svg"])
        .env("FERTGAME_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let golden = fs::read_to_string(common::golden("game_reference.sweep.csv")).unwrap();
    assert_eq!(csv, golden);
    let svg = fs::read_to_string(dir.path().join("sweep.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains(">a_w</text>") && svg.contains(">n_star</text>"));
    let points = svg
        .split("points=\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    assert_eq!(points.split(' ').count(), 14);
}

#[test]
fn threshold_value() {
    let out = run_cli(&["threshold", &path("game_reference"), "--param", "a_w"]);
    assert_eq!(out.stdout, "param,threshold\na_w,6\n");
    let bracketed = run_cli(&[
        "threshold",
        &path("game_reference"),
        "--param",
        "a_w",
        "--lo",
        "1",
        "--hi",
        "10",
    ]);
    assert_eq!(bracketed.stdout, "param,threshold\na_w,6\n");
}

#[test]
fn subsidy_scenario_uses_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("subsidy.scn");
    fs::write(
        &file,
        "model = game\nalpha = 1\ndelta = 1\ngamma = 1\na_w = 1\na_m = 1\nsubsidy = 0.5\n",
    )
    .unwrap();
    let out = run_cli(&["solve", file.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rho: f64 = cell(&out.stdout, 0, "rho_star").parse().unwrap();
    let n: f64 = cell(&out.stdout, 0, "n_star").parse().unwrap();
    assert!((rho - 0.6812892828397642).abs() < 1e-6, "{rho}");
    assert!((n - 0.15346730514980478).abs() < 1e-7, "{n}");
}

#[test]
fn benchmark_solve_and_statics() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bench.scn");
    fs::write(
        &file,
        "model = benchmark\nalpha = 2\ndelta = 1\ngamma = 1\nbeta = 1\na_w = 2\na_m = 2\n",
    )
    .unwrap();
    let file = file.to_str().unwrap();
    let solve = run_cli(&["solve", file]);
    assert_eq!(solve.code, 0);
    assert_eq!(cell(&solve.stdout, 0, "rho_star"), "NA");
    assert_eq!(cell(&solve.stdout, 0, "n_star"), "1.33333333333");
    let statics = run_cli(&["statics", file]);
    assert_eq!(statics.code, 0);
    assert_eq!(statics.stdout.lines().count(), 7);
    let d_beta: f64 = cell(&statics.stdout, 3, "analytic_n").parse().unwrap();
    assert!(d_beta < 0.0);
}

#[test]
fn population_report() {
    let args = [
        "population",
        &path("game_reference"),
        "--households",
        "500",
        "--seed",
        "3",
    ];
    let a = run_cli(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let lines: Vec<&str> = a.stdout.lines().collect();
    assert!(lines[0].starts_with("households,mean_fertility,childless_share"));
    assert!(lines[1].starts_with("500,"));
    assert!(lines[1].ends_with(",general_revenue"));
    assert_eq!(lines[2], "");
    assert_eq!(lines[3], "decile,count,ratio_lo,ratio_hi,mean_fertility");
    assert_eq!(lines.len(), 14);
    let counted: usize = lines[4..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(counted, 500);

    assert_eq!(run_cli(&args).stdout, a.stdout);
    let other = run_cli(&[
        "population",
        &path("game_reference"),
        "--households",
        "500",
        "--seed",
        "4",
    ]);
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn population_point_mass_matches_solve() {
    let out = run_cli(&[
        "population",
        &path("game_reference"),
        "--households",
        "20",
        "--aw-sigma",
        "0",
        "--am-sigma",
        "0",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(cell(&out.stdout, 0, "mean_fertility"), "0.5");
    assert_eq!(cell(&out.stdout, 0, "childless_share"), "0");
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let unknown = write("unknown.scn", "model = game\ncolour = red\n");
    let missing = write(
        "missing.scn",
        "model = extended\nalpha = 1\ndelta = 1\ngamma = 1\na_w = 1\na_m = 1\n",
    );
    let negative = write(
        "negative.scn",
        "model = game\nalpha = 1\ndelta = 1\ngamma = 1\na_w = -1\na_m = 1\n",
    );
    let order = write(
        "order.scn",
        "model = benchmark\nalpha = 1\ndelta = 2\ngamma = 1\nbeta = 1\na_w = 1\na_m = 1\n",
    );
    let reference = path("game_reference");
    let extended = path("extended_anchor");
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve", &unknown],
        vec!["solve", &missing],
        vec!["solve", &negative],
        vec!["solve", &order],
        vec!["statics", &extended],
        vec!["threshold", &extended],
        vec!["threshold", &reference, "--param", "a_m"],
        vec![
            "sweep", &reference, "--param", "kappa", "--from", "1", "--to", "2", "--steps", "1",
        ],
        vec![
            "sweep", &reference, "--param", "a_w", "--from", "1", "--to", "2", "--steps", "0",
        ],
        vec!["population", &reference, "--households", "0"],
        vec![
            "population",
            &reference,
            "--households",
            "10",
            "--aw-sigma",
            "-1",
        ],
        vec![
            "population",
            &extended,
            "--households",
            "10",
            "--subsidy",
            "1",
        ],
        vec!["solve"],
        vec![],
    ];
    for args in cases {
        let out = run_cli(&args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty(), "{args:?}");
        assert_eq!(out.stderr.lines().count(), 1, "{args:?}: {:?}", out.stderr);
    }
}

#[test]
fn solver_failure_exits_3() {
    let out = run_cli(&[
        "threshold",
        &path("game_reference"),
        "--param",
        "a_w",
        "--lo",
        "7",
        "--hi",
        "8",
    ]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error: "));
}

#[test]
fn help_exits_0() {
    let out = run_cli(&["--help"]);
    assert_eq!(out.code, 0);
    for command in ["solve", "statics", "sweep", "threshold", "population"] {
        assert!(out.stdout.contains(command));
    }
}
