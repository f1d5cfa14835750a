#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use fertgame::ModelParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed-seed sampler of log-uniform parameters on `[0.1, 10]`.
pub struct Draws(ChaCha8Rng);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Draws(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (self.0.random_range(lo.ln()..hi.ln())).exp()
    }

    pub fn unit(&mut self) -> f64 {
        self.log_uniform(0.1, 10.0)
    }

    /// Game parameters; beta is fixed at 1 and unused.
    pub fn game(&mut self) -> ModelParams {
        ModelParams::new(
            self.unit(),
            self.unit(),
            self.unit(),
            1.0,
            self.unit(),
            self.unit(),
        )
    }

    /// All six parameters drawn.
    pub fn full(&mut self) -> ModelParams {
        ModelParams::new(
            self.unit(),
            self.unit(),
            self.unit(),
            self.unit(),
            self.unit(),
            self.unit(),
        )
    }

    /// Game parameters with positive equilibrium fertility.
    pub fn interior_game(&mut self) -> ModelParams {
        loop {
            let p = self.game();
            if fertgame::solve_game(&p).unwrap().interior {
                return p;
            }
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn scenario(name: &str) -> PathBuf {
    manifest_dir()
        .join("tests/scenarios")
        .join(format!("{name}.scn"))
}

pub fn golden(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(name)
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_fertgame"))
        .args(args)
        .env_remove("FERTGAME_OUT_DIR")
        .output()
        .expect("run fertgame");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// `(golden file, scenario, extra arguments after the scenario path)`.
pub const GOLDEN_CASES: &[(&str, &str, &str, &[&str])] = &[
    ("game_reference.solve.csv", "solve", "game_reference", &[]),
    (
        "game_reference.statics.csv",
        "statics",
        "game_reference",
        &[],
    ),
    (
        "game_reference.threshold.csv",
        "threshold",
        "game_reference",
        &["--param", "a_w"],
    ),
    (
        "game_reference.sweep.csv",
        "sweep",
        "game_reference",
        &[
            "--param", "a_w", "--from", "0.5", "--to", "7", "--steps", "13",
        ],
    ),
    ("game_boundary.solve.csv", "solve", "game_boundary", &[]),
    ("game_boundary.statics.csv", "statics", "game_boundary", &[]),
    (
        "game_boundary.threshold.csv",
        "threshold",
        "game_boundary",
        &["--param", "a_w"],
    ),
    (
        "game_boundary.sweep.csv",
        "sweep",
        "game_boundary",
        &[
            "--param", "a_w", "--from", "0.25", "--to", "2", "--steps", "7",
        ],
    ),
    ("extended_anchor.solve.csv", "solve", "extended_anchor", &[]),
    (
        "extended_anchor.sweep.csv",
        "sweep",
        "extended_anchor",
        &["--param", "a_m", "--from", "1", "--to", "5", "--steps", "8"],
    ),
];

/// Runs every golden case and returns a description of each mismatch.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (file, command, name, extra) in GOLDEN_CASES {
        let path = scenario(name);
        let mut args = vec![*command, path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let out = run_cli(&args);
        let want = std::fs::read_to_string(golden(file)).unwrap();
        if out.code != 0 || out.stdout != want {
            bad.push(format!("{file}: exit {} stderr {:?}", out.code, out.stderr));
        }
    }
    bad
}
