//! `fertgame` command-line front end.
//!
//! Every command renders into a buffer first, so a failure part-way through
//! never leaves a truncated table on stdout.

pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::benchmark::{benchmark_fertility_partials, benchmark_solve};
use crate::error::{Error, Result};
use crate::extended::{solve_extended, Diagnostic};
use crate::game::{fertility_threshold, fertility_threshold_in, solve_game};
use crate::oracle::oracle_game;
use crate::params::{ModelParams, Param};
use crate::population::{aggregate, LogNormal, ModelKind, PopulationSpec, PrefDist};
use crate::scenario::{parse_scenario, ScenarioConfig};
use crate::statics::{statics_report, FD_REL_STEP, GAME_PARAMS};

use format::{flag, num, opt};

/// Base directory for relative `--out` / `--svg` paths.
pub const OUT_DIR_ENV: &str = "FERTGAME_OUT_DIR";

/// Default log-standard-deviation of sampled incomes.
pub const DEFAULT_INCOME_SIGMA: f64 = 0.5;

#[derive(Debug, Parser)]
#[command(name = "fertgame", version, about = "Household fertility models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one scenario.
    Solve { scenario: PathBuf },
    /// Analytic and finite-difference comparative statics.
    Statics { scenario: PathBuf },
    /// Solve over an evenly spaced grid of one parameter.
    #[command(allow_negative_numbers = true)]
    Sweep {
        scenario: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Critical wife income at which fertility reaches zero.
    Threshold {
        scenario: PathBuf,
        #[arg(long, default_value = "a_w")]
        param: String,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
    },
    /// Solve a sampled population and aggregate.
    #[command(allow_negative_numbers = true)]
    Population {
        scenario: PathBuf,
        #[arg(long)]
        households: usize,
        /// Overrides the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Log-mean of a_w; defaults to ln(a_w) of the scenario.
        #[arg(long)]
        aw_mu: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_INCOME_SIGMA)]
        aw_sigma: f64,
        /// Log-mean of a_m; defaults to ln(a_m) of the scenario.
        #[arg(long)]
        am_mu: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_INCOME_SIGMA)]
        am_sigma: f64,
        /// Uniform range `lo,hi` replacing the scenario value.
        #[arg(long)]
        alpha_range: Option<String>,
        #[arg(long)]
        delta_range: Option<String>,
        #[arg(long)]
        gamma_range: Option<String>,
        #[arg(long)]
        beta_range: Option<String>,
        /// Overrides the scenario subsidy.
        #[arg(long)]
        subsidy: Option<f64>,
    },
}

/// Runs the CLI against the process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid usage");
            let _ = writeln!(err, "{}", line.trim());
            return 2;
        }
    };
    let mut notes = Vec::new();
    match execute(cli.command, &mut notes) {
        Ok(text) => {
            for note in notes {
                let _ = writeln!(err, "note: {note}");
            }
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, notes: &mut Vec<String>) -> Result<String> {
    match command {
        Command::Solve { scenario } => {
            let cfg = load(&scenario)?;
            let (cells, diagnostics) = solve_cells(&cfg, &cfg.params)?;
            notes.extend(diagnostics);
            Ok(format!(
                "{}\n{}\n",
                solve_header(cfg.model),
                cells.join(",")
            ))
        }
        Command::Statics { scenario } => statics_table(&load(&scenario)?),
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            out,
            svg,
        } => {
            let cfg = load(&scenario)?;
            let param: Param = param.parse()?;
            sweep(&cfg, param, from, to, steps, out.as_deref(), svg.as_deref())
        }
        Command::Threshold {
            scenario,
            param,
            lo,
            hi,
        } => {
            let cfg = load(&scenario)?;
            if cfg.model != ModelKind::Game {
                return Err(Error::Usage(format!(
                    "threshold needs a game scenario (got `{}`)",
                    cfg.model
                )));
            }
            let param: Param = param.parse()?;
            let value = match (lo, hi) {
                (None, None) => fertility_threshold(&cfg.params, param)?,
                (Some(lo), Some(hi)) => {
                    if param != Param::AW {
                        return Err(Error::UnsupportedParameter(param.name()));
                    }
                    fertility_threshold_in(&cfg.params, lo, hi)?
                }
                _ => return Err(Error::Usage("--lo and --hi go together".into())),
            };
            Ok(format!("param,threshold\n{},{}\n", param, num(value)))
        }
        Command::Population {
            scenario,
            households,
            seed,
            aw_mu,
            aw_sigma,
            am_mu,
            am_sigma,
            alpha_range,
            delta_range,
            gamma_range,
            beta_range,
            subsidy,
        } => {
            let cfg = load(&scenario)?;
            let p = cfg.params;
            let pref = |range: Option<String>, fixed: f64| -> Result<PrefDist> {
                match range {
                    None => Ok(PrefDist::Fixed(fixed)),
                    Some(text) => parse_range(&text),
                }
            };
            let spec = PopulationSpec {
                count: households,
                seed: seed.or(cfg.seed).unwrap_or(0),
                aw_dist: LogNormal {
                    mu: aw_mu.unwrap_or(p.a_w.ln()),
                    sigma: aw_sigma,
                },
                am_dist: LogNormal {
                    mu: am_mu.unwrap_or(p.a_m.ln()),
                    sigma: am_sigma,
                },
                alpha: pref(alpha_range, p.alpha)?,
                delta: pref(delta_range, p.delta)?,
                gamma: pref(gamma_range, p.gamma)?,
                beta: pref(beta_range, p.beta)?,
                model: cfg.model,
                regime: cfg.regime,
                subsidy: subsidy.unwrap_or(cfg.subsidy),
            };
            population_table(&spec)
        }
    }
}

fn load(path: &Path) -> Result<ScenarioConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let path = resolve(path);
    std::fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_range(text: &str) -> Result<PrefDist> {
    let bad = || Error::InvalidDistribution(format!("expected `lo,hi`, got `{text}`"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(PrefDist::Uniform { lo, hi })
}

const SOLVE_COLUMNS: &str =
    "model,rho_star,n_star,c_w,c_m,u_w,u_m,wife_participates,husband_participates,interior";

fn solve_header(model: ModelKind) -> String {
    match model {
        ModelKind::Extended => format!("{SOLVE_COLUMNS},regime,root_count"),
        _ => SOLVE_COLUMNS.to_string(),
    }
}

/// Solve-table cells for `p` under the scenario's model, plus any notes.
fn solve_cells(cfg: &ScenarioConfig, p: &ModelParams) -> Result<(Vec<String>, Vec<String>)> {
    let model = cfg.model.name().to_string();
    match cfg.model {
        ModelKind::Benchmark => {
            let s = benchmark_solve(p)?;
            let cells = vec![
                model,
                opt(None),
                num(s.n_star),
                num(s.c_w),
                num(s.c_m),
                num(s.u_w),
                num(s.u_m),
                opt(None),
                opt(None),
                flag(s.n_star > 0.0),
            ];
            Ok((cells, Vec::new()))
        }
        ModelKind::Game => {
            let eq = if cfg.subsidy > 0.0 {
                oracle_game(p, cfg.subsidy)?
            } else {
                solve_game(p)?
            };
            let cells = vec![
                model,
                num(eq.rho_star),
                num(eq.n_star),
                num(eq.c_w),
                num(eq.c_m),
                num(eq.u_w),
                num(eq.u_m),
                flag(eq.wife_participates),
                flag(eq.husband_participates),
                flag(eq.interior),
            ];
            Ok((cells, Vec::new()))
        }
        ModelKind::Extended => {
            let eq = solve_extended(p, cfg.regime)?;
            let cells = vec![
                model,
                opt(eq.selected_rho),
                num(eq.n_star),
                num(eq.c_w),
                num(eq.c_m),
                num(eq.u_w),
                num(eq.u_m),
                flag(eq.wife_participates),
                flag(eq.husband_participates),
                flag(eq.interior()),
                eq.regime.name().to_string(),
                eq.positive_roots.len().to_string(),
            ];
            let notes = eq
                .diagnostics
                .iter()
                .filter_map(|d| match d {
                    Diagnostic::NoInteriorOptimum => Some("no admissible interior root; reporting the no-birth outcome".to_string()),
                    Diagnostic::RegimeDegenerate | Diagnostic::PositiveRootCount(_) => None,
                    Diagnostic::DiscriminantMismatch { isolated, discriminant } => Some(format!(
                        "root isolation found {isolated} real roots, discriminant implies {discriminant}"
                    )),
                })
                .collect();
            Ok((cells, notes))
        }
    }
}

const STATICS_HEADER: &str = "param,analytic_rho,fd_rho,analytic_n,fd_n,regime_note\n";

fn statics_table(cfg: &ScenarioConfig) -> Result<String> {
    let mut s = String::from(STATICS_HEADER);
    match cfg.model {
        ModelKind::Game => {
            let r = statics_report(&cfg.params)?;
            for param in GAME_PARAMS {
                let note = match (&r.regimes, param) {
                    (_, _) if r.fd_n_one_sided => "one_sided_forward",
                    (Some((d, _)), Param::Delta) => d.note(param),
                    (Some((_, g)), Param::Gamma) => g.note(param),
                    _ => "",
                };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    param,
                    opt(r.partial_rho.get(param)),
                    opt(r.fd_rho.get(param)),
                    opt(r.partial_n.as_ref().and_then(|d| d.get(param))),
                    opt(r.fd_n.get(param)),
                    note
                );
            }
            let _ = writeln!(
                s,
                "a_w/a_m,{},{},{},{},",
                num(r.ratio_rho.0),
                num(r.ratio_rho.1),
                opt(r.ratio_n.map(|x| x.0)),
                opt(r.ratio_n.map(|x| x.1)),
            );
        }
        ModelKind::Benchmark => {
            let d = benchmark_fertility_partials(&cfg.params)?;
            let analytic = [d.alpha, d.delta, d.gamma, d.beta, d.a_w, d.a_m];
            for (param, a) in Param::ALL.into_iter().zip(analytic) {
                let fd = benchmark_fd(&cfg.params, param)?;
                let _ = writeln!(s, "{},NA,NA,{},{},", param, num(a), num(fd));
            }
        }
        ModelKind::Extended => {
            return Err(Error::Usage(
                "statics is available for the game and benchmark models".into(),
            ))
        }
    }
    Ok(s)
}

fn benchmark_fd(p: &ModelParams, param: Param) -> Result<f64> {
    let x = p.get(param);
    let h = FD_REL_STEP * x;
    let n = |v: f64| -> Result<f64> { Ok(benchmark_solve(&p.with(param, v))?.n_star) };
    Ok((n(x + h)? - n(x - h)?) / (2.0 * h))
}

fn sweep(
    cfg: &ScenarioConfig,
    param: Param,
    from: f64,
    to: f64,
    steps: usize,
    out: Option<&Path>,
    svg_path: Option<&Path>,
) -> Result<String> {
    if steps == 0 {
        return Err(Error::Usage("--steps must be at least 1".into()));
    }
    if !(from.is_finite() && to.is_finite()) {
        return Err(Error::Usage("--from and --to must be finite".into()));
    }
    let grid: Vec<f64> = (0..=steps)
        .map(|i| {
            if i == steps {
                to
            } else {
                from + (to - from) * i as f64 / steps as f64
            }
        })
        .collect();
    let rows: Vec<(Vec<String>, f64)> = grid
        .par_iter()
        .map(|&v| -> Result<(Vec<String>, f64)> {
            let p = cfg.params.with(param, v).validate()?;
            let (cells, _) = solve_cells(cfg, &p)?;
            let n = cells[2].parse().unwrap_or(f64::NAN);
            Ok((cells, n))
        })
        .collect::<Result<_>>()?;

    let mut csv = format!("param_value,{}\n", solve_header(cfg.model));
    for (&v, (cells, _)) in grid.iter().zip(&rows) {
        let _ = writeln!(csv, "{},{}", num(v), cells.join(","));
    }
    if let Some(path) = svg_path {
        let ns: Vec<f64> = rows.iter().map(|r| r.1).collect();
        write_file(path, &svg::line_chart(&grid, &ns, param.name(), "n_star"))?;
    }
    match out {
        Some(path) => {
            write_file(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

fn population_table(spec: &PopulationSpec) -> Result<String> {
    let r = aggregate(spec)?;
    let mut s = String::from(
        "households,mean_fertility,childless_share,mean_transfer,mean_income_ratio,subsidy,subsidy_funding\n",
    );
    let _ = writeln!(
        s,
        "{},{},{},{},{},{},{}",
        r.households,
        num(r.mean_fertility),
        num(r.childless_share),
        opt(r.mean_transfer),
        num(r.mean_income_ratio),
        num(r.subsidy),
        r.subsidy_funding
    );
    s.push_str("\ndecile,count,ratio_lo,ratio_hi,mean_fertility\n");
    for (i, b) in r.fertility_by_ratio_decile.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            i + 1,
            b.count,
            opt(b.ratio_lo),
            opt(b.ratio_hi),
            opt(b.mean_fertility)
        );
    }
    Ok(s)
}
