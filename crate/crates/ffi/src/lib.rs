//! C ABI for `fertgame`.
//!
//! Every function returns an [`FgStatus`] and writes results through
//! out-pointers, which are left untouched on failure. The message for the
//! most recent failure on the calling thread is available from
//! [`fg_last_error`]. Handles come from `fg_params_new` / `fg_extended_solve`
//! and are released with the matching `*_free`.
//!
//! Regimes and models cross the boundary as plain integers (`FG_REGIME_*`,
//! `FG_MODEL_*`) so that an out-of-range value from C is an error, not
//! undefined behavior.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fertgame::benchmark::benchmark_solve;
use fertgame::error::Error;
use fertgame::extended::{solve_extended, Diagnostic, ExtendedEquilibrium, Regime};
use fertgame::game::{
    equilibrium_transfer, fertility_threshold, solve_game, wife_reaction, GameEquilibrium,
};
use fertgame::oracle::oracle_game;
use fertgame::population::{aggregate, LogNormal, ModelKind, PopulationSpec, PrefDist, DECILES};
use fertgame::statics::{analytic_partials_n, analytic_partials_rho, GamePartials};
use fertgame::{ModelParams, Param};

pub const FG_REGIME_LOW: u32 = 0;
pub const FG_REGIME_HIGH: u32 = 1;

pub const FG_MODEL_BENCHMARK: u32 = 0;
pub const FG_MODEL_GAME: u32 = 1;
pub const FG_MODEL_EXTENDED: u32 = 2;

pub const FG_DECILES: usize = 10;
const _: () = assert!(FG_DECILES == DECILES);

/// Result code of every call. The nonzero codes for model errors match the
/// CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    SolverFailure = 3,
    Panic = 4,
}

/// Validated model parameters.
pub struct FgParams(ModelParams);

/// Solved extended game, including its root lists.
pub struct FgExtended(ExtendedEquilibrium);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgGameResult {
    pub rho_star: f64,
    pub n_star: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub u_w: f64,
    pub u_m: f64,
    pub wife_participates: bool,
    pub husband_participates: bool,
    pub interior: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgBenchmarkResult {
    pub n_star: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub u_family: f64,
    pub u_w: f64,
    pub u_m: f64,
    pub wife_utility_delta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgExtendedResult {
    /// False at the no-birth fallback; `rho` is then NaN.
    pub has_rho: bool,
    pub rho: f64,
    pub n_star: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub u_w: f64,
    pub u_m: f64,
    pub wife_participates: bool,
    pub husband_participates: bool,
    pub interior: bool,
    pub regime: u32,
    pub real_root_count: usize,
    pub positive_root_count: usize,
    pub admissible_root_count: usize,
    pub no_interior_optimum: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgPartials {
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub a_w: f64,
    pub a_m: f64,
}

/// Uniform range; `lo == hi` fixes the value.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgRange {
    pub lo: f64,
    pub hi: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgPopulationSpec {
    pub count: usize,
    pub seed: u64,
    pub aw_mu: f64,
    pub aw_sigma: f64,
    pub am_mu: f64,
    pub am_sigma: f64,
    pub alpha: FgRange,
    pub delta: FgRange,
    pub gamma: FgRange,
    pub beta: FgRange,
    pub model: u32,
    pub regime: u32,
    pub subsidy: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FgAggregate {
    pub households: usize,
    pub mean_fertility: f64,
    pub childless_share: f64,
    pub has_mean_transfer: bool,
    pub mean_transfer: f64,
    pub mean_income_ratio: f64,
    pub decile_counts: [usize; FG_DECILES],
    /// NaN for an empty decile.
    pub decile_mean_fertility: [f64; FG_DECILES],
    pub subsidy: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(FgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            3 => FgStatus::SolverFailure,
            _ => FgStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FgStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FgStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn deref_params<'a>(p: *const FgParams) -> Result<&'a ModelParams, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("params"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn regime(code: u32) -> Result<Regime, Failure> {
    match code {
        FG_REGIME_LOW => Ok(Regime::Low),
        FG_REGIME_HIGH => Ok(Regime::High),
        other => Err(Failure(
            FgStatus::InvalidInput,
            format!("unknown regime {other}"),
        )),
    }
}

fn model(code: u32) -> Result<ModelKind, Failure> {
    match code {
        FG_MODEL_BENCHMARK => Ok(ModelKind::Benchmark),
        FG_MODEL_GAME => Ok(ModelKind::Game),
        FG_MODEL_EXTENDED => Ok(ModelKind::Extended),
        other => Err(Failure(
            FgStatus::InvalidInput,
            format!("unknown model {other}"),
        )),
    }
}

fn game_result(eq: &GameEquilibrium) -> FgGameResult {
    FgGameResult {
        rho_star: eq.rho_star,
        n_star: eq.n_star,
        c_w: eq.c_w,
        c_m: eq.c_m,
        u_w: eq.u_w,
        u_m: eq.u_m,
        wife_participates: eq.wife_participates,
        husband_participates: eq.husband_participates,
        interior: eq.interior,
    }
}

fn partials(d: &GamePartials) -> FgPartials {
    FgPartials {
        alpha: d.alpha,
        delta: d.delta,
        gamma: d.gamma,
        a_w: d.a_w,
        a_m: d.a_m,
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn fg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Validates parameters and allocates a handle. The rearing cost is borne
/// by the husband; see [`fg_params_set_cost_split`].
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn fg_params_new(
    alpha: f64,
    delta: f64,
    gamma: f64,
    beta: f64,
    a_w: f64,
    a_m: f64,
    out: *mut *mut FgParams,
) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = ModelParams::new(alpha, delta, gamma, beta, a_w, a_m).validate()?;
        write(out, Box::into_raw(Box::new(FgParams(p))))
    })
}

/// Sets how `beta` is split between wife and husband; the parts must add up
/// to `beta`.
///
/// # Safety
/// `params` must be null or a live handle from [`fg_params_new`].
#[no_mangle]
pub unsafe extern "C" fn fg_params_set_cost_split(
    params: *mut FgParams,
    beta_w: f64,
    beta_m: f64,
) -> FgStatus {
    guard(|| {
        let handle = params.as_mut().ok_or_else(|| null("params"))?;
        handle.0 = handle.0.with_cost_split(beta_w, beta_m).validate()?;
        Ok(())
    })
}

/// Reads one parameter by name index: 0 alpha, 1 delta, 2 gamma, 3 beta,
/// 4 a_w, 5 a_m.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_params_get(
    params: *const FgParams,
    index: u32,
    out: *mut f64,
) -> FgStatus {
    guard(|| {
        let p = deref_params(params)?;
        let param = *Param::ALL.get(index as usize).ok_or_else(|| {
            Failure(
                FgStatus::InvalidInput,
                format!("unknown parameter index {index}"),
            )
        })?;
        write(out, p.get(param))
    })
}

/// # Safety
/// `params` must be null or a handle from [`fg_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_params_free(params: *mut FgParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_solve_benchmark(
    params: *const FgParams,
    out: *mut FgBenchmarkResult,
) -> FgStatus {
    guard(|| {
        let s = benchmark_solve(deref_params(params)?)?;
        write(
            out,
            FgBenchmarkResult {
                n_star: s.n_star,
                c_w: s.c_w,
                c_m: s.c_m,
                u_family: s.u_family,
                u_w: s.u_w,
                u_m: s.u_m,
                wife_utility_delta: s.wife_utility_delta,
            },
        )
    })
}

/// Closed-form game equilibrium.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_solve_game(
    params: *const FgParams,
    out: *mut FgGameResult,
) -> FgStatus {
    guard(|| write(out, game_result(&solve_game(deref_params(params)?)?)))
}

/// Game with a per-child subsidy to the wife, solved by direct search.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_oracle_game(
    params: *const FgParams,
    subsidy: f64,
    out: *mut FgGameResult,
) -> FgStatus {
    guard(|| {
        write(
            out,
            game_result(&oracle_game(deref_params(params)?, subsidy)?),
        )
    })
}

/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_equilibrium_transfer(
    params: *const FgParams,
    out: *mut f64,
) -> FgStatus {
    guard(|| write(out, equilibrium_transfer(deref_params(params)?)?))
}

/// Wife's fertility response to transfer `rho`.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_wife_reaction(
    params: *const FgParams,
    rho: f64,
    out: *mut f64,
) -> FgStatus {
    guard(|| write(out, wife_reaction(deref_params(params)?, rho)?.n))
}

/// Critical wife income above which no children are born.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_fertility_threshold(
    params: *const FgParams,
    out: *mut f64,
) -> FgStatus {
    guard(|| write(out, fertility_threshold(deref_params(params)?, Param::AW)?))
}

/// Analytic partials of the equilibrium transfer and fertility. `n_out`
/// may be null; fertility partials fail with `SolverFailure` when
/// fertility sits at zero, after `rho_out` has been written.
///
/// # Safety
/// `params` must be null or a live handle; outputs null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_statics(
    params: *const FgParams,
    rho_out: *mut FgPartials,
    n_out: *mut FgPartials,
) -> FgStatus {
    guard(|| {
        let p = deref_params(params)?;
        write(rho_out, partials(&analytic_partials_rho(p)?))?;
        if !n_out.is_null() {
            write(n_out, partials(&analytic_partials_n(p)?))?;
        }
        Ok(())
    })
}

/// Solves the extended game and allocates a handle holding the result.
///
/// # Safety
/// `params` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_extended_solve(
    params: *const FgParams,
    regime_code: u32,
    out: *mut *mut FgExtended,
) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let eq = solve_extended(deref_params(params)?, regime(regime_code)?)?;
        write(out, Box::into_raw(Box::new(FgExtended(eq))))
    })
}

/// # Safety
/// `handle` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_extended_summary(
    handle: *const FgExtended,
    out: *mut FgExtendedResult,
) -> FgStatus {
    guard(|| {
        let eq = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        write(
            out,
            FgExtendedResult {
                has_rho: eq.selected_rho.is_some(),
                rho: eq.selected_rho.unwrap_or(f64::NAN),
                n_star: eq.n_star,
                c_w: eq.c_w,
                c_m: eq.c_m,
                u_w: eq.u_w,
                u_m: eq.u_m,
                wife_participates: eq.wife_participates,
                husband_participates: eq.husband_participates,
                interior: eq.interior(),
                regime: match eq.regime {
                    Regime::Low => FG_REGIME_LOW,
                    Regime::High => FG_REGIME_HIGH,
                },
                real_root_count: eq.real_roots.len(),
                positive_root_count: eq.positive_roots.len(),
                admissible_root_count: eq.admissible_roots.len(),
                no_interior_optimum: eq.has(Diagnostic::NoInteriorOptimum),
            },
        )
    })
}

/// Copies up to `len` positive roots of the first-order cubic into `buf`
/// and stores the total number in `count`.
///
/// # Safety
/// `handle` must be null or live; `buf` valid for `len` writes unless
/// `len == 0`; `count` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_extended_positive_roots(
    handle: *const FgExtended,
    buf: *mut f64,
    len: usize,
    count: *mut usize,
) -> FgStatus {
    guard(|| {
        let eq = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        if len > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, r) in eq.positive_roots.iter().take(len).enumerate() {
            buf.add(i).write(*r);
        }
        write(count, eq.positive_roots.len())
    })
}

/// # Safety
/// `handle` must be null or a handle from [`fg_extended_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_extended_free(handle: *mut FgExtended) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Samples and solves a population.
///
/// # Safety
/// `spec` must be null or readable; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fg_population_aggregate(
    spec: *const FgPopulationSpec,
    out: *mut FgAggregate,
) -> FgStatus {
    guard(|| {
        let s = spec.as_ref().ok_or_else(|| null("spec"))?;
        let pref = |r: FgRange| {
            if r.lo == r.hi {
                PrefDist::Fixed(r.lo)
            } else {
                PrefDist::Uniform { lo: r.lo, hi: r.hi }
            }
        };
        let spec = PopulationSpec {
            count: s.count,
            seed: s.seed,
            aw_dist: LogNormal {
                mu: s.aw_mu,
                sigma: s.aw_sigma,
            },
            am_dist: LogNormal {
                mu: s.am_mu,
                sigma: s.am_sigma,
            },
            alpha: pref(s.alpha),
            delta: pref(s.delta),
            gamma: pref(s.gamma),
            beta: pref(s.beta),
            model: model(s.model)?,
            regime: regime(s.regime)?,
            subsidy: s.subsidy,
        };
        let r = aggregate(&spec)?;
        let mut result = FgAggregate {
            households: r.households,
            mean_fertility: r.mean_fertility,
            childless_share: r.childless_share,
            has_mean_transfer: r.mean_transfer.is_some(),
            mean_transfer: r.mean_transfer.unwrap_or(f64::NAN),
            mean_income_ratio: r.mean_income_ratio,
            decile_counts: [0; FG_DECILES],
            decile_mean_fertility: [f64::NAN; FG_DECILES],
            subsidy: r.subsidy,
        };
        for (i, b) in r.fertility_by_ratio_decile.iter().enumerate() {
            result.decile_counts[i] = b.count;
            result.decile_mean_fertility[i] = b.mean_fertility.unwrap_or(f64::NAN);
        }
        write(out, result)
    })
}
