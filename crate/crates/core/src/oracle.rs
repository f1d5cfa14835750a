//! Brute-force 1-D maximizers used to certify the closed forms, and to solve
//! the subsidized game, which has no closed form.
//!
//! Every search is a uniform grid followed by golden-section refinement in
//! the cell pair around the best grid point, so a multimodal objective is
//! bracketed at grid resolution before the unimodal refinement starts.

use crate::benchmark::{self, require_preference_order, BenchmarkSolution};
use crate::error::{Error, Result};
use crate::extended::{consumption_limit, extended_husband_objective};
use crate::game::{self, husband_objective, wife_utility, GameEquilibrium};
use crate::params::ModelParams;

pub const DEFAULT_GRID: usize = 1024;

/// Golden-section interval width, relative to the search domain.
pub const DEFAULT_REL_TOL: f64 = 1e-13;

// Domain ends are pulled in by this fraction so objectives that diverge
// at the boundary stay finite on the grid.
const EDGE: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub argmax: f64,
    pub value: f64,
}

/// Maximizes `f` on `[lo, hi]` with the default 1,024-point grid.
pub fn maximize_1d<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    maximize_1d_grid(f, lo, hi, tol, DEFAULT_GRID)
}

pub fn maximize_1d_grid<F>(f: F, lo: f64, hi: f64, tol: f64, grid: usize) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi && lo.is_finite() && hi.is_finite()) || grid < 3 {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective { x })
        }
    };

    let step = (hi - lo) / (grid - 1) as f64;
    let point = |i: usize| {
        if i == grid - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best = Maximum {
        argmax: lo,
        value: eval(lo)?,
    };
    let mut best_i = 0;
    for i in 1..grid {
        let x = point(i);
        let v = eval(x)?;
        if v > best.value {
            best = Maximum {
                argmax: x,
                value: v,
            };
            best_i = i;
        }
    }

    let mut a = point(best_i.saturating_sub(1));
    let mut b = point((best_i + 1).min(grid - 1));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    for _ in 0..300 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        }
    }
    let mid = 0.5 * (a + b);
    for (x, v) in [(x1, f1), (x2, f2), (mid, eval(mid)?)] {
        if v > best.value {
            best = Maximum {
                argmax: x,
                value: v,
            };
        }
    }
    Ok(best)
}

fn search<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Maximum> {
    maximize_1d(f, lo, hi, DEFAULT_REL_TOL * (hi - lo))
}

/// Wife's best response to `rho` by direct search over `n in [0, 2 gamma/delta]`.
pub fn oracle_wife_reaction(p: &ModelParams, rho: f64) -> Result<Maximum> {
    let p = p.validate()?;
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::NonPositiveTransfer(rho));
    }
    search(|n| wife_utility(&p, rho, n), 0.0, 2.0 * p.gamma_ratio())
}

/// Husband's transfer by direct search over his objective with the
/// unclamped response substituted, on `(0, (a_w + a_m) / (gamma/delta))`.
pub fn oracle_transfer(p: &ModelParams) -> Result<Maximum> {
    let p = p.validate()?;
    let limit = p.total_income() / p.gamma_ratio();
    search(
        |r| husband_objective(&p, r),
        EDGE * limit,
        (1.0 - EDGE) * limit,
    )
}

/// Largest transfer the husband can pay out of his own income when the wife
/// also receives `subsidy` per child: positive root of
/// `G r^2 + (G s - a_w - a_m) r - a_m s = 0`.
pub fn subsidized_transfer_limit(p: &ModelParams, subsidy: f64) -> f64 {
    let g = p.gamma_ratio();
    let b = g * subsidy - p.total_income();
    let c = -p.a_m * subsidy;
    if c == 0.0 {
        return -b / g;
    }
    let disc = (b * b - 4.0 * g * c).sqrt();
    if b <= 0.0 {
        (-b + disc) / (2.0 * g)
    } else {
        -2.0 * c / (b + disc)
    }
}

/// Game with a government subsidy paid to the wife per child, solved by
/// search. The husband's transfer is chosen over
/// `(0, subsidized_transfer_limit]`, the range on which his consumption is
/// positive; the wife responds to the effective transfer `rho + subsidy`.
pub fn oracle_game(p: &ModelParams, subsidy: f64) -> Result<GameEquilibrium> {
    let p = p.validate()?;
    if !(subsidy >= 0.0 && subsidy.is_finite()) {
        return Err(Error::DomainError(format!(
            "subsidy must be >= 0 (got {subsidy})"
        )));
    }
    let g = p.gamma_ratio();
    let response = |rho: f64| (g - p.a_w / (rho + subsidy)).max(0.0);
    let utility = |rho: f64| {
        let n = response(rho);
        let c_m = p.a_m - rho * n;
        if c_m > 0.0 {
            c_m.ln() + p.alpha * n
        } else {
            f64::NEG_INFINITY
        }
    };
    let limit = subsidized_transfer_limit(&p, subsidy);
    let best = search(utility, EDGE * limit, (1.0 - EDGE) * limit)?;
    let rho = best.argmax;
    game::assemble(&p, rho, response(rho), rho + subsidy)
}

/// Benchmark by search over `n`, splitting the remaining budget between the
/// spouses in the two-good Cobb-Douglas proportions `gamma : 1`.
pub fn oracle_benchmark(p: &ModelParams) -> Result<BenchmarkSolution> {
    let p = p.validate()?;
    require_preference_order(&p)?;
    let income = p.total_income();
    let split = |n: f64| {
        let rest = income - p.beta * n;
        (p.gamma * rest / (1.0 + p.gamma), rest / (1.0 + p.gamma))
    };
    let objective = |n: f64| {
        let (c_w, c_m) = split(n);
        benchmark::family_utility(&p, c_w, c_m, n)
    };
    let limit = income / p.beta;
    let best = search(objective, EDGE * limit, (1.0 - EDGE) * limit)?;
    let (c_w, c_m) = split(best.argmax);
    benchmark::assemble(&p, c_w, c_m, best.argmax)
}

/// Extended-game husband optimum over every transfer with positive
/// consumption, ignoring the sign of the response.
pub fn oracle_extended(p: &ModelParams) -> Result<Maximum> {
    let p = p.validate()?;
    let limit = consumption_limit(&p);
    search(
        |r| extended_husband_objective(&p, r),
        EDGE * limit,
        (1.0 - EDGE) * limit,
    )
}

/// Extended-game husband optimum restricted to transfers with nonnegative
/// fertility and positive consumption; `None` when that set is empty.
pub fn oracle_extended_admissible(p: &ModelParams) -> Result<Option<Maximum>> {
    let p = p.validate()?;
    let lo = p.a_w / p.gamma_ratio();
    let hi = consumption_limit(&p) * (1.0 - EDGE);
    if lo >= hi {
        return Ok(None);
    }
    search(|r| extended_husband_objective(&p, r), lo, hi).map(Some)
}
