//! Husband-led transfer game.
//!
//! The husband commits to a per-child transfer `rho`; the wife then picks
//! fertility to maximize `gamma ln(a_w + rho n) - delta n`. Her best response
//! is `n(rho) = max(0, gamma/delta - a_w/rho)`. Substituting the unclamped
//! response into `ln(a_m - rho n) + alpha n` gives the husband's first-order
//! condition
//!
//! ```text
//! rho^2 + alpha a_w rho - (alpha delta / gamma) a_w (a_w + a_m) = 0
//! ```
//!
//! whose positive root is the equilibrium transfer.

use crate::error::{Error, Result};
use crate::params::{utility_linear_pair, ModelParams, Param};

/// Slack on the participation comparisons so that attaining the reservation
/// utility exactly counts as participating.
pub const PARTICIPATION_SLACK: f64 = 1e-12;

/// Relative bracket width at which threshold bisection stops.
pub const THRESHOLD_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReactionDecomposition {
    /// `gamma / delta`.
    pub preference_effect: f64,
    /// `-a_w / rho`.
    pub transfer_effect: f64,
    /// Clamped sum of the two effects.
    pub n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameEquilibrium {
    /// Equilibrium transfer. At a no-birth outcome this is still the formal
    /// root of the husband's condition; see [`GameEquilibrium::effective_transfer`].
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

impl GameEquilibrium {
    /// The transfer that actually changes hands, `None` when no children are
    /// born (no transfer alters that outcome).
    pub fn effective_transfer(&self) -> Option<f64> {
        self.interior.then_some(self.rho_star)
    }
}

pub fn wife_reaction(p: &ModelParams, rho: f64) -> Result<ReactionDecomposition> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::NonPositiveTransfer(rho));
    }
    let preference_effect = p.gamma_ratio();
    let transfer_effect = -p.a_w / rho;
    Ok(ReactionDecomposition {
        preference_effect,
        transfer_effect,
        n: (preference_effect + transfer_effect).max(0.0),
    })
}

/// Positive root of the husband's quadratic condition, computed in the
/// cancellation-free form `c / (b/2 + sqrt(b^2/4 + c))`.
pub fn equilibrium_transfer(p: &ModelParams) -> Result<f64> {
    let p = p.validate()?;
    Ok(transfer_root(&p))
}

pub(crate) fn transfer_root(p: &ModelParams) -> f64 {
    let half_b = 0.5 * p.alpha * p.a_w;
    let c = p.alpha / p.gamma_ratio() * p.a_w * (p.a_w + p.a_m);
    c / (half_b + (half_b * half_b + c).sqrt())
}

/// Relative residual of the husband's quadratic at `rho`.
pub fn transfer_foc_residual(p: &ModelParams, rho: f64) -> f64 {
    let b = p.alpha * p.a_w;
    let c = p.alpha / p.gamma_ratio() * p.a_w * (p.a_w + p.a_m);
    let value = rho * rho + b * rho - c;
    value.abs() / (rho * rho + b * rho.abs() + c)
}

/// Husband's utility when the wife responds with her clamped reaction.
/// Returns `-inf` where his consumption is not positive.
pub fn husband_utility(p: &ModelParams, rho: f64) -> f64 {
    let n = (p.gamma_ratio() - p.a_w / rho).max(0.0);
    let c_m = p.a_m - rho * n;
    if c_m > 0.0 {
        c_m.ln() + p.alpha * n
    } else {
        f64::NEG_INFINITY
    }
}

/// Husband's objective with the unclamped reaction substituted, on
/// `0 < rho < (a_w + a_m) / (gamma/delta)`. Strictly concave there.
pub fn husband_objective(p: &ModelParams, rho: f64) -> f64 {
    let ratio = p.gamma_ratio();
    let c_m = p.total_income() - ratio * rho;
    if c_m > 0.0 && rho > 0.0 {
        c_m.ln() + p.alpha * (ratio - p.a_w / rho)
    } else {
        f64::NEG_INFINITY
    }
}

/// Wife's utility at fertility `n` under transfer `rho`.
pub fn wife_utility(p: &ModelParams, rho: f64, n: f64) -> f64 {
    p.gamma * (p.a_w + rho * n).ln() - p.delta * n
}

pub(crate) fn assemble(
    p: &ModelParams,
    rho: f64,
    n: f64,
    received_per_child: f64,
) -> Result<GameEquilibrium> {
    let interior = n > 0.0;
    let (c_w, c_m) = if interior {
        (p.a_w + received_per_child * n, p.a_m - rho * n)
    } else {
        (p.a_w, p.a_m)
    };
    let n = if interior { n } else { 0.0 };
    let (u_w, u_m) = utility_linear_pair(p, c_w, c_m, n)?;
    Ok(GameEquilibrium {
        rho_star: rho,
        n_star: n,
        c_w,
        c_m,
        u_w,
        u_m,
        wife_participates: u_w >= p.gamma * p.a_w.ln() - PARTICIPATION_SLACK,
        husband_participates: u_m >= p.a_m.ln() - PARTICIPATION_SLACK,
        interior,
    })
}

pub fn solve_game(p: &ModelParams) -> Result<GameEquilibrium> {
    let p = p.validate()?;
    let rho = transfer_root(&p);
    let reaction = wife_reaction(&p, rho)?;
    assemble(&p, rho, reaction.n, rho)
}

/// Closed-form critical wife income: fertility is positive exactly when
/// `a_w < alpha gamma a_m / delta`.
///
/// With `n = 0` the response gives `rho = a_w delta / gamma`; putting that
/// into the husband's quadratic and dividing by `a_w` leaves
/// `a_w delta / gamma = alpha a_m`.
pub fn threshold_closed_form(p: &ModelParams) -> f64 {
    p.alpha * p.gamma * p.a_m / p.delta
}

/// Critical value of `over` at which equilibrium fertility first reaches
/// zero, found by bisection. Only `a_w` is supported.
pub fn fertility_threshold(p: &ModelParams, over: Param) -> Result<f64> {
    let p = p.validate()?;
    if over != Param::AW {
        return Err(Error::UnsupportedParameter(over.name()));
    }
    let lo = 1e-9 * p.a_m;
    let mut hi = p.a_m.max(p.a_w);
    for _ in 0..256 {
        if unclamped_fertility(&p.with(Param::AW, hi)) <= 0.0 {
            return bisect_threshold(&p, lo, hi);
        }
        hi *= 2.0;
    }
    Err(Error::BracketingFailure { lo, hi })
}

/// Bisection for the `a_w` threshold restricted to `[lo, hi]`.
pub fn fertility_threshold_in(p: &ModelParams, lo: f64, hi: f64) -> Result<f64> {
    let p = p.validate()?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    bisect_threshold(&p, lo, hi)
}

// Sign of the unclamped response at the equilibrium transfer; positive
// exactly where clamped fertility is positive.
fn unclamped_fertility(p: &ModelParams) -> f64 {
    p.gamma_ratio() - p.a_w / transfer_root(p)
}

fn bisect_threshold(p: &ModelParams, lo: f64, hi: f64) -> Result<f64> {
    let g = |a_w: f64| unclamped_fertility(&p.with(Param::AW, a_w));
    let (mut lo, mut hi) = (lo, hi);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if g_lo <= 0.0 || g_hi > 0.0 {
        return Err(Error::BracketingFailure { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= THRESHOLD_REL_TOL * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
