//! Pooled-budget benchmark household.
//!
//! The family maximizes `gamma ln c_w + ln c_m + (alpha - delta) ln n` subject
//! to `c_w + c_m + beta n = a_w + a_m`. This is Cobb-Douglas in the three
//! goods, so each gets its weight's share of pooled income:
//!
//! ```text
//! W   = 1 + gamma + (alpha - delta)
//! c_w = gamma A / W,  c_m = A / W,  n = (alpha - delta) A / (beta W)
//! ```

use crate::error::{Error, Result};
use crate::params::{utility_log_pair, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkSolution {
    pub n_star: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub u_family: f64,
    pub u_w: f64,
    pub u_m: f64,
    /// `u_w - gamma ln a_w`: the wife's utility relative to consuming her own
    /// income without children. Its sign depends on magnitudes, so it is
    /// reported rather than assumed.
    pub wife_utility_delta: f64,
}

impl BenchmarkSolution {
    /// Nearest whole number of children, for display only.
    pub fn n_rounded(&self) -> f64 {
        self.n_star.round()
    }
}

pub(crate) fn require_preference_order(p: &ModelParams) -> Result<()> {
    if p.alpha > p.delta {
        Ok(())
    } else {
        Err(Error::PreferenceOrderViolated {
            alpha: p.alpha,
            delta: p.delta,
        })
    }
}

/// Family utility at an allocation.
pub fn family_utility(p: &ModelParams, c_w: f64, c_m: f64, n: f64) -> f64 {
    p.gamma * c_w.ln() + c_m.ln() + (p.alpha - p.delta) * n.ln()
}

/// Assembles a solution from an allocation, filling in the utilities.
pub(crate) fn assemble(p: &ModelParams, c_w: f64, c_m: f64, n: f64) -> Result<BenchmarkSolution> {
    let (u_w, u_m) = utility_log_pair(p, c_w, c_m, n)?;
    Ok(BenchmarkSolution {
        n_star: n,
        c_w,
        c_m,
        u_family: family_utility(p, c_w, c_m, n),
        u_w,
        u_m,
        wife_utility_delta: u_w - p.gamma * p.a_w.ln(),
    })
}

pub fn benchmark_solve(p: &ModelParams) -> Result<BenchmarkSolution> {
    let p = p.validate()?;
    require_preference_order(&p)?;
    let income = p.total_income();
    let net = p.alpha - p.delta;
    let w = 1.0 + p.gamma + net;
    let c_w = p.gamma * income / w;
    let c_m = income / w;
    let n = net * income / (p.beta * w);
    assemble(&p, c_w, c_m, n)
}

/// Analytic partials of benchmark fertility in each parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkPartials {
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub beta: f64,
    pub a_w: f64,
    pub a_m: f64,
}

pub fn benchmark_fertility_partials(p: &ModelParams) -> Result<BenchmarkPartials> {
    let p = p.validate()?;
    require_preference_order(&p)?;
    let income = p.total_income();
    let net = p.alpha - p.delta;
    let w = 1.0 + p.gamma + net;
    let pref = income * (1.0 + p.gamma) / (p.beta * w * w);
    let per_income = net / (p.beta * w);
    Ok(BenchmarkPartials {
        alpha: pref,
        delta: -pref,
        gamma: -net * income / (p.beta * w * w),
        beta: -net * income / (p.beta * p.beta * w),
        a_w: per_income,
        a_m: per_income,
    })
}
