//! Exogenous household parameters and the two utility forms.
//!
//! The benchmark household uses log-in-fertility utilities; the transfer
//! game and its extension use utilities linear in fertility.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const COST_SPLIT_RTOL: f64 = 1e-12;

/// All exogenous symbols of the three household models.
///
/// `beta` is the total per-child rearing cost; `beta_w` and `beta_m` are the
/// spouses' shares and must add up to it. [`ModelParams::new`] puts the whole
/// cost on the husband, which is how the extended game charges it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Husband's weight on children.
    pub alpha: f64,
    /// Wife's aversion to children.
    pub delta: f64,
    /// Wife's weight on consumption.
    pub gamma: f64,
    /// Total per-child rearing cost.
    pub beta: f64,
    pub beta_w: f64,
    pub beta_m: f64,
    /// Wife's income.
    pub a_w: f64,
    /// Husband's income.
    pub a_m: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, delta: f64, gamma: f64, beta: f64, a_w: f64, a_m: f64) -> Self {
        Self {
            alpha,
            delta,
            gamma,
            beta,
            beta_w: 0.0,
            beta_m: beta,
            a_w,
            a_m,
        }
    }

    pub fn with_cost_split(mut self, beta_w: f64, beta_m: f64) -> Self {
        self.beta_w = beta_w;
        self.beta_m = beta_m;
        self
    }

    pub fn validate(self) -> Result<Self> {
        validate_params(self)
    }

    /// Wife's preference ratio `gamma / delta`.
    pub fn gamma_ratio(&self) -> f64 {
        self.gamma / self.delta
    }

    pub fn total_income(&self) -> f64 {
        self.a_w + self.a_m
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::Alpha => self.alpha,
            Param::Delta => self.delta,
            Param::Gamma => self.gamma,
            Param::Beta => self.beta,
            Param::AW => self.a_w,
            Param::AM => self.a_m,
        }
    }

    /// Returns a copy with `param` replaced. Changing `beta` rescales the
    /// cost split proportionally so the pair stays consistent.
    pub fn with(&self, param: Param, value: f64) -> Self {
        let mut p = *self;
        match param {
            Param::Alpha => p.alpha = value,
            Param::Delta => p.delta = value,
            Param::Gamma => p.gamma = value,
            Param::Beta => {
                if self.beta > 0.0 {
                    let scale = value / self.beta;
                    p.beta_w = self.beta_w * scale;
                    p.beta_m = self.beta_m * scale;
                } else {
                    p.beta_w = 0.0;
                    p.beta_m = value;
                }
                p.beta = value;
            }
            Param::AW => p.a_w = value,
            Param::AM => p.a_m = value,
        }
        p
    }
}

/// Returns the parameters unchanged when every invariant holds.
pub fn validate_params(raw: ModelParams) -> Result<ModelParams> {
    let positive = [
        ("alpha", raw.alpha),
        ("delta", raw.delta),
        ("gamma", raw.gamma),
        ("beta", raw.beta),
        ("a_w", raw.a_w),
        ("a_m", raw.a_m),
    ];
    for (name, value) in positive {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    for (name, value) in [("beta_w", raw.beta_w), ("beta_m", raw.beta_m)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    let split = raw.beta_w + raw.beta_m;
    if (split - raw.beta).abs() > COST_SPLIT_RTOL * raw.beta {
        return Err(Error::CostMismatch {
            beta: raw.beta,
            split,
        });
    }
    Ok(raw)
}

/// Names of the scalar parameters that can be perturbed or swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Alpha,
    Delta,
    Gamma,
    Beta,
    AW,
    AM,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::Alpha,
        Param::Delta,
        Param::Gamma,
        Param::Beta,
        Param::AW,
        Param::AM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Delta => "delta",
            Param::Gamma => "gamma",
            Param::Beta => "beta",
            Param::AW => "a_w",
            Param::AM => "a_m",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown parameter `{s}`")))
    }
}

fn check_positive(what: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{what} must be > 0 (got {x})")))
    }
}

/// Benchmark utilities `(u_w, u_m)`:
/// `u_w = gamma ln c_w - delta ln n`, `u_m = ln c_m + alpha ln n`.
pub fn utility_log_pair(p: &ModelParams, c_w: f64, c_m: f64, n: f64) -> Result<(f64, f64)> {
    check_positive("c_w", c_w)?;
    check_positive("c_m", c_m)?;
    check_positive("n", n)?;
    let ln_n = n.ln();
    Ok((
        p.gamma * c_w.ln() - p.delta * ln_n,
        c_m.ln() + p.alpha * ln_n,
    ))
}

/// Game utilities `(u_w, u_m)`:
/// `u_w = gamma ln c_w - delta n`, `u_m = ln c_m + alpha n`.
pub fn utility_linear_pair(p: &ModelParams, c_w: f64, c_m: f64, n: f64) -> Result<(f64, f64)> {
    check_positive("c_w", c_w)?;
    check_positive("c_m", c_m)?;
    if !(n >= 0.0 && n.is_finite()) {
        return Err(Error::DomainError(format!("n must be >= 0 (got {n})")));
    }
    Ok((p.gamma * c_w.ln() - p.delta * n, c_m.ln() + p.alpha * n))
}
