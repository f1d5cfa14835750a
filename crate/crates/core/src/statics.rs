//! Comparative statics of the transfer game.
//!
//! Write `S = a_w (a_w + a_m)` and `X = alpha^2 a_w^2 / 4 + (alpha delta / gamma) S`
//! so that `rho* = -alpha a_w / 2 + sqrt(X)`. Differentiating:
//!
//! ```text
//! d rho*/d alpha = -a_w/2 + (alpha a_w^2 / 2 + delta S / gamma) / (2 sqrt X)
//! d rho*/d delta = alpha S / (2 gamma sqrt X)
//! d rho*/d gamma = -alpha delta S / (2 gamma^2 sqrt X)
//! d rho*/d a_w   = -alpha/2 + (2 a_w (alpha^2/4 + alpha delta/gamma) + (alpha delta/gamma) a_m) / (2 sqrt X)
//! d rho*/d a_m   = alpha delta a_w / (2 gamma sqrt X)
//! ```
//!
//! and fertility `n* = gamma/delta - a_w / rho*` follows by the chain rule.
//!
//! Squaring the two sides of `d rho*/d alpha > 0` leaves a difference of
//! `(delta S / gamma)^2`, and squaring `d rho*/d a_w > d rho*/d a_m` leaves
//! `((alpha delta/gamma)(a_w + a_m))^2`, so both hold everywhere. Because
//! `rho*` is homogeneous of degree one in incomes,
//! `rho* = a_w d rho*/d a_w + a_m d rho*/d a_m`, which makes the ratio effect
//! `-(a_m / rho*^2)(rho* - R d rho*/dR)` strictly negative.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::game::transfer_root;
use crate::params::{ModelParams, Param};

/// Default finite-difference step, relative to the parameter value.
pub const FD_REL_STEP: f64 = 1e-6;

/// Parameters the game's equilibrium depends on.
pub const GAME_PARAMS: [Param; 5] = [
    Param::Alpha,
    Param::Delta,
    Param::Gamma,
    Param::AW,
    Param::AM,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Rho,
    N,
}

/// One partial per game parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GamePartials {
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub a_w: f64,
    pub a_m: f64,
}

impl GamePartials {
    pub fn get(&self, param: Param) -> Option<f64> {
        match param {
            Param::Alpha => Some(self.alpha),
            Param::Delta => Some(self.delta),
            Param::Gamma => Some(self.gamma),
            Param::AW => Some(self.a_w),
            Param::AM => Some(self.a_m),
            Param::Beta => None,
        }
    }

    fn set(&mut self, param: Param, value: f64) {
        match param {
            Param::Alpha => self.alpha = value,
            Param::Delta => self.delta = value,
            Param::Gamma => self.gamma = value,
            Param::AW => self.a_w = value,
            Param::AM => self.a_m = value,
            Param::Beta => {}
        }
    }

    pub fn from_fn(mut f: impl FnMut(Param) -> Result<f64>) -> Result<Self> {
        let mut out = Self::default();
        for param in GAME_PARAMS {
            out.set(param, f(param)?);
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, f64)> + '_ {
        GAME_PARAMS.into_iter().map(|p| (p, self.get(p).unwrap()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => Sign::Positive,
            Some(Ordering::Less) => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    /// Two-way split into `> 0` versus `<= 0`.
    fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

/// The two competing magnitudes behind the sign of `dn*/d delta` or
/// `dn*/d gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeCondition {
    /// `(a_w / rho*^2) d rho*/d delta` for delta, `-(a_w / rho*^2) d rho*/d gamma` for gamma.
    pub transfer_effect: f64,
    /// `gamma / delta^2` for delta, `1 / delta` for gamma.
    pub preference_effect: f64,
    /// Sign implied by comparing the two effects.
    pub predicted_positive: bool,
    /// Sign of the fertility partial itself.
    pub direct: Sign,
}

impl RegimeCondition {
    pub fn coherent(&self) -> bool {
        self.predicted_positive == self.direct.is_positive()
    }

    pub fn note(&self, param: Param) -> &'static str {
        match (param, self.predicted_positive) {
            (Param::Delta, true) => "transfer_effect_exceeds_preference_effect",
            (Param::Delta, false) => "preference_effect_dominates",
            (_, true) => "preference_effect_exceeds_transfer_effect",
            (_, false) => "transfer_effect_dominates",
        }
    }
}

/// `alpha^2 a_w^2 / 4 + (alpha delta / gamma) a_w (a_w + a_m)`.
pub fn radicand(p: &ModelParams) -> f64 {
    let k = p.alpha * p.delta / p.gamma;
    p.alpha * p.alpha * p.a_w * p.a_w / 4.0 + k * p.a_w * (p.a_w + p.a_m)
}

pub fn analytic_partials_rho(p: &ModelParams) -> Result<GamePartials> {
    let p = p.validate()?;
    let (alpha, delta, gamma, a_w, a_m) = (p.alpha, p.delta, p.gamma, p.a_w, p.a_m);
    let root = radicand(&p).sqrt();
    let s = a_w * (a_w + a_m);
    let k = alpha * delta / gamma;
    Ok(GamePartials {
        alpha: -a_w / 2.0 + (alpha * a_w * a_w / 2.0 + delta * s / gamma) / (2.0 * root),
        delta: alpha * s / (2.0 * gamma * root),
        gamma: -alpha * delta * s / (2.0 * gamma * gamma * root),
        a_w: -alpha / 2.0 + (2.0 * a_w * (alpha * alpha / 4.0 + k) + k * a_m) / (2.0 * root),
        a_m: alpha * delta * a_w / (2.0 * gamma * root),
    })
}

fn require_interior(p: &ModelParams) -> Result<f64> {
    let rho = transfer_root(p);
    if p.gamma_ratio() - p.a_w / rho > 0.0 {
        Ok(rho)
    } else {
        Err(Error::BoundaryStatics)
    }
}

pub fn analytic_partials_n(p: &ModelParams) -> Result<GamePartials> {
    let p = p.validate()?;
    let rho = require_interior(&p)?;
    let d = analytic_partials_rho(&p)?;
    let m = p.a_w / (rho * rho);
    Ok(GamePartials {
        alpha: m * d.alpha,
        delta: -p.gamma / (p.delta * p.delta) + m * d.delta,
        gamma: 1.0 / p.delta + m * d.gamma,
        a_w: -1.0 / rho + m * d.a_w,
        a_m: m * d.a_m,
    })
}

/// `dn*/dR` for `R = a_w / a_m` at fixed `a_m`.
pub fn ratio_partial(p: &ModelParams) -> Result<f64> {
    let p = p.validate()?;
    let rho = require_interior(&p)?;
    let d_rho_d_ratio = p.a_m * analytic_partials_rho(&p)?.a_w;
    let ratio = p.a_w / p.a_m;
    Ok(-(p.a_m / (rho * rho)) * (rho - ratio * d_rho_d_ratio))
}

fn target_value(p: &ModelParams, target: Target) -> f64 {
    let rho = transfer_root(p);
    match target {
        Target::Rho => rho,
        Target::N => (p.gamma_ratio() - p.a_w / rho).max(0.0),
    }
}

fn interior_at(p: &ModelParams) -> bool {
    p.gamma_ratio() - p.a_w / transfer_root(p) > 0.0
}

/// Central difference of `target` in `param`. `h` defaults to
/// `FD_REL_STEP * |x|` and must satisfy `x > 10 h`.
pub fn fd_check(p: &ModelParams, target: Target, param: Param, h: Option<f64>) -> Result<f64> {
    fd_directional(p, target, &[(param, 1.0)], h)
}

/// Central difference along a weighted direction in parameter space:
/// `x_i -> x_i + t w_i`. The default step moves the first coordinate by
/// `FD_REL_STEP` of its value.
pub fn fd_directional(
    p: &ModelParams,
    target: Target,
    direction: &[(Param, f64)],
    h: Option<f64>,
) -> Result<f64> {
    let p = p.validate()?;
    let (lead, weight) = *direction
        .first()
        .ok_or_else(|| Error::Usage("empty direction".into()))?;
    let x = p.get(lead);
    let h = h.unwrap_or(FD_REL_STEP * x.abs() / weight.abs());
    if h.is_nan() || h <= 0.0 || x <= 10.0 * h * weight.abs() {
        return Err(Error::InvalidStep { step: h, value: x });
    }
    let shifted = |t: f64| {
        direction
            .iter()
            .fold(p, |q, &(param, w)| q.with(param, q.get(param) + t * w))
    };
    let (up, down) = (shifted(h).validate()?, shifted(-h).validate()?);
    if target == Target::N && !(interior_at(&up) && interior_at(&down) && interior_at(&p)) {
        return Err(Error::BoundaryStatics);
    }
    Ok((target_value(&up, target) - target_value(&down, target)) / (2.0 * h))
}

/// Forward and backward differences, for the non-differentiable point where
/// fertility is clamped at zero.
pub fn fd_one_sided(
    p: &ModelParams,
    target: Target,
    param: Param,
    h: Option<f64>,
) -> Result<(f64, f64)> {
    let p = p.validate()?;
    let x = p.get(param);
    let h = h.unwrap_or(FD_REL_STEP * x.abs());
    if h.is_nan() || h <= 0.0 || x <= 10.0 * h {
        return Err(Error::InvalidStep { step: h, value: x });
    }
    let at = |v: f64| -> Result<f64> { Ok(target_value(&p.with(param, v).validate()?, target)) };
    let mid = at(x)?;
    Ok(((at(x + h)? - mid) / h, (mid - at(x - h)?) / h))
}

/// Conditions deciding the signs of `dn*/d delta` and `dn*/d gamma`.
pub fn sign_regimes(p: &ModelParams) -> Result<(RegimeCondition, RegimeCondition)> {
    let p = p.validate()?;
    let rho = require_interior(&p)?;
    let d_rho = analytic_partials_rho(&p)?;
    let d_n = analytic_partials_n(&p)?;
    let m = p.a_w / (rho * rho);

    let delta_transfer = m * d_rho.delta;
    let delta_pref = p.gamma / (p.delta * p.delta);
    let delta = RegimeCondition {
        transfer_effect: delta_transfer,
        preference_effect: delta_pref,
        predicted_positive: delta_transfer > delta_pref,
        direct: Sign::of(d_n.delta),
    };

    let gamma_transfer = -m * d_rho.gamma;
    let gamma_pref = 1.0 / p.delta;
    let gamma = RegimeCondition {
        transfer_effect: gamma_transfer,
        preference_effect: gamma_pref,
        predicted_positive: gamma_pref > gamma_transfer,
        direct: Sign::of(d_n.gamma),
    };
    Ok((delta, gamma))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticsReport {
    pub radicand: f64,
    pub partial_rho: GamePartials,
    pub fd_rho: GamePartials,
    /// `None` when fertility sits at the zero boundary.
    pub partial_n: Option<GamePartials>,
    /// Central differences when interior; forward differences otherwise.
    pub fd_n: GamePartials,
    pub fd_n_one_sided: bool,
    pub regimes: Option<(RegimeCondition, RegimeCondition)>,
    /// `(analytic d rho*/dR, fd d rho*/dR)` at fixed `a_m`.
    pub ratio_rho: (f64, f64),
    /// `(analytic dn*/dR, fd dn*/dR)`; `None` at the boundary.
    pub ratio_n: Option<(f64, f64)>,
}

pub fn statics_report(p: &ModelParams) -> Result<StaticsReport> {
    let p = p.validate()?;
    let partial_rho = analytic_partials_rho(&p)?;
    let fd_rho = GamePartials::from_fn(|param| fd_check(&p, Target::Rho, param, None))?;
    // d/dR at fixed a_m moves a_w by a_m per unit of R.
    let ratio_dir = [(Param::AW, p.a_m)];
    let ratio_rho = (
        p.a_m * partial_rho.a_w,
        fd_directional(&p, Target::Rho, &ratio_dir, None)?,
    );

    if interior_at(&p) {
        let partial_n = analytic_partials_n(&p)?;
        let fd_n = GamePartials::from_fn(|param| fd_check(&p, Target::N, param, None))?;
        Ok(StaticsReport {
            radicand: radicand(&p),
            partial_rho,
            fd_rho,
            partial_n: Some(partial_n),
            fd_n,
            fd_n_one_sided: false,
            regimes: Some(sign_regimes(&p)?),
            ratio_rho,
            ratio_n: Some((
                ratio_partial(&p)?,
                fd_directional(&p, Target::N, &ratio_dir, None)?,
            )),
        })
    } else {
        let fd_n = GamePartials::from_fn(|param| Ok(fd_one_sided(&p, Target::N, param, None)?.0))?;
        Ok(StaticsReport {
            radicand: radicand(&p),
            partial_rho,
            fd_rho,
            partial_n: None,
            fd_n,
            fd_n_one_sided: true,
            regimes: None,
            ratio_rho,
            ratio_n: None,
        })
    }
}
