//! Extended game with an explicit per-child rearing cost on the husband.
//!
//! The husband's budget becomes `c_m = a_m - (beta + rho) n` while the wife's
//! response is unchanged, `n(rho) = G - a_w / rho` with `G = gamma / delta`.
//! Multiplying the husband's first-order condition by `-rho^3 c_m / a_w` gives
//!
//! ```text
//! (G / a_w) rho^3 + alpha G rho^2 + (beta + alpha beta G - alpha (a_m + a_w)) rho - alpha beta a_w = 0
//! ```
//!
//! With every parameter positive the sign pattern is `(+, +, ?, -)`, which has
//! exactly one sign variation whatever the sign of the linear coefficient, so
//! Descartes' rule leaves exactly one positive root. [`Diagnostic::PositiveRootCount`]
//! records the count found for every solve.

use std::fmt;
use std::str::FromStr;

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::game::PARTICIPATION_SLACK;
use crate::params::{utility_linear_pair, ModelParams};

/// Transfer-culture regime: which admissible root the husband picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regime {
    /// Smallest admissible transfer.
    Low,
    /// Largest admissible transfer.
    #[default]
    High,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Low => "low",
            Regime::High => "high",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Regime::Low),
            "high" => Ok(Regime::High),
            other => Err(Error::Usage(format!(
                "regime must be `low` or `high` (got `{other}`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicFOC {
    pub cubic: Cubic,
    /// `gamma / delta`.
    pub gamma_ratio: f64,
}

impl CubicFOC {
    pub fn coefficients(&self) -> [f64; 4] {
        self.cubic.coefficients
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    /// Only one admissible root, so both regimes pick it.
    RegimeDegenerate,
    /// No admissible interior root; the no-birth outcome is reported.
    NoInteriorOptimum,
    /// Number of positive roots of the first-order cubic.
    PositiveRootCount(usize),
    /// The isolator and the discriminant disagree on the real-root count.
    DiscriminantMismatch {
        isolated: usize,
        discriminant: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedEquilibrium {
    pub foc: CubicFOC,
    pub real_roots: Vec<f64>,
    pub positive_roots: Vec<f64>,
    pub admissible_roots: Vec<f64>,
    /// `None` at the no-birth fallback.
    pub selected_rho: Option<f64>,
    pub n_star: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub u_w: f64,
    pub u_m: f64,
    pub wife_participates: bool,
    pub husband_participates: bool,
    pub regime: Regime,
    pub diagnostics: Vec<Diagnostic>,
}

impl ExtendedEquilibrium {
    pub fn interior(&self) -> bool {
        self.n_star > 0.0
    }

    pub fn has(&self, d: Diagnostic) -> bool {
        self.diagnostics.contains(&d)
    }
}

pub fn cubic_coefficients(p: &ModelParams) -> Result<CubicFOC> {
    let p = p.validate()?;
    let g = p.gamma_ratio();
    let (a, b) = (p.alpha, p.beta);
    Ok(CubicFOC {
        cubic: Cubic::new(
            g / p.a_w,
            a * g,
            b + a * b * g - a * (p.a_m + p.a_w),
            -a * b * p.a_w,
        ),
        gamma_ratio: g,
    })
}

/// Strictly positive real roots of the first-order cubic, increasing. Also
/// accepts synthetic cubics.
pub fn positive_roots(foc: &CubicFOC) -> Vec<f64> {
    foc.cubic.positive_roots()
}

/// Wife's response in the extended game (unclamped).
pub fn extended_fertility(p: &ModelParams, rho: f64) -> f64 {
    p.gamma_ratio() - p.a_w / rho
}

pub fn extended_husband_consumption(p: &ModelParams, rho: f64) -> f64 {
    p.a_m - (p.beta + rho) * extended_fertility(p, rho)
}

/// Husband utility with the unclamped response substituted; `-inf` where his
/// consumption is not positive.
pub fn extended_husband_objective(p: &ModelParams, rho: f64) -> f64 {
    let c_m = extended_husband_consumption(p, rho);
    if c_m > 0.0 && rho > 0.0 {
        c_m.ln() + p.alpha * extended_fertility(p, rho)
    } else {
        f64::NEG_INFINITY
    }
}

/// Second derivative of [`extended_husband_objective`] in `rho`.
pub fn extended_objective_curvature(p: &ModelParams, rho: f64) -> f64 {
    let c = extended_husband_consumption(p, rho);
    let r2 = rho * rho;
    let r3 = r2 * rho;
    let dc = -p.beta * p.a_w / r2 - p.gamma_ratio();
    let ddc = 2.0 * p.beta * p.a_w / r3;
    ddc / c - (dc / c).powi(2) - 2.0 * p.alpha * p.a_w / r3
}

/// Largest transfer at which the husband's consumption stays positive under
/// the unclamped response: the positive root of `-G r^2 + K r + beta a_w = 0`
/// with `K = a_m + a_w - beta G`.
pub fn consumption_limit(p: &ModelParams) -> f64 {
    let g = p.gamma_ratio();
    let k = p.a_m + p.a_w - p.beta * g;
    let disc = (k * k + 4.0 * g * p.beta * p.a_w).sqrt();
    if k >= 0.0 {
        (k + disc) / (2.0 * g)
    } else {
        2.0 * p.beta * p.a_w / (disc - k)
    }
}

fn admissible(p: &ModelParams, rho: f64) -> bool {
    extended_fertility(p, rho) >= 0.0
        && extended_husband_consumption(p, rho) > 0.0
        && extended_objective_curvature(p, rho) < 0.0
}

pub fn solve_extended(p: &ModelParams, regime: Regime) -> Result<ExtendedEquilibrium> {
    let p = p.validate()?;
    let foc = cubic_coefficients(&p)?;
    let real_roots = foc.cubic.real_roots();
    let positive: Vec<f64> = real_roots.iter().copied().filter(|&r| r > 0.0).collect();
    let admissible_roots: Vec<f64> = positive
        .iter()
        .copied()
        .filter(|&r| admissible(&p, r))
        .collect();

    let mut diagnostics = vec![Diagnostic::PositiveRootCount(positive.len())];
    if let Some(count) = foc.cubic.discriminant_root_count() {
        if count != real_roots.len() {
            diagnostics.push(Diagnostic::DiscriminantMismatch {
                isolated: real_roots.len(),
                discriminant: count,
            });
        }
    }

    let selected_rho = match regime {
        Regime::Low => admissible_roots.first().copied(),
        Regime::High => admissible_roots.last().copied(),
    };
    if admissible_roots.len() == 1 {
        diagnostics.push(Diagnostic::RegimeDegenerate);
    }

    let (n, c_w, c_m) = match selected_rho {
        Some(rho) => {
            let n = extended_fertility(&p, rho).max(0.0);
            (n, p.a_w + rho * n, p.a_m - (p.beta + rho) * n)
        }
        None => {
            diagnostics.push(Diagnostic::NoInteriorOptimum);
            (0.0, p.a_w, p.a_m)
        }
    };
    let (u_w, u_m) = utility_linear_pair(&p, c_w, c_m, n)?;

    Ok(ExtendedEquilibrium {
        foc,
        real_roots,
        positive_roots: positive,
        admissible_roots,
        selected_rho,
        n_star: n,
        c_w,
        c_m,
        u_w,
        u_m,
        wife_participates: u_w >= p.gamma * p.a_w.ln() - PARTICIPATION_SLACK,
        husband_participates: u_m >= p.a_m.ln() - PARTICIPATION_SLACK,
        regime,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anchor() -> ModelParams {
        ModelParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 3.0)
    }

    // Derivative of the husband objective by central difference.
    fn objective_slope(p: &ModelParams, rho: f64) -> f64 {
        let h = 1e-6 * rho;
        (extended_husband_objective(p, rho + h) - extended_husband_objective(p, rho - h))
            / (2.0 * h)
    }

    #[test]
    fn coefficients_reference() {
        assert_eq!(
            cubic_coefficients(&anchor()).unwrap().coefficients(),
            [1.0, 1.0, -2.0, -1.0]
        );
        let scaled = ModelParams::new(1.0, 2.0, 2.0, 1.0, 1.0, 3.0);
        assert_eq!(
            cubic_coefficients(&scaled).unwrap().coefficients(),
            [1.0, 1.0, -2.0, -1.0]
        );
        let other = ModelParams::new(1.0, 1.0, 1.0, 1.0, 2.0, 2.0);
        assert_eq!(
            cubic_coefficients(&other).unwrap().coefficients(),
            [0.5, 1.0, -2.0, -2.0]
        );
    }

    #[test]
    fn cubic_is_the_objective_slope_rescaled() {
        // f(rho) = -(rho^3 c_m / a_w) u'(rho) on the consumption-positive range.
        let points = [
            ModelParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 3.0),
            ModelParams::new(2.3, 0.7, 1.4, 0.3, 0.9, 2.2),
            ModelParams::new(0.4, 1.8, 3.1, 2.5, 1.6, 7.0),
            ModelParams::new(5.0, 0.2, 0.6, 0.1, 4.0, 0.5),
            ModelParams::new(1.1, 1.1, 0.9, 1.7, 0.3, 1.4),
        ];
        for p in points {
            let foc = cubic_coefficients(&p).unwrap();
            let limit = consumption_limit(&p);
            for frac in [0.2, 0.5, 0.8] {
                let rho = frac * limit;
                let lhs = foc.cubic.eval(rho);
                let c_m = extended_husband_consumption(&p, rho);
                let rhs = -rho.powi(3) * c_m / p.a_w * objective_slope(&p, rho);
                assert!(
                    (lhs - rhs).abs() < 1e-8 * foc.cubic.magnitude(rho),
                    "{p:?} rho={rho}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn consumption_limit_is_zero_of_consumption() {
        for p in [anchor(), ModelParams::new(1.0, 0.1, 5.0, 9.0, 0.2, 0.3)] {
            let r = consumption_limit(&p);
            assert!(
                extended_husband_consumption(&p, r).abs()
                    < 1e-12 * p.a_m.max(p.beta * p.gamma_ratio())
            );
        }
    }

    #[test]
    fn anchor_high_regime() {
        let eq = solve_extended(&anchor(), Regime::High).unwrap();
        let rho = eq.selected_rho.unwrap();
        assert!((rho - 1.24698).abs() < 1e-5);
        assert!((eq.n_star - 0.19806).abs() < 1e-5);
        assert!((eq.c_m - 2.55496).abs() < 1e-5);
        assert!(eq.u_m > 3f64.ln());
        assert!(eq.husband_participates);
        assert_eq!(eq.positive_roots.len(), 1);
        assert!(eq.has(Diagnostic::PositiveRootCount(1)));
        assert!(eq.has(Diagnostic::RegimeDegenerate));
    }

    #[test]
    fn anchor_low_regime_coincides() {
        let high = solve_extended(&anchor(), Regime::High).unwrap();
        let low = solve_extended(&anchor(), Regime::Low).unwrap();
        assert_eq!(low.selected_rho, high.selected_rho);
        assert_eq!(low.n_star, high.n_star);
        assert!(low.has(Diagnostic::RegimeDegenerate));
    }

    #[test]
    fn low_income_falls_back_to_no_birth() {
        // The only positive root is near 0.3253 where the response is negative.
        let p = ModelParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        let eq = solve_extended(&p, Regime::Low).unwrap();
        assert_eq!(eq.positive_roots.len(), 1);
        assert!((eq.positive_roots[0] - 0.325314595).abs() < 1e-8);
        assert!(eq.admissible_roots.is_empty());
        assert_eq!(eq.selected_rho, None);
        assert_eq!(eq.n_star, 0.0);
        assert_eq!((eq.c_w, eq.c_m), (0.5, 0.5));
        assert!(eq.has(Diagnostic::NoInteriorOptimum));
    }

    #[test]
    fn slope_vanishes_at_admissible_roots() {
        let p = ModelParams::new(2.3, 0.7, 1.4, 0.3, 0.9, 2.2);
        let eq = solve_extended(&p, Regime::High).unwrap();
        for &r in &eq.admissible_roots {
            let h = 1e-7 * r;
            let slope = (extended_husband_objective(&p, r + h)
                - extended_husband_objective(&p, r - h))
                / (2.0 * h);
            assert!(slope.abs() < 1e-5);
        }
    }

    #[test]
    fn regime_parse() {
        assert_eq!("low".parse::<Regime>().unwrap(), Regime::Low);
        assert_eq!("high".parse::<Regime>().unwrap(), Regime::High);
        assert!("medium".parse::<Regime>().is_err());
    }
}
