//! Heterogeneous household populations.
//!
//! Household `i` draws its incomes and preferences from a ChaCha stream
//! selected by `(seed, i)`, so generation order and thread count never change
//! the sample. Households are solved in parallel and reduced in index order,
//! which keeps reports bit-identical for a given spec.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::benchmark::benchmark_solve;
use crate::error::{Error, Result};
use crate::extended::{solve_extended, Regime};
use crate::game::solve_game;
use crate::oracle::oracle_game;
use crate::params::ModelParams;

pub const DECILES: usize = 10;

/// Funding assumption recorded alongside every report: the subsidy comes
/// from general revenue and touches neither spouse's budget.
pub const SUBSIDY_FUNDING: &str = "general_revenue";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModelKind {
    Benchmark,
    #[default]
    Game,
    Extended,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Benchmark => "benchmark",
            ModelKind::Game => "game",
            ModelKind::Extended => "extended",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "benchmark" => Ok(ModelKind::Benchmark),
            "game" => Ok(ModelKind::Game),
            "extended" => Ok(ModelKind::Extended),
            other => Err(Error::Usage(format!("unknown model `{other}`"))),
        }
    }
}

/// Log-normal income: `exp(mu + sigma z)`, `z` standard normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormal {
    pub mu: f64,
    pub sigma: f64,
}

impl LogNormal {
    pub fn median(&self) -> f64 {
        self.mu.exp()
    }

    pub fn mean(&self) -> f64 {
        (self.mu + 0.5 * self.sigma * self.sigma).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrefDist {
    Fixed(f64),
    Uniform { lo: f64, hi: f64 },
}

impl PrefDist {
    fn check(&self, name: &str) -> Result<()> {
        let ok = match *self {
            PrefDist::Fixed(v) => v > 0.0 && v.is_finite(),
            PrefDist::Uniform { lo, hi } => lo > 0.0 && hi >= lo && hi.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDistribution(format!("{name}: {self:?}")))
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            PrefDist::Fixed(v) => v,
            PrefDist::Uniform { lo, hi } if lo == hi => lo,
            PrefDist::Uniform { lo, hi } => rng.random_range(lo..=hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSpec {
    pub count: usize,
    pub seed: u64,
    pub aw_dist: LogNormal,
    pub am_dist: LogNormal,
    pub alpha: PrefDist,
    pub delta: PrefDist,
    pub gamma: PrefDist,
    pub beta: PrefDist,
    pub model: ModelKind,
    pub regime: Regime,
    pub subsidy: f64,
}

impl PopulationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidDistribution("count must be >= 1".into()));
        }
        for (name, d) in [("a_w", &self.aw_dist), ("a_m", &self.am_dist)] {
            if !(d.sigma >= 0.0 && d.sigma.is_finite() && d.mu.is_finite()) {
                return Err(Error::InvalidDistribution(format!(
                    "{name}: mu = {}, sigma = {}",
                    d.mu, d.sigma
                )));
            }
        }
        self.alpha.check("alpha")?;
        self.delta.check("delta")?;
        self.gamma.check("gamma")?;
        self.beta.check("beta")?;
        if !(self.subsidy >= 0.0 && self.subsidy.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "subsidy must be >= 0 (got {})",
                self.subsidy
            )));
        }
        if self.subsidy > 0.0 && self.model != ModelKind::Game {
            return Err(Error::SubsidyUnsupported(self.model.name()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Household {
    pub index: usize,
    pub params: ModelParams,
}

fn household(spec: &PopulationSpec, index: usize) -> Household {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let mut income = |d: &LogNormal| {
        let z: f64 = rng.sample(StandardNormal);
        (d.mu + d.sigma * z).exp()
    };
    let a_w = income(&spec.aw_dist);
    let a_m = income(&spec.am_dist);
    let alpha = spec.alpha.draw(&mut rng);
    let delta = spec.delta.draw(&mut rng);
    let gamma = spec.gamma.draw(&mut rng);
    let beta = spec.beta.draw(&mut rng);
    Household {
        index,
        params: ModelParams::new(alpha, delta, gamma, beta, a_w, a_m),
    }
}

pub fn sample_households(spec: &PopulationSpec) -> Result<Vec<Household>> {
    spec.validate()?;
    Ok((0..spec.count).map(|i| household(spec, i)).collect())
}

/// Solved outcome of one household.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HouseholdOutcome {
    pub n: f64,
    /// Transfer actually paid; `None` without children or in the benchmark.
    pub transfer: Option<f64>,
    pub income_ratio: f64,
}

pub fn solve_household(spec: &PopulationSpec, h: &Household) -> Result<HouseholdOutcome> {
    let p = &h.params;
    let (n, transfer) = match spec.model {
        ModelKind::Benchmark => (benchmark_solve(p)?.n_star, None),
        ModelKind::Game if spec.subsidy > 0.0 => {
            let eq = oracle_game(p, spec.subsidy)?;
            (eq.n_star, eq.effective_transfer())
        }
        ModelKind::Game => {
            let eq = solve_game(p)?;
            (eq.n_star, eq.effective_transfer())
        }
        ModelKind::Extended => {
            let eq = solve_extended(p, spec.regime)?;
            (eq.n_star, eq.selected_rho.filter(|_| eq.interior()))
        }
    };
    Ok(HouseholdOutcome {
        n,
        transfer,
        income_ratio: p.a_w / p.a_m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecileBucket {
    pub count: usize,
    /// `None` for an empty bucket.
    pub mean_fertility: Option<f64>,
    pub ratio_lo: Option<f64>,
    pub ratio_hi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateReport {
    pub households: usize,
    pub mean_fertility: f64,
    pub childless_share: f64,
    /// Mean transfer among households with children; `None` when there are
    /// none or the model has no transfer.
    pub mean_transfer: Option<f64>,
    pub mean_income_ratio: f64,
    /// Buckets by rank of `a_w / a_m`, lowest ratios first.
    pub fertility_by_ratio_decile: [DecileBucket; DECILES],
    pub subsidy: f64,
    pub subsidy_funding: &'static str,
}

pub fn solve_population(spec: &PopulationSpec) -> Result<Vec<HouseholdOutcome>> {
    let households = sample_households(spec)?;
    households
        .par_iter()
        .map(|h| {
            solve_household(spec, h).map_err(|e| Error::Household {
                index: h.index,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn aggregate(spec: &PopulationSpec) -> Result<AggregateReport> {
    let outcomes = solve_population(spec)?;
    Ok(summarize(&outcomes, spec.subsidy))
}

pub fn summarize(outcomes: &[HouseholdOutcome], subsidy: f64) -> AggregateReport {
    let count = outcomes.len();
    let total = count as f64;
    let mean_fertility = outcomes.iter().map(|o| o.n).sum::<f64>() / total;
    let childless = outcomes.iter().filter(|o| o.n <= 0.0).count();
    let transfers: Vec<f64> = outcomes.iter().filter_map(|o| o.transfer).collect();
    let mean_transfer =
        (!transfers.is_empty()).then(|| transfers.iter().sum::<f64>() / transfers.len() as f64);
    let mean_income_ratio = outcomes.iter().map(|o| o.income_ratio).sum::<f64>() / total;

    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| {
        outcomes[a]
            .income_ratio
            .total_cmp(&outcomes[b].income_ratio)
            .then(a.cmp(&b))
    });
    let mut buckets = [DecileBucket {
        count: 0,
        mean_fertility: None,
        ratio_lo: None,
        ratio_hi: None,
    }; DECILES];
    let mut sums = [0.0; DECILES];
    for (rank, &i) in order.iter().enumerate() {
        let b = rank * DECILES / count;
        let o = &outcomes[i];
        let bucket = &mut buckets[b];
        bucket.count += 1;
        sums[b] += o.n;
        bucket.ratio_lo.get_or_insert(o.income_ratio);
        bucket.ratio_hi = Some(o.income_ratio);
    }
    for (bucket, sum) in buckets.iter_mut().zip(sums) {
        if bucket.count > 0 {
            bucket.mean_fertility = Some(sum / bucket.count as f64);
        }
    }

    AggregateReport {
        households: count,
        mean_fertility,
        childless_share: childless as f64 / total,
        mean_transfer,
        mean_income_ratio,
        fertility_by_ratio_decile: buckets,
        subsidy,
        subsidy_funding: SUBSIDY_FUNDING,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_spec(count: usize) -> PopulationSpec {
        PopulationSpec {
            count,
            seed: 7,
            aw_dist: LogNormal {
                mu: 0.0,
                sigma: 0.0,
            },
            am_dist: LogNormal {
                mu: 3f64.ln(),
                sigma: 0.0,
            },
            alpha: PrefDist::Fixed(2.0),
            delta: PrefDist::Fixed(1.0),
            gamma: PrefDist::Fixed(1.0),
            beta: PrefDist::Fixed(1.0),
            model: ModelKind::Game,
            regime: Regime::High,
            subsidy: 0.0,
        }
    }

    #[test]
    fn degenerate_distribution_gives_identical_households() {
        let hs = sample_households(&point_spec(3)).unwrap();
        assert_eq!(hs.len(), 3);
        for h in &hs {
            assert_eq!(h.params, hs[0].params);
            assert_eq!(h.params.a_w, 1.0);
        }
    }

    #[test]
    fn same_seed_same_households() {
        let mut spec = point_spec(50);
        spec.aw_dist.sigma = 0.7;
        spec.alpha = PrefDist::Uniform { lo: 1.0, hi: 3.0 };
        assert_eq!(
            sample_households(&spec).unwrap(),
            sample_households(&spec).unwrap()
        );
        let mut other = spec.clone();
        other.seed = 8;
        assert_ne!(
            sample_households(&spec).unwrap(),
            sample_households(&other).unwrap()
        );
    }

    #[test]
    fn household_draws_depend_only_on_index() {
        let mut spec = point_spec(20);
        spec.aw_dist.sigma = 0.5;
        let small = sample_households(&spec).unwrap();
        spec.count = 200;
        let large = sample_households(&spec).unwrap();
        assert_eq!(small[..], large[..20]);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = point_spec(0);
        assert!(matches!(
            sample_households(&spec),
            Err(Error::InvalidDistribution(_))
        ));
        spec.count = 1;
        spec.aw_dist.sigma = -1.0;
        assert!(matches!(
            sample_households(&spec),
            Err(Error::InvalidDistribution(_))
        ));
        spec.aw_dist.sigma = 0.0;
        spec.alpha = PrefDist::Uniform { lo: 2.0, hi: 1.0 };
        assert!(matches!(
            sample_households(&spec),
            Err(Error::InvalidDistribution(_))
        ));
        spec.alpha = PrefDist::Fixed(2.0);
        spec.model = ModelKind::Extended;
        spec.subsidy = 1.0;
        assert_eq!(
            sample_households(&spec),
            Err(Error::SubsidyUnsupported("extended"))
        );
    }

    #[test]
    fn solver_errors_carry_household_index() {
        let mut spec = point_spec(4);
        spec.model = ModelKind::Benchmark;
        spec.alpha = PrefDist::Fixed(1.0);
        match aggregate(&spec) {
            Err(Error::Household { index, source }) => {
                assert_eq!(index, 0);
                assert!(matches!(*source, Error::PreferenceOrderViolated { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn buckets_cover_every_household() {
        let mut spec = point_spec(37);
        spec.aw_dist.sigma = 0.5;
        let rep = aggregate(&spec).unwrap();
        let total: usize = rep.fertility_by_ratio_decile.iter().map(|b| b.count).sum();
        assert_eq!(total, 37);
        assert!((0.0..=1.0).contains(&rep.childless_share));
    }

    #[test]
    fn small_population_has_empty_buckets() {
        let rep = aggregate(&point_spec(3)).unwrap();
        let filled = rep
            .fertility_by_ratio_decile
            .iter()
            .filter(|b| b.mean_fertility.is_some())
            .count();
        assert_eq!(filled, 3);
    }
}
