//! Household fertility models.
//!
//! Three models share one parameter set ([`ModelParams`]):
//!
//! - [`benchmark`]: a pooled-budget family that maximizes joint utility.
//! - [`game`]: the husband pays a per-child transfer `rho` and the wife
//!   chooses fertility in response; closed forms for both stages.
//! - [`extended`]: the same game with a per-child rearing cost `beta`, whose
//!   first-order condition is a cubic in `rho`.
//!
//! [`oracle`] re-solves each model by brute-force 1-D maximization for
//! testing, [`statics`] holds analytic and finite-difference derivatives, and
//! [`population`] aggregates over sampled households.

pub mod benchmark;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod extended;
pub mod game;
pub mod oracle;
pub mod params;
pub mod population;
pub mod scenario;
pub mod statics;

pub use benchmark::{benchmark_solve, BenchmarkSolution};
pub use error::{Error, Result};
pub use extended::{solve_extended, ExtendedEquilibrium, Regime};
pub use game::{
    equilibrium_transfer, fertility_threshold, solve_game, wife_reaction, GameEquilibrium,
};
pub use params::{validate_params, ModelParams, Param};
pub use population::{aggregate, AggregateReport, ModelKind, PopulationSpec};
pub use scenario::{parse_scenario, ScenarioConfig};
