//! Optimal mediators for the El Farol game with positive and negative
//! network effects.
//!
//! * [`game`]: parameters, the cost to go, configurations and distributions
//! * [`analytic`]: closed-form optimum, best Nash equilibrium, optimal
//!   mediator, mediation value and enforcement value
//! * [`ce`]: correlated-equilibrium checks and cost-reducing transformations
//!   of configuration distributions
//! * [`oracle`]: brute-force grid LP for the best correlated equilibrium
//! * [`simulate`]: finite-population Monte Carlo of mediated play
//! * [`cli`]: the `elfarol` command-line front end and parameter sweeps

pub mod analytic;
pub mod ce;
pub mod cli;
pub mod error;
pub mod game;
pub mod oracle;
pub mod simulate;
pub mod sweep;

pub use analytic::{
    analyze, best_mediator, best_nash, enforcement_value, make_family, mediation_value,
    optimal_fraction, optimal_social_cost, EquilibriumReport, Family, MediatorReport, NashReport,
};
pub use error::{DistributionViolation, Error, Result};
pub use game::{
    expected_social_cost, normalize, validate_distribution, ConfigDistribution, Configuration,
    DeltaSign, Entry, GameParams, RawGameParams,
};
