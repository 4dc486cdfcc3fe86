//! Correlated-equilibrium checks for configuration distributions.
//!
//! A distribution `{(x_i, p_i)}` is a correlated equilibrium iff
//!
//! ```text
//! go side:    sum p_i * x_i       * delta(x_i) >= 0
//! stay side:  sum p_i * (1 - x_i) * delta(x_i) <= 0
//! ```
//!
//! i.e. a player told to go expects going to cost at most 1, and a player
//! told to stay expects going to cost at least 1.

mod reduce;

pub use reduce::{
    drop_zero_delta, has_two_configuration_shape, merge, move_to_zero, reduce_to_fixpoint, reflect,
    reflect_target, Fixpoint, ReductionStep,
};

use serde::Serialize;

use crate::game::{ConfigDistribution, GameParams};

/// Tolerance used when a reduction requires its input to be a CE.
pub const REDUCTION_CE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CeVerdict {
    /// `sum p_i x_i delta(x_i)`; must be `>= 0`.
    pub go_side_slack: f64,
    /// `sum p_i (1 - x_i) delta(x_i)`; must be `<= 0`.
    pub stay_side_slack: f64,
    pub is_ce: bool,
}

impl CeVerdict {
    pub fn go_side_ok(&self, tol: f64) -> bool {
        self.go_side_slack >= -tol
    }

    pub fn stay_side_ok(&self, tol: f64) -> bool {
        self.stay_side_slack <= tol
    }
}

/// Both constraint sums for an arbitrary weighted support, which need not be
/// a valid [`ConfigDistribution`] (the grid oracle also scores single points).
pub(crate) fn slacks<I>(params: &GameParams, support: I) -> (f64, f64)
where
    I: IntoIterator<Item = (f64, f64)>,
{
    support.into_iter().fold((0.0, 0.0), |(go, stay), (x, p)| {
        let d = params.delta_at(x);
        (go + p * x * d, stay + p * (1.0 - x) * d)
    })
}

pub fn verify_ce(params: &GameParams, dist: &ConfigDistribution, tol: f64) -> CeVerdict {
    let (go, stay) = slacks(params, dist.iter().map(|e| (e.x, e.p)));
    CeVerdict {
        go_side_slack: go,
        stay_side_slack: stay,
        is_ce: go >= -tol && stay <= tol,
    }
}

/// Expected cost of going, conditional on the advice received.
///
/// The cost of staying is 1 whatever the advice, so these two numbers are
/// all a player needs to decide whether to follow the mediator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalCosts {
    /// `E[cost to go | advised to go]`; `None` if go advice never happens.
    pub go_given_go: Option<f64>,
    /// `E[cost to go | advised to stay]`; `None` if stay advice never happens.
    pub go_given_stay: Option<f64>,
}

impl ConditionalCosts {
    /// The CE test phrased through conditional costs. An event that never
    /// happens imposes no constraint.
    pub fn is_ce(&self, tol: f64) -> bool {
        self.go_given_go.is_none_or(|v| v <= 1.0 + tol)
            && self.go_given_stay.is_none_or(|v| v >= 1.0 - tol)
    }
}

pub fn conditional_costs(params: &GameParams, dist: &ConfigDistribution) -> ConditionalCosts {
    let (mut go_num, mut go_den, mut stay_num, mut stay_den) = (0.0, 0.0, 0.0, 0.0);
    for e in dist.iter() {
        let f = params.go_cost(e.x);
        go_num += e.p * f * e.x;
        go_den += e.p * e.x;
        stay_num += e.p * f * (1.0 - e.x);
        stay_den += e.p * (1.0 - e.x);
    }
    ConditionalCosts {
        go_given_go: (go_den > 0.0).then(|| go_num / go_den),
        go_given_stay: (stay_den > 0.0).then(|| stay_num / stay_den),
    }
}

/// For each `j`, `sum_{i != j} p_i delta(x_i) (x_i - x_j)`.
///
/// Every optimal mediator has all of these nonnegative.
pub fn optimality_margins(params: &GameParams, dist: &ConfigDistribution) -> Vec<f64> {
    let entries = dist.entries();
    entries
        .iter()
        .enumerate()
        .map(|(j, ej)| {
            entries
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, ei)| ei.p * params.delta_at(ei.x) * (ei.x - ej.x))
                .sum()
        })
        .collect()
}
