//! Game definitions for the extended El Farol game.
//!
//! A continuum of players each choose to go or stay. Staying costs 1. Going
//! costs `f(x)` where `x` is the fraction that goes:
//!
//! ```text
//! f(x) = c - s1 * x          for 0    <= x <= c/s1
//! f(x) = s2 * (x - c/s1)     for c/s1 <= x <= 1
//! ```
//!
//! All social costs in this crate are per capita.

use serde::{Deserialize, Serialize};

use crate::error::{DistributionViolation, Error, Result};

/// Tolerance on `sum(p) == 1` for configuration distributions.
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;

/// Distance from a sign boundary of `delta` within which the sign is `Zero`.
pub const SIGN_BOUNDARY_TOL: f64 = 1e-12;

/// Parameters `(c, s1, s2)` of a game whose cost to stay is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr")]
pub struct GameParams {
    c: f64,
    s1: f64,
    s2: f64,
}

#[derive(Deserialize)]
struct ParamsRepr {
    c: f64,
    s1: f64,
    s2: f64,
}

impl TryFrom<ParamsRepr> for GameParams {
    type Error = Error;

    fn try_from(r: ParamsRepr) -> Result<Self> {
        GameParams::new(r.c, r.s1, r.s2)
    }
}

impl GameParams {
    /// Requires `0 < c < s1` and `s2 > 0`.
    pub fn new(c: f64, s1: f64, s2: f64) -> Result<Self> {
        if !(c.is_finite() && s1.is_finite() && s2.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "parameters must be finite (c = {c}, s1 = {s1}, s2 = {s2})"
            )));
        }
        if !(0.0 < c && c < s1) {
            return Err(Error::InvalidParams(format!(
                "require 0 < c < s1 (c = {c}, s1 = {s1})"
            )));
        }
        if s2 <= 0.0 {
            return Err(Error::InvalidParams(format!("require s2 > 0 (s2 = {s2})")));
        }
        Ok(Self { c, s1, s2 })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }

    /// The fraction `c/s1` at which the cost to go bottoms out at 0.
    pub fn kink(&self) -> f64 {
        self.c / self.s1
    }

    /// Cost to go when a fraction `x` of players goes.
    pub fn cost_to_go(&self, x: f64) -> Result<f64> {
        check_fraction(x)?;
        Ok(self.go_cost(x))
    }

    /// Stay-minus-go advantage `1 - f(x)`.
    pub fn delta(&self, x: f64) -> Result<f64> {
        check_fraction(x)?;
        Ok(self.delta_at(x))
    }

    /// Per-capita social cost of the configuration where a fraction `x` goes.
    pub fn config_social_cost(&self, x: f64) -> Result<f64> {
        check_fraction(x)?;
        Ok(self.config_cost(x))
    }

    /// Sign of `delta(x)` from the interval characterization:
    ///
    /// * positive on `((c-1)/s1, c/s1 + 1/s2)` when `f(1) >= 1`, and on
    ///   `((c-1)/s1, 1]` when `f(1) < 1`;
    /// * negative below `(c-1)/s1`, and above `c/s1 + 1/s2` when `f(1) > 1`;
    /// * zero at the two boundary points (within [`SIGN_BOUNDARY_TOL`]).
    pub fn sign_of_delta(&self, x: f64) -> Result<DeltaSign> {
        check_fraction(x)?;
        let lower = (self.c - 1.0) / self.s1;
        let upper = self.kink() + 1.0 / self.s2;
        let f1 = self.go_cost(1.0);

        if (x - lower).abs() <= SIGN_BOUNDARY_TOL
            || (upper <= 1.0 + SIGN_BOUNDARY_TOL && (x - upper).abs() <= SIGN_BOUNDARY_TOL)
        {
            return Ok(DeltaSign::Zero);
        }
        if x < lower {
            return Ok(DeltaSign::Negative);
        }
        if f1 >= 1.0 {
            if x < upper {
                Ok(DeltaSign::Positive)
            } else {
                Ok(DeltaSign::Negative)
            }
        } else {
            Ok(DeltaSign::Positive)
        }
    }

    // Unchecked evaluators for callers that already hold a valid fraction.

    pub(crate) fn go_cost(&self, x: f64) -> f64 {
        let kink = self.kink();
        if x < kink {
            self.c - self.s1 * x
        } else {
            self.s2 * (x - kink)
        }
    }

    pub(crate) fn delta_at(&self, x: f64) -> f64 {
        1.0 - self.go_cost(x)
    }

    pub(crate) fn config_cost(&self, x: f64) -> f64 {
        x * self.go_cost(x) + (1.0 - x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaSign {
    Positive,
    Negative,
    Zero,
}

/// Parameters `(c', s1', s2', t')` of a game whose cost to stay is `t'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawGameParams {
    c: f64,
    s1: f64,
    s2: f64,
    stay_cost: f64,
}

impl RawGameParams {
    pub fn new(c: f64, s1: f64, s2: f64, stay_cost: f64) -> Result<Self> {
        // Same shape constraints as the normalized game.
        GameParams::new(c, s1, s2)?;
        if !(stay_cost.is_finite() && stay_cost > 0.0) {
            return Err(Error::InvalidParams(format!(
                "require a positive cost to stay (t = {stay_cost})"
            )));
        }
        Ok(Self {
            c,
            s1,
            s2,
            stay_cost,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }

    pub fn stay_cost(&self) -> f64 {
        self.stay_cost
    }

    /// Raw cost to go `f'(x)`; same shape as the normalized cost.
    pub fn cost_to_go(&self, x: f64) -> Result<f64> {
        check_fraction(x)?;
        let kink = self.c / self.s1;
        Ok(if x < kink {
            self.c - self.s1 * x
        } else {
            self.s2 * (x - kink)
        })
    }
}

/// Rescale a game with stay cost `t` to the equivalent game with stay cost 1.
pub fn normalize(raw: &RawGameParams) -> Result<GameParams> {
    let t = raw.stay_cost;
    GameParams::new(raw.c / t, raw.s1 / t, raw.s2 / t)
}

/// A configuration: the fraction of players advised to go.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(f64);

impl Configuration {
    pub fn new(x: f64) -> Result<Self> {
        check_fraction(x)?;
        Ok(Self(x))
    }

    pub fn fraction(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub x: f64,
    pub p: f64,
}

/// Probability distribution over `k >= 2` distinct configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr")]
pub struct ConfigDistribution {
    entries: Vec<Entry>,
}

#[derive(Deserialize)]
struct DistributionRepr {
    entries: Vec<Entry>,
}

impl TryFrom<DistributionRepr> for ConfigDistribution {
    type Error = Error;

    fn try_from(r: DistributionRepr) -> Result<Self> {
        ConfigDistribution::new(r.entries)
    }
}

impl ConfigDistribution {
    pub fn new(entries: Vec<Entry>) -> Result<Self> {
        validate_distribution(&entries)?;
        Ok(Self { entries })
    }

    /// Build from `(x, p)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, p)| Entry { x, p }).collect())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry> + '_ {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<Entry> {
        self.entries
    }
}

/// Check every distribution invariant, reporting the first one violated.
///
/// Checks run in order: entry count, fractions, probabilities, duplicate
/// configurations (exact equality), then the probability sum.
pub fn validate_distribution(entries: &[Entry]) -> std::result::Result<(), DistributionViolation> {
    if entries.len() < 2 {
        return Err(DistributionViolation::TooFewConfigurations { k: entries.len() });
    }
    for (index, e) in entries.iter().enumerate() {
        if !(0.0..=1.0).contains(&e.x) {
            return Err(DistributionViolation::FractionOutOfRange { index, x: e.x });
        }
        if !(e.p > 0.0 && e.p < 1.0) {
            return Err(DistributionViolation::ProbabilityOutOfRange { index, p: e.p });
        }
    }
    for (first, a) in entries.iter().enumerate() {
        for (offset, b) in entries[first + 1..].iter().enumerate() {
            if a.x == b.x {
                return Err(DistributionViolation::DuplicateConfiguration {
                    first,
                    second: first + 1 + offset,
                    x: a.x,
                });
            }
        }
    }
    let sum: f64 = entries.iter().map(|e| e.p).sum();
    if (sum - 1.0).abs() > PROBABILITY_SUM_TOL {
        return Err(DistributionViolation::ProbabilitiesDoNotSumToOne { sum });
    }
    Ok(())
}

/// Expected per-capita social cost, `1 - sum(p_i * x_i * delta(x_i))`.
pub fn expected_social_cost(params: &GameParams, dist: &ConfigDistribution) -> f64 {
    1.0 - dist
        .iter()
        .map(|e| e.p * e.x * params.delta_at(e.x))
        .sum::<f64>()
}

fn check_fraction(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::FractionOutOfRange(x))
    }
}
