//! Finite-population Monte Carlo of mediated play.
//!
//! Each round the mediator draws a configuration `x`, tells exactly
//! `g = round(x n)` players to go and the rest to stay. Player 0 is tagged:
//! we record what going costs it when it is told to go, and what going would
//! have cost it when it is told to stay.
//!
//! The realized fraction differs from `x` by at most `1/(2n)`, so per-round
//! costs are biased by at most `max(s1, s2) / (2n)`.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ConfigDistribution, GameParams};

pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SimConfigRepr")]
pub struct SimConfig {
    n: u64,
    rounds: u64,
    seed: u64,
}

#[derive(Deserialize)]
struct SimConfigRepr {
    n: u64,
    rounds: u64,
    seed: u64,
}

impl TryFrom<SimConfigRepr> for SimConfig {
    type Error = Error;

    fn try_from(r: SimConfigRepr) -> Result<Self> {
        Self::new(r.n, r.rounds, r.seed)
    }
}

impl SimConfig {
    pub fn new(n: u64, rounds: u64, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSimConfig(format!(
                "need n >= 2 players, got {n}"
            )));
        }
        if rounds < 1 {
            return Err(Error::InvalidSimConfig("need at least one round".into()));
        }
        Ok(Self { n, rounds, seed })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Advice {
    Go,
    Stay,
}

/// One line of the optional per-round trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u64,
    pub x: f64,
    pub g: u64,
    pub cost: f64,
    pub tagged_advice: Advice,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub params: GameParams,
    pub dist: ConfigDistribution,
    pub config: SimConfig,
    pub rng: String,
    pub mean_per_capita_cost: f64,
    pub se_per_capita_cost: f64,
    /// `None` if the tagged player was never told to go.
    pub tagged_go_cost_mean: Option<f64>,
    pub tagged_go_cost_se: Option<f64>,
    /// `None` if the tagged player was never told to stay.
    pub tagged_stay_hypothetical_go_mean: Option<f64>,
    pub tagged_stay_hypothetical_go_se: Option<f64>,
    pub rounds_go: u64,
    pub rounds_stay: u64,
}

/// Welford running mean / variance.
#[derive(Debug, Default, Clone, Copy)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let d = v - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (v - self.mean);
    }

    fn mean(&self) -> Option<f64> {
        (self.count > 0).then_some(self.mean)
    }

    /// Standard error of the mean; 0 for a single observation.
    fn se(&self) -> Option<f64> {
        match self.count {
            0 => None,
            1 => Some(0.0),
            k => Some((self.m2 / (k - 1) as f64).sqrt() / (k as f64).sqrt()),
        }
    }
}

fn draw_entry(dist: &ConfigDistribution, u: f64) -> f64 {
    let mut acc = 0.0;
    for e in dist.iter() {
        acc += e.p;
        if u < acc {
            return e.x;
        }
    }
    // u landed in the rounding gap above the last cumulative sum
    dist.entries()[dist.len() - 1].x
}

fn simulate<F>(
    params: &GameParams,
    dist: &ConfigDistribution,
    cfg: SimConfig,
    mut on_round: F,
) -> Result<SimulationStats>
where
    F: FnMut(&RoundRecord) -> Result<()>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n;
    let mut social = Moments::default();
    let mut go_side = Moments::default();
    let mut stay_side = Moments::default();

    for round in 0..cfg.rounds {
        let x = draw_entry(dist, rng.random::<f64>());
        let g = ((x * n as f64).round() as u64).min(n);
        let q = g as f64 / n as f64;
        let f = params.go_cost(q);
        let cost = q * f + (1.0 - q);
        social.push(cost);

        // The go set is a uniform g-subset, so player 0 is in it w.p. g/n.
        let tagged_advice = if rng.random_range(0..n) < g {
            go_side.push(f);
            Advice::Go
        } else {
            stay_side.push(f);
            Advice::Stay
        };

        on_round(&RoundRecord {
            round,
            x,
            g,
            cost,
            tagged_advice,
        })?;
    }

    Ok(SimulationStats {
        params: *params,
        dist: dist.clone(),
        config: cfg,
        rng: RNG_ALGORITHM.to_string(),
        mean_per_capita_cost: social.mean,
        se_per_capita_cost: social.se().unwrap_or(0.0),
        tagged_go_cost_mean: go_side.mean(),
        tagged_go_cost_se: go_side.se(),
        tagged_stay_hypothetical_go_mean: stay_side.mean(),
        tagged_stay_hypothetical_go_se: stay_side.se(),
        rounds_go: go_side.count,
        rounds_stay: stay_side.count,
    })
}

pub fn run(params: &GameParams, dist: &ConfigDistribution, cfg: SimConfig) -> SimulationStats {
    simulate(params, dist, cfg, |_| Ok(())).expect("the no-op round sink never fails")
}

/// Like [`run`], also streaming every round as CSV
/// (`round,x,g,cost,tagged_advice`).
pub fn run_traced<W: Write>(
    params: &GameParams,
    dist: &ConfigDistribution,
    cfg: SimConfig,
    trace: W,
) -> Result<SimulationStats> {
    let mut writer = csv::Writer::from_writer(trace);
    let trace_err = |e: csv::Error| Error::Trace(e.to_string());
    let stats = simulate(params, dist, cfg, |r| {
        writer.serialize(r).map_err(trace_err)
    })?;
    writer.flush().map_err(|e| Error::Trace(e.to_string()))?;
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IncentiveVerdict {
    pub z: f64,
    /// Largest per-round cost shift from rounding `x n`.
    pub rounding_allowance: f64,
    pub go_side_pass: bool,
    pub stay_side_pass: bool,
    pub pass: bool,
}

/// Empirical incentive check: a player told to go should expect going to cost
/// at most 1, and one told to stay should expect it to cost at least 1, each
/// up to `z` standard errors plus the finite-`n` rounding allowance.
/// A side with no observations passes.
pub fn check_incentives(
    params: &GameParams,
    dist: &ConfigDistribution,
    stats: &SimulationStats,
    z: f64,
) -> Result<IncentiveVerdict> {
    if stats.params != *params || stats.dist != *dist {
        return Err(Error::MismatchedInputs);
    }
    let rounding_allowance = params.s1().max(params.s2()) / (2 * stats.config.n) as f64;
    let slack = |se: Option<f64>| z * se.unwrap_or(0.0) + rounding_allowance;

    let go_side_pass = stats
        .tagged_go_cost_mean
        .is_none_or(|m| m <= 1.0 + slack(stats.tagged_go_cost_se));
    let stay_side_pass = stats
        .tagged_stay_hypothetical_go_mean
        .is_none_or(|m| m >= 1.0 - slack(stats.tagged_stay_hypothetical_go_se));

    Ok(IncentiveVerdict {
        z,
        rounding_allowance,
        go_side_pass,
        stay_side_pass,
        pass: go_side_pass && stay_side_pass,
    })
}
