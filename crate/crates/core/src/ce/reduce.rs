//! Transformations that turn a correlated equilibrium into a strictly cheaper
//! one, and a driver that applies them until none is applicable.
//!
//! Applied exhaustively to a CE of a game with `c > 1`, they leave exactly one
//! configuration at `x = 0` and one configuration at or above `c/s1`.

use serde::Serialize;

use super::{verify_ce, REDUCTION_CE_TOL};
use crate::error::{Error, Result};
use crate::game::{ConfigDistribution, DeltaSign, Entry, GameParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ReductionStep {
    DropZeroDelta { x: f64 },
    MoveToZero { x: f64 },
    Reflect { from: f64, to: f64 },
    Merge { lower: f64, upper: f64, into: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixpoint {
    pub dist: ConfigDistribution,
    pub steps: Vec<ReductionStep>,
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn entry_at(dist: &ConfigDistribution, j: usize) -> Result<Entry> {
    dist.entries().get(j).copied().ok_or_else(|| {
        precondition(format!(
            "index {j} out of range for {} configurations",
            dist.len()
        ))
    })
}

fn require_c_above_one(params: &GameParams) -> Result<()> {
    if params.c() > 1.0 {
        Ok(())
    } else {
        Err(precondition(format!(
            "requires c > 1, got c = {}",
            params.c()
        )))
    }
}

fn require_ce(params: &GameParams, dist: &ConfigDistribution) -> Result<()> {
    if verify_ce(params, dist, REDUCTION_CE_TOL).is_ce {
        Ok(())
    } else {
        Err(precondition("input is not a correlated equilibrium"))
    }
}

/// Rebuild a distribution, folding entries that land on the same fraction
/// into one.
fn rebuild(entries: Vec<Entry>) -> Result<ConfigDistribution> {
    let mut out: Vec<Entry> = Vec::with_capacity(entries.len());
    for e in entries {
        match out.iter_mut().find(|o| o.x == e.x) {
            Some(o) => o.p += e.p,
            None => out.push(e),
        }
    }
    if out.len() < 2 {
        return Err(precondition(
            "result would have fewer than 2 configurations",
        ));
    }
    ConfigDistribution::new(out)
}

fn replace_fraction(dist: &ConfigDistribution, j: usize, x: f64) -> Result<ConfigDistribution> {
    let mut entries = dist.entries().to_vec();
    entries[j].x = x;
    rebuild(entries)
}

/// Remove a configuration whose `delta` is zero and rescale the rest.
///
/// Requires `k >= 3`. The result is a CE whenever the input is, and costs
/// strictly less as long as the remaining configurations have positive
/// go-side slack.
pub fn drop_zero_delta(
    params: &GameParams,
    dist: &ConfigDistribution,
    j: usize,
) -> Result<ConfigDistribution> {
    let target = entry_at(dist, j)?;
    if params.sign_of_delta(target.x)? != DeltaSign::Zero {
        return Err(precondition(format!("delta({}) is not zero", target.x)));
    }
    if dist.len() < 3 {
        return Err(precondition("dropping a configuration requires k >= 3"));
    }
    let rest: Vec<Entry> = dist
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, e)| *e)
        .collect();
    let mass: f64 = rest.iter().map(|e| e.p).sum();
    rebuild(
        rest.into_iter()
            .map(|e| Entry {
                x: e.x,
                p: e.p / mass,
            })
            .collect(),
    )
}

/// Send a configuration with `0 < x_j < (c-1)/s1` to `x = 0`, keeping `p_j`.
///
/// Cost falls by exactly `p_j * x_j * |delta(x_j)|`. If a configuration at 0
/// already exists the two are combined.
pub fn move_to_zero(
    params: &GameParams,
    dist: &ConfigDistribution,
    j: usize,
) -> Result<ConfigDistribution> {
    require_c_above_one(params)?;
    let target = entry_at(dist, j)?;
    let lower = (params.c() - 1.0) / params.s1();
    if !(target.x > 0.0 && target.x < lower) {
        return Err(precondition(format!(
            "move to zero needs 0 < x < {lower}, got x = {}",
            target.x
        )));
    }
    require_ce(params, dist)?;
    replace_fraction(dist, j, 0.0)
}

/// Where [`reflect`] sends a configuration from the descending branch.
///
/// The point on the ascending branch with the same cost to go, if that point
/// exists in `[0, 1]`; otherwise everybody goes (`x = 1`).
pub fn reflect_target(params: &GameParams, x: f64) -> f64 {
    let f = params.go_cost(x);
    let f1 = params.go_cost(1.0);
    if f1 >= 1.0 || f <= f1 {
        (params.kink() + f / params.s2()).min(1.0)
    } else {
        1.0
    }
}

/// Move a configuration with `(c-1)/s1 < x_j < c/s1` onto the ascending
/// branch (see [`reflect_target`]). The result is a CE with strictly lower
/// cost.
pub fn reflect(
    params: &GameParams,
    dist: &ConfigDistribution,
    j: usize,
) -> Result<ConfigDistribution> {
    require_c_above_one(params)?;
    let target = entry_at(dist, j)?;
    let lower = (params.c() - 1.0) / params.s1();
    if !(target.x > lower && target.x < params.kink()) {
        return Err(precondition(format!(
            "reflection needs {lower} < x < {}, got x = {}",
            params.kink(),
            target.x
        )));
    }
    require_ce(params, dist)?;
    replace_fraction(dist, j, reflect_target(params, target.x))
}

/// Replace two configurations `c/s1 <= x_i < x_j` by one at their
/// probability-weighted mean carrying their combined probability.
///
/// Strictly raises the go-side sum and strictly lowers the stay-side sum, so
/// a CE stays a CE and gets cheaper.
pub fn merge(
    params: &GameParams,
    dist: &ConfigDistribution,
    i: usize,
    j: usize,
) -> Result<ConfigDistribution> {
    let lo = entry_at(dist, i)?;
    let hi = entry_at(dist, j)?;
    if !(hi.x > lo.x && lo.x >= params.kink()) {
        return Err(precondition(format!(
            "merge needs x_j > x_i >= {}, got x_i = {}, x_j = {}",
            params.kink(),
            lo.x,
            hi.x
        )));
    }
    let p = lo.p + hi.p;
    let x = (lo.p * lo.x + hi.p * hi.x) / p;
    let entries = dist
        .iter()
        .enumerate()
        .filter(|&(r, _)| r != i)
        .map(|(r, e)| if r == j { Entry { x, p } } else { *e })
        .collect();
    rebuild(entries)
}

/// One configuration at 0, none in `(0, c/s1)`, at most one at or above
/// `c/s1`.
pub fn has_two_configuration_shape(params: &GameParams, dist: &ConfigDistribution) -> bool {
    let kink = params.kink();
    let zeros = dist.iter().filter(|e| e.x == 0.0).count();
    let between = dist.iter().filter(|e| e.x > 0.0 && e.x < kink).count();
    let upper = dist.iter().filter(|e| e.x >= kink).count();
    zeros == 1 && between == 0 && upper <= 1
}

fn next_step(
    params: &GameParams,
    dist: &ConfigDistribution,
) -> Result<Option<(ConfigDistribution, ReductionStep)>> {
    let entries = dist.entries();
    let lower = (params.c() - 1.0) / params.s1();
    let kink = params.kink();

    if entries.len() >= 3 {
        for (j, e) in entries.iter().enumerate() {
            if params.sign_of_delta(e.x)? == DeltaSign::Zero {
                let next = drop_zero_delta(params, dist, j)?;
                return Ok(Some((next, ReductionStep::DropZeroDelta { x: e.x })));
            }
        }
    }
    for (j, e) in entries.iter().enumerate() {
        if e.x > 0.0 && e.x < lower && params.sign_of_delta(e.x)? != DeltaSign::Zero {
            let next = move_to_zero(params, dist, j)?;
            return Ok(Some((next, ReductionStep::MoveToZero { x: e.x })));
        }
    }
    for (j, e) in entries.iter().enumerate() {
        if e.x > lower && e.x < kink && params.sign_of_delta(e.x)? != DeltaSign::Zero {
            let to = reflect_target(params, e.x);
            let next = reflect(params, dist, j)?;
            return Ok(Some((next, ReductionStep::Reflect { from: e.x, to })));
        }
    }
    let mut upper: Vec<(usize, f64)> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.x >= kink)
        .map(|(j, e)| (j, e.x))
        .collect();
    if upper.len() >= 2 {
        upper.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (i, xi) = upper[0];
        let (j, xj) = upper[1];
        let (pi, pj) = (entries[i].p, entries[j].p);
        let into = (pi * xi + pj * xj) / (pi + pj);
        let next = merge(params, dist, i, j)?;
        return Ok(Some((
            next,
            ReductionStep::Merge {
                lower: xi,
                upper: xj,
                into,
            },
        )));
    }
    Ok(None)
}

/// Apply drop-zero-delta, move-to-zero, reflect and merge (in that order of
/// preference) until none applies.
///
/// Requires `c > 1` and a CE input.
pub fn reduce_to_fixpoint(params: &GameParams, dist: &ConfigDistribution) -> Result<Fixpoint> {
    require_c_above_one(params)?;
    require_ce(params, dist)?;
    let mut current = dist.clone();
    let mut steps = Vec::new();
    // every step removes a configuration or moves one out of (0, c/s1) for good
    let budget = 2 * dist.len() + 1;
    while let Some((next, step)) = next_step(params, &current)? {
        steps.push(step);
        current = next;
        if steps.len() > budget {
            return Err(precondition("reductions did not terminate"));
        }
    }
    Ok(Fixpoint {
        dist: current,
        steps,
    })
}
