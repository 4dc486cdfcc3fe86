#![allow(dead_code)]

use elfarol::ce::verify_ce;
use elfarol::{ConfigDistribution, GameParams, RawGameParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `c > 1` with the kink `c/s1` in `[0.1, 0.95]`.
pub fn params_c_above_one(rng: &mut ChaCha8Rng) -> GameParams {
    let c = rng.random_range(1.05..3.0);
    let kink = rng.random_range(0.1..0.95);
    let s2 = rng.random_range(0.5..30.0);
    GameParams::new(c, c / kink, s2).unwrap()
}

/// Any valid game, including `c <= 1`.
pub fn params_any(rng: &mut ChaCha8Rng) -> GameParams {
    let c = rng.random_range(0.05..4.0);
    let kink = rng.random_range(0.02..0.98);
    let s2 = rng.random_range(0.1..40.0);
    GameParams::new(c, c / kink, s2).unwrap()
}

pub fn raw_params(rng: &mut ChaCha8Rng) -> RawGameParams {
    let t = rng.random_range(0.1..10.0);
    let c = t * rng.random_range(0.05..4.0);
    let kink = rng.random_range(0.02..0.98);
    let s2 = t * rng.random_range(0.1..40.0);
    RawGameParams::new(c, c / kink, s2, t).unwrap()
}

/// `forced` fractions plus `extra` uniform ones, random weights.
pub fn dist_with(rng: &mut ChaCha8Rng, forced: &[f64], extra: usize) -> Option<ConfigDistribution> {
    let mut xs: Vec<f64> = forced.to_vec();
    for _ in 0..extra {
        let x = if rng.random_bool(0.3) {
            0.0
        } else {
            rng.random_range(0.0..1.0)
        };
        xs.push(x);
    }
    let mut seen = xs.clone();
    seen.sort_by(f64::total_cmp);
    if seen.windows(2).any(|w| w[0] == w[1]) || xs.len() < 2 {
        return None;
    }
    let ws: Vec<f64> = xs.iter().map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = ws.iter().sum();
    let pairs: Vec<(f64, f64)> = xs.iter().zip(&ws).map(|(&x, w)| (x, w / total)).collect();
    ConfigDistribution::from_pairs(&pairs).ok()
}

pub fn random_dist(rng: &mut ChaCha8Rng) -> ConfigDistribution {
    loop {
        let k = rng.random_range(2..=6);
        if let Some(d) = dist_with(rng, &[], k) {
            return d;
        }
    }
}

pub fn is_ce(params: &GameParams, dist: &ConfigDistribution) -> bool {
    verify_ce(params, dist, 1e-9).is_ce
}

/// Rejection-sample a CE containing `forced`, or give up.
pub fn ce_with(
    rng: &mut ChaCha8Rng,
    params: &GameParams,
    forced: &[f64],
    extra: std::ops::RangeInclusive<usize>,
) -> Option<ConfigDistribution> {
    for _ in 0..200 {
        let k = rng.random_range(extra.clone());
        if let Some(d) = dist_with(rng, forced, k) {
            if is_ce(params, &d) {
                return Some(d);
            }
        }
    }
    None
}

pub fn index_of(dist: &ConfigDistribution, x: f64) -> usize {
    dist.iter().position(|e| e.x == x).unwrap()
}

/// Strictly inside `(lo, hi)`, away from both ends.
pub fn inner(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let w = hi - lo;
    rng.random_range(lo + 0.02 * w..hi - 0.02 * w)
}

pub const INSTANCES: usize = 1000;

/// Parameters, a CE, and the indices a reduction acts on.
pub type Instance = (GameParams, ConfigDistribution, Vec<usize>);

/// Draw instances until `INSTANCES` have been produced.
pub fn collect<F>(seed: u64, mut gen: F) -> Vec<Instance>
where
    F: FnMut(&mut ChaCha8Rng) -> Option<Instance>,
{
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(INSTANCES);
    for _ in 0..200 * INSTANCES {
        if let Some(inst) = gen(&mut r) {
            out.push(inst);
            if out.len() == INSTANCES {
                return out;
            }
        }
    }
    panic!("only generated {} instances", out.len());
}

/// A CE with k >= 3 containing an indifferent configuration, and a positive
/// go-side sum (otherwise dropping it leaves the cost unchanged).
pub fn drop_instance(r: &mut ChaCha8Rng) -> Option<Instance> {
    let params = params_c_above_one(r);
    let zeros = [
        (params.c() - 1.0) / params.s1(),
        params.kink() + 1.0 / params.s2(),
    ];
    let z = zeros[r.random_range(0..2)];
    if z >= 1.0 {
        return None;
    }
    let dist = ce_with(r, &params, &[z], 2..=4)?;
    (verify_ce(&params, &dist, 0.0).go_side_slack > 1e-9)
        .then(|| (params, dist.clone(), vec![index_of(&dist, z)]))
}

/// A CE with a configuration in `(0, (c-1)/s1)`.
pub fn move_instance(r: &mut ChaCha8Rng) -> Option<Instance> {
    let params = params_c_above_one(r);
    let x = inner(r, 0.0, (params.c() - 1.0) / params.s1());
    let dist = ce_with(r, &params, &[x], 1..=4)?;
    Some((params, dist.clone(), vec![index_of(&dist, x)]))
}

/// A CE with a configuration in `((c-1)/s1, c/s1)`.
pub fn reflect_instance(r: &mut ChaCha8Rng) -> Option<Instance> {
    let params = params_c_above_one(r);
    let x = inner(r, (params.c() - 1.0) / params.s1(), params.kink());
    let dist = ce_with(r, &params, &[x], 1..=4)?;
    Some((params, dist.clone(), vec![index_of(&dist, x)]))
}

/// A CE with two configurations `x_j > x_i >= c/s1`.
pub fn merge_instance(r: &mut ChaCha8Rng) -> Option<Instance> {
    let params = params_c_above_one(r);
    let xi = if r.random_bool(0.1) {
        params.kink()
    } else {
        inner(r, params.kink(), 1.0)
    };
    let xj = if r.random_bool(0.1) {
        1.0
    } else {
        inner(r, xi, 1.0)
    };
    let dist = ce_with(r, &params, &[xi, xj], 1..=3)?;
    Some((
        params,
        dist.clone(),
        vec![index_of(&dist, xi), index_of(&dist, xj)],
    ))
}

/// Any CE of a game with `c > 1`.
pub fn fixpoint_instance(r: &mut ChaCha8Rng) -> Option<Instance> {
    let params = params_c_above_one(r);
    let dist = ce_with(r, &params, &[], 2..=6)?;
    Some((params, dist, vec![]))
}
