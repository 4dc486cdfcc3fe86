//! Brute-force search for the cheapest correlated equilibrium supported on a
//! uniform grid of configurations.
//!
//! On the grid `x_g = g / (m - 1)` the problem is a small linear program in
//! the probabilities `q_g`:
//!
//! ```text
//! minimize    1 - sum q_g a_g            a_g = x_g delta(x_g)
//! subject to  sum q_g a_g >= 0
//!             sum q_g b_g <= 0           b_g = (1 - x_g) delta(x_g)
//!             sum q_g = 1,  q >= 0
//! ```
//!
//! With three rows, every basic feasible solution has at most three nonzero
//! probabilities, so enumerating supports of size 1, 2 and 3 and solving the
//! square system of tight constraints for each finds the exact optimum.
//! Single-point supports are allowed, so the search covers the degenerate
//! cases where the best equilibrium is a pure configuration.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::best_mediator;
use crate::ce;
use crate::error::{Error, Result};
use crate::game::GameParams;

/// Constraint violation tolerated inside the enumeration.
pub const FEASIBILITY_TOL: f64 = 1e-10;
/// Probabilities below this are treated as zero.
pub const SNAP_TOL: f64 = 1e-12;
/// Costs closer than this are ties, broken by the smaller support.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportPoint {
    pub index: usize,
    pub x: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution {
    pub support: Vec<SupportPoint>,
    pub per_capita_cost: f64,
    pub grid_size: usize,
    /// The uniform grid was infeasible and indifference points were added.
    pub augmented: bool,
}

#[derive(Debug, Clone)]
struct Candidate {
    cost: f64,
    // (grid index, probability), ascending by index
    support: Vec<(usize, f64)>,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        if self.cost < other.cost - TIE_TOL {
            return true;
        }
        if self.cost > other.cost + TIE_TOL {
            return false;
        }
        let mine = self.support.iter().map(|s| s.0);
        let theirs = other.support.iter().map(|s| s.0);
        mine.lt(theirs)
    }
}

fn keep_better(best: Option<Candidate>, next: Option<Candidate>) -> Option<Candidate> {
    match (best, next) {
        (Some(b), Some(n)) => Some(if n.better_than(&b) { n } else { b }),
        (b, n) => b.or(n),
    }
}

struct Grid {
    xs: Vec<f64>,
    go: Vec<f64>,
    stay: Vec<f64>,
}

impl Grid {
    fn new(params: &GameParams, xs: Vec<f64>) -> Self {
        let delta: Vec<f64> = xs.iter().map(|&x| params.delta_at(x)).collect();
        let go = xs.iter().zip(&delta).map(|(x, d)| x * d).collect();
        let stay = xs.iter().zip(&delta).map(|(x, d)| (1.0 - x) * d).collect();
        Self { xs, go, stay }
    }

    fn len(&self) -> usize {
        self.xs.len()
    }

    /// Score a support if it is feasible and every probability is positive.
    fn candidate(&self, support: &[(usize, f64)]) -> Option<Candidate> {
        if support.iter().any(|&(_, p)| p < SNAP_TOL) {
            return None;
        }
        let go: f64 = support.iter().map(|&(g, p)| p * self.go[g]).sum();
        let stay: f64 = support.iter().map(|&(g, p)| p * self.stay[g]).sum();
        if go < -FEASIBILITY_TOL || stay > FEASIBILITY_TOL {
            return None;
        }
        Some(Candidate {
            cost: 1.0 - go,
            support: support.to_vec(),
        })
    }

    fn single(&self, g: usize) -> Option<Candidate> {
        self.candidate(&[(g, 1.0)])
    }

    /// Two-point supports with one of the inequality rows tight.
    fn pair(&self, g: usize, h: usize) -> Option<Candidate> {
        let mut best = None;
        for row in [&self.go, &self.stay] {
            let denom = row[h] - row[g];
            if denom == 0.0 {
                continue;
            }
            // q_g row[g] + (1 - q_g) row[h] = 0
            let q = row[h] / denom;
            best = keep_better(best, self.candidate(&[(g, q), (h, 1.0 - q)]));
        }
        best
    }

    /// Three-point supports with both inequality rows tight (Cramer's rule).
    fn triple(&self, g: usize, h: usize, l: usize) -> Option<Candidate> {
        let (a, b) = (&self.go, &self.stay);
        // rows: [1 1 1; a; b], right-hand side (1, 0, 0)
        let c_g = a[h] * b[l] - a[l] * b[h];
        let c_h = a[l] * b[g] - a[g] * b[l];
        let c_l = a[g] * b[h] - a[h] * b[g];
        let det = c_g + c_h + c_l;
        if det.abs() < 1e-14 {
            return None;
        }
        self.candidate(&[(g, c_g / det), (h, c_h / det), (l, c_l / det)])
    }
}

/// Cheapest correlated equilibrium whose configurations lie on the grid
/// `{0, 1/(m-1), ..., 1}`.
///
/// A three-point basic solution has both inequality rows tight, so its go-side
/// sum is zero and it costs exactly 1. Three-point supports are therefore only
/// enumerated when nothing cheaper than 1 was found among one- and two-point
/// supports.
///
/// With `c < 1` and `f(1) > 1` the only equilibria put all their mass where
/// `f = 1`; if that fraction is off the grid the grid program is infeasible,
/// and it is then added as an extra point (`augmented` is set).
pub fn solve_grid(params: &GameParams, grid_size: usize) -> Result<OracleSolution> {
    solve_with(params, grid_size, |grid| {
        let best = small_supports(grid);
        if best.as_ref().is_none_or(|b| b.cost >= 1.0 - 1e-9) {
            keep_better(best, triples(grid))
        } else {
            best
        }
    })
}

/// Exhaustive enumeration without the three-point shortcut.
#[doc(hidden)]
pub fn solve_grid_exhaustive(params: &GameParams, grid_size: usize) -> Result<OracleSolution> {
    solve_with(params, grid_size, |grid| {
        keep_better(small_supports(grid), triples(grid))
    })
}

fn solve_with<F>(params: &GameParams, m: usize, search: F) -> Result<OracleSolution>
where
    F: Fn(&Grid) -> Option<Candidate>,
{
    if m < 2 {
        return Err(Error::GridTooSmall(m));
    }
    let mut xs: Vec<f64> = (0..m).map(|g| g as f64 / (m - 1) as f64).collect();
    let grid = Grid::new(params, xs.clone());
    if let Some(best) = search(&grid) {
        return Ok(finish(&grid, best, m, false));
    }
    for root in indifference_points(params) {
        if !xs.contains(&root) {
            xs.push(root);
        }
    }
    let grid = Grid::new(params, xs);
    let best = search(&grid).expect("a configuration with f = 1 is always an equilibrium");
    Ok(finish(&grid, best, m, true))
}

/// Fractions in `[0, 1]` where going and staying cost the same.
fn indifference_points(params: &GameParams) -> Vec<f64> {
    let (c, s1, s2) = (params.c(), params.s1(), params.s2());
    [(c - 1.0) / s1, c / s1 + 1.0 / s2]
        .into_iter()
        .filter(|x| (0.0..=1.0).contains(x))
        .collect()
}

fn small_supports(grid: &Grid) -> Option<Candidate> {
    let m = grid.len();
    let per_first: Vec<Option<Candidate>> = (0..m)
        .into_par_iter()
        .map(|g| {
            let mut best = grid.single(g);
            for h in g + 1..m {
                best = keep_better(best, grid.pair(g, h));
            }
            best
        })
        .collect();
    per_first.into_iter().fold(None, keep_better)
}

fn triples(grid: &Grid) -> Option<Candidate> {
    let m = grid.len();
    let per_first: Vec<Option<Candidate>> = (0..m)
        .into_par_iter()
        .map(|g| {
            let mut best = None;
            for h in g + 1..m {
                for l in h + 1..m {
                    best = keep_better(best, grid.triple(g, h, l));
                }
            }
            best
        })
        .collect();
    per_first.into_iter().fold(None, keep_better)
}

fn finish(grid: &Grid, best: Candidate, grid_size: usize, augmented: bool) -> OracleSolution {
    OracleSolution {
        support: best
            .support
            .iter()
            .map(|&(index, p)| SupportPoint {
                index,
                x: grid.xs[index],
                p,
            })
            .collect(),
        per_capita_cost: best.cost,
        grid_size,
        augmented,
    }
}

impl OracleSolution {
    /// Check the solution against the CE constraints.
    pub fn verify(&self, params: &GameParams, tol: f64) -> bool {
        let (go, stay) = ce::slacks(params, self.support.iter().map(|s| (s.x, s.p)));
        go >= -tol && stay <= tol
    }
}

/// How far the grid optimum is from the closed-form optimal mediator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    pub params: GameParams,
    pub grid_size: usize,
    pub oracle_cost: f64,
    pub analytic_cost: f64,
    pub difference: f64,
    /// `(1 + 2 max(s1, s2)) / (m - 1)`.
    pub bound: f64,
    pub within_bound: bool,
    pub degenerate: bool,
    pub x_star: f64,
    pub x_star_on_grid: bool,
    /// Non-degenerate case only: the support is `{0}` plus grid points next
    /// to `x*`.
    pub support_matches: Option<bool>,
    pub support: Vec<SupportPoint>,
}

pub fn compare_with_closed_form(params: &GameParams, grid_size: usize) -> Result<OracleComparison> {
    let solution = solve_grid(params, grid_size)?;
    let mediator = best_mediator(params);
    let h = 1.0 / (grid_size - 1) as f64;
    let bound = (1.0 + 2.0 * params.s1().max(params.s2())) * h;
    let difference = (solution.per_capita_cost - mediator.per_capita_cost).abs();

    let scaled = mediator.x_star * (grid_size - 1) as f64;
    let x_star_on_grid = (scaled - scaled.round()).abs() <= 1e-9;

    let support_matches = (!mediator.degenerate).then(|| {
        let has_zero = solution.support.iter().any(|s| s.index == 0);
        let others: Vec<&SupportPoint> = solution.support.iter().filter(|s| s.index != 0).collect();
        has_zero
            && others.len() == 1
            && others
                .iter()
                .all(|s| (s.x - mediator.x_star).abs() < h + 1e-12)
    });

    Ok(OracleComparison {
        params: *params,
        grid_size,
        oracle_cost: solution.per_capita_cost,
        analytic_cost: mediator.per_capita_cost,
        difference,
        bound,
        within_bound: difference <= bound,
        degenerate: mediator.degenerate,
        x_star: mediator.x_star,
        x_star_on_grid,
        support_matches,
        support: solution.support,
    })
}
