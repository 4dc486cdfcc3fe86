//! Closed-form equilibrium analysis.
//!
//! For a game `(c, s1, s2)` this computes the socially optimal attendance,
//! the best Nash equilibrium, the best correlated equilibrium (optimal
//! mediator), and the two ratios between them:
//!
//! * mediation value `MV = NE / MED`
//! * enforcement value `EV = MED / OPT`

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::{ConfigDistribution, GameParams, RawGameParams};

/// Attendance fraction `y*` minimizing the per-capita social cost.
pub fn optimal_fraction(params: &GameParams) -> f64 {
    let kink = params.kink();
    let inv_s2 = 1.0 / params.s2();
    let mid = 0.5 * (kink + inv_s2);
    if inv_s2 < kink {
        kink
    } else if mid <= 1.0 {
        mid
    } else {
        1.0
    }
}

/// Per-capita social cost at `y*`.
pub fn optimal_social_cost(params: &GameParams) -> f64 {
    params.config_cost(optimal_fraction(params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NashRegime {
    /// `f(1) >= 1`: players mix until going costs exactly as much as staying.
    MixedIndifference,
    /// `f(1) < 1`: everybody goes.
    AllGo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NashReport {
    pub regime: NashRegime,
    /// Expected go-fraction of the equilibrium.
    pub y: f64,
    pub per_capita_cost: f64,
}

/// Minimum-cost Nash equilibrium.
///
/// In the mixed regime the reported fraction is the point on the ascending
/// branch where `f(y) = 1`; any profile with that mean costs 1 per capita.
pub fn best_nash(params: &GameParams) -> NashReport {
    let f1 = params.go_cost(1.0);
    if f1 >= 1.0 {
        NashReport {
            regime: NashRegime::MixedIndifference,
            y: (params.kink() + 1.0 / params.s2()).min(1.0),
            per_capita_cost: 1.0,
        }
    } else {
        NashReport {
            regime: NashRegime::AllGo,
            y: 1.0,
            per_capita_cost: f1,
        }
    }
}

fn lambda_from(c: f64, s1: f64, s2: f64, stay: f64) -> f64 {
    let a = c * (1.0 / s1 + 1.0 / s2);
    a - (a * (c - stay) / s2).sqrt()
}

/// Smaller stationary point of the two-configuration mediator objective.
///
/// Defined for `c > 1`.
pub fn lambda(params: &GameParams) -> Result<f64> {
    if params.c() <= 1.0 {
        return Err(Error::LambdaDomain(params.c()));
    }
    Ok(lambda_from(params.c(), params.s1(), params.s2(), 1.0))
}

/// Larger root of the same quadratic; always beyond `c/s1 + 1/s2`.
pub fn lambda_upper(params: &GameParams) -> Result<f64> {
    if params.c() <= 1.0 {
        return Err(Error::LambdaDomain(params.c()));
    }
    let a = params.c() * (1.0 / params.s1() + 1.0 / params.s2());
    Ok(a + (a * (params.c() - 1.0) / params.s2()).sqrt())
}

/// `g(x) = (c-1) x delta(x) / ((c-1) + (1-x) delta(x))`: how far below 1 the
/// cost of `{(0, p), (x, 1-p)}` drops when `p` is the smallest value that keeps
/// the stay-side constraint satisfied.
///
/// Only meaningful for `c > 1` and `delta(x) >= 0`; elsewhere no such `p`
/// exists.
pub fn two_point_objective(params: &GameParams, x: f64) -> f64 {
    let d = params.delta_at(x);
    let cm1 = params.c() - 1.0;
    cm1 * x * d / (cm1 + (1.0 - x) * d)
}

/// What the optimal mediator randomizes over.
#[derive(Debug, Clone, PartialEq)]
pub enum MediatorDistribution {
    /// `{(0, p), (x*, 1-p)}`.
    TwoPoint(ConfigDistribution),
    /// A single configuration; the best correlated equilibrium coincides with
    /// the best Nash equilibrium.
    Degenerate { x: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediatorReport {
    /// `None` when `c <= 1`.
    pub lambda: Option<f64>,
    pub x_star: f64,
    /// Probability of the all-stay configuration.
    pub p: f64,
    pub dist: MediatorDistribution,
    pub per_capita_cost: f64,
    pub degenerate: bool,
}

impl MediatorReport {
    /// The two-point distribution, if the mediator is not degenerate.
    pub fn distribution(&self) -> Option<&ConfigDistribution> {
        match &self.dist {
            MediatorDistribution::TwoPoint(d) => Some(d),
            MediatorDistribution::Degenerate { .. } => None,
        }
    }
}

/// The optimal mediator.
///
/// For `c <= 1` and for `lambda >= 1` there is nothing to gain from mediation
/// and the report is degenerate: `x_star` is then the Nash configuration and
/// `p = 0`.
pub fn best_mediator(params: &GameParams) -> MediatorReport {
    let c = params.c();
    if c <= 1.0 {
        let nash = best_nash(params);
        return MediatorReport {
            lambda: None,
            x_star: nash.y,
            p: 0.0,
            dist: MediatorDistribution::Degenerate { x: nash.y },
            per_capita_cost: nash.per_capita_cost,
            degenerate: true,
        };
    }

    let lam = lambda_from(c, params.s1(), params.s2(), 1.0);
    let kink = params.kink();
    let x_star = if kink <= lam && lam < 1.0 {
        lam
    } else if lam < kink {
        kink
    } else {
        1.0
    };

    let slack = (1.0 - x_star) * params.delta_at(x_star);
    let p = slack / (slack + c - 1.0);
    let per_capita_cost = p + (1.0 - p) * params.config_cost(x_star);

    let two_point = (p > 0.0)
        .then(|| ConfigDistribution::from_pairs(&[(0.0, p), (x_star, 1.0 - p)]).ok())
        .flatten();
    let (dist, degenerate) = match two_point {
        Some(d) => (MediatorDistribution::TwoPoint(d), false),
        None => (MediatorDistribution::Degenerate { x: x_star }, true),
    };

    MediatorReport {
        lambda: Some(lam),
        x_star,
        p,
        dist,
        per_capita_cost,
        degenerate,
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// `MV = NE / MED`.
pub fn mediation_value(params: &GameParams) -> f64 {
    let med = best_mediator(params);
    if med.degenerate {
        return 1.0;
    }
    ratio(best_nash(params).per_capita_cost, med.per_capita_cost)
}

/// `EV = MED / OPT`; `+inf` if the optimum costs nothing.
pub fn enforcement_value(params: &GameParams) -> f64 {
    ratio(
        best_mediator(params).per_capita_cost,
        optimal_social_cost(params),
    )
}

/// Parameter families along which the mediation metrics diverge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum Family {
    /// `(2+e, (2+e)/(1-e), 1/e)`: MV grows without bound as `e -> 0`.
    UnboundedMv,
    /// `(1+e, (1+e)/(1-e), 1/e)`: EV grows without bound as `e -> 0`.
    UnboundedEv,
}

pub fn make_family(kind: Family, epsilon: f64) -> Result<GameParams> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let c = match kind {
        Family::UnboundedMv => 2.0 + epsilon,
        Family::UnboundedEv => 1.0 + epsilon,
    };
    GameParams::new(c, c / (1.0 - epsilon), 1.0 / epsilon)
}

/// Everything about one game in one place.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub params: GameParams,
    pub y_star: f64,
    pub opt_cost: f64,
    pub nash: NashReport,
    pub mediator: MediatorReport,
    pub mv: f64,
    pub ev: f64,
}

pub fn analyze(params: &GameParams) -> EquilibriumReport {
    let y_star = optimal_fraction(params);
    let opt_cost = params.config_cost(y_star);
    let nash = best_nash(params);
    let mediator = best_mediator(params);
    let mv = if mediator.degenerate {
        1.0
    } else {
        ratio(nash.per_capita_cost, mediator.per_capita_cost)
    };
    let ev = ratio(mediator.per_capita_cost, opt_cost);
    EquilibriumReport {
        params: *params,
        y_star,
        opt_cost,
        nash,
        mediator,
        mv,
        ev,
    }
}

/// Flat JSON view of a report. Field names are part of the CLI contract.
/// An infinite `ev` serializes as `null`.
#[derive(Serialize)]
struct ReportRecord<'a> {
    params: &'a GameParams,
    y_star: f64,
    opt: f64,
    nash_regime: NashRegime,
    nash_y: f64,
    nash_cost: f64,
    lambda: Option<f64>,
    x_star: f64,
    p: f64,
    med: f64,
    mv: f64,
    ev: f64,
    degenerate: bool,
}

impl Serialize for EquilibriumReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ReportRecord {
            params: &self.params,
            y_star: self.y_star,
            opt: self.opt_cost,
            nash_regime: self.nash.regime,
            nash_y: self.nash.y,
            nash_cost: self.nash.per_capita_cost,
            lambda: self.mediator.lambda,
            x_star: self.mediator.x_star,
            p: self.mediator.p,
            med: self.mediator.per_capita_cost,
            mv: self.mv,
            ev: self.ev,
            degenerate: self.mediator.degenerate,
        }
        .serialize(serializer)
    }
}

/// MV and EV evaluated directly in the units of a game whose stay cost is
/// `t`, without rescaling to `t = 1` first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RawMetrics {
    pub mv: f64,
    pub ev: f64,
}

pub fn raw_metrics(raw: &RawGameParams) -> RawMetrics {
    let (c, s1, s2, t) = (raw.c(), raw.s1(), raw.s2(), raw.stay_cost());
    let f = |x: f64| {
        raw.cost_to_go(x)
            .expect("fractions used here lie in [0, 1]")
    };
    let kink = c / s1;

    let mid = 0.5 * (kink + t / s2);
    let y = if t / s2 < kink {
        kink
    } else if mid <= 1.0 {
        mid
    } else {
        1.0
    };
    let opt = y * f(y) + (1.0 - y) * t;
    let nash = f(1.0).min(t);

    if c <= t {
        return RawMetrics {
            mv: 1.0,
            ev: ratio(nash, opt),
        };
    }

    let lam = lambda_from(c, s1, s2, t);
    let x = if kink <= lam && lam < 1.0 {
        lam
    } else if lam < kink {
        kink
    } else {
        1.0
    };
    let slack = (1.0 - x) * (t - f(x));
    let p = slack / (slack + c - t);
    let med = p * t + (1.0 - p) * (x * f(x) + (1.0 - x) * t);
    RawMetrics {
        mv: if p > 0.0 { ratio(nash, med) } else { 1.0 },
        ev: ratio(med, opt),
    }
}
