//! One-parameter sweeps of the analytic metrics, written as CSV.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{analyze, make_family, Family};
use crate::error::{Error, Result};
use crate::game::GameParams;

pub const CSV_HEADER: &str = "param_value,ne,med,opt,mv,ev,x_star,p,y_star,degenerate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Varying {
    C,
    S1,
    S2,
    /// The `epsilon` of a [`Family`]; `c / s1 = 1 - epsilon` along both.
    COverS1Epsilon,
}

/// Values for the parameters that are not swept.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Fixed {
    pub c: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub varying: Varying,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    #[serde(default)]
    pub fixed: Fixed,
    #[serde(default)]
    pub family: Option<Family>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param_value: f64,
    pub ne: f64,
    pub med: f64,
    pub opt: f64,
    pub mv: f64,
    /// `inf` when the optimum costs nothing.
    pub ev: f64,
    pub x_star: f64,
    pub p: f64,
    pub y_star: f64,
    pub degenerate: bool,
}

impl SweepSpec {
    pub fn linear(varying: Varying, from: f64, to: f64, steps: usize, fixed: Fixed) -> Self {
        Self {
            varying,
            from,
            to,
            steps,
            fixed,
            family: None,
        }
    }

    /// Log-spaced epsilons; `from` and `to` may come in either order.
    pub fn family(kind: Family, from: f64, to: f64, steps: usize) -> Self {
        Self {
            varying: Varying::COverS1Epsilon,
            from,
            to,
            steps,
            fixed: Fixed::default(),
            family: Some(kind),
        }
    }

    /// `s1` from 2.1 to 8 with `c = 2`, `s2 = 10`.
    pub fn figure_s1() -> Self {
        Self::linear(
            Varying::S1,
            2.1,
            8.0,
            60,
            Fixed {
                c: Some(2.0),
                s2: Some(10.0),
                ..Fixed::default()
            },
        )
    }

    /// `s2` from 1 to 30 with `c = 2`, `s1 = 2.25`.
    pub fn figure_s2() -> Self {
        Self::linear(
            Varying::S2,
            1.0,
            30.0,
            60,
            Fixed {
                c: Some(2.0),
                s1: Some(2.25),
                ..Fixed::default()
            },
        )
    }

    fn values(&self) -> Result<Vec<f64>> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        if self.steps < 2 {
            return bad(format!(
                "a sweep needs at least 2 steps, got {}",
                self.steps
            ));
        }
        if !(self.from.is_finite() && self.to.is_finite()) {
            return bad("sweep bounds must be finite".into());
        }
        let last = (self.steps - 1) as f64;
        match self.family {
            Some(_) => {
                if self.from == self.to || self.from <= 0.0 || self.to <= 0.0 {
                    return bad("family sweeps need distinct positive epsilons".into());
                }
                let (a, b) = (self.from.ln(), self.to.ln());
                Ok((0..self.steps)
                    .map(|i| match i {
                        0 => self.from,
                        i if i == self.steps - 1 => self.to,
                        i => (a + (b - a) * i as f64 / last).exp(),
                    })
                    .collect())
            }
            None => {
                if self.from >= self.to {
                    return bad(format!("need from < to, got {} >= {}", self.from, self.to));
                }
                Ok((0..self.steps)
                    .map(|i| self.from + (self.to - self.from) * i as f64 / last)
                    .collect())
            }
        }
    }

    fn params_at(&self, v: f64) -> Result<GameParams> {
        if let Some(kind) = self.family {
            return make_family(kind, v);
        }
        let need = |name: &str, val: Option<f64>| {
            val.ok_or_else(|| Error::Precondition(format!("sweep needs a fixed value for {name}")))
        };
        let f = self.fixed;
        match self.varying {
            Varying::C => GameParams::new(v, need("s1", f.s1)?, need("s2", f.s2)?),
            Varying::S1 => GameParams::new(need("c", f.c)?, v, need("s2", f.s2)?),
            Varying::S2 => GameParams::new(need("c", f.c)?, need("s1", f.s1)?, v),
            Varying::COverS1Epsilon => Err(Error::Precondition(
                "sweeping c/s1 epsilon requires a family".into(),
            )),
        }
    }

    /// Every parameter set the sweep visits, in order.
    pub fn parameter_sets(&self) -> Result<Vec<(f64, GameParams)>> {
        if self.family.is_some() && self.varying != Varying::COverS1Epsilon {
            return Err(Error::Precondition(
                "a family sweep varies c_over_s1_epsilon".into(),
            ));
        }
        self.values()?
            .into_iter()
            .map(|v| Ok((v, self.params_at(v)?)))
            .collect()
    }
}

pub fn row(param_value: f64, params: &GameParams) -> SweepRow {
    let r = analyze(params);
    SweepRow {
        param_value,
        ne: r.nash.per_capita_cost,
        med: r.mediator.per_capita_cost,
        opt: r.opt_cost,
        mv: r.mv,
        ev: r.ev,
        x_star: r.mediator.x_star,
        p: r.mediator.p,
        y_star: r.y_star,
        degenerate: r.mediator.degenerate,
    }
}

/// Rows in sweep order; computed in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let sets = spec.parameter_sets()?;
    Ok(sets.par_iter().map(|(v, p)| row(*v, p)).collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<SweepRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn non_decreasing(xs: &[f64]) -> bool {
        xs.windows(2).all(|w| w[1] >= w[0] - 1e-12)
    }

    fn col(rows: &[SweepRow], f: impl Fn(&SweepRow) -> f64) -> Vec<f64> {
        rows.iter().map(f).collect()
    }

    #[test]
    fn header_matches_row_fields() {
        let rows = run_sweep(&SweepSpec::figure_s1()).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows[..1], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn csv_round_trip() {
        let rows = run_sweep(&SweepSpec::figure_s2()).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn s1_sweep_shape() {
        let rows = run_sweep(&SweepSpec::figure_s1()).unwrap();
        assert_eq!(rows.len(), 60);
        assert_eq!(rows[0].param_value, 2.1);
        assert_eq!(rows[59].param_value, 8.0);
        for f in [
            |r: &SweepRow| r.ne,
            |r: &SweepRow| r.med,
            |r: &SweepRow| r.opt,
        ] {
            assert!(non_decreasing(&col(&rows, f)));
        }
        let ev: Vec<f64> = col(&rows, |r| -r.ev);
        assert!(non_decreasing(&ev));
    }

    #[test]
    fn s2_sweep_increases_to_plateau() {
        let rows = run_sweep(&SweepSpec::figure_s2()).unwrap();
        for f in [
            |r: &SweepRow| r.ne,
            |r: &SweepRow| r.med,
            |r: &SweepRow| r.opt,
            |r: &SweepRow| r.mv,
            |r: &SweepRow| r.ev,
        ] {
            let c = col(&rows, f);
            assert!(non_decreasing(&c), "{c:?}");
            assert!(c[c.len() - 1] > c[0]);
        }
    }

    #[test]
    fn family_sweep_is_log_spaced_and_diverges() {
        let rows = run_sweep(&SweepSpec::family(Family::UnboundedMv, 0.2, 0.001, 12)).unwrap();
        assert_eq!(rows[0].param_value, 0.2);
        assert_eq!(rows[11].param_value, 0.001);
        let ratio = rows[1].param_value / rows[0].param_value;
        for w in rows.windows(2) {
            assert!((w[1].param_value / w[0].param_value - ratio).abs() < 1e-9);
            assert!(w[1].mv > w[0].mv);
        }
        assert!(rows[11].mv > 400.0);
        assert!((rows[11].ev - 2.0).abs() < 0.01);
    }

    #[test]
    fn invalid_specs() {
        let fixed = Fixed {
            c: Some(2.0),
            s2: Some(10.0),
            ..Fixed::default()
        };
        assert!(run_sweep(&SweepSpec::linear(Varying::S1, 3.0, 3.0, 5, fixed)).is_err());
        assert!(run_sweep(&SweepSpec::linear(Varying::S1, 3.0, 4.0, 1, fixed)).is_err());
        // s1 <= c somewhere along the sweep
        assert!(run_sweep(&SweepSpec::linear(Varying::S1, 1.0, 4.0, 5, fixed)).is_err());
        assert!(run_sweep(&SweepSpec::linear(Varying::S2, 1.0, 4.0, 5, fixed)).is_err());
        assert!(run_sweep(&SweepSpec::linear(
            Varying::COverS1Epsilon,
            0.1,
            0.2,
            5,
            fixed
        ))
        .is_err());
        assert!(run_sweep(&SweepSpec::family(Family::UnboundedEv, 0.2, 1.5, 5)).is_err());
    }
}
