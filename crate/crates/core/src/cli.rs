//! The `elfarol` command line.
//!
//! Exit codes: 0 success, 1 a verification gate failed, 2 bad usage or
//! parameters.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::{analyze, best_mediator, Family};
use crate::game::{normalize, ConfigDistribution, GameParams, RawGameParams};
use crate::oracle::{compare_with_closed_form, OracleComparison};
use crate::simulate::{self, check_incentives, IncentiveVerdict, SimConfig, SimulationStats};
use crate::sweep::{run_sweep, write_csv, Fixed, SweepSpec, Varying};

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "elfarol",
    version,
    about = "Optimal mediators for the El Farol game"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form optimum, best Nash, optimal mediator, MV and EV.
    Analyze(AnalyzeArgs),
    /// Sweep one parameter and write the metrics as CSV.
    Sweep(SweepArgs),
    /// Compare the grid LP optimum with the closed-form mediator.
    Oracle(OracleArgs),
    /// Monte Carlo of mediated play with an empirical incentive check.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub s1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub s2: f64,
}

impl ParamArgs {
    fn params(&self) -> crate::Result<GameParams> {
        GameParams::new(self.c, self.s1, self.s2)
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Cost of staying; parameters are rescaled so that it becomes 1.
    #[arg(long, visible_alias = "raw-stay-cost")]
    pub stay_cost: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VaryArg {
    C,
    S1,
    S2,
    COverS1Epsilon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    UnboundedMv,
    UnboundedEv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// s1 from 2.1 to 8, c = 2, s2 = 10, 60 steps
    FigureS1,
    /// s2 from 1 to 30, c = 2, s1 = 2.25, 60 steps
    FigureS2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, conflicts_with_all = ["vary", "family"])]
    pub preset: Option<Preset>,
    #[arg(long, value_enum)]
    pub vary: Option<VaryArg>,
    /// Sweep epsilon (log-spaced) along a diverging family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub s1: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["optimal", "dist"])))]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Simulate the closed-form optimal mediator.
    #[arg(long)]
    pub optimal: bool,
    /// JSON file `{"entries": [{"x": .., "p": ..}, ..]}`.
    #[arg(long)]
    pub dist: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    #[arg(long, default_value_t = 20_000)]
    pub rounds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3.0)]
    pub z: f64,
    /// Per-round CSV trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Self(EXIT_USAGE, msg.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Self::usage(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure(EXIT_USAGE, format!("stdout: {e}")))
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let rendered = e.render().to_string();
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            } else {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            };
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Outcome {
    let p = args.params;
    let (params, raw) = match args.stay_cost {
        None => (p.params()?, None),
        Some(t) => {
            let raw = RawGameParams::new(p.c, p.s1, p.s2, t)?;
            (normalize(&raw)?, Some(raw))
        }
    };
    let mut json = serde_json::to_value(analyze(&params)).expect("reports serialize");
    if let (Some(raw), Some(obj)) = (raw, json.as_object_mut()) {
        obj.insert(
            "raw_params".into(),
            serde_json::to_value(raw).expect("params serialize"),
        );
    }
    print_json(out, &json)?;
    Ok(EXIT_OK)
}

fn sweep_spec(args: &SweepArgs) -> std::result::Result<SweepSpec, Failure> {
    if let Some(preset) = args.preset {
        return Ok(match preset {
            Preset::FigureS1 => SweepSpec::figure_s1(),
            Preset::FigureS2 => SweepSpec::figure_s2(),
        });
    }
    let (from, to) = match (args.from, args.to) {
        (Some(f), Some(t)) => (f, t),
        _ => {
            return Err(Failure::usage(
                "--from and --to are required without --preset",
            ))
        }
    };
    if let Some(family) = args.family {
        if args.vary.is_some_and(|v| v != VaryArg::COverS1Epsilon) {
            return Err(Failure::usage("--family sweeps vary c-over-s1-epsilon"));
        }
        let kind = match family {
            FamilyArg::UnboundedMv => Family::UnboundedMv,
            FamilyArg::UnboundedEv => Family::UnboundedEv,
        };
        return Ok(SweepSpec::family(kind, from, to, args.steps));
    }
    let varying = match args.vary {
        Some(VaryArg::C) => Varying::C,
        Some(VaryArg::S1) => Varying::S1,
        Some(VaryArg::S2) => Varying::S2,
        Some(VaryArg::COverS1Epsilon) => Varying::COverS1Epsilon,
        None => {
            return Err(Failure::usage(
                "one of --preset, --vary or --family is required",
            ))
        }
    };
    let fixed = Fixed {
        c: args.c,
        s1: args.s1,
        s2: args.s2,
    };
    Ok(SweepSpec::linear(varying, from, to, args.steps, fixed))
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let Format::Csv = args.format;
    let rows = run_sweep(&sweep_spec(args)?)?;
    match &args.out {
        Some(path) => {
            let io_fail =
                |e: &dyn std::fmt::Display| Failure(EXIT_USAGE, format!("{}: {e}", path.display()));
            let file = File::create(path).map_err(|e| io_fail(&e))?;
            write_csv(&rows, BufWriter::new(file)).map_err(|e| io_fail(&e))?;
            let _ = writeln!(err, "wrote {} rows to {}", rows.len(), path.display());
        }
        None => write_csv(&rows, out).map_err(|e| Failure(EXIT_USAGE, format!("stdout: {e}")))?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OracleOutput {
    #[serde(flatten)]
    comparison: OracleComparison,
    tol: f64,
    gate_pass: bool,
}

/// The oracle must never beat the closed form, must stay within the
/// discretization bound, and must match exactly when the closed-form support
/// is on the grid.
pub fn oracle_gate(cmp: &OracleComparison, tol: f64) -> bool {
    let exact_expected = !cmp.degenerate && cmp.x_star_on_grid;
    cmp.difference <= cmp.bound + tol
        && cmp.oracle_cost >= cmp.analytic_cost - tol
        && (!exact_expected || cmp.difference <= tol)
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Outcome {
    let params = args.params.params()?;
    let tol = args.tol;
    if tol.is_nan() || tol < 0.0 {
        return Err(Failure::usage(format!(
            "--tol must be nonnegative, got {tol}"
        )));
    }
    let comparison = compare_with_closed_form(&params, args.grid)?;
    let gate_pass = oracle_gate(&comparison, tol);
    print_json(
        out,
        &OracleOutput {
            comparison,
            tol,
            gate_pass,
        },
    )?;
    Ok(if gate_pass { EXIT_OK } else { EXIT_GATE })
}

#[derive(Serialize)]
struct SimulateOutput {
    stats: SimulationStats,
    verdict: IncentiveVerdict,
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Outcome {
    let params = args.params.params()?;
    let dist = match &args.dist {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<ConfigDistribution>(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        None => match best_mediator(&params).distribution() {
            Some(d) => d.clone(),
            None => {
                return Err(Failure::usage(
                    "the optimal mediator is degenerate here (a single configuration); \
                     run `elfarol analyze` for its cost",
                ))
            }
        },
    };
    let cfg = SimConfig::new(args.n, args.rounds, args.seed)?;
    let stats = match &args.trace {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            simulate::run_traced(&params, &dist, cfg, BufWriter::new(file))?
        }
        None => simulate::run(&params, &dist, cfg),
    };
    let verdict = check_incentives(&params, &dist, &stats, args.z)?;
    let pass = verdict.pass;
    print_json(out, &SimulateOutput { stats, verdict })?;
    Ok(if pass { EXIT_OK } else { EXIT_GATE })
}
