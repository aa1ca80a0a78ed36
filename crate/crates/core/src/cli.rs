//! The `supermax` command line: argument parsing, dispatch and JSON reports.
//!
//! Exit status is 0 on success, 2 when a mathematical property fails (an
//! audit finds a hyperbolic curve, a Milnor-Wood bound is violated, ...) and
//! 1 on bad input.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::construct::{necklace, sample_coords, ActionAngleCoords};
use crate::curves::audit_non_hyperbolic;
use crate::error::{Error, Result};
use crate::psl2::Tolerances;
use crate::rep::{euler_report, fuzz_milnor_wood, SphereRep};
use crate::symplectic::{
    delzant_polytope, moment_map, polytope_volume, symplectic_volume, twist_flow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Slack below which a moment vector counts as outside its polytope.
const MOMENT_SLACK_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "supermax", version, about = "Super-maximal PSL(2,R) representations of punctured spheres")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance used when classifying isometries.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_class: f64,
    /// Tolerance on the residual of the relation c_1 ... c_n = 1.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_relation: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a super-maximal representation from action-angle coordinates.
    BuildNecklace {
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true, required = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
        twist: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample a representation in the super-maximal component.
    Sample {
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true, required = true)]
        alpha: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relative Euler class and related invariants of a representation file.
    Euler { file: PathBuf },
    /// Check the refined Milnor-Wood inequality for a representation file.
    MwCheck { file: PathBuf },
    /// Check the Milnor-Wood bounds and the mirror relation on random representations.
    FuzzMw {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Search braid orbits of simple closed curves for hyperbolic images.
    AuditCurves {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Moment polytope of the super-maximal component.
    Polytope {
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true, required = true)]
        alpha: Vec<f64>,
        #[arg(long)]
        vertices: bool,
        #[arg(long)]
        volume: bool,
        #[arg(long)]
        json: bool,
    },
    /// Values of the moment map on the pants curves.
    Moment { file: PathBuf },
    /// Twist a representation along a pants curve.
    Flow {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        t: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Result of a run: exit status and the JSON report for stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub report: Value,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { status: EXIT_OK, report }
    }

    fn checked(report: Value, violated: bool) -> Self {
        Outcome {
            status: if violated { EXIT_VIOLATION } else { EXIT_OK },
            report,
        }
    }
}

/// Parses an angle in radians, or a multiple of π written with a `pi` suffix
/// (`1.8pi`, `pi`, `-0.5pi`).
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let value = match s.strip_suffix("pi") {
        Some("") | Some("+") => PI,
        Some("-") => -PI,
        Some(m) => m.trim_end_matches('*').parse::<f64>().map_err(|e| format!("bad angle {s:?}: {e}"))? * PI,
        None => s.parse::<f64>().map_err(|e| format!("bad angle {s:?}: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {s:?} is not finite"))
    }
}

/// Rounds to 12 significant digits.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// An angle reported in radians and as a multiple of π.
pub fn angle_json(x: f64) -> Value {
    json!({ "radians": sig12(x), "pi": sig12(x / PI) })
}

fn angles_json(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| angle_json(x)).collect())
}

fn tolerances(cli: &Cli) -> Result<Tolerances> {
    let tol = Tolerances {
        class: cli.tol_class,
        relation: cli.tol_relation,
    };
    tol.validate()?;
    Ok(tol)
}

fn read_rep(path: &Path, tol: &Tolerances) -> Result<SphereRep> {
    SphereRep::read(path, tol)
}

fn emit_rep(rho: &SphereRep, output: &Option<PathBuf>) -> Result<Value> {
    match output {
        Some(path) => {
            rho.write(path)?;
            Ok(json!(path.display().to_string()))
        }
        None => Ok(serde_json::from_str(&rho.to_json())?),
    }
}

fn euler_json(rho: &SphereRep, tol: &Tolerances) -> Result<Value> {
    let r = euler_report(rho, tol)?;
    Ok(json!({
        "n": r.n,
        "euler": r.euler,
        "super_maximal": r.super_maximal,
        "theta_vector": angles_json(&r.theta_vector),
        "big_theta": angle_json(r.big_theta),
        "volume": angle_json(r.volume),
        "l": r.l,
        "mw_lower": r.mw_lower,
        "mw_upper": r.mw_upper,
        "within_bounds": r.mw_lower <= r.euler && r.euler <= r.mw_upper,
    }))
}

fn moment_json(rho: &SphereRep) -> Result<(Value, bool)> {
    let beta = moment_map(rho)?.beta;
    let alpha = rho.theta_vector()?;
    let polytope = delzant_polytope(&alpha)?;
    let slack = if polytope.dim == 0 { 0.0 } else { polytope.min_slack(&beta) };
    let inside = polytope.dim == 0 || slack >= -MOMENT_SLACK_TOL;
    Ok((
        json!({
            "alpha": angles_json(&alpha),
            "beta": angles_json(&beta),
            "min_slack": sig12(slack),
            "inside": inside,
        }),
        inside,
    ))
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::BuildNecklace { alpha, x, twist, output } => {
            let t = if twist.is_empty() { vec![0.0; x.len()] } else { twist.clone() };
            let coords = ActionAngleCoords {
                alpha: alpha.clone(),
                x: x.clone(),
                t,
            };
            let rho = necklace(&coords)?;
            Ok(Outcome::ok(json!({
                "representation": emit_rep(&rho, output)?,
                "euler": euler_json(&rho, &tol)?,
            })))
        }
        Command::Sample { alpha, output } => {
            let coords = sample_coords(alpha, cli.seed)?;
            let rho = necklace(&coords)?;
            Ok(Outcome::ok(json!({
                "seed": cli.seed,
                "x": angles_json(&coords.x),
                "twist": angles_json(&coords.t),
                "representation": emit_rep(&rho, output)?,
            })))
        }
        Command::Euler { file } => Ok(Outcome::ok(euler_json(&read_rep(file, &tol)?, &tol)?)),
        Command::MwCheck { file } => {
            let report = euler_json(&read_rep(file, &tol)?, &tol)?;
            let ok = report["within_bounds"].as_bool() == Some(true);
            Ok(Outcome::checked(report, !ok))
        }
        Command::FuzzMw { n, trials } => {
            if *n < 3 {
                return Err(Error::InvalidInput(format!("n must be at least 3, got {n}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let report = fuzz_milnor_wood(*n, *trials, &mut rng, &tol);
            let violated = report.violations() > 0;
            Ok(Outcome::checked(serde_json::to_value(&report)?, violated))
        }
        Command::AuditCurves { file, depth, samples } => {
            let rho = read_rep(file, &tol)?;
            let report = audit_non_hyperbolic(&rho, *depth, *samples, cli.seed);
            Ok(Outcome::checked(serde_json::to_value(&report)?, !report.is_clean()))
        }
        Command::Polytope { alpha, vertices, volume, json } => {
            let p = delzant_polytope(alpha)?;
            let d = p.dim as i32;
            let mut out = serde_json::Map::new();
            let all = *json || !(*vertices || *volume);
            if all {
                out.insert("alpha".into(), angles_json(alpha));
                out.insert("dim".into(), json!(p.dim));
                out.insert("lambda".into(), angle_json(p.lambda));
                out.insert("halfspaces".into(), serde_json::to_value(&p.halfspaces)?);
            }
            if all || *vertices {
                let vs: Vec<Value> = p.vertices.iter().map(|v| angles_json(v)).collect();
                out.insert("vertices".into(), Value::Array(vs));
            }
            if all || *volume {
                let euclidean = polytope_volume(&p)?;
                let symplectic = symplectic_volume(alpha)?;
                out.insert(
                    "euclidean_volume".into(),
                    json!({ "value": sig12(euclidean), "pi_power": d, "coefficient": sig12(euclidean / PI.powi(d)) }),
                );
                out.insert(
                    "symplectic_volume".into(),
                    json!({ "value": sig12(symplectic), "pi_power": 2 * d, "coefficient": sig12(symplectic / PI.powi(2 * d)) }),
                );
            }
            Ok(Outcome::ok(Value::Object(out)))
        }
        Command::Moment { file } => {
            let (report, inside) = moment_json(&read_rep(file, &tol)?)?;
            Ok(Outcome::checked(report, !inside))
        }
        Command::Flow { file, index, t, output } => {
            let rho = read_rep(file, &tol)?;
            let flowed = twist_flow(&rho, *index, *t)?;
            Ok(Outcome::ok(json!({
                "index": index,
                "t": angle_json(*t),
                "beta_before": angles_json(&moment_map(&rho)?.beta),
                "beta_after": angles_json(&moment_map(&flowed)?.beta),
                "representation": emit_rep(&flowed, output)?,
            })))
        }
    }
}

/// Error report printed on failure.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.code(), "message": e.to_string() })
}

/// Parses `args`, runs, prints the report and returns the exit status.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{}", pretty(&outcome.report));
            outcome.status
        }
        Err(e) => {
            eprintln!("{}", pretty(&error_json(&e)));
            if e.is_violation() {
                EXIT_VIOLATION
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_else(|_| v.to_string())
}
