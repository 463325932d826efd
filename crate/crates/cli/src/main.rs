//! `pseudoiso`: curves, surfaces and surfaces of revolution in
//! pseudo-isotropic space from the command line.
//!
//! Exit codes: 0 success, 1 expression parse error, 2 domain or
//! precondition failure, 3 partial results, 4 verification failure.

mod commands;
mod input;
mod mesh;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pseudoiso::ExprError;

#[derive(Debug, Parser)]
#[command(
    name = "pseudoiso",
    version,
    about = "Differential geometry of pseudo-isotropic 3-space"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Causal character of a vector, or of a curve with its admissibility and arc-length status.
    Classify(ClassifyArgs),
    /// Curvature, torsion and Frenet frame along a unit-speed curve, as CSV.
    Curve(CurveArgs),
    /// Fundamental forms and curvatures of a parametric surface or xy-graph.
    Surface(SurfaceArgs),
    /// Sweep a profile into a surface of revolution; OBJ mesh and JSON summary.
    Revolve(RevolveArgs),
    /// Run the reference checks and print a JSON report.
    Verify(VerifyArgs),
    /// Parse an expression and dump its tree.
    Parse(ParseArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["vector", "curve"]))]
pub struct ClassifyArgs {
    /// Vector `x,y,z` (constant expressions).
    #[arg(long, allow_hyphen_values = true)]
    pub vector: Option<String>,
    /// Curve `x(s),y(s),z(s)`.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    #[arg(long, default_value = "s")]
    pub var: String,
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    pub range: String,
    #[arg(short = 'n', long = "n", default_value_t = 64)]
    pub n: usize,
    /// Tolerance for the arc-length test and the lightlike plane.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Curve `x(s),y(s),z(s)`, parameterized by arc length.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    #[arg(long, default_value = "s")]
    pub var: String,
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    pub range: String,
    #[arg(short = 'n', long = "n", default_value_t = 101)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["surface", "graph"]))]
pub struct SurfaceArgs {
    /// Surface `x(u,v),y(u,v),z(u,v)`.
    #[arg(long, allow_hyphen_values = true)]
    pub surface: Option<String>,
    /// Height `z = u(x,y)` of a graph over the xy-plane; parameters are `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    pub graph: Option<String>,
    /// Parameter names, in order.
    #[arg(long, default_value = "u,v")]
    pub vars: String,
    /// First parameter range.
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    pub range: String,
    /// Second parameter range.
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    pub vrange: String,
    #[arg(long, default_value = "11x11")]
    pub grid: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Flat,
    Minimal,
    ConstantK,
    ConstantH,
    ParabolicSphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindName {
    Spacelike,
    Timelike,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["family", "profile"]))]
pub struct RevolveArgs {
    /// Closed-form profile family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Explicit profile `f(u)`.
    #[arg(long, allow_hyphen_values = true)]
    pub profile: Option<String>,
    /// Profile plane of an explicit profile.
    #[arg(long, value_enum, default_value = "spacelike", requires = "profile")]
    pub kind: KindName,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub h0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c2: f64,
    /// Use `f' = -sqrt(c1 + K0 u^2)` for constant-K profiles.
    #[arg(long)]
    pub descending: bool,
    /// Profile parameter range, `u > 0`.
    #[arg(long, default_value = "1:2", allow_hyphen_values = true)]
    pub range: String,
    /// Rotation angle range.
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
    pub vrange: String,
    #[arg(long, default_value = "50x50")]
    pub grid: String,
    /// Tolerance of the family check.
    #[arg(long, default_value_t = pseudoiso::revolution::VERIFY_TOL)]
    pub tol: f64,
    /// OBJ output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-vertex CSV with K and H.
    #[arg(long)]
    pub vertex_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "paper")]
    pub suite: String,
    /// Override every upper-bound tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = pseudoiso::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Run only the named checks.
    #[arg(long = "check")]
    pub checks: Vec<String>,
    /// Print check names without running them.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Declared variables, comma-separated.
    #[arg(long, default_value = "")]
    pub vars: String,
    /// Evaluate value and derivatives at this point (comma-separated).
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{err}\n  {text}\n  {caret}")]
    Parse {
        text: String,
        caret: String,
        err: ExprError,
    },
    #[error(transparent)]
    Core(#[from] pseudoiso::Error),
    #[error("{0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn parse(text: &str, err: ExprError) -> CliError {
        let offset = err.offset().unwrap_or(0).min(text.len());
        let width = text[..offset].chars().count();
        CliError::Parse {
            text: text.to_string(),
            caret: format!("{}^", " ".repeat(width)),
            err,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 1,
            CliError::Core(pseudoiso::Error::Expr(e)) if e.is_parse_error() => 1,
            _ => 2,
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Partial,
    VerificationFailed,
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let result = match &config.command {
        Command::Classify(a) => commands::classify(a),
        Command::Curve(a) => commands::curve(a),
        Command::Surface(a) => commands::surface(a),
        Command::Revolve(a) => commands::revolve(a),
        Command::Verify(a) => commands::verify(a),
        Command::Parse(a) => commands::parse(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Partial) => ExitCode::from(3),
        Ok(Status::VerificationFailed) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
