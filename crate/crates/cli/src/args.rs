use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "prodgeom",
    version,
    about = "Curvature and elasticities of separable production functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Function value at each point.
    Eval(PointArgs),
    /// Hessian determinant and Gauss-Kronecker curvature at each point.
    Curvature(PointArgs),
    /// Hicks and Allen elasticities for each point and variable pair.
    Elasticity(ElasticityArgs),
    /// Family verdicts for the spec, each confirmed numerically on samples.
    Classify(ClassifyArgs),
    /// Run the built-in acceptance checks and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// JSON spec file.
    #[arg(long)]
    pub spec: PathBuf,

    /// Accept ACMS specs with rho >= 1.
    #[arg(long)]
    pub relax_rho: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Threshold for every zero test.
    #[arg(long, default_value_t = 1e-8, value_parser = parse_tol)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    /// CSV file (no header, one point per row) or
    /// `grid:<lo>..<hi>x<lo>..<hi>[x...]:<k>`.
    #[arg(long)]
    pub points: String,

    #[command(flatten)]
    pub output: OutputArgs,

    /// Add finite-difference cross-check columns.
    #[arg(long)]
    pub fd_check: bool,
}

#[derive(Debug, Args)]
pub struct ElasticityArgs {
    #[command(flatten)]
    pub base: PointArgs,

    /// Variable pairs as `i,j[;i,j...]` (1-based). Defaults to every i < j.
    #[arg(long)]
    pub pairs: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    /// Points for the numeric confirmation. Defaults to 20 seeded points
    /// log-uniform in [0.5, 2]^n.
    #[arg(long)]
    pub points: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Replace the zero-test thresholds of the checks.
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        Ok(t) => Err(format!("tolerance must be a positive finite number, got {t}")),
        Err(e) => Err(format!("'{s}' is not a number: {e}")),
    }
}
