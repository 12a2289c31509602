//! Command-line front end: batch evaluation of values, curvature and
//! elasticities over point sets, family classification and the built-in
//! acceptance checks.
//!
//! Exit codes: 0 success, 1 domain error, 2 parse or validation error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::Parser;

use prodgeom::funcspec::{parse_spec_with, ParseOptions};
use prodgeom::{Error, FunctionSpec};

pub mod args;
pub mod commands;
pub mod output;
pub mod points;
pub mod verify;

use args::{Cli, Command, SpecArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// A run-ending failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::Parse { .. } | Error::Validation { .. } | Error::Spec(_) => EXIT_INPUT,
        Error::Numerical(_)
        | Error::HicksUndefined { .. }
        | Error::AllenUndefined { .. }
        | Error::ZeroGradient { .. } => EXIT_NUMERICAL,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: format!("writing output: {e}"),
        }
    }
}

/// Reads and validates the spec file named by `--spec`.
pub fn load_spec(args: &SpecArgs) -> Result<FunctionSpec, CliError> {
    let path = args.spec.display();
    let text = std::fs::read_to_string(&args.spec).map_err(|e| CliError::input(format!("--spec {path}: {e}")))?;
    parse_spec_with(
        &text,
        ParseOptions {
            relax_rho: args.relax_rho,
        },
    )
    .map_err(|e| CliError {
        code: exit_code(&e),
        message: format!("--spec {path}: {e}"),
    })
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version come through here too
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => commands::eval_cmd(a, out, err),
        Command::Curvature(a) => commands::curvature_cmd(a, out, err),
        Command::Elasticity(a) => commands::elasticity_cmd(a, out, err),
        Command::Classify(a) => commands::classify_cmd(a, out, err),
        Command::Verify(a) => verify::verify_cmd(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}
