//! The `lcalg` command line: spec files in, human and JSON reports out.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on a spec
//! or usage error, 3 when the truncation is too small: a needed bracket is
//! missing, a report could evaluate none of its checks, or (with `--strict`)
//! any check was skipped.

mod commands;
mod output;
mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;

pub use commands::{parse_grid, parse_matrix, parse_params};
pub use output::{Envelope, ReportOut, SCHEMA_VERSION};
pub use spec::{load_spec, parse_spec, SpecFile};

#[derive(Parser, Debug)]
#[command(name = "lcalg", version, about = "Exact checks for Lie conformal algebras and their modules")]
pub struct Cli {
    /// Algebra spec file (TOML).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Write the machine-readable report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Exit with 3 when any check was skipped because of the truncation.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Skew-symmetry and Jacobi on every generator pair and triple.
    CheckAlgebra,
    /// The module axiom for one or all modules of the spec.
    CheckModule {
        #[arg(long)]
        module: Option<String>,
    },
    /// Lie axioms of the annihilation algebra and the mode correspondence.
    AnnihCheck {
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Eigenspaces of `L_(1)` on a module up to a ∂-degree bound.
    Weights {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        module: Option<String>,
        /// Label of the Virasoro generator; defaults to the first one.
        #[arg(long)]
        generator: Option<String>,
    },
    /// Solve the intertwiner equation by coefficient matching.
    SolveFunceq {
        /// `a=…,di=…,dj=…` with optional `b`, `ci`, `cj` (default 0).
        #[arg(long)]
        params: String,
        #[arg(long)]
        degree: u32,
        /// Restrict to total degree exactly `k`.
        #[arg(long)]
        homogeneous: Option<u32>,
        /// Use the variant with shift `∂+μ` in the first factor.
        #[arg(long)]
        bcsx: bool,
    },
    /// Verify the homogeneous solution table with samples and perturbations.
    VerifyProp36 {
        /// `default` or a JSON file with `a`, `delta_i` and `shifts` arrays.
        #[arg(long, default_value = "default")]
        samples: String,
    },
    /// Finite-horizon admissibility of `a_1` values.
    ScanA1 {
        /// Comma-separated scalars, or `rationals:LO:HI:NMAX`.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        horizon: u32,
        #[arg(long)]
        max_distinct: Option<usize>,
    },
    /// Smith normal form of a matrix over ℂ[∂], e.g. `[[d,1],[0,d]]`.
    Snf {
        #[arg(long)]
        matrix: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebra => "check-algebra",
            Command::CheckModule { .. } => "check-module",
            Command::AnnihCheck { .. } => "annih-check",
            Command::Weights { .. } => "weights",
            Command::SolveFunceq { .. } => "solve-funceq",
            Command::VerifyProp36 { .. } => "verify-prop36",
            Command::ScanA1 { .. } => "scan-a1",
            Command::Snf { .. } => "snf",
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TruncationExceeded(..) => 3,
        _ => 2,
    }
}

/// Runs one command, writing human output to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let env = match commands::execute(cli) {
        Ok(env) => env,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return exit_code(&e);
        }
    };
    if !cli.quiet {
        let _ = write!(out, "{}", env.human);
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, env.to_json()) {
            let _ = writeln!(out, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    env.exit_code(cli.strict)
}

/// Parses arguments (program name first) and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, &mut std::io::stdout()),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}
