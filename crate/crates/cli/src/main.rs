//! `sparks`: command-line front end.
//!
//! Every command prints a report to stdout and exits with 0 when all checks
//! pass, 1 when a mathematical check fails and 2 on bad input.

mod commands;
mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use sparks::io::{Report, Status};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "sparks", version, about = "Exact spark complexes over triangulated spaces")]
pub struct Cli {
    /// Seed for all sampling (ChaCha8 stream, seeded with `seed_from_u64`).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled elements for constructive checks.
    #[arg(long, global = true, default_value_t = 64)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = CoeffArg::Z)]
    pub coeff: CoeffArg,
    /// Truncation level for level models.
    #[arg(long, global = true, default_value_t = 1)]
    pub level: usize,
    /// Write the produced spark, witness or bundle (or the report) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum CoeffArg {
    Z,
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ModelKind {
    Cech,
    Hyper,
    Level,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum FormArg {
    Psi,
    S,
}

/// Complexes are `.scx` paths or built-in fixture names.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology descriptors of a simplicial complex.
    Cohomology { complex: String },
    /// Acyclicity check of the vertex-star cover.
    CheckCover { complex: String },
    /// Build a Čech model and report its ranks and checks.
    BuildModel { complex: String, kind: ModelKind },
    /// Spark complex axioms of a `.spc` file or of the Čech model of a complex.
    CheckAxioms { input: String },
    /// The 3×3 grid in degree `k`.
    Grid {
        complex: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Decide equivalence of two sparks, or verify a given witness.
    SparkEq {
        complex: String,
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Product of two sparks.
    Product {
        complex: String,
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = FormArg::Psi)]
        form: FormArg,
    },
    /// Push a spark into the hyperspark model and lift it back.
    Push { complex: String, spark: PathBuf },
    /// Lift a hyperspark-model spark to the Čech model.
    Lift { complex: String, spark: PathBuf },
    /// Pull a spark back along a vertex map.
    Pullback {
        source: String,
        target: String,
        /// Images of the source vertices, space separated.
        #[arg(long)]
        map: String,
        spark: PathBuf,
    },
    /// Discrete line bundles.
    Bundle {
        #[command(subcommand)]
        op: BundleOp,
    },
    /// Invariant suite on the built-in fixtures.
    Selftest {
        /// Write the fixtures and example inputs into this directory and exit.
        #[arg(long)]
        dump_fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BundleOp {
    ToSpark {
        complex: String,
        bundle: PathBuf,
    },
    Chern {
        complex: String,
        bundle: PathBuf,
    },
    Curvature {
        complex: String,
        bundle: PathBuf,
    },
    Tensor {
        complex: String,
        first: PathBuf,
        second: PathBuf,
    },
    Holonomy {
        complex: String,
        bundle: PathBuf,
        /// Closed vertex loop of the complex, space separated.
        #[arg(long = "loop")]
        cycle: String,
    },
    FromChern {
        complex: String,
        /// Coordinates in the H^2 presentation, space separated.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    GaugeEq {
        complex: String,
        first: PathBuf,
        second: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(format!("sparks {echo}"), cli.seed);
    let artifact = match commands::run(&cli, &mut report) {
        Ok(a) => a,
        Err(e) => {
            let status = if e.exit_code() == 1 { Status::CheckFailed } else { Status::InputError };
            report.fail(status, e.to_string());
            None
        }
    };
    let text = report.to_string();
    print!("{text}");
    if let Some(path) = &cli.out {
        let body = artifact.unwrap_or(text);
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.status.exit_code() as u8)
}
