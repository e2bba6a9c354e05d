//! `crsphere`: build, verify and classify equivariant CR immersions of S^3.

mod commands;
mod lift_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crsphere_core::sampling::{DEFAULT_COUNT, DEFAULT_SEED};
use crsphere_core::tolerance::VERIFY_DEFAULT;

#[derive(Debug, Parser)]
#[command(name = "crsphere", version, about = "Equivariant CR immersions S^3 -> CP^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a structure matrix read as JSON (9 numbers, row-major, or 3x3 nested).
    Classify {
        /// Input file; stdin if omitted or "-".
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a lift as JSON.
    Build(BuildArgs),
    /// Verify a lift file and print a report.
    Verify {
        /// Lift file written by `build`; stdin if "-".
        lift: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = VERIFY_DEFAULT)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean curvature and Berger parameters along a family, as CSV.
    Sweep {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long = "t-min")]
        t_min: f64,
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the family indices from Berger parameters.
    Recover {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// The non-Berger lift in CP^2.
    #[arg(long, conflicts_with_all = ["k", "l", "t", "minimal"])]
    phi1: bool,
    #[arg(long, requires = "l")]
    k: Option<u32>,
    #[arg(long, requires = "k")]
    l: Option<u32>,
    #[arg(long, conflicts_with = "minimal", allow_negative_numbers = true)]
    t: Option<f64>,
    /// Use the parameter at which the member is minimal.
    #[arg(long)]
    minimal: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_COUNT)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(commands::EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Classify { input, out } => commands::classify(input.as_deref(), out.as_deref()),
        Command::Build(a) => commands::build(a.phi1, a.k, a.l, a.t, a.minimal, a.out.as_deref()),
        Command::Verify { lift, sampling, tol, out } => {
            commands::verify(&lift, sampling.samples, sampling.seed, tol, out.as_deref())
        }
        Command::Sweep { k, l, t_min, t_max, steps, sampling, out } => {
            commands::sweep(k, l, t_min, t_max, steps, sampling.samples, sampling.seed, out.as_deref())
        }
        Command::Recover { b, c, out } => commands::recover(b, c, out.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
