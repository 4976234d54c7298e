//! `equilib`: evaluate point-charge fields, certify their zeros, and check
//! boundary-convergence thresholds.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};
use error::CliError;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "equilib",
    version,
    about = "Equilibrium points of logarithmic potentials: field evaluation, certified zero \
             counting, and boundary-convergence checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f, u and the conjugated half-plane field F at a point.
    Eval {
        /// Path to a JSON configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Evaluation point as RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Locate zeros in a rectangle or in dyadic annuli approaching the
    /// boundary point 1, and emit a zero table (re,im,residual,annulus).
    Zeros {
        #[arg(long)]
        config: PathBuf,
        /// Search rectangle as X0,Y0,X1,Y1.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        /// Search annuli |1-z| in [2^-j-1, 2^-j] for j = 1..=DEPTH.
        #[arg(long)]
        toward_boundary: Option<u32>,
        /// Also write the zero table to this file (plus a .manifest.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the explicit zero-free configuration: residue identity,
    /// partial-fraction agreement, and winding certificates.
    Counterexample {
        /// Largest contour index: circles |w-1| = 4mπ for m = 1..=M.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Pole pairs retained in the truncation.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// Optional separate (larger) truncation for the residue identity.
        #[arg(long)]
        identity_n: Option<usize>,
        /// Samples per certification circle.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Check the boundary zero-sequence hypotheses and print the report.
    Check {
        #[arg(long)]
        config: PathBuf,
        /// Boundary-neighborhood radius (default 0.5).
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Sample u, |f| and arg f on a grid and write a CSV
    /// (re,im,u,abs_f,arg_f).
    Grid {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (a .manifest.json is written alongside).
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 64)]
        nx: usize,
        #[arg(long, default_value_t = 64)]
        ny: usize,
        /// Sample rectangle as X0,Y0,X1,Y1 (default: padded charge bounding box).
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { config, at } => commands::cmd_eval(&config, &at),
        Command::Zeros {
            config,
            region,
            toward_boundary,
            out,
        } => commands::cmd_zeros(&config, region.as_deref(), toward_boundary, out.as_ref()),
        Command::Counterexample {
            m,
            n,
            identity_n,
            samples,
        } => commands::cmd_counterexample(m, n, identity_n, samples),
        Command::Check { config, epsilon } => commands::cmd_check(&config, epsilon),
        Command::Grid {
            config,
            out,
            nx,
            ny,
            region,
        } => commands::cmd_grid(&config, &out, nx, ny, region.as_deref()),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            let err = CliError::usage(e.to_string());
            eprintln!("{}", err.record());
            std::process::exit(err.exit);
        }
    };
    match dispatch(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("{}", err.record());
            std::process::exit(err.exit);
        }
    }
}
