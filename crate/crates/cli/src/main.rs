//! `chlc`: verification suites, simulations and decay fits.
//!
//! Exit codes: 0 success, 1 a verdict failed, 2 usage or configuration
//! error, 3 numerical divergence.

mod analyze;
mod simulate;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DIVERGED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "chlc", version, about = "Decay verification and simulation of the compressible liquid-crystal flow")]
struct Cli {
    /// Directory for CSVs, snapshots and reports
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for random data; overrides the config file for `simulate`
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the linear decay suite and print a verdict table
    VerifyLinear(verify::Args),
    /// Integrate the nonlinear system from a config file
    Simulate(simulate::Args),
    /// Fit a power law to a `t,norm` CSV
    Analyze(analyze::Args),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = chlc::par::set_threads(n) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let code = match cli.command {
        Command::VerifyLinear(a) => verify::run(a, cli.out_dir, cli.seed),
        Command::Simulate(a) => simulate::run(a, cli.out_dir, cli.seed),
        Command::Analyze(a) => analyze::run(a, cli.out_dir),
    };
    ExitCode::from(code)
}
