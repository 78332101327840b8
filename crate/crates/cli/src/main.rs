use std::path::PathBuf;
use std::process::ExitCode;

use bifurcate_cli::commands::{cmd_classify, cmd_reduce, cmd_simulate, cmd_sweep, CommonArgs};
use bifurcate_cli::verify::run_verify;
use clap::{Args, Parser, Subcommand};

/// Center-manifold reduction and attractor bifurcation for Swift–Hohenberg.
#[derive(Parser)]
#[command(name = "bifurcate", version = bifurcate_cli::VERSION)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for the initial conditions (overrides `ic_seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Reduction order (overrides `order`).
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
    order: Option<u32>,
}

impl From<Common> for CommonArgs {
    fn from(c: Common) -> Self {
        CommonArgs {
            config: c.config,
            out: c.out,
            seed: c.seed,
            order: c.order,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare the exact reduction at lambda = 9 with reference coefficients.
    Verify {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(3..=5))]
        order: u32,
        /// Shift alpha1 before checking (exercises the failure path).
        #[arg(long)]
        perturb_alpha1: bool,
    },
    /// Write the center-manifold map and reduced field as JSON.
    Reduce(Common),
    /// Attractor sampling and reduction diagnostics over a lambda grid.
    Sweep(Common),
    /// Integrate the Galerkin system from one initial state.
    Simulate(Common),
    /// Disk-block verdicts of the reduced field over a lambda grid.
    Classify(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            order,
            perturb_alpha1,
        } => match run_verify(order, perturb_alpha1) {
            Ok(report) => {
                print!("{}", report.table());
                return match report.first_mismatch() {
                    None => ExitCode::SUCCESS,
                    Some(m) => {
                        eprintln!(
                            "first mismatch: {}: expected {}, computed {}",
                            m.name, m.expected, m.computed
                        );
                        ExitCode::from(1)
                    }
                };
            }
            Err(e) => Err(e),
        },
        Command::Reduce(c) => cmd_reduce(&c.into()).map(|_| ()),
        Command::Sweep(c) => cmd_sweep(&c.into()).map(|_| ()),
        Command::Simulate(c) => cmd_simulate(&c.into()).map(|_| ()),
        Command::Classify(c) => cmd_classify(&c.into()).map(|_| ()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
