use std::path::PathBuf;
use std::process::ExitCode;

use burgers_cli::commands::{self, Context};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "burgers", version, about = "Strained Burgers vortex: exact solutions and their numerical checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for `accept`.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reserved; every method is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the pass threshold of `spectrum` and `crosscheck`.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a closed-form solution to CSV.
    Eval,
    /// Integrate the similarity or physical equation.
    Evolve,
    /// Discrete spectrum of the eigen-operator against the eigenvalue law.
    Spectrum,
    /// Physical-versus-similarity cross-check of the alpha mapping.
    Crosscheck,
    /// Accuracy self-test of the special functions.
    SpecfunCheck,
    /// Observed spatial and temporal orders of the solver.
    Convergence,
    /// Run the acceptance suite.
    Accept,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed;
    let ctx = Context {
        config: cli.config,
        out: cli.out,
        threads: cli.threads,
        tolerance: cli.tolerance,
    };
    let result = match cli.command {
        Command::Eval => commands::eval(&ctx),
        Command::Evolve => commands::evolve_cmd(&ctx),
        Command::Spectrum => commands::spectrum(&ctx),
        Command::Crosscheck => commands::crosscheck(&ctx),
        Command::SpecfunCheck => commands::specfun_check(&ctx),
        Command::Convergence => commands::convergence(&ctx),
        Command::Accept => commands::accept(&ctx),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
