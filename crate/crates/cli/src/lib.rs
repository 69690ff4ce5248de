//! Batch front end for the teleportation replay engine: scenario files,
//! per-frame replays, identity sweeps, census and paradox reports.

pub mod commands;
pub mod report;
pub mod scenario;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CommandOutput, OutputFormat};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Human-readable report
    Text,
    /// One JSON record per line
    Machine,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Machine => OutputFormat::Machine,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "teleframe",
    version,
    about = "Replay quantum teleportation from multiple Lorentz frames and audit who holds the state"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,

    /// Override the scenario seed (and seed the identity sweeps)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the checking tolerance
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a scenario file in every listed frame and verify the
    /// cross-frame and step-level invariants
    Run { file: String },
    /// Sweep the protocol identities over seeded random states
    CheckIdentities {
        /// Number of random states per identity
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Print the per-step copy census for every frame
    Census { file: String },
    /// Print predicted-versus-conditioned discrepancies for every frame
    Paradox { file: String },
}

/// Parses argv, runs the command, prints its output and returns the
/// process exit code.
pub fn run_cli() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.into();
    let out: CommandOutput = match cli.command {
        Command::Run { file } => commands::cmd_run(&file, format, cli.seed, cli.tolerance),
        Command::CheckIdentities { cases } => {
            commands::cmd_check_identities(cases, cli.seed.unwrap_or(0), format, cli.tolerance)
        }
        Command::Census { file } => commands::cmd_census(&file, format, cli.seed),
        Command::Paradox { file } => commands::cmd_paradox(&file, format, cli.seed),
    };
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", out.stderr);
    }
    ExitCode::from(out.exit_code)
}
