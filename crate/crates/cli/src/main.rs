//! `photodist`: photon-number distributions, entropy audits, violation sweeps
//! and figure data.

mod commands;
mod error;
mod figures;
mod output;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::source::StateArgs;

#[derive(Parser, Debug)]
#[command(name = "photodist", version, about = "Photon statistics and block-partition entropies")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Truncation index; adaptive when omitted (64 for xyt and uncertainty-violating states)
    #[arg(long, global = true)]
    pub n_max: Option<usize>,

    /// Block size m of the partition n -> (n / m, n % m)
    #[arg(long, global = true, default_value_t = 2)]
    pub partition: usize,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_imag: f64,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_neg: f64,

    /// Branch index of the complex logarithm
    #[arg(long, global = true, default_value_t = 0, allow_hyphen_values = true)]
    pub branch: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Photon-number distribution table
    Dist(StateArgs),
    /// Block-partition entropies (complex entropies for non-probabilities)
    Entropy(commands::EntropyArgs),
    /// Subadditivity written out as a polynomial inequality
    Inequality(commands::InequalityArgs),
    /// Classification, mean and complex information over a tau grid
    Violation(commands::ViolationArgs),
    /// Two-column figure data
    Figures(figures::FigureArgs),
    /// Run the oracle suite, one JSON verdict per line
    Oracle(commands::OracleArgs),
}

impl Common {
    fn validate(&self) -> Result<(), CliError> {
        if self.n_max == Some(0) {
            return Err(CliError::Config("--n-max must be at least 1".into()));
        }
        if self.partition < 2 {
            return Err(CliError::Config("--partition must be at least 2".into()));
        }
        if !(self.tol_imag > 0.0 && self.tol_neg > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    cli.common.validate()?;
    let c = &cli.common;
    match &cli.command {
        Command::Dist(s) => commands::dist(c, s),
        Command::Entropy(a) => commands::entropy(c, a),
        Command::Inequality(a) => commands::inequality(c, a),
        Command::Violation(a) => commands::violation(c, a),
        Command::Figures(a) => figures::figures(c, a),
        Command::Oracle(a) => commands::oracle(c, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
