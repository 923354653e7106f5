use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use doxa::format::{read_market, read_structure, state_named};
use doxa::report::{
    AnalyzeReport, BetReport, CheckReport, ClassifyReport, PriorReport, Report, SimulationReport, SweepSummary,
    ValidateReport,
};
use doxa_core::harness::{sweep, Claim, SweepConfig};
use doxa_core::market::simulate;
use doxa_core::priors::PriorMode;
use doxa_core::ProbabilisticBeliefStructure;

/// Exit 0: success or pass. Exit 1: a checked claim failed. Exit 2: bad input.
#[derive(Debug, Parser)]
#[command(name = "doxa", version, about = "Common priors, agreeable bets and belief dynamics, exactly")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a structure file and check the belief axioms.
    Validate { file: PathBuf },
    /// Delusion, singularity and common belief in truth.
    Classify { file: PathBuf },
    /// Everything: classification, both priors, per-state sets and verdicts.
    Analyze { file: PathBuf },
    /// Find a common prior or a separating bet.
    Prior {
        #[arg(long, value_enum, default_value = "delusional")]
        mode: Mode,
        file: PathBuf,
    },
    /// Find a bet agreeable at every state of the common belief set.
    Bet {
        #[arg(long)]
        state: String,
        file: PathBuf,
    },
    /// Check a claim on one structure, or on a seeded random sweep.
    Check {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of states in a random instance.
        #[arg(long, default_value_t = 6)]
        states: usize,
        /// Largest number of players in a random instance.
        #[arg(long, default_value_t = 3)]
        players: usize,
        /// Check this structure instead of sweeping.
        file: Option<PathBuf>,
    },
    /// Run the announcement market.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Print every round.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Standard,
    Delusional,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "no-betting")]
    NoBetting,
    #[value(name = "prop1")]
    Prop1,
}

enum Status {
    Ok,
    Failed,
}

fn load(path: &Path) -> Result<ProbabilisticBeliefStructure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    read_structure(&text).with_context(|| format!("{}", path.display()))
}

fn emit<R: Report>(report: &R, json: bool) {
    if json {
        println!("{}", report.json());
    } else {
        print!("{}", report.human());
    }
}

fn run(cli: Cli) -> Result<Status> {
    let json = cli.json;
    let verdict = |failed: bool| if failed { Status::Failed } else { Status::Ok };
    match cli.command {
        Command::Validate { file } => emit(&ValidateReport::new(&load(&file)?), json),
        Command::Classify { file } => emit(&ClassifyReport::new(&load(&file)?), json),
        Command::Analyze { file } => {
            let report = AnalyzeReport::new(&load(&file)?)?;
            emit(&report, json);
            return Ok(verdict(report.failed()));
        }
        Command::Prior { mode, file } => {
            let mode = match mode {
                Mode::Standard => PriorMode::Standard,
                Mode::Delusional => PriorMode::Delusional,
            };
            emit(&PriorReport::new(&load(&file)?, mode)?, json);
        }
        Command::Bet { state, file } => {
            let pbs = load(&file)?;
            let s = state_named(pbs.space(), &state)?;
            emit(&BetReport::new(&pbs, s)?, json);
        }
        Command::Check {
            theorem,
            count,
            seed,
            states,
            players,
            file,
        } => {
            let claim = match theorem {
                Theorem::One => Claim::Theorem1,
                Theorem::Two => Claim::Theorem2,
                Theorem::NoBetting => Claim::NoBettingS5,
                Theorem::Prop1 => Claim::Prop1,
            };
            if let Some(file) = file {
                let report = CheckReport::new(&load(&file)?, claim)?;
                emit(&report, json);
                return Ok(verdict(report.failed()));
            }
            anyhow::ensure!(states >= 1, "--states must be at least 1");
            anyhow::ensure!(players >= 1, "--players must be at least 1");
            let config = SweepConfig {
                claim,
                count,
                seed,
                max_states: states,
                max_players: players,
                max_weight: 6,
            };
            let report = SweepSummary::new(&sweep(&config)?);
            emit(&report, json);
            return Ok(verdict(report.failed()));
        }
        Command::Simulate { config, trace } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("cannot read {}", config.display()))?;
            let market = read_market(&text).with_context(|| format!("{}", config.display()))?;
            emit(&SimulationReport::new(&market, &simulate(&market), trace), json);
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
