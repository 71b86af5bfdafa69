use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use chaingreedy_cli::commands;
use chaingreedy_cli::config::{Overrides, Settings};
use chaingreedy_cli::error::{CliError, CliResult};
use chaingreedy_cli::report::Report;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chaingreedy",
    version,
    about = "Decentralized greedy over lossy line networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected gap alpha_p and the clique-number distribution of a chain
    Alpha(Common),
    /// Gap after one extra trial on each edge, plus an optional greedy budget plan
    Reinforce(Common),
    /// Monte Carlo utility of the decentralized greedy on a coverage instance
    Simulate(Common),
    /// Every outcome mask of a chain with its probability
    Enumerate(Common),
    /// Centralized and decentralized greedy on one instance and mask
    Solve(Common),
    /// Write a generated coverage instance as JSON
    Generate(Common),
}

#[derive(Args)]
struct Common {
    /// TOML experiment config
    #[arg(short, long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// dp | paper | enumerate
    #[arg(long)]
    engine: Option<String>,
    #[arg(long)]
    iterations: Option<u64>,
    /// Write the CSV report here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Agent order, e.g. DBHGFCAE or 4,2,8,7,6,3,1,5
    #[arg(long)]
    permutation: Option<String>,
    /// Comma-separated per-edge success probabilities
    #[arg(long, value_delimiter = ',')]
    probs: Option<Vec<f64>>,
    /// Comma-separated per-edge trial counts
    #[arg(long, value_delimiter = ',')]
    trials: Option<Vec<u32>>,
    /// Extra trials to allocate greedily
    #[arg(long)]
    budget: Option<u32>,
    /// Coverage instance JSON
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Delivery outcome per edge, e.g. 0111011
    #[arg(long)]
    mask: Option<String>,
    /// Largest edge count the enumerate engine accepts
    #[arg(long)]
    cap: Option<usize>,
    /// Output file for `generate` (stdout otherwise)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

impl Common {
    fn settings(&self) -> CliResult<Settings> {
        let base = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        Ok(base.apply(Overrides {
            seed: self.seed,
            iterations: self.iterations,
            engine: self.engine.clone(),
            csv: self.csv.clone(),
            permutation: self.permutation.clone(),
            probs: self.probs.clone(),
            trials: self.trials.clone(),
            budget: self.budget,
            instance: self.instance.clone(),
            mask: self.mask.clone(),
            cap: self.cap,
        }))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let (common, f): (&Common, fn(&Settings) -> CliResult<Report>) = match &cli.command {
        Command::Alpha(c) => (c, commands::cmd_alpha),
        Command::Reinforce(c) => (c, commands::cmd_reinforce),
        Command::Simulate(c) => (c, commands::cmd_simulate),
        Command::Enumerate(c) => (c, commands::cmd_enumerate),
        Command::Solve(c) => (c, commands::cmd_solve),
        Command::Generate(c) => (c, commands::cmd_generate),
    };
    let settings = common.settings()?;
    let report = f(&settings)?;
    match (&cli.command, &common.out) {
        (Command::Generate(_), Some(out)) => {
            fs::write(out, &report.text)?;
            eprintln!("wrote {}", out.display());
        }
        _ => print!("{}", report.text),
    }
    if let (Some(path), Some(csv)) = (settings.csv_path(), &report.csv) {
        fs::write(&path, csv).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
