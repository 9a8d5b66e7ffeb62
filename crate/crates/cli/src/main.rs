mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use log::{error, info};

use commands::{CliError, Command};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "zomega", version, about = "Large values of ζ^{(n)} near Re s = 1: evaluators, checks and scans")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Significant digits after the point in csv and table output.
    #[arg(long, default_value_t = 10, global = true)]
    digits: usize,
    /// Worker threads for scans and quadrature (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// TOML or JSON file whose keys override the subcommand's flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon_threads(n) {
            error!("{e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn rayon_threads(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Precondition("--workers must be positive".into()));
    }
    zomega::set_worker_threads(n).map_err(|e| CliError::Precondition(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let command = match &cli.config {
        Some(path) => cli.command.with_overrides(path)?,
        None => cli.command,
    };
    info!("resolved config: {}", output::to_json(&command.echo()));
    let report = command.execute()?;
    let text = match cli.format {
        Format::Json => output::to_json(&report.json),
        Format::Csv => match &report.rows {
            Some((header, rows)) => {
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                output::rows_to_csv(&header, rows, cli.digits)
            }
            None => output::to_csv(&report.json, cli.digits),
        },
        Format::Table => output::to_table(&report.json, cli.digits),
    };
    output::emit(&text, cli.output.as_deref()).map_err(CliError::Io)
}
