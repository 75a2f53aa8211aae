mod commands;
mod config;
mod support;

use clap::{Parser, Subcommand};
use config::FileConfig;
use std::path::PathBuf;
use std::process::ExitCode;

/// Align videos of the same action through per-frame feature series.
#[derive(Debug, Parser)]
#[command(name = "vidalign", version)]
struct Cli {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (defaults to one per core).
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,

    /// Append a plain-text run log to this file.
    #[arg(long, global = true)]
    log: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build feature series from track and global-feature files.
    Build(commands::build::Args),
    /// Write the Gaussian weight mask for one subject box.
    Mask(commands::mask::Args),
    /// Align one pair of series, or every pair listed in a CSV file.
    Align(commands::align::Args),
    /// Score an alignment against phase annotations.
    Eval(commands::eval::Args),
    /// Cross-validated per-frame phase classification.
    Classify(commands::classify::Args),
    /// Generate a labelled synthetic dataset.
    Synth(commands::synth::Args),
    /// Compare trivial, DTW and DDTW alignment on a synthetic suite.
    Benchmark(commands::benchmark::Args),
    /// Check files against their schema.
    Validate(commands::validate::Args),
}

fn init_logging(log: Option<&PathBuf>) -> anyhow::Result<()> {
    let mut builder =
        env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("off"));
    if let Some(path) = log {
        let file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| support::input_err(format!("cannot open log {}: {e}", path.display())))?;
        builder
            .filter_level(log::LevelFilter::Info)
            .target(env_logger::Target::Pipe(Box::new(file)))
            .format_timestamp_secs();
    }
    builder.init();
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    init_logging(cli.log.as_ref())?;
    log::info!(
        "vidalign {}",
        std::env::args().skip(1).collect::<Vec<_>>().join(" ")
    );
    let file_cfg = FileConfig::load(cli.config.as_deref())?;
    if let Some(jobs) = cli.jobs.or(file_cfg.jobs) {
        if jobs == 0 {
            return Err(support::input_err("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    match cli.command {
        Command::Build(a) => commands::build::run(a),
        Command::Mask(a) => commands::mask::run(a, &file_cfg),
        Command::Align(a) => commands::align::run(a, &file_cfg),
        Command::Eval(a) => commands::eval::run(a),
        Command::Classify(a) => commands::classify::run(a, &file_cfg),
        Command::Synth(a) => commands::synth::run(a, &file_cfg),
        Command::Benchmark(a) => commands::benchmark::run(a, &file_cfg),
        Command::Validate(a) => commands::validate::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = support::exit_code(&err);
            log::error!("{err:#}");
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
