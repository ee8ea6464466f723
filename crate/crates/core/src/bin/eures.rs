//! Thin command-line front end; all logic lives in the library's `cli`
//! module. Exit codes: 0 ok, 2 config error, 3 solver error, 4 validity
//! failure under `--strict`.

use clap::{Parser, Subcommand};
use euclidean_resonance::cli::{self, CliError, Output, OutputFormat, RunConfig};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "eures",
    version,
    about = "Tunneling rates and resonance conditions for pulse-assisted barrier decay"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration file (`key = value` lines, `#` comments, unit
    /// suffixes like `13.6 eV` or `2e7 eV/cm`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Number of sweep/sample points.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Fail (exit 4) when validity flags are not satisfied.
    #[arg(long, global = true)]
    strict: bool,

    /// Scenario preset (hydrogen|nd144|soft-alpha).
    #[arg(long, global = true)]
    preset: Option<String>,

    /// Override a config key, e.g. `--set theta=1e-14s` (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Resonance parameters, branch structure and escape probability.
    Resonance,
    /// Parameter sweep (E, theta, lambda or eps) into a curve table.
    Sweep,
    /// Complex-time trajectory samples along the under-barrier contour.
    Trajectory,
    /// Signal waveforms on a real-time grid.
    Pulse,
    /// Lab-unit application reports (hydrogen, alpha, metal, custom).
    Scenario,
    /// Semiclassical and dissipation validity margins only.
    Check,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    // command-line flags override file values
    if let Some(points) = cli.points {
        cfg.set("points", points);
    }
    if let Some(preset) = &cli.preset {
        cfg.set("preset", preset);
    }
    for kv in &cli.sets {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = build_config(cli)?;
    match cli.command {
        Command::Resonance => cli::cmd_resonance(&cfg, cli.strict),
        Command::Sweep => cli::cmd_sweep(&cfg, cli.strict),
        Command::Trajectory => cli::cmd_trajectory(&cfg, cli.strict),
        Command::Pulse => cli::cmd_pulse(&cfg, cli.strict),
        Command::Scenario => cli::cmd_scenario(&cfg, cli.strict),
        Command::Check => cli::cmd_check(&cfg, cli.strict),
    }
}

fn main() {
    let cli = Cli::parse();
    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        _ => OutputFormat::Csv,
    };
    match run(&cli) {
        Ok(output) => {
            let rendered = output.render(format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!(
                            "{}",
                            CliError::Config(format!("cannot write {}: {e}", path.display()))
                                .to_json()
                        );
                        std::process::exit(2);
                    }
                }
                None => print!("{rendered}"),
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.exit_code());
        }
    }
}
