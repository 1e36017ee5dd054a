use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coupler_cli::config::RunConfig;
use coupler_cli::{run, verify, CliError, Format};

#[derive(Parser)]
#[command(name = "coupler", version, about = "Quantum statistics of a two-waveguide nonlinear coupler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// `section.key=value`, applied after the file is read. Repeatable.
    #[arg(long = "override", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Observables on a time grid.
    Scan,
    /// Quasiprobability field on a phase-space grid.
    Grid,
    /// Closed-form checks against the reference solvers.
    Verify,
    /// Evolution coefficients and spectral data.
    Coeffs,
}

fn load(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        None => String::new(),
    };
    RunConfig::parse(&text, overrides)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let cfg = load(cli.config.as_deref(), &cli.overrides)?;
    let output = cli.output.clone().or_else(|| cfg.output.path.clone());
    let format = cli.format.or(cfg.output.format).unwrap_or(match cli.command {
        Command::Grid => Format::Matrix,
        _ => Format::Csv,
    });
    let (text, code) = match cli.command {
        Command::Scan => (run::run_scan(&cfg, format)?, 0),
        Command::Grid => (run::run_grid(&cfg, format)?, 0),
        Command::Coeffs => (run::run_coeffs(&cfg, format)?, 0),
        Command::Verify => {
            let report = verify::run_verify(&cfg)?;
            (report.render(), report.exit_code())
        }
    };
    emit(&text, output.as_deref())?;
    Ok(code)
}

fn main() -> ExitCode {
    // Usage errors share the config-error status; clap would otherwise use 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
