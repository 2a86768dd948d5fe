use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qudit_cli::config::{Format, RunConfig};
use qudit_cli::presets::{merge, preset};
use qudit_cli::run::{run, Command};
use qudit_cli::CliError;

#[derive(Parser)]
#[command(name = "qudit-extremal", version, about = "Extremal qudit density matrices and entropy-energy bounds")]
struct Cli {
    /// JSON run configuration; `-` reads stdin.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Sub {
    /// Extremal energies of pure states next to the eigenvalues.
    Spectrum,
    /// Extremal energies over a parameter grid.
    Sweep,
    /// Closed-form bound surfaces.
    Surface,
    /// Seeded random states checked against every inequality.
    Inequality,
    /// Data for one of the bundled figures.
    Figure {
        #[arg(value_parser = qudit_cli::presets::NAMES)]
        name: String,
    },
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let command = match &cli.command {
        Sub::Spectrum => Command::Spectrum,
        Sub::Sweep => Command::Sweep,
        Sub::Surface => Command::Surface,
        Sub::Inequality => Command::Inequality,
        Sub::Figure { name } => {
            let (command, base) = preset(name)?;
            cfg = merge(base, &cfg);
            command
        }
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    if let Some(f) = cli.format {
        cfg.format = Some(match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        });
    }

    let outcome = run(command, &cfg)?;
    let text = outcome.table.render(cfg.format(), &outcome.summary);
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("writing {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("writing stdout: {e}")))?;
        }
    }
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    Ok(outcome.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
