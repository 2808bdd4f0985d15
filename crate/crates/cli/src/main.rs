use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qcyl_cli::report::{emit_report, ExitStatus, Format};
use qcyl_cli::run::run_scenario;
use qcyl_cli::scenario::{parse, Mode, Overrides};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Reflection-positivity and derivation checks on the quantum cylinder.
#[derive(Parser, Debug)]
#[command(name = "qcyl", version)]
struct Cli {
    /// What to run.
    #[arg(value_enum)]
    mode: Mode,
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Solver tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Largest window half-width for the sector solver.
    #[arg(long)]
    max_window: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Seed for randomized suites.
    #[arg(long)]
    seed: Option<u64>,
}

fn code(s: ExitStatus) -> ExitCode {
    ExitCode::from(s as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { code(ExitStatus::InvalidInput) } else { ExitCode::SUCCESS };
        }
    };
    let text = match std::fs::read_to_string(&cli.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qcyl: cannot read {}: {e}", cli.scenario.display());
            return code(ExitStatus::InvalidInput);
        }
    };
    let scenario = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("qcyl: {}: {e}", cli.scenario.display());
            return code(ExitStatus::InvalidInput);
        }
    };
    let overrides = Overrides { tol: cli.tol, max_window: cli.max_window, seed: cli.seed };
    match run_scenario(cli.mode, &scenario, &overrides) {
        Ok(report) => {
            let format = match cli.format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(&emit_report(&report, format)).and_then(|_| out.flush()).is_err() {
                return code(ExitStatus::Inconclusive);
            }
            code(report.exit)
        }
        Err(f) => {
            eprintln!("qcyl: {}", f.message());
            code(f.exit())
        }
    }
}
