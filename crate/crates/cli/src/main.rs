use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pxbiharm_cli::commands::{cmd_certify, cmd_check_spaces, cmd_hypotheses, cmd_solve, cmd_sweep, Report};
use pxbiharm_cli::config::{Overrides, RunConfig};
use pxbiharm_cli::CliError;
use serde_json::json;

/// Variable-exponent fourth-order Navier problems: hypothesis checks,
/// three-solution certificates and a deflated multi-solution solver.
#[derive(Parser, Debug)]
#[command(name = "pxbiharm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value = "config.json")]
    config: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Property battery of the variable-exponent norm and modular.
    CheckSpaces,
    /// Structural hypotheses on the potential and the nonlinearity.
    Hypotheses,
    /// Interval of lambda with three solutions, if one can be certified.
    Certify,
    /// Distinct solutions at a given lambda; writes the solutions CSV.
    Solve,
    /// Solution counts over a lambda grid; writes the sweep CSV.
    Sweep,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let overrides = Overrides { lambda: cli.lambda, seed: cli.seed, grid_n: cli.grid_n };
    let (cfg, base) = RunConfig::load(&cli.config, overrides)?;
    match cli.command {
        Command::CheckSpaces => cmd_check_spaces(&cfg),
        Command::Hypotheses => cmd_hypotheses(&cfg),
        Command::Certify => cmd_certify(&cfg),
        Command::Solve => cmd_solve(&cfg, &base),
        Command::Sweep => cmd_sweep(&cfg, &base),
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(&cli) {
        Ok(report) => {
            eprintln!("{}", report.summary);
            (report.json, report.exit)
        }
        Err(e) => {
            eprintln!("{e}");
            let status = if e.exit_code() == 1 { "infeasible" } else { "invalid" };
            (json!({ "status": status, "message": e.to_string() }), e.exit_code())
        }
    };
    if let Err(msg) = emit(&cli, &value) {
        eprintln!("i/o error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
