//! Command-line front end for the `multmoments` library.
//!
//! Exit codes: 0 success, 1 failed verification or computation, 2 usage
//! error, 3 refused by a resource guard.

mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command};
use error::CliError;
use output::{render, to_value, Manifest};

static SEED: OnceLock<u64> = OnceLock::new();

/// Master seed of this invocation.
pub(crate) fn seed() -> u64 {
    *SEED.get().expect("seed is set before dispatch")
}

fn params(cli: &Cli) -> Value {
    let mut p = to_value(&cli.global);
    let args = match &cli.command {
        Command::Count(a) => to_value(a),
        Command::Constants(a) => to_value(a),
        Command::Rmt(a) => to_value(a),
        Command::Simulate(a) => to_value(a),
        Command::Conjecture(a) => to_value(a),
        Command::Verify(a) => to_value(a),
        Command::Bound => Value::Object(Default::default()),
    };
    if let (Value::Object(dst), Value::Object(src)) = (&mut p, args) {
        dst.extend(src);
    }
    p
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads)
        .build_global()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    SEED.set(cli.global.seed).expect("seed is set once");
    let start = Instant::now();
    let mut code = ExitCode::SUCCESS;
    let report = match &cli.command {
        Command::Count(a) => commands::count(a)?,
        Command::Constants(a) => commands::constants(a)?,
        Command::Rmt(a) => commands::rmt(a)?,
        Command::Simulate(a) => commands::simulate(a)?,
        Command::Conjecture(a) => commands::conjecture(a)?,
        Command::Bound => commands::bound(),
        Command::Verify(a) => {
            let (report, ok) = commands::verify(a)?;
            if !ok {
                code = ExitCode::from(1);
            }
            report
        }
    };
    let manifest = Manifest {
        command: cli.command.name(),
        params: params(&cli),
        seed: cli.global.seed,
        threads: rayon::current_num_threads(),
        version: env!("CARGO_PKG_VERSION"),
        duration_secs: start.elapsed().as_secs_f64(),
    };
    let out = render(&report, &manifest, cli.global.format)?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, out)?,
        None => std::io::stdout().lock().write_all(out.as_bytes())?,
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
