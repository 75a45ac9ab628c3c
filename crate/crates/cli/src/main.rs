mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use crate::config::{Cli, Command, RunConfig};
use crate::error::CliError;
use crate::output::Output;

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    status: &'static str,
    config: &'a Command,
    artifacts: &'a [String],
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    command: &'static str,
    kind: &'static str,
    message: String,
    config: &'a Command,
}

fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let mut out = Output::create(&cfg.out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    let result = pool.install(|| commands::run(&cfg.command, &mut out));
    let status = match &result {
        Ok(()) => "ok",
        Err(CliError::Domain(e)) => {
            let report = ErrorReport {
                command: cfg.command.name(),
                kind: e.kind(),
                message: e.to_string(),
                config: &cfg.command,
            };
            out.json("errors.json", &report)?;
            "error"
        }
        Err(_) => return result,
    };
    let artifacts = out.artifacts.clone();
    let manifest = Manifest {
        tool: "isentropes",
        version: env!("CARGO_PKG_VERSION"),
        status,
        config: &cfg.command,
        artifacts: &artifacts,
    };
    out.json("manifest.json", &manifest)?;
    result
}

fn main() -> ExitCode {
    let cfg = match RunConfig::from_cli(Cli::parse()) {
        Ok(cfg) => cfg,
        Err(m) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    match execute(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
