//! `skein`: JSON reports for bracket, product, φ/ψ and Heegaard computations.
//!
//! Exit status is 0 when the run succeeds, 1 when an identity check fails and
//! 2 on bad input.

mod commands;
mod config;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde_json::json;

use config::{resolved, Cli};

fn run(cli: &Cli) -> Result<bool> {
    let outcome = commands::execute(cli)?;
    let report = json!({"config": resolved(cli), "passed": outcome.passed, "result": outcome.result});
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &cli.common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
