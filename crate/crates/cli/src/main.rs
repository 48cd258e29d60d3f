//! `radmult`: experiments on the rotation-averaging projection of Fourier
//! multipliers.
//!
//! Exit status is 0 on success, 1 when a hard assertion fails and 2 when the
//! configuration is invalid.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.common.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    let config = match config::RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&config) {
        Ok(outcome) => {
            for line in &outcome.messages {
                println!("{line}");
            }
            if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &outcome.failures {
                    eprintln!("FAILED {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
