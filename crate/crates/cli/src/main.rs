//! `multisplit` command-line runner.
//!
//! Exit codes: 0 success, 1 runtime error, 2 bad usage, 3 a run diverged
//! (its finite trace is still written).

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Finish;

const EXIT_DIVERGED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => commands::run_command(a),
        Command::Table1(a) => commands::table1_command(a),
        Command::GenInstance(a) => commands::gen_instance_command(a),
    };
    match result {
        Ok(Finish::Done) => ExitCode::SUCCESS,
        Ok(Finish::Diverged) => {
            eprintln!("warning: the run diverged; the trace holds the finite iterations");
            ExitCode::from(EXIT_DIVERGED)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
