mod args;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::RunConfig;
use crate::error::CliResult;

fn run(cli: Cli) -> CliResult<std::path::PathBuf> {
    match cli.command {
        Command::Solve(a) => commands::cmd_solve(&RunConfig::from_args(a)?),
        Command::Study(a) => commands::cmd_study(&RunConfig::from_args(a)?),
        Command::Compare(a) => commands::cmd_compare(&RunConfig::from_args(a)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                // --help and --version
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(path) => {
            eprintln!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fracpc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
