//! `kmchev`: JSON front end for the kmchev library.

mod commands;
mod json;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help/--version
            e.exit();
        }
    };
    match commands::run(&cli) {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(err)) => {
            emit(&json::error(&err));
            ExitCode::from(1)
        }
    }
}

fn emit(v: &serde_json::Value) {
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", json::pretty(v));
}
