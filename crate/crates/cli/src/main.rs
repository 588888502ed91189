//! `coulomb2d`: command-line access to kinematics, phase shifts, amplitudes,
//! cross sections, radial solutions and the verification suites.
//!
//! Exit codes: 0 success, 1 verification checks failed, 2 invalid input or
//! output failure, 3 numerical failure.

mod args;
mod config;
mod run;

use std::process::ExitCode;

use clap::Parser;
use coulomb2d::Error;

use crate::args::Cli;
use crate::run::Status;

fn exit_code(e: &Error) -> u8 {
    if e.is_validation() || matches!(e, Error::Output(_)) {
        2
    } else {
        3
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run::run(cli.command) {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
