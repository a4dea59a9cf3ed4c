use std::process::ExitCode;

use bloch_wco::cli::{main_with, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_with(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
