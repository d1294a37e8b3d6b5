use std::process::ExitCode;

use clap::Parser;
use hardy_cli::{run, Cli, ExitKind};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::from(ExitKind::Success as u8)
            } else {
                ExitCode::from(ExitKind::VerificationFailed as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind as u8)
        }
    }
}
