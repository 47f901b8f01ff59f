use std::process::ExitCode;

use clap::Parser;
use volsel_cli::{emit, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(cli.output.as_deref(), &out.text)?;
        if out.passed {
            Ok(())
        } else {
            Err(CliError::Verification)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
