use std::process::ExitCode;

use clap::Parser;
use dkp_spectra_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dkp-spectra {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}
