use std::process::ExitCode;

use clap::Parser;

use omega_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(err) => {
            match &err {
                // Failed carries the rendered report; it belongs on stdout.
                CliError::Failed(text) => print!("{text}"),
                other => eprintln!("error: {}", other.message()),
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
