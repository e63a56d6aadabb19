use std::io;
use std::process::ExitCode;

use clap::Parser;
use foca_cli::{run, Cli, Environment};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = io::stdin().lock();
    let mut stdout = io::stdout().lock();
    match run(&cli.command, &Environment::from_process(), stdin, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
