use std::process::ExitCode;

use clap::Parser;
use qmat::{cli, Args, CliError};

fn main() -> ExitCode {
    let args = Args::parse();
    let result = cli::max_n_from_env().and_then(|max_n| cli::run(&args, max_n));
    match result {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(report)) => {
            print!("{}", report);
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
