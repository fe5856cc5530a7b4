use std::process::ExitCode;

use clap::Parser;
use superdirac_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { superdirac_cli::EXIT_USAGE } else { 0 });
        }
    };
    ExitCode::from(run(&cli))
}
