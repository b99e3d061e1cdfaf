mod cli;
mod config;
mod error;
mod output;
mod run;

use clap::Parser;

use crate::cli::Cli;
use crate::error::EXIT_USAGE;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and --version go to stdout and succeed
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(e) = run::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
