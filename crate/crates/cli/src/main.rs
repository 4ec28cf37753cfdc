//! Command-line front end: fit a penalized linear model, enumerate and
//! score alternate features for it, and emit reports as JSON, DOT, or TSV.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence.

mod args;
mod commands;

use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            err.print().expect("cannot report argument error");
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        args::Command::Fit(a) => commands::fit(a),
        args::Command::Alternates(a) => commands::alternates(a),
        args::Command::Report(a) => commands::report(a),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.code());
    }
}
