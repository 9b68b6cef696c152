use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = fracblow::cli::Cli::parse();
    ExitCode::from(fracblow::cli::run(cli))
}
