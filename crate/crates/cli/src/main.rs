use std::process::ExitCode;

use clap::Parser;
use repulsion_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match repulsion_cli::run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
