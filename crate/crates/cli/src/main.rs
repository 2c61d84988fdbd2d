use std::process::ExitCode;

use clap::Parser;

use rbm2_cli::commands::{common_of, configure_threads};
use rbm2_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads(common_of(&cli.command).jobs).and_then(|()| run(cli));
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
