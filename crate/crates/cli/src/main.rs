use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mlq::commands::{run, Cli};
use mlq::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mlq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
