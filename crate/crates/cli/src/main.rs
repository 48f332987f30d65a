use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use geodiscord_cli::args::Cli;
use geodiscord_cli::{run, CliError};

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                emit(&format!("{}\n", out.trim_end()));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::RowsFailed { output, .. } = &e {
                emit(output);
            }
            eprintln!("geodiscord: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
