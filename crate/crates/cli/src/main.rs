use std::io::Write;
use std::process::ExitCode;

use asmrel_cli::cli::Cli;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match asmrel_cli::run(&cli, &mut out) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
