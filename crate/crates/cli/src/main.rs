use std::process::ExitCode;

use clap::Parser;
use hqdisk_cli::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(checks) => {
            let mut failed = false;
            for c in &checks {
                let status = if c.passed { "ok" } else { "FAIL" };
                let kind = if c.asserted { "assert" } else { "observe" };
                eprintln!("[{kind}] {:<28} {status:<4} {}", c.name, c.detail);
                failed |= c.asserted && !c.passed;
            }
            if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
