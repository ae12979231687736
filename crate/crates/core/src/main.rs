use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use loopcat::cli::{exit_code, run, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&config) {
        Ok(report) => {
            // a closed pipe is not an error
            let _ = writeln!(std::io::stdout(), "{}", report.render(config.format));
            ExitCode::from(u8::from(report.is_failure()))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
