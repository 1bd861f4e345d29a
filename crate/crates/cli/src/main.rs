use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use traffic_cli::error::CliError;
use traffic_cli::{execute, Cli};

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.diagnostic());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &report.text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() }),
        None => std::io::stdout().write_all(report.text.as_bytes()).map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() }),
    };
    if let Err(e) = written {
        return fail(&e);
    }
    match report.regression {
        Some(msg) => fail(&CliError::Regression(msg)),
        None => ExitCode::SUCCESS,
    }
}
