use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use omega23_cli::{exit, render, run, Cli, CliError, Format};

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(exit::USAGE as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return fail(&CliError::Usage(e.kind().to_string() + ": " + e.to_string().trim())),
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("JSON") + "\n",
        Format::Text => render::text(&outcome.report),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return fail(&CliError::Io(e));
    }
    ExitCode::from(outcome.code as u8)
}
