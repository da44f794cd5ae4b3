//! File formats and command-line driver for `quantumness-core`.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 runtime or
//! I/O failure.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::{CliError, CliResult};

use cli::{Cli, Command};
use formats::{emit_report, ReportSink};

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the process exit code.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = err.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run(cli, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}

fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let (name, outcome, out) = match &cli.command {
        Command::Witness(a) => ("witness", commands::witness(a)?, a.out.clone()),
        Command::Interfere(a) => ("interfere", commands::interfere(a)?, a.out.clone()),
        Command::Discord(a) => ("discord", commands::discord(a)?, a.out.clone()),
        Command::Example(a) => ("example", commands::example(a)?, a.out.clone()),
        // --out names the state file; the report goes to stdout
        Command::RandomState(a) => ("random-state", commands::random_state(a)?, None),
    };
    let report = commands::into_report(name, outcome, started);
    let sink = match out {
        Some(path) => ReportSink::File(path),
        None => ReportSink::Stdout(stdout),
    };
    emit_report(&report, sink)
}
