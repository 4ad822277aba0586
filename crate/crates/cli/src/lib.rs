//! Command-line front end: argument parsing, report formatting and file
//! formats on top of `hyperdarboux-core`.
//!
//! [`run`] does all the work and returns the captured output, so the binary
//! is a thin wrapper and tests can drive the full CLI in-process.

pub mod args;
pub mod commands;
pub mod error;
pub mod records;

use std::ffi::OsString;

use clap::Parser;

pub use error::CliError;

/// Exit code and captured streams of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 all checks passed, 1 a mathematical check failed, 2 usage error.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match &cli.command {
        args::Command::Verify(a) => commands::verify(a),
        args::Command::Factorize(a) => commands::factorize(a),
        args::Command::Ladder(a) => commands::ladder(a),
        args::Command::Generate(a) => commands::generate(a),
    };
    result.unwrap_or_else(|e| Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}
