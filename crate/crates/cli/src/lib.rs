//! The `tacalc` command line front end.

mod commands;
pub mod error;
pub mod files;
pub mod report;

use clap::Parser;
use serde_json::json;

pub use commands::{Cli, Command, Format};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use report::Report;

/// What a run produced. `main` prints the streams and exits with `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hilbert { .. } => "hilbert",
        Command::Resolve { .. } => "resolve",
        Command::Poincare(_) => "poincare",
        Command::Deviations(_) => "deviations",
        Command::Dual { .. } => "dual",
        Command::Pi { .. } => "pi",
        Command::Central { .. } => "central",
        Command::Obstruction(_) => "obstruction",
        Command::Gorenstein(_) => "gorenstein",
        Command::Tensor { .. } => "tensor",
        Command::Pfaffian { .. } => "pfaffian",
        Command::TacCheck { .. } => "tac-check",
        Command::TrmCheck { .. } => "trm-check",
    }
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let mut report = Report::new(name);
    match commands::execute(&cli, &mut report) {
        Ok(()) => {
            let stdout = match cli.format {
                Format::Json => report.render_json(),
                Format::Text => report.render_text(),
            };
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("cross-check failed: {}\n", c.name))
                .collect();
            Outcome {
                code: report.exit_code(),
                stdout,
                stderr: failed.concat(),
            }
        }
        Err(e) => failure(name, cli.format, &e),
    }
}

fn failure(name: &str, format: Format, e: &CliError) -> Outcome {
    let code = e.exit_code();
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({"command": name, "error": e.to_string(), "exit": code}))
                .expect("errors serialize");
            s.push('\n');
            s
        }
        Format::Text => String::new(),
    };
    Outcome {
        code,
        stdout,
        stderr: format!("error: {e}\n"),
    }
}
