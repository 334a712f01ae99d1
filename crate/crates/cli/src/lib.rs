//! Command-line front end for `posmap`: argument handling, dispatch and
//! deterministic reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod matrix_io;
pub mod report;

use clap::Parser;

pub use config::{Cli, RunConfig};
pub use error::CliError;

/// Rendered report (possibly empty) and exit code for one invocation.
pub fn run<I, S>(args: I) -> (String, Option<String>, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (e.to_string(), None, 0),
                _ => (String::new(), Some(first_line(&e.render().to_string())), 2),
            };
        }
    };
    let config = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => return (String::new(), Some(format!("error: {e}")), e.exit_code()),
    };
    if let Some(t) = config.threads {
        // Fails only if the pool already exists; the seesaw also honors the cap.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::execute(&config) {
        Ok(outcome) => {
            let text = match config.output {
                config::OutputFormat::Json => outcome.report.to_json() + "\n",
                config::OutputFormat::Text => outcome.report.to_text(),
            };
            match outcome.anomaly {
                None => (text, None, 0),
                Some(e) => (text, Some(format!("error: {e}")), e.exit_code()),
            }
        }
        Err(e) => (String::new(), Some(format!("error: {e}")), e.exit_code()),
    }
}

fn first_line(s: &str) -> String {
    s.lines().find(|l| !l.trim().is_empty()).unwrap_or("error: invalid arguments").trim().to_string()
}
