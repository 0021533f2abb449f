//! File formats and the `ranklab` command line on top of `ranklab-core`.
//!
//! Instances and reports are JSON with field elements as packed serials.
//! Output depends only on the arguments, the modulus table and the seed.

pub mod cli;
mod error;
pub mod format;
pub mod table;

pub use error::{CliError, Result};
pub use ranklab_core as core;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 when a verification check fails, 2 on bad input.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            error_json(stderr, "config", e.render().to_string().trim());
            return 2;
        }
    };
    match cli::run(&cli, stdout) {
        Ok(cli::Outcome::Success) => 0,
        Ok(cli::Outcome::VerificationFailed(failed)) => {
            let body = serde_json::json!({ "error": "verification_failed", "failed_checks": failed });
            let _ = writeln!(stderr, "{body}");
            1
        }
        Err(e) => {
            error_json(stderr, e.kind(), &e.to_string());
            2
        }
    }
}

fn error_json(stderr: &mut dyn Write, kind: &str, message: &str) {
    let body = serde_json::json!({ "error": kind, "message": message });
    let _ = writeln!(stderr, "{body}");
}
