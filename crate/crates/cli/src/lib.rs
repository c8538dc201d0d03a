//! Command-line front end for `chm-core`.

pub mod args;
pub mod commands;
pub mod record;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::commands::{dispatch, subcommand_name};
use crate::record::{append_record, digest_file, resolve_log_path, utc_timestamp, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EXCLUDED: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let (code, summary, inputs, outputs) = match dispatch(&cli, out) {
        Ok(o) => (o.code, o.summary, o.inputs, o.outputs),
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            (e.exit_code(), json!({ "error": e.message() }), Vec::new(), Vec::new())
        }
    };

    let record = RunRecord {
        timestamp: utc_timestamp(),
        subcommand: subcommand_name(&cli.command).to_string(),
        argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        params: json!({ "seed": cli.seed, "command": cli.command }),
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: inputs.iter().filter_map(|p| digest_file(p)).collect(),
        outputs: outputs.iter().filter_map(|p| digest_file(p)).collect(),
        exit_code: code,
        summary,
    };
    let log = resolve_log_path(cli.run_log.as_deref());
    if let Err(e) = append_record(&log, &record) {
        let _ = writeln!(err, "warning: run log {}: {e}", log.display());
    }
    code
}
