use std::fs;
use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde_json::json;

use crate::{emit, run as run_command, Cli, CliError, Command, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// File listing one input per line; relative paths resolve against the
    /// manifest's directory. Blank lines and `#` comments are ignored.
    manifest: String,
    /// The command to run per input, e.g. `analyze` or `verify tutte`; the
    /// input path is appended.
    #[arg(last = true, required = true)]
    command: Vec<String>,
}

fn entries(manifest: &str) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(manifest).map_err(|e| CliError::Io(manifest.into(), e))?;
    let base = Path::new(manifest).parent().unwrap_or(Path::new(""));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            if l.starts_with("named:") || Path::new(l).is_absolute() {
                l.to_string()
            } else {
                base.join(l).to_string_lossy().into_owned()
            }
        })
        .collect())
}

fn one(command: &[String], input: &str) -> (Vec<u8>, Status, Option<String>) {
    let argv = std::iter::once("pmcut")
        .chain(command.iter().map(String::as_str))
        .chain(std::iter::once(input));
    let mut out = Vec::new();
    match Cli::try_parse_from(argv) {
        Ok(Cli {
            command: Command::Batch(_),
            ..
        }) => (out, Status::InputError, Some("batches do not nest".into())),
        Ok(cli) => match run_command(cli.command, &mut out) {
            Ok(s) => (out, s, None),
            Err(e) => (out, Status::InputError, Some(e.to_string())),
        },
        Err(e) => (
            out,
            Status::InputError,
            Some(e.to_string().trim().to_string()),
        ),
    }
}

/// Runs every manifest entry in parallel and concatenates the
/// reports in manifest order; each is preceded by a header line.
pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let items = entries(&args.manifest)?;
    // worker count comes from the global --jobs / PMCUT_JOBS pool
    let results: Vec<(Vec<u8>, Status, Option<String>)> =
        items.par_iter().map(|i| one(&args.command, i)).collect();
    let mut status = Status::Complete;
    for (i, (input, (body, s, err))) in items.iter().zip(results).enumerate() {
        let mut head = json!({"batch_item": i + 1, "input": input, "exit": s.exit_code()});
        if let Some(e) = err {
            head["error"] = json!(e);
        }
        emit(out, &head);
        out.extend_from_slice(&body);
        status = status.max(s);
    }
    Ok(status)
}
