//! `pmcut`: campaigns, searches and constructions over cubic graphs and
//! their partial orientations.
//!
//! Reports are JSON lines on stdout. Exit codes: 0 complete without
//! counterexample, 1 counterexample found, 2 incomplete (resource bound),
//! 64 usage error, 65 malformed input, 66 unreadable file, 70 internal
//! verification failure.

mod analyze;
mod batch;
mod cert;
mod construct;
mod generate;
mod input;
mod search;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] pmcut::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io(..) => 66,
            CliError::Data(_) | CliError::Core(_) => 65,
        }
    }
}

/// Outcome of one command, ordered by how much it dominates when merged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Complete,
    Incomplete,
    InputError,
    Counterexample,
    Internal,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Complete => 0,
            Status::Counterexample => 1,
            Status::Incomplete => 2,
            Status::InputError => 65,
            Status::Internal => 70,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pmcut",
    version,
    about = "Perfect matchings and directed cuts in cubic graphs"
)]
pub struct Cli {
    /// Worker threads for per-graph parallelism.
    #[arg(long, global = true, env = "PMCUT_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural report per graph.
    Analyze(analyze::Args),
    /// Check one of the conjectures on every input graph.
    Verify(verify::Args),
    /// Orientation search with certificates.
    Search(search::Args),
    /// Build a graph by a chain of constructions.
    Construct(construct::Args),
    /// Connected cubic graphs as graph6, one per isomorphism class.
    Generate(generate::Args),
    /// Run a command over every file of a manifest.
    Batch(batch::Args),
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cmd: Command, out: &mut Vec<u8>) -> Result<Status, CliError> {
    match cmd {
        Command::Analyze(a) => analyze::run(a, out),
        Command::Verify(a) => verify::run(a, out),
        Command::Search(a) => search::run(a, out),
        Command::Construct(a) => construct::run(a, out),
        Command::Generate(a) => generate::run(a, out),
        Command::Batch(a) => batch::run(a, out),
    }
}

/// Appends one JSON value as a line.
pub fn emit(out: &mut Vec<u8>, v: &serde_json::Value) {
    out.extend_from_slice(v.to_string().as_bytes());
    out.push(b'\n');
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("pmcut: --jobs must be at least 1");
            return ExitCode::from(64);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    let mut out = Vec::new();
    let result = run(cli.command, &mut out);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(&out);
    let _ = lock.flush();
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("pmcut: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
