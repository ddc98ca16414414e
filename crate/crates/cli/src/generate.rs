use pmcut::generate::{generate_cubic, CubicFilters};
use pmcut::graph::formats::write_graph6;

use crate::{CliError, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Vertex counts (even, at least 4).
    #[arg(required = true, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    three_connected: bool,
    #[arg(long)]
    girth_min: Option<usize>,
}

/// Writes one graph6 line per isomorphism class.
pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let filters = CubicFilters {
        bipartite: args.bipartite,
        girth_min: args.girth_min,
        three_connected: args.three_connected,
    };
    for &n in &args.n {
        for g in generate_cubic(n, filters)? {
            out.extend_from_slice(write_graph6(&g)?.as_bytes());
            out.push(b'\n');
        }
    }
    Ok(Status::Complete)
}
