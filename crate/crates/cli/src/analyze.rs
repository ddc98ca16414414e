use rayon::prelude::*;
use serde_json::{json, Value};

use pmcut::graph::{
    bipartition, cyclic_connectivity, digirth, edge_connectivity, find_plane_embedding, girth,
    is_connected, vertex_connectivity,
};
use pmcut::matchings::{
    count_perfect_matchings, is_hamiltonian, min_cut_in_perfect_matching, MatchingCutSize,
};

use crate::input::{load_all, Record};
use crate::{emit, CliError, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Graph files (graph6, sparse6, digraph6, sidecar, planar_code), `-`,
    /// or `named:NAME`.
    #[arg(required = true)]
    inputs: Vec<String>,
}

fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

pub fn report(rec: &Record) -> Value {
    let g = &rec.graph.graph;
    let o = &rec.graph.orientation;
    let mut errors = Vec::new();
    let cyclic = match cyclic_connectivity(g) {
        Ok(c) => json!(c),
        Err(e) => {
            errors.push(format!("cyclic connectivity: {e}"));
            Value::Null
        }
    };
    let min_cut = match min_cut_in_perfect_matching(g) {
        Ok(MatchingCutSize::Finite(k)) => json!(k),
        Ok(MatchingCutSize::Infinite) => json!("infinite"),
        Ok(MatchingCutSize::NoPerfectMatching) => json!("no-perfect-matching"),
        Err(e) => {
            errors.push(format!("min cut in perfect matching: {e}"));
            Value::Null
        }
    };
    let planar = if rec.embedding.is_some() {
        json!(true)
    } else if is_connected(g) {
        match find_plane_embedding(g) {
            Ok(e) => json!(e.is_some()),
            Err(e) => {
                errors.push(format!("planarity: {e}"));
                Value::Null
            }
        }
    } else {
        Value::Null
    };
    let directed = o.directed_count();
    json!({
        "source": rec.source,
        "n": g.n(),
        "m": g.m(),
        "directed_edges": directed,
        "simple": g.is_simple(),
        "cubic": g.is_cubic(),
        "bipartite": bipartition(g).is_some(),
        "planar": planar,
        "girth": girth(g),
        "digirth": if directed > 0 { json!(digirth(g, o)) } else { Value::Null },
        "vertex_connectivity": vertex_connectivity(g),
        "edge_connectivity": edge_connectivity(g),
        "cyclic_connectivity": cyclic,
        "perfect_matchings": big(count_perfect_matchings(g)),
        "min_cut_in_perfect_matching": min_cut,
        "hamiltonian": is_hamiltonian(g).is_some(),
        "errors": errors,
    })
}

pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let records = load_all(&args.inputs)?;
    let lines: Vec<(Value, bool)> = records
        .par_iter()
        .map(|r| match r {
            Ok(rec) => (report(rec), true),
            Err((source, msg)) => (json!({"source": source, "parse_error": msg}), false),
        })
        .collect();
    let mut status = Status::Complete;
    for (v, ok) in &lines {
        emit(out, v);
        if !ok {
            status = status.max(Status::InputError);
        }
    }
    Ok(status)
}
