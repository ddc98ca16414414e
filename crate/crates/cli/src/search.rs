use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use pmcut::graph::{Dir, OrientedGraph, PartialOrientation};
use pmcut::search::{a_arc_with, exists_orientation_all_pm_cut, CertificateKind, SearchProblem};

use crate::cert::search_certificate;
use crate::input::{load, load_all, Record};
use crate::{emit, CliError, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Orient so that every perfect matching through `--edge` contains a
    /// directed cut.
    AArc,
    /// Orient so that every perfect matching contains a directed cut.
    AllPmCut,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(value_enum)]
    mode: Mode,
    #[arg(required = true)]
    inputs: Vec<String>,
    /// Edge id for a-arc mode.
    #[arg(long, default_value_t = 0)]
    edge: usize,
    /// Sidecar file of arcs to keep fixed: one record for all inputs, or
    /// one per input in order.
    #[arg(long)]
    fix_orientation: Option<String>,
    /// Node budget; exhausting it yields an incomplete certificate.
    #[arg(long)]
    node_limit: Option<u64>,
}

/// The fixed arcs of `fix` moved onto `rec`'s edge ids. Both graphs must
/// agree up to edge order.
fn transfer(rec: &Record, fix: &OrientedGraph) -> Result<PartialOrientation, String> {
    let g = &rec.graph.graph;
    if g == &fix.graph {
        return Ok(fix.orientation.clone());
    }
    let (norm, new_id) = g.normalized();
    let (fix_norm, fix_id) = fix.graph.normalized();
    if norm != fix_norm {
        return Err("fixed orientation belongs to a different graph".into());
    }
    let mut back = vec![0; fix.graph.m()];
    for (e, &ne) in fix_id.iter().enumerate() {
        back[ne] = e;
    }
    let states = (0..g.m())
        .map(|e| match fix.arc(back[new_id[e]]) {
            None => Dir::Undirected,
            Some((t, _)) => PartialOrientation::dir_from(g, e, t),
        })
        .collect();
    Ok(PartialOrientation::from_states(states))
}

fn search_one(args: &Args, rec: &Record, fix: Option<&OrientedGraph>) -> (Value, Status) {
    let base = json!({"source": rec.source});
    let fail = |msg: String, status| {
        let mut v = base.clone();
        v["error"] = json!(msg);
        (v, status)
    };
    let fixed = match fix {
        None => rec.graph.orientation.clone(),
        Some(f) => match transfer(rec, f) {
            Ok(o) => o,
            Err(e) => return fail(e, Status::InputError),
        },
    };
    let restrict = (args.mode == Mode::AArc).then_some(args.edge);
    let p = match SearchProblem::new(rec.graph.graph.clone(), fixed, restrict) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string(), Status::InputError),
    };
    let p = match args.node_limit {
        Some(l) => p.with_node_limit(l),
        None => p,
    };
    let c = match args.mode {
        Mode::AArc => a_arc_with(&p),
        Mode::AllPmCut => exists_orientation_all_pm_cut(&p),
    };
    let c = match c {
        Ok(c) => c,
        Err(e) => return fail(e.to_string(), Status::InputError),
    };
    let status = match (args.mode, c.kind) {
        (_, CertificateKind::Incomplete) => Status::Incomplete,
        (Mode::AllPmCut, CertificateKind::OrientationFound | CertificateKind::Vacuous) => {
            Status::Counterexample
        }
        _ => Status::Complete,
    };
    if c.kind == CertificateKind::Incomplete {
        let mut v = base;
        v["certificate"] = json!({
            "schema_version": crate::cert::SCHEMA_VERSION,
            "kind": "incomplete",
            "stats": c.stats,
        });
        return (v, status);
    }
    match search_certificate(&c, &p) {
        Ok(cert) => {
            let mut v = base;
            v["certificate"] = serde_json::to_value(cert).unwrap_or_default();
            (v, status)
        }
        Err(e) => fail(e, Status::Internal),
    }
}

pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let records = load_all(&args.inputs)?;
    let fixes: Vec<OrientedGraph> = match &args.fix_orientation {
        None => Vec::new(),
        Some(path) => load(path)?
            .into_iter()
            .map(|r| {
                r.map(|r| r.graph)
                    .map_err(|(s, m)| CliError::Data(format!("{s}: {m}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let good = records.iter().filter(|r| r.is_ok()).count();
    if !fixes.is_empty() && fixes.len() != 1 && fixes.len() != good {
        return Err(CliError::Usage(format!(
            "{} fixed orientations for {good} graphs",
            fixes.len()
        )));
    }
    let mut k = 0;
    let jobs: Vec<(usize, Option<&OrientedGraph>)> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let fix = if r.is_ok() && !fixes.is_empty() {
                k += 1;
                Some(&fixes[if fixes.len() == 1 { 0 } else { k - 1 }])
            } else {
                None
            };
            (i, fix)
        })
        .collect();
    let lines: Vec<(Value, Status)> = jobs
        .par_iter()
        .map(|&(i, fix)| match &records[i] {
            Ok(rec) => search_one(&args, rec, fix),
            Err((s, m)) => (json!({"source": s, "parse_error": m}), Status::InputError),
        })
        .collect();
    let mut status = Status::Complete;
    for (v, s) in lines {
        emit(out, &v);
        status = status.max(s);
    }
    Ok(status)
}
