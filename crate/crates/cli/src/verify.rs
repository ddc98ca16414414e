use std::ops::ControlFlow;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use pmcut::gadgets::{c4_reduction, contract_triangle, C4Side};
use pmcut::generate::for_each_orientation;
use pmcut::graph::{
    bipartition, digirth, find_plane_embedding, girth, is_k_edge_connected, is_k_vertex_connected,
    MultiGraph, OrientedGraph, PartialOrientation, PlaneEmbedding,
};
use pmcut::matchings::{
    even_subgraph_with_strong_contraction, is_hamiltonian, matching_contains_cut,
    odd_subgraph_without_directed_cut, perfect_matchings, EvenSearchMode, EvenSearchOutcome,
};
use pmcut::planar::{neumann_lara_partition, nl_hochstaettler_crosscheck};
use pmcut::search::{a_arc_with, exists_orientation_all_pm_cut, CertificateKind, SearchProblem};
use pmcut::Error;

use crate::cert::{plain_certificate, search_certificate};
use crate::input::{load_all, Record};
use crate::{emit, CliError, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    /// 3-connected cubic planar graphs are Hamiltonian.
    Tait,
    /// 3-connected cubic planar bipartite graphs are Hamiltonian.
    Barnette,
    /// 3-connected cubic bipartite graphs are Hamiltonian.
    Tutte,
    /// 3-connected cubic planar digraphs have a perfect matching without
    /// directed cut.
    NlPrime,
    /// 3-edge-connected cubic digraphs have a perfect matching without
    /// directed cut.
    HochstaettlerPrime,
    /// 3-connected cubic bipartite digraphs have a perfect matching without
    /// directed cut.
    Kv,
    /// Planar oriented graphs split into two acyclic vertex sets.
    Nl,
    /// 3-edge-connected digraphs have an even subgraph whose contraction is
    /// strongly connected.
    Hochstaettler,
}

use Conjecture::*;

impl Conjecture {
    fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(value_enum)]
    conjecture: Conjecture,
    #[arg(required = true)]
    inputs: Vec<String>,
    /// Skip graphs with more vertices.
    #[arg(long)]
    max_n: Option<usize>,
    /// Do not reduce triangles before checking (tait, nl-prime,
    /// hochstaettler-prime).
    #[arg(long)]
    no_triangle_filter: bool,
    /// Do not discharge girth-4 graphs through 4-cycle reductions (tutte,
    /// barnette).
    #[arg(long)]
    no_girth_filter: bool,
    /// Do not try the single-edge a-arc refutation before the full search.
    #[arg(long)]
    no_a_arc_filter: bool,
    /// Node budget per orientation search; exhausting it reports the graph
    /// as incomplete.
    #[arg(long)]
    node_limit: Option<u64>,
    /// hochstaettler: sample this many even subgraphs when the cycle space
    /// is too large to exhaust. A miss is still reported as incomplete.
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
struct Options {
    triangle: bool,
    girth: bool,
    a_arc: bool,
    node_limit: Option<u64>,
    samples: Option<u64>,
}

enum Verdict {
    Holds(String),
    Counterexample(String, Value),
    Incomplete(String),
    Skipped(String),
    Failed(String),
}

impl Verdict {
    fn status(&self) -> Status {
        match self {
            Verdict::Holds(_) | Verdict::Skipped(_) => Status::Complete,
            Verdict::Counterexample(..) => Status::Counterexample,
            Verdict::Incomplete(_) => Status::Incomplete,
            Verdict::Failed(_) => Status::Internal,
        }
    }
}

/// Bound errors become incomplete verdicts, everything else a failure.
fn from_core(e: Error) -> Verdict {
    match e {
        Error::BoundExceeded { .. } => Verdict::Incomplete(e.to_string()),
        _ => Verdict::Failed(e.to_string()),
    }
}

fn cert_value(c: Result<crate::cert::CertificateJson, String>) -> Result<Value, Verdict> {
    c.map(|c| serde_json::to_value(c).unwrap_or_default())
        .map_err(Verdict::Failed)
}

/// Returns the embedding to use for planar classes, or why the graph is
/// outside the conjecture's class.
fn class_check(
    c: Conjecture,
    rec: &Record,
    max_n: Option<usize>,
) -> Result<Option<PlaneEmbedding>, String> {
    let g = &rec.graph.graph;
    if let Some(max) = max_n {
        if g.n() > max {
            return Err(format!("{} vertices exceeds --max-n {max}", g.n()));
        }
    }
    if !matches!(c, Nl | Hochstaettler) && !g.is_cubic() {
        return Err("not cubic".into());
    }
    if matches!(c, Tait | Barnette | Tutte | NlPrime | Kv) && !is_k_vertex_connected(g, 3) {
        return Err("not 3-connected".into());
    }
    if matches!(c, HochstaettlerPrime | Hochstaettler) && !is_k_edge_connected(g, 3) {
        return Err("not 3-edge-connected".into());
    }
    if matches!(c, Barnette | Tutte | Kv) && bipartition(g).is_none() {
        return Err("not bipartite".into());
    }
    if c == Nl && !g.is_simple() {
        return Err("not simple".into());
    }
    if !matches!(c, Tait | Barnette | NlPrime | Nl) {
        return Ok(None);
    }
    if let Some(e) = &rec.embedding {
        return Ok(Some(e.clone()));
    }
    match find_plane_embedding(g) {
        Ok(Some(e)) => Ok(Some(e)),
        Ok(None) => Err("not planar".into()),
        Err(e) => Err(format!("planarity undetermined: {e}")),
    }
}

fn find_triangle(g: &MultiGraph) -> Option<[usize; 3]> {
    for a in 0..g.n() {
        for b in g.neighbors(a).filter(|&b| b > a) {
            if let Some(c) = g.neighbors(b).find(|&c| c > b && g.has_edge(a, c)) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Contracts triangles while the result stays a simple cubic graph.
fn contract_triangles(d: &OrientedGraph) -> (OrientedGraph, usize) {
    let mut cur = d.clone();
    let mut k = 0;
    while cur.graph.n() > 4 {
        let Some(tri) = find_triangle(&cur.graph) else {
            break;
        };
        match contract_triangle(&cur, tri) {
            Ok((next, _)) if next.graph.is_simple() => {
                cur = next;
                k += 1;
            }
            _ => break,
        }
    }
    (cur, k)
}

fn is_ham_cycle(g: &MultiGraph, order: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    order.len() == g.n()
        && order
            .iter()
            .all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && (0..order.len()).all(|i| g.has_edge(order[i], order[(i + 1) % order.len()]))
}

/// Tries the first reducible 4-cycle: a Hamiltonian cycle of either
/// reduction lifts to one of `g`, checked explicitly.
fn c4_discharge(g: &MultiGraph) -> bool {
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            for w in g.neighbors(v).filter(|&w| w != u) {
                for x in g.neighbors(w).filter(|&x| x != v && x != u) {
                    if !g.has_edge(x, u) {
                        continue;
                    }
                    let Ok(r) = c4_reduction(g, [u, v, w, x]) else {
                        continue;
                    };
                    for side in [C4Side::Uv, C4Side::Vw] {
                        let lifted = is_hamiltonian(r.reduced(side))
                            .and_then(|c| r.lift_hamiltonian(side, &c));
                        if lifted.is_some_and(|c| is_ham_cycle(g, &c)) {
                            return true;
                        }
                    }
                    return false;
                }
            }
        }
    }
    false
}

fn verify_hamiltonian(c: Conjecture, g: &MultiGraph, opts: Options) -> Verdict {
    if c == Tait && opts.triangle {
        let (reduced, k) = contract_triangles(&OrientedGraph::undirected(g.clone()));
        if k > 0 && is_hamiltonian(&reduced.graph).is_some() {
            return Verdict::Holds(format!(
                "{k} triangle contractions, then a Hamiltonian cycle"
            ));
        }
    }
    if matches!(c, Tutte | Barnette)
        && opts.girth
        && girth(g).is_some_and(|k| k < 6)
        && c4_discharge(g)
    {
        return Verdict::Holds("4-cycle reduction, lifted Hamiltonian cycle".into());
    }
    if is_hamiltonian(g).is_some() {
        return Verdict::Holds("Hamiltonian cycle".into());
    }
    // independent re-check: every perfect matching contains a cut
    let matchings = perfect_matchings(g);
    let all_cut = matchings
        .iter()
        .all(|m| matching_contains_cut(g, m).unwrap_or(false));
    if !all_cut {
        return Verdict::Failed("Hamiltonicity search and matching re-check disagree".into());
    }
    match cert_value(plain_certificate(
        "every-matching-has-cut",
        g,
        None,
        json!({"matchings": matchings.len()}),
        "every perfect matching re-checked to contain a bond",
    )) {
        Ok(v) => Verdict::Counterexample("no Hamiltonian cycle".into(), v),
        Err(v) => v,
    }
}

fn search_pipeline(d: &OrientedGraph, opts: Options) -> Verdict {
    let limit = |p: SearchProblem| match opts.node_limit {
        Some(l) => p.with_node_limit(l),
        None => p,
    };
    let g = &d.graph;
    if opts.a_arc && !d.orientation.is_full() && g.m() > 0 {
        let p = match SearchProblem::new(g.clone(), d.orientation.clone(), Some(0)) {
            Ok(p) => limit(p),
            Err(e) => return from_core(e),
        };
        match a_arc_with(&p) {
            Ok(c) if c.kind == CertificateKind::Refuted => {
                return Verdict::Holds("edge 0 cannot be an a-arc".into())
            }
            Ok(_) => {}
            Err(e) => return from_core(e),
        }
    }
    let p = match SearchProblem::new(g.clone(), d.orientation.clone(), None) {
        Ok(p) => limit(p),
        Err(e) => return from_core(e),
    };
    let c = match exists_orientation_all_pm_cut(&p) {
        Ok(c) => c,
        Err(e) => return from_core(e),
    };
    match c.kind {
        CertificateKind::Refuted => Verdict::Holds("orientation search refuted".into()),
        CertificateKind::GoodMatching => Verdict::Holds("good matching".into()),
        CertificateKind::Incomplete => Verdict::Incomplete(format!(
            "node budget exhausted after {} nodes",
            c.stats.nodes
        )),
        CertificateKind::OrientationFound | CertificateKind::Vacuous => {
            match cert_value(search_certificate(&c, &p)) {
                Ok(v) => Verdict::Counterexample(
                    "every perfect matching contains a directed cut".into(),
                    v,
                ),
                Err(v) => v,
            }
        }
    }
}

fn verify_matching_digraph(c: Conjecture, d: &OrientedGraph, opts: Options) -> Verdict {
    if opts.triangle && c != Kv {
        let (reduced, k) = contract_triangles(d);
        if k > 0 {
            if let Verdict::Holds(m) = search_pipeline(&reduced, opts) {
                return Verdict::Holds(format!("{k} triangle contractions, then {m}"));
            }
        }
    }
    search_pipeline(d, opts)
}

/// Runs `check` on the given full orientation, or on every orientation of
/// an undirected input (up to automorphism).
fn over_orientations(
    d: &OrientedGraph,
    digirth_min: usize,
    mut check: impl FnMut(&PartialOrientation) -> Verdict,
) -> Verdict {
    let o = &d.orientation;
    if o.is_full() {
        if digirth(&d.graph, o).is_some_and(|k| k < digirth_min) {
            return Verdict::Skipped(format!("digirth below {digirth_min}"));
        }
        return check(o);
    }
    if o.directed_count() > 0 {
        return Verdict::Skipped(
            "partially directed input; give a full orientation or none".into(),
        );
    }
    let mut checked = 0u64;
    let mut last = None;
    let swept = for_each_orientation(&d.graph, digirth_min, true, |_, o| {
        checked += 1;
        match check(o) {
            Verdict::Holds(_) | Verdict::Skipped(_) => ControlFlow::Continue(()),
            other => {
                last = Some(other);
                ControlFlow::Break(())
            }
        }
    });
    if let Err(e) = swept {
        return from_core(e);
    }
    last.unwrap_or_else(|| Verdict::Holds(format!("all {checked} orientations up to symmetry")))
}

fn nl_check(emb: &PlaneEmbedding, o: &PartialOrientation) -> Verdict {
    let g = emb.graph();
    match neumann_lara_partition(g, o) {
        Ok(Some(_)) => Verdict::Holds("acyclic partition".into()),
        Ok(None) => match nl_hochstaettler_crosscheck(emb, o) {
            Ok(x) if x.agree && x.cut.is_none() => match cert_value(plain_certificate(
                "no-acyclic-partition",
                g,
                Some(o),
                json!({"n": g.n()}),
                "dual even-subgraph search finds no witness either",
            )) {
                Ok(v) => Verdict::Counterexample("no acyclic 2-partition".into(), v),
                Err(v) => v,
            },
            Ok(_) => Verdict::Failed("partition search and dual search disagree".into()),
            Err(e) => from_core(e),
        },
        Err(e) => from_core(e),
    }
}

fn hochstaettler_check(g: &MultiGraph, o: &PartialOrientation, samples: Option<u64>) -> Verdict {
    let mut outcome = even_subgraph_with_strong_contraction(g, o, EvenSearchMode::default());
    if let (Err(Error::BoundExceeded { .. }), Some(samples)) = (&outcome, samples) {
        outcome = even_subgraph_with_strong_contraction(
            g,
            o,
            EvenSearchMode::Sampling { samples, seed: 0 },
        );
    }
    match outcome {
        Ok(EvenSearchOutcome::Found(_)) => {
            Verdict::Holds("even subgraph with strong contraction".into())
        }
        Ok(EvenSearchOutcome::NoneExists) => {
            // cubic hosts: the complementary odd-subgraph search must agree
            if g.is_cubic()
                && !matches!(
                    odd_subgraph_without_directed_cut(g, o, EvenSearchMode::default()),
                    Ok(None)
                )
            {
                return Verdict::Failed("even and odd subgraph searches disagree".into());
            }
            match cert_value(plain_certificate(
                "no-strong-even-subgraph",
                g,
                Some(o),
                json!({"m": g.m()}),
                "exhaustive over the cycle space",
            )) {
                Ok(v) => Verdict::Counterexample("no even subgraph works".into(), v),
                Err(v) => v,
            }
        }
        Ok(EvenSearchOutcome::NotFound { samples }) => {
            Verdict::Incomplete(format!("no witness among {samples} sampled even subgraphs"))
        }
        Err(e) => from_core(e),
    }
}

fn verify_one(c: Conjecture, rec: &Record, max_n: Option<usize>, opts: Options) -> Verdict {
    let emb = match class_check(c, rec, max_n) {
        Ok(e) => e,
        Err(note) => return Verdict::Skipped(note),
    };
    let d = &rec.graph;
    match c {
        Tait | Barnette | Tutte => verify_hamiltonian(c, &d.graph, opts),
        NlPrime | HochstaettlerPrime | Kv => verify_matching_digraph(c, d, opts),
        Nl => {
            let emb = emb.expect("planar classes carry an embedding");
            over_orientations(d, 3, |o| nl_check(&emb, o))
        }
        Hochstaettler => {
            over_orientations(d, 0, |o| hochstaettler_check(&d.graph, o, opts.samples))
        }
    }
}

pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let records = load_all(&args.inputs)?;
    let opts = Options {
        triangle: !args.no_triangle_filter,
        girth: !args.no_girth_filter,
        a_arc: !args.no_a_arc_filter,
        node_limit: args.node_limit,
        samples: args.samples,
    };
    let c = args.conjecture;
    let results: Vec<Result<(Value, Verdict), Value>> = records
        .par_iter()
        .map(|r| match r {
            Ok(rec) => {
                let v = verify_one(c, rec, args.max_n, opts);
                let g = &rec.graph.graph;
                Ok((json!({"source": rec.source, "n": g.n(), "m": g.m()}), v))
            }
            Err((source, msg)) => Err(json!({"source": source, "parse_error": msg})),
        })
        .collect();
    let mut status = Status::Complete;
    let mut counts = [0usize; 6];
    for r in results {
        let (mut line, verdict) = match r {
            Ok(x) => x,
            Err(line) => {
                counts[5] += 1;
                status = status.max(Status::InputError);
                emit(out, &line);
                continue;
            }
        };
        status = status.max(verdict.status());
        let (tag, idx, text, cert) = match verdict {
            Verdict::Holds(m) => ("holds", 0, m, None),
            Verdict::Counterexample(m, cert) => ("counterexample", 1, m, Some(cert)),
            Verdict::Incomplete(m) => ("incomplete", 2, m, None),
            Verdict::Skipped(m) => ("skipped", 3, m, None),
            Verdict::Failed(m) => ("error", 4, m, None),
        };
        counts[idx] += 1;
        line["status"] = json!(tag);
        line["detail"] = json!(text);
        if let Some(cert) = cert {
            line["certificate"] = cert;
        }
        emit(out, &line);
    }
    emit(
        out,
        &json!({"summary": {
            "conjecture": c.name(),
            "holds": counts[0],
            "counterexamples": counts[1],
            "incomplete": counts[2],
            "skipped": counts[3],
            "errors": counts[4],
            "parse_errors": counts[5],
            "filters": {
                "triangle": opts.triangle,
                "girth": opts.girth,
                "a_arc": opts.a_arc,
            },
        }}),
    );
    Ok(status)
}
