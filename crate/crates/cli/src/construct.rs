use clap::ValueEnum;
use serde_json::json;

use pmcut::gadgets::{
    c4_reduction, contract_triangle, cubic_expansion, dplus, hat_construction, hat_wiring_patterns,
    orient_extremal_sinks_sources, reconstruct_hat_wiring, split_vertex, split_vertex_embedded,
    tilde_construction, C4Side, SplitGadget,
};
use pmcut::graph::formats::{
    write_digraph6, write_graph6, write_planar_code, write_sidecar, write_sparse6,
};
use pmcut::graph::{find_plane_embedding, Dir, OrientedGraph, PlaneEmbedding};
use pmcut::planar::directed_dual;
use pmcut::search::{a_arc_with, verify_certificate, CertificateKind, SearchProblem};

use crate::input::load;
use crate::{CliError, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// Split the tail of `--arc` into three pendants.
    Split,
    /// Two split copies joined by a pendant wiring (`--pattern`, or the
    /// first wiring whose orientation search succeeds).
    Hat,
    /// Three split copies around a cube vertex.
    Tilde,
    /// Orient the free edges to minimize vertices that are neither source
    /// nor sink.
    Orient,
    /// Replace every vertex that is neither source nor sink by the
    /// 7-vertex gadget.
    Dplus,
    ContractTriangle,
    C4Reduce,
    /// Replace every vertex of degree d >= 3 by an undirected d-cycle.
    Expand,
    /// Directed planar dual.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Sidecar,
    Graph6,
    Sparse6,
    Digraph6,
    PlanarCode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Uv,
    Vw,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Comma-separated chain, applied left to right.
    #[arg(value_enum, value_delimiter = ',', required = true)]
    ops: Vec<Op>,
    /// Input graph (first record is used).
    input: String,
    /// Arc for split/hat/tilde; an undirected edge is first oriented into
    /// an a-arc by search.
    #[arg(long, default_value_t = 0)]
    arc: usize,
    /// Wiring pattern index (0..70) for hat.
    #[arg(long)]
    pattern: Option<usize>,
    /// Triangle `a,b,c` to contract (default: the first one found).
    #[arg(long, value_delimiter = ',', num_args = 3)]
    triangle: Option<Vec<usize>>,
    /// 4-cycle `u,v,w,x` to reduce (default: the first reducible one).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    cycle: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "uv")]
    side: Side,
    #[arg(long, value_enum, default_value = "sidecar")]
    format: Format,
    /// Print a JSON summary of the result to stderr.
    #[arg(long)]
    summary: bool,
}

struct Current {
    d: OrientedGraph,
    emb: Option<PlaneEmbedding>,
}

fn core(e: pmcut::Error) -> CliError {
    CliError::Core(e)
}

/// Ensures `e` is directed; an undirected edge is turned into an a-arc by
/// search, together with whatever else the witness orientation directs.
fn with_arc(cur: &Current, e: usize) -> Result<OrientedGraph, CliError> {
    if cur.d.arc(e).is_some() {
        return Ok(cur.d.clone());
    }
    let p = SearchProblem::new(cur.d.graph.clone(), cur.d.orientation.clone(), Some(e))?;
    let c = a_arc_with(&p)?;
    if c.kind != CertificateKind::OrientationFound || !verify_certificate(&c, &p).is_valid() {
        return Err(CliError::Data(format!(
            "edge {e} cannot be oriented into an a-arc"
        )));
    }
    Ok(OrientedGraph::new(
        cur.d.graph.clone(),
        c.orientation.expect("found"),
    )?)
}

fn split(cur: &Current, arc: usize) -> Result<SplitGadget, CliError> {
    let d = with_arc(cur, arc)?;
    match &cur.emb {
        Some(e) if d.graph.is_simple() => split_vertex_embedded(&d, e, arc).map_err(core),
        _ => split_vertex(&d, arc).map_err(core),
    }
}

fn first_triangle(d: &OrientedGraph) -> Option<[usize; 3]> {
    let g = &d.graph;
    (0..g.n()).find_map(|a| {
        g.neighbors(a).filter(|&b| b > a).find_map(|b| {
            g.neighbors(b)
                .find(|&c| c > b && g.has_edge(a, c))
                .map(|c| [a, b, c])
        })
    })
}

fn apply(op: Op, cur: Current, args: &Args, notes: &mut Vec<String>) -> Result<Current, CliError> {
    Ok(match op {
        Op::Split => Current {
            d: split(&cur, args.arc)?.graph,
            emb: None,
        },
        Op::Hat => {
            let sg = split(&cur, args.arc)?;
            let d = match args.pattern {
                Some(k) => {
                    let patterns = hat_wiring_patterns();
                    let w = patterns.get(k).ok_or_else(|| {
                        CliError::Usage(format!("pattern {k} out of range 0..{}", patterns.len()))
                    })?;
                    hat_construction(&sg, w, &[Dir::Undirected; 6])?.graph
                }
                None => {
                    match reconstruct_hat_wiring(&sg)? {
                        Some(r) => {
                            notes.push(format!("wiring pattern {}", r.pattern_index));
                            r.hat.graph
                        }
                        None => return Err(CliError::Data(
                            "no wiring pattern admits an orientation where every perfect matching \
                             contains a directed cut"
                                .into(),
                        )),
                    }
                }
            };
            Current { d, emb: None }
        }
        Op::Tilde => {
            let t = tilde_construction(&split(&cur, args.arc)?)?;
            Current {
                d: t.graph,
                emb: t.embedding,
            }
        }
        Op::Orient => {
            let (d, k) = orient_extremal_sinks_sources(&cur.d)?;
            notes.push(format!("{k} vertices neither source nor sink"));
            Current { d, emb: cur.emb }
        }
        Op::Dplus => {
            let r = dplus(&cur.d, cur.emb.as_ref())?;
            notes.push(format!("{} gadgets", r.gadgets.len()));
            Current {
                d: r.graph,
                emb: r.embedding,
            }
        }
        Op::ContractTriangle => {
            let tri = match &args.triangle {
                Some(t) => [t[0], t[1], t[2]],
                None => first_triangle(&cur.d)
                    .ok_or_else(|| CliError::Data("the graph has no triangle".into()))?,
            };
            Current {
                d: contract_triangle(&cur.d, tri)?.0,
                emb: None,
            }
        }
        Op::C4Reduce => {
            let g = &cur.d.graph;
            let r = match &args.cycle {
                Some(c) => c4_reduction(g, [c[0], c[1], c[2], c[3]])?,
                None => first_c4(g).ok_or_else(|| CliError::Data("no reducible 4-cycle".into()))?,
            };
            notes.push(format!("4-cycle {:?}", r.cycle));
            let side = match args.side {
                Side::Uv => C4Side::Uv,
                Side::Vw => C4Side::Vw,
            };
            Current {
                d: OrientedGraph::undirected(r.reduced(side).clone()),
                emb: None,
            }
        }
        Op::Expand => {
            let x = cubic_expansion(&cur.d, cur.emb.as_ref())?;
            Current {
                d: x.graph,
                emb: x.embedding,
            }
        }
        Op::Dual => {
            let emb = match cur.emb {
                Some(e) => e,
                None => find_plane_embedding(&cur.d.graph)?
                    .ok_or_else(|| CliError::Data("the graph is not planar".into()))?,
            };
            let dp = directed_dual(&emb, &cur.d.orientation)?;
            Current {
                d: OrientedGraph::new(dp.dual.graph().clone(), dp.dual_orientation)?,
                emb: Some(dp.dual),
            }
        }
    })
}

fn first_c4(g: &pmcut::MultiGraph) -> Option<pmcut::gadgets::C4Reduction> {
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            for w in g.neighbors(v).filter(|&w| w != u) {
                for x in g
                    .neighbors(w)
                    .filter(|&x| x != v && x != u && g.has_edge(x, u))
                {
                    if let Ok(r) = c4_reduction(g, [u, v, w, x]) {
                        return Some(r);
                    }
                }
            }
        }
    }
    None
}

pub fn run(args: Args, out: &mut Vec<u8>) -> Result<Status, CliError> {
    let first = load(&args.input)?
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Data(format!("{}: no graph", args.input)))?
        .map_err(|(s, m)| CliError::Data(format!("{s}: {m}")))?;
    let mut cur = Current {
        d: first.graph,
        emb: first.embedding,
    };
    let mut notes = Vec::new();
    for &op in &args.ops {
        cur = apply(op, cur, &args, &mut notes)?;
    }
    let d = &cur.d;
    let text = match args.format {
        Format::Sidecar => write_sidecar(d)? + "\n",
        Format::Graph6 => write_graph6(&d.graph)? + "\n",
        Format::Sparse6 => write_sparse6(&d.graph) + "\n",
        Format::Digraph6 => write_digraph6(d)? + "\n",
        Format::PlanarCode => {
            let emb = cur
                .emb
                .as_ref()
                .ok_or_else(|| CliError::Data("the result carries no embedding".into()))?;
            out.extend_from_slice(&write_planar_code(std::slice::from_ref(emb)));
            String::new()
        }
    };
    out.extend_from_slice(text.as_bytes());
    if args.summary {
        eprintln!(
            "{}",
            json!({
                "n": d.graph.n(),
                "m": d.graph.m(),
                "cubic": d.graph.is_cubic(),
                "directed_edges": d.orientation.directed_count(),
                "embedded": cur.emb.is_some(),
                "faces": cur.emb.as_ref().map(|e| e.face_count()),
                "notes": notes,
            })
        );
    }
    Ok(Status::Complete)
}
