use std::fs;
use std::io::Read;
use std::path::Path;

use pmcut::graph::formats::{parse_planar_code, read_lines, read_sidecar};
use pmcut::graph::{
    k4_embedding, named, prism_embedding, MultiGraph, OrientedGraph, PlaneEmbedding,
};

use crate::CliError;

/// One graph read from an input, with its position for reporting.
#[derive(Clone, Debug)]
pub struct Record {
    pub source: String,
    pub graph: OrientedGraph,
    pub embedding: Option<PlaneEmbedding>,
}

/// A record, or the parse error that replaced it.
pub type Loaded = Result<Record, (String, String)>;

const NAMED: &[&str] = &[
    "k4",
    "k33",
    "cube",
    "petersen",
    "coxeter",
    "tutte",
    "tietze",
    "octahedron",
];

fn embedded(e: PlaneEmbedding) -> (MultiGraph, Option<PlaneEmbedding>) {
    (e.graph().clone(), Some(e))
}

fn named_graph(name: &str) -> Option<(MultiGraph, Option<PlaneEmbedding>)> {
    Some(match name {
        "k4" => embedded(k4_embedding()),
        "k33" => (named::k33(), None),
        "cube" => embedded(prism_embedding(4)),
        "petersen" => (named::petersen(), None),
        "coxeter" => (named::coxeter(), None),
        "tutte" => (named::tutte(), None),
        "tietze" => (named::tietze(), None),
        "octahedron" => (named::octahedron(), None),
        _ => {
            let k: usize = name.strip_prefix("prism")?.parse().ok()?;
            if k < 3 {
                return None;
            }
            embedded(prism_embedding(k))
        }
    })
}

/// Reads every record of an input: a path, `-` for stdin, or `named:NAME`.
///
/// The format is sniffed: planar_code by header or extension, the graph6
/// sidecar when any line starts with `O:`, otherwise one graph6, sparse6 or
/// digraph6 record per line.
pub fn load(spec: &str) -> Result<Vec<Loaded>, CliError> {
    if let Some(name) = spec.strip_prefix("named:") {
        let (g, emb) = named_graph(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown named graph {name:?}; known: {}, prismK",
                NAMED.join(", ")
            ))
        })?;
        return Ok(vec![Ok(Record {
            source: spec.to_string(),
            graph: OrientedGraph::undirected(g),
            embedding: emb,
        })]);
    }
    let bytes = if spec == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Io(spec.into(), e))?;
        buf
    } else {
        fs::read(spec).map_err(|e| CliError::Io(spec.into(), e))?
    };
    Ok(parse_bytes(spec, &bytes))
}

pub fn parse_bytes(spec: &str, bytes: &[u8]) -> Vec<Loaded> {
    let ext = Path::new(spec)
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("");
    if bytes.starts_with(b">>planar_code") || matches!(ext, "pc" | "plc" | "planar") {
        return match parse_planar_code(bytes) {
            Ok(embs) => embs
                .into_iter()
                .enumerate()
                .map(|(i, e)| {
                    Ok(Record {
                        source: format!("{spec}#{}", i + 1),
                        graph: OrientedGraph::undirected(e.graph().clone()),
                        embedding: Some(e),
                    })
                })
                .collect(),
            Err(e) => vec![Err((spec.to_string(), e.to_string()))],
        };
    }
    let text = String::from_utf8_lossy(bytes);
    let parsed = if text.lines().any(|l| l.trim_start().starts_with("O:")) {
        read_sidecar(&text)
    } else {
        read_lines(&text)
    };
    parsed
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let source = format!("{spec}#{}", i + 1);
            match r {
                Ok(graph) => Ok(Record {
                    source,
                    graph,
                    embedding: None,
                }),
                Err(e) => Err((source, e.to_string())),
            }
        })
        .collect()
}

/// Loads all inputs in order.
pub fn load_all(specs: &[String]) -> Result<Vec<Loaded>, CliError> {
    let mut out = Vec::new();
    for s in specs {
        out.extend(load(s)?);
    }
    Ok(out)
}
