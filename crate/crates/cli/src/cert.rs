use serde::Serialize;

use pmcut::graph::formats::{write_graph6, write_sidecar};
use pmcut::graph::{CutDirection, MultiGraph, OrientedGraph, PartialOrientation};
use pmcut::search::{verify_certificate, Certificate, CertificateKind, SearchProblem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct BondJson {
    pub side: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub matching: Vec<usize>,
    pub bond: BondJson,
    /// `away` when the bond's arcs leave `side`, `toward` otherwise.
    pub direction: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

/// The on-disk certificate. Edge ids refer to the lexicographic edge order
/// of `graph` (the order a graph6 reader assigns).
#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub kind: String,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    pub witnesses: Vec<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_matching: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_arc: Option<(usize, usize)>,
    pub stats: serde_json::Value,
    pub verification: Verification,
}

pub fn kind_name(k: CertificateKind) -> String {
    serde_json::to_value(k)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn sidecar_line(g: &MultiGraph, o: &PartialOrientation) -> Result<String, String> {
    let d = OrientedGraph::new(g.clone(), o.clone()).map_err(|e| e.to_string())?;
    let text = write_sidecar(&d).map_err(|e| e.to_string())?;
    Ok(text.lines().nth(1).unwrap_or("O:").to_string())
}

fn remap(ids: &[usize], new_id: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = ids.iter().map(|&e| new_id[e]).collect();
    v.sort_unstable();
    v
}

/// Serializes a search certificate after re-verifying it against `p`.
///
/// Refutations too large for the brute-force re-check are written with an
/// `unchecked` status; any other verification failure is an error and
/// nothing is written.
pub fn search_certificate(c: &Certificate, p: &SearchProblem) -> Result<CertificateJson, String> {
    let check = verify_certificate(c, p);
    let verification = if check.is_valid() {
        Verification {
            status: "passed",
            reasons: Vec::new(),
        }
    } else if c.kind == CertificateKind::Refuted
        && check.reasons.iter().all(|r| r.contains("re-check bound"))
    {
        Verification {
            status: "unchecked",
            reasons: check.reasons,
        }
    } else {
        return Err(format!(
            "certificate failed re-verification: {}",
            check.reasons.join("; ")
        ));
    };
    let g = &p.host;
    let (_, new_id) = g.normalized();
    let orientation = c.orientation.as_ref().unwrap_or(&p.fixed);
    Ok(CertificateJson {
        schema_version: SCHEMA_VERSION,
        kind: kind_name(c.kind),
        graph: write_graph6(g).map_err(|e| e.to_string())?,
        orientation: Some(sidecar_line(g, orientation)?),
        witnesses: c
            .witnesses
            .iter()
            .map(|w| WitnessJson {
                matching: remap(&w.matching, &new_id),
                bond: BondJson {
                    side: w.bond.side.clone(),
                    edges: remap(&w.bond.edges, &new_id),
                },
                direction: match w.direction {
                    CutDirection::AwayFromSide => "away",
                    CutDirection::TowardSide => "toward",
                },
            })
            .collect(),
        good_matching: c.good_matching.as_ref().map(|m| remap(m, &new_id)),
        a_arc: c.a_arc,
        stats: serde_json::to_value(c.stats).unwrap_or_default(),
        verification,
    })
}

/// A certificate produced outside the orientation search, already checked
/// by an independent method described in `how`.
pub fn plain_certificate(
    kind: &str,
    g: &MultiGraph,
    o: Option<&PartialOrientation>,
    stats: serde_json::Value,
    how: &str,
) -> Result<CertificateJson, String> {
    Ok(CertificateJson {
        schema_version: SCHEMA_VERSION,
        kind: kind.to_string(),
        graph: write_graph6(g).map_err(|e| e.to_string())?,
        orientation: o.map(|o| sidecar_line(g, o)).transpose()?,
        witnesses: Vec::new(),
        good_matching: None,
        a_arc: None,
        stats,
        verification: Verification {
            status: "passed",
            reasons: vec![how.to_string()],
        },
    })
}
