//! Branch-and-prune search for orientations under which every (constrained)
//! perfect matching contains a directed bond, certificates for its answers,
//! and exhaustive sweeps over full orientations.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    automorphisms, is_connected, Bond, CutDirection, Dir, MultiGraph, OrientedGraph,
    PartialOrientation,
};
use crate::matchings::{
    bonds_within, directed_cut_within, perfect_matchings, perfect_matchings_containing,
    PerfectMatching,
};

/// Which perfect matchings must contain a directed bond, under which
/// pre-directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub host: MultiGraph,
    pub fixed: PartialOrientation,
    /// When set, only matchings through this edge are constrained.
    pub restrict_to_edge: Option<usize>,
    /// Node budget; exceeding it yields an incomplete certificate.
    pub max_nodes: Option<u64>,
}

impl SearchProblem {
    pub fn new(
        host: MultiGraph,
        fixed: PartialOrientation,
        restrict_to_edge: Option<usize>,
    ) -> Result<Self> {
        fixed.check_host(&host)?;
        if let Some(e) = restrict_to_edge {
            host.check_edge(e)?;
        }
        if !is_connected(&host) {
            return Err(Error::contract("orientation search needs a connected host"));
        }
        Ok(SearchProblem {
            host,
            fixed,
            restrict_to_edge,
            max_nodes: None,
        })
    }

    pub fn unrestricted(host: MultiGraph) -> Result<Self> {
        let m = host.m();
        SearchProblem::new(host, PartialOrientation::undirected(m), None)
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.max_nodes = Some(limit);
        self
    }

    /// The matchings the problem constrains, in lexicographic order.
    pub fn constrained_matchings(&self) -> Vec<PerfectMatching> {
        let all = perfect_matchings(&self.host);
        match self.restrict_to_edge {
            Some(e) => all.into_iter().filter(|m| m.contains(e)).collect(),
            None => all,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    OrientationFound,
    Refuted,
    /// A full orientation together with a matching free of directed bonds.
    GoodMatching,
    /// No constrained perfect matching exists, so any orientation works.
    Vacuous,
    /// The node budget ran out before an answer.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub matching: Vec<usize>,
    pub bond: Bond,
    pub direction: CutDirection,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub matchings: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub orientation: Option<PartialOrientation>,
    pub witnesses: Vec<Witness>,
    pub good_matching: Option<Vec<usize>>,
    /// In a-arc mode, the chosen arc as `(tail, head)`.
    pub a_arc: Option<(usize, usize)>,
    pub stats: SearchStats,
}

impl Certificate {
    fn bare(kind: CertificateKind, stats: SearchStats) -> Self {
        Certificate {
            kind,
            orientation: None,
            witnesses: Vec::new(),
            good_matching: None,
            a_arc: None,
            stats,
        }
    }

    /// Number of edges directed beyond `fixed`.
    pub fn added_arcs(&self, fixed: &PartialOrientation) -> usize {
        self.orientation
            .as_ref()
            .map_or(0, |o| o.directed_count() - fixed.directed_count())
    }
}

struct Choice {
    bond: usize,
    dir: CutDirection,
    needs: Vec<(usize, Dir)>,
}

struct Constraint {
    matching: PerfectMatching,
    bonds: Vec<Bond>,
    choices: Vec<Choice>,
}

struct Search<'a> {
    constraints: &'a [Constraint],
    state: Vec<Dir>,
    nodes: u64,
    limit: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn satisfied(&self, c: &Choice) -> bool {
        c.needs.iter().all(|&(e, d)| self.state[e] == d)
    }

    fn compatible(&self, c: &Choice) -> bool {
        c.needs
            .iter()
            .all(|&(e, d)| self.state[e] == d || self.state[e] == Dir::Undirected)
    }

    fn run(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Outcome::OutOfBudget;
        }
        // most constrained uncovered matching first; ties keep the static order
        let mut pick: Option<(usize, usize)> = None;
        for (i, c) in self.constraints.iter().enumerate() {
            if c.choices.iter().any(|ch| self.satisfied(ch)) {
                continue;
            }
            let open = c.choices.iter().filter(|ch| self.compatible(ch)).count();
            if open == 0 {
                return Outcome::Exhausted;
            }
            if pick.is_none_or(|(_, best)| open < best) {
                pick = Some((i, open));
            }
        }
        let Some((i, _)) = pick else {
            return Outcome::Found;
        };
        for ch in &self.constraints[i].choices {
            if !self.compatible(ch) {
                continue;
            }
            let changed: Vec<usize> = ch
                .needs
                .iter()
                .filter(|&&(e, _)| self.state[e] == Dir::Undirected)
                .map(|&(e, _)| e)
                .collect();
            for &(e, d) in &ch.needs {
                self.state[e] = d;
            }
            match self.run() {
                Outcome::Exhausted => {}
                other => return other,
            }
            for e in changed {
                self.state[e] = Dir::Undirected;
            }
        }
        Outcome::Exhausted
    }
}

fn build_constraints(p: &SearchProblem) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    for m in p.constrained_matchings() {
        let bonds = bonds_within(&p.host, &m.edges)?;
        let mut choices = Vec::new();
        for (bi, b) in bonds.iter().enumerate() {
            for dir in [CutDirection::AwayFromSide, CutDirection::TowardSide] {
                choices.push(Choice {
                    bond: bi,
                    dir,
                    needs: b.required_states(&p.host, dir),
                });
            }
        }
        out.push(Constraint {
            matching: m,
            bonds,
            choices,
        });
    }
    // fewest bonds first, then lexicographic
    out.sort_by(|a, b| {
        a.bonds
            .len()
            .cmp(&b.bonds.len())
            .then_with(|| a.matching.cmp(&b.matching))
    });
    Ok(out)
}

/// Decides whether some extension of `p.fixed` makes every constrained
/// perfect matching contain a directed bond.
pub fn exists_orientation_all_pm_cut(p: &SearchProblem) -> Result<Certificate> {
    let constraints = build_constraints(p)?;
    let mut stats = SearchStats {
        nodes: 0,
        matchings: constraints.len() as u64,
    };
    if constraints.is_empty() {
        let mut c = Certificate::bare(CertificateKind::Vacuous, stats);
        c.orientation = Some(p.fixed.clone());
        return Ok(c);
    }
    let mut search = Search {
        constraints: &constraints,
        state: p.fixed.states().to_vec(),
        nodes: 0,
        limit: p.max_nodes.unwrap_or(u64::MAX),
    };
    let outcome = search.run();
    stats.nodes = search.nodes;
    match outcome {
        Outcome::Exhausted => Ok(Certificate::bare(CertificateKind::Refuted, stats)),
        Outcome::OutOfBudget => Ok(Certificate::bare(CertificateKind::Incomplete, stats)),
        Outcome::Found => {
            let o = PartialOrientation::from_states(search.state.clone());
            let mut witnesses: Vec<Witness> = constraints
                .iter()
                .map(|c| {
                    let ch = c
                        .choices
                        .iter()
                        .find(|ch| search.satisfied(ch))
                        .expect("every constraint is covered");
                    Witness {
                        matching: c.matching.edges.clone(),
                        bond: c.bonds[ch.bond].clone(),
                        direction: ch.dir,
                    }
                })
                .collect();
            witnesses.sort();
            let mut c = Certificate::bare(CertificateKind::OrientationFound, stats);
            c.orientation = Some(o);
            c.witnesses = witnesses;
            Ok(c)
        }
    }
}

/// Can `e` be an a-arc: is there an orientation in which every perfect
/// matching through `e` contains a directed bond? On success the edge is
/// directed (endpoint order if the search left it free) and reported.
pub fn can_edge_be_a_arc(g: &MultiGraph, e: usize) -> Result<Certificate> {
    g.check_edge(e)?;
    let p = SearchProblem::new(g.clone(), PartialOrientation::undirected(g.m()), Some(e))?;
    a_arc_with(&p)
}

/// a-arc search on a prepared problem (its `restrict_to_edge` must be set).
pub fn a_arc_with(p: &SearchProblem) -> Result<Certificate> {
    let e = p
        .restrict_to_edge
        .ok_or_else(|| Error::contract("a-arc search needs a restricted edge"))?;
    let mut c = exists_orientation_all_pm_cut(p)?;
    if let Some(o) = c.orientation.as_mut() {
        if o.get(e) == Dir::Undirected {
            o.set(e, Dir::Forward);
        }
        c.a_arc = o.arc(&p.host, e);
    }
    Ok(c)
}

/// True when `e` is directed and every perfect matching through it already
/// contains a bond that the orientation of `d` directs.
pub fn is_a_arc(d: &OrientedGraph, e: usize) -> Result<bool> {
    d.graph.check_edge(e)?;
    if d.arc(e).is_none() {
        return Ok(false);
    }
    for m in perfect_matchings_containing(&d.graph, e)? {
        if directed_cut_within(&d.graph, &d.orientation, &m.edges)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when every perfect matching of `d` contains a directed bond.
pub fn every_matching_has_directed_cut(d: &OrientedGraph) -> Result<bool> {
    let mut ok = true;
    let mut err = None;
    crate::matchings::for_each_perfect_matching(&d.graph, |m| {
        match directed_cut_within(&d.graph, &d.orientation, m) {
            Ok(Some(_)) => std::ops::ControlFlow::Continue(()),
            Ok(None) => {
                ok = false;
                std::ops::ControlFlow::Break(())
            }
            Err(e) => {
                err = Some(e);
                std::ops::ControlFlow::Break(())
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// Result of [`verify_certificate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub reasons: Vec<String>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.reasons.push(why.into());
    }
}

/// Refutations are re-checked by brute force only up to this many free edges.
pub const REFUTATION_CHECK_BOUND: usize = 24;

/// Re-checks a certificate from scratch against its problem.
pub fn verify_certificate(c: &Certificate, p: &SearchProblem) -> Verification {
    let mut v = Verification::default();
    if p.fixed.check_host(&p.host).is_err() {
        v.fail("fixed orientation does not fit the host");
        return v;
    }
    let constrained = p.constrained_matchings();
    match c.kind {
        CertificateKind::Incomplete => v.fail("incomplete certificates prove nothing"),
        CertificateKind::Vacuous => {
            if !constrained.is_empty() {
                v.fail(format!("{} constrained matchings exist", constrained.len()));
            }
        }
        CertificateKind::OrientationFound => verify_found(c, p, &constrained, &mut v),
        CertificateKind::GoodMatching => verify_good_matching(c, p, &mut v),
        CertificateKind::Refuted => verify_refutation(p, &constrained, &mut v),
    }
    v
}

fn verify_found(
    c: &Certificate,
    p: &SearchProblem,
    constrained: &[PerfectMatching],
    v: &mut Verification,
) {
    let Some(o) = &c.orientation else {
        v.fail("no orientation given");
        return;
    };
    if o.check_host(&p.host).is_err() {
        v.fail("orientation does not fit the host");
        return;
    }
    if !o.extends(&p.fixed) {
        v.fail("orientation does not extend the fixed arcs");
    }
    if let (Some(e), Some(arc)) = (p.restrict_to_edge, c.a_arc) {
        if o.arc(&p.host, e) != Some(arc) {
            v.fail(format!("edge {e} is not the reported a-arc"));
        }
    }
    let expected: BTreeSet<&[usize]> = constrained.iter().map(|m| m.edges.as_slice()).collect();
    let mut seen = BTreeSet::new();
    for w in &c.witnesses {
        let tag = format!("witness for matching {:?}", w.matching);
        if !expected.contains(w.matching.as_slice()) {
            v.fail(format!("{tag}: not a constrained perfect matching"));
            continue;
        }
        if !seen.insert(w.matching.as_slice()) {
            v.fail(format!("{tag}: listed twice"));
        }
        if !w.bond.is_valid(&p.host) {
            v.fail(format!("{tag}: bond is not a minimal cut"));
            continue;
        }
        if w.bond
            .edges
            .iter()
            .any(|e| w.matching.binary_search(e).is_err())
        {
            v.fail(format!("{tag}: bond leaves the matching"));
        }
        if w.bond.directed_by(&p.host, o) != Some(w.direction) {
            v.fail(format!("{tag}: bond is not directed {:?}", w.direction));
        }
    }
    for m in expected.difference(&seen) {
        v.fail(format!("matching {m:?} has no witness"));
    }
}

fn verify_good_matching(c: &Certificate, p: &SearchProblem, v: &mut Verification) {
    let (Some(o), Some(m)) = (&c.orientation, &c.good_matching) else {
        v.fail("good-matching certificate needs an orientation and a matching");
        return;
    };
    if o.check_host(&p.host).is_err() || !o.is_full() || !o.extends(&p.fixed) {
        v.fail("orientation must be a full extension of the fixed arcs");
        return;
    }
    let Ok(pm) = PerfectMatching::new(&p.host, m.clone()) else {
        v.fail("good matching is not a perfect matching");
        return;
    };
    if let Some(e) = p.restrict_to_edge {
        if !pm.contains(e) {
            v.fail(format!("good matching avoids the restricted edge {e}"));
        }
    }
    match directed_cut_within(&p.host, o, &pm.edges) {
        Ok(None) => {}
        Ok(Some((b, _))) => v.fail(format!("matching contains directed bond {:?}", b.edges)),
        Err(e) => v.fail(e.to_string()),
    }
}

fn verify_refutation(p: &SearchProblem, constrained: &[PerfectMatching], v: &mut Verification) {
    let free: Vec<usize> = (0..p.host.m())
        .filter(|&e| p.fixed.get(e) == Dir::Undirected)
        .collect();
    if free.len() > REFUTATION_CHECK_BOUND {
        v.fail(format!(
            "refutation with {} free edges exceeds the brute-force re-check bound {}",
            free.len(),
            REFUTATION_CHECK_BOUND
        ));
        return;
    }
    if constrained.is_empty() {
        v.fail("no constrained matchings, so nothing can be refuted");
        return;
    }
    let table: Vec<Vec<Bond>> = match constrained
        .iter()
        .map(|m| bonds_within(&p.host, &m.edges))
        .collect::<Result<_>>()
    {
        Ok(t) => t,
        Err(e) => {
            v.fail(e.to_string());
            return;
        }
    };
    let counterexample = (0..1u64 << free.len()).into_par_iter().find_first(|&bits| {
        let mut o = p.fixed.clone();
        for (i, &e) in free.iter().enumerate() {
            o.set(
                e,
                if bits >> i & 1 == 1 {
                    Dir::Backward
                } else {
                    Dir::Forward
                },
            );
        }
        table
            .iter()
            .all(|bs| bs.iter().any(|b| b.directed_by(&p.host, &o).is_some()))
    });
    if let Some(bits) = counterexample {
        v.fail(format!(
            "free-edge assignment {bits:#b} satisfies every matching"
        ));
    }
}

/// Per-matching directed-bond tests on `u64` orientation bitmasks
/// (bit `e` set means edge `e` points second endpoint to first).
#[derive(Clone, Debug)]
pub struct GoodMatchingOracle {
    matchings: Vec<PerfectMatching>,
    /// per matching: (edge mask, required bits for AwayFromSide) per bond
    bonds: Vec<Vec<(u64, u64)>>,
    m: usize,
}

impl GoodMatchingOracle {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        if g.m() > 64 {
            return Err(Error::BoundExceeded {
                what: format!("bitmask orientation checks on {} edges", g.m()),
                limit: 64,
                hint: "use the search module".into(),
            });
        }
        let matchings = perfect_matchings(g);
        let mut bonds = Vec::with_capacity(matchings.len());
        for m in &matchings {
            let mut list = Vec::new();
            for b in bonds_within(g, &m.edges)? {
                let mut mask = 0u64;
                let mut want = 0u64;
                for (e, d) in b.required_states(g, CutDirection::AwayFromSide) {
                    mask |= 1 << e;
                    if d == Dir::Backward {
                        want |= 1 << e;
                    }
                }
                list.push((mask, want));
            }
            bonds.push(list);
        }
        Ok(GoodMatchingOracle {
            matchings,
            bonds,
            m: g.m(),
        })
    }

    pub fn matchings(&self) -> &[PerfectMatching] {
        &self.matchings
    }

    /// Index of the first matching without a directed bond under `bits`.
    pub fn good_matching(&self, bits: u64) -> Option<usize> {
        self.bonds.iter().position(|list| {
            list.iter().all(|&(mask, want)| {
                let got = bits & mask;
                got != want && got != want ^ mask
            })
        })
    }

    /// Some matching has no bond at all, so every orientation passes.
    pub fn has_cut_free_matching(&self) -> bool {
        self.bonds.iter().any(|b| b.is_empty())
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }
}

/// Outcome of a sweep over full orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    /// Orientations the predicate was evaluated on.
    pub checked: u64,
    pub passed: u64,
    /// Smallest failing orientation bitmask, if any.
    pub counterexample: Option<u64>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Largest edge count for a full sweep.
pub const SWEEP_BOUND: usize = 24;

/// How an automorphism acts on orientation bitmasks.
pub(crate) struct EdgeAction {
    image: Vec<usize>,
    flip: Vec<bool>,
}

pub(crate) fn edge_actions(g: &MultiGraph) -> Result<Vec<EdgeAction>> {
    if !g.is_simple() {
        return Err(Error::contract("symmetry reduction needs a simple graph"));
    }
    let mut out = Vec::new();
    for perm in automorphisms(g)? {
        let mut image = vec![0; g.m()];
        let mut flip = vec![false; g.m()];
        for (e, a, b) in g.edges() {
            let (pa, pb) = (perm[a], perm[b]);
            let f = g.edges_between(pa, pb).next().expect("automorphism");
            image[e] = f;
            flip[e] = g.endpoints(f) != (pa, pb);
        }
        out.push(EdgeAction { image, flip });
    }
    Ok(out)
}

pub(crate) fn act(a: &EdgeAction, bits: u64) -> u64 {
    let mut out = 0;
    for (e, (&f, &flip)) in a.image.iter().zip(&a.flip).enumerate() {
        if (bits >> e & 1 == 1) != flip {
            out |= 1 << f;
        }
    }
    out
}

/// Evaluates `check` on every full orientation of `g` (bitmask form, see
/// [`PartialOrientation::from_bits`]), or on one per automorphism orbit
/// (the numerically smallest) when `up_to_symmetry` is set.
pub fn sweep_all_orientations<F>(
    g: &MultiGraph,
    check: F,
    up_to_symmetry: bool,
) -> Result<SweepReport>
where
    F: Fn(u64) -> bool + Sync,
{
    let m = g.m();
    let bound = if up_to_symmetry {
        SWEEP_BOUND + 8
    } else {
        SWEEP_BOUND
    };
    if m > bound {
        return Err(Error::BoundExceeded {
            what: format!("sweep over 2^{m} orientations"),
            limit: bound,
            hint: if up_to_symmetry {
                "ingest orientations from a file instead".into()
            } else {
                "enable up-to-symmetry mode".into()
            },
        });
    }
    let actions = if up_to_symmetry {
        edge_actions(g)?
    } else {
        Vec::new()
    };
    let total: u64 = 1 << m;
    let chunk = 1u64 << 12;
    let chunks = total.div_ceil(chunk);
    let results: Vec<(u64, u64, Option<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let (mut checked, mut passed, mut bad) = (0, 0, None);
            for bits in c * chunk..((c + 1) * chunk).min(total) {
                if up_to_symmetry && actions.iter().any(|a| act(a, bits) < bits) {
                    continue;
                }
                checked += 1;
                if check(bits) {
                    passed += 1;
                } else if bad.is_none() {
                    bad = Some(bits);
                }
            }
            (checked, passed, bad)
        })
        .collect();
    let mut report = SweepReport {
        checked: 0,
        passed: 0,
        counterexample: None,
    };
    for (checked, passed, bad) in results {
        report.checked += checked;
        report.passed += passed;
        report.counterexample = report.counterexample.or(bad);
    }
    Ok(report)
}

/// Sweeps "some perfect matching has no directed bond" over all full
/// orientations; the report's counterexample is an orientation in which
/// every perfect matching contains a directed cut.
pub fn sweep_good_matchings(g: &MultiGraph, up_to_symmetry: bool) -> Result<SweepReport> {
    let oracle = GoodMatchingOracle::new(g)?;
    if oracle.has_cut_free_matching() && g.m() <= SWEEP_BOUND && !up_to_symmetry {
        // a matching with no bond at all passes every orientation
        let total = 1u64 << g.m();
        return Ok(SweepReport {
            checked: total,
            passed: total,
            counterexample: None,
        });
    }
    sweep_all_orientations(
        g,
        |bits| oracle.good_matching(bits).is_some(),
        up_to_symmetry,
    )
}

/// A good-matching certificate for one full orientation, if it has one.
pub fn good_matching_certificate(
    g: &MultiGraph,
    o: &PartialOrientation,
) -> Result<Option<Certificate>> {
    o.check_host(g)?;
    if !o.is_full() {
        return Err(Error::contract(
            "good matchings are defined for full orientations",
        ));
    }
    for m in perfect_matchings(g) {
        if directed_cut_within(g, o, &m.edges)?.is_none() {
            let mut c = Certificate::bare(
                CertificateKind::GoodMatching,
                SearchStats {
                    nodes: 0,
                    matchings: 1,
                },
            );
            c.orientation = Some(o.clone());
            c.good_matching = Some(m.edges);
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_acyclic, named};

    #[test]
    fn petersen_is_refuted_unrestricted() {
        let p = SearchProblem::unrestricted(named::petersen()).unwrap();
        let c = exists_orientation_all_pm_cut(&p).unwrap();
        assert_eq!(c.kind, CertificateKind::Refuted);
        assert!(verify_certificate(&c, &p).is_valid());
    }

    #[test]
    fn petersen_edges_are_a_arcs() {
        let g = named::petersen();
        for e in 0..g.m() {
            let c = can_edge_be_a_arc(&g, e).unwrap();
            assert_eq!(c.kind, CertificateKind::OrientationFound);
            assert_eq!(c.witnesses.len(), 2);
            for w in &c.witnesses {
                assert_eq!(w.bond.len(), 5);
                assert_eq!(w.bond.edges, w.matching);
            }
            assert!(c.a_arc.is_some());
            let p =
                SearchProblem::new(g.clone(), PartialOrientation::undirected(15), Some(e)).unwrap();
            assert!(verify_certificate(&c, &p).is_valid());
        }
    }

    #[test]
    fn k4_and_k33_edges_are_not_a_arcs() {
        for g in [named::k4(), named::k33()] {
            let c = can_edge_be_a_arc(&g, 0).unwrap();
            assert_eq!(c.kind, CertificateKind::Refuted);
            let p = SearchProblem::new(g.clone(), PartialOrientation::undirected(g.m()), Some(0))
                .unwrap();
            assert!(verify_certificate(&c, &p).is_valid());
        }
        assert!(can_edge_be_a_arc(&named::k4(), 6).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = named::petersen();
        let c = can_edge_be_a_arc(&g, 3).unwrap();
        let p = SearchProblem::new(g.clone(), PartialOrientation::undirected(15), Some(3)).unwrap();
        let mut flipped = c.clone();
        let o = flipped.orientation.as_mut().unwrap();
        let e = c.witnesses[0].bond.edges[0];
        o.set(e, o.get(e).reversed());
        assert!(!verify_certificate(&flipped, &p).is_valid());
        let mut missing = c.clone();
        missing.witnesses.pop();
        assert!(!verify_certificate(&missing, &p).is_valid());
        let mut wrong_kind = c;
        wrong_kind.kind = CertificateKind::Refuted;
        assert!(!verify_certificate(&wrong_kind, &p).is_valid());
    }

    #[test]
    fn vacuous_and_incomplete() {
        // odd order: no perfect matching at all
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let p = SearchProblem::unrestricted(g).unwrap();
        let c = exists_orientation_all_pm_cut(&p).unwrap();
        assert_eq!(c.kind, CertificateKind::Vacuous);
        assert!(verify_certificate(&c, &p).is_valid());
        let p = SearchProblem::unrestricted(named::petersen())
            .unwrap()
            .with_node_limit(1);
        let c = exists_orientation_all_pm_cut(&p).unwrap();
        assert_eq!(c.kind, CertificateKind::Incomplete);
        assert!(!verify_certificate(&c, &p).is_valid());
    }

    #[test]
    fn sweeps() {
        let k3 = named::cycle(3);
        let r = sweep_all_orientations(
            &k3,
            |bits| is_acyclic(&k3, &PartialOrientation::from_bits(3, bits)),
            false,
        )
        .unwrap();
        assert_eq!((r.checked, r.passed), (8, 6));
        assert!(sweep_good_matchings(&named::k4(), false)
            .unwrap()
            .all_pass());
        let sym = sweep_good_matchings(&named::k4(), true).unwrap();
        assert!(sym.all_pass());
        assert!(sym.checked < 64);
        let big = named::complete(8);
        assert!(matches!(
            sweep_all_orientations(&big, |_| true, false),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn orbit_representatives_cover_every_orbit() {
        // orbits of K4 orientations under its 24 automorphisms: count by Burnside
        let g = named::k4();
        let actions = edge_actions(&g).unwrap();
        let fixed_total: u64 = actions
            .iter()
            .map(|a| (0..64u64).filter(|&b| act(a, b) == b).count() as u64)
            .sum();
        let orbits = fixed_total / actions.len() as u64;
        let r = sweep_all_orientations(&g, |_| true, true).unwrap();
        assert_eq!(r.checked, orbits);
    }

    #[test]
    fn good_matching_certificates_verify() {
        let g = named::petersen();
        let p = SearchProblem::unrestricted(g.clone()).unwrap();
        for bits in [0u64, 12345, 32767] {
            let o = PartialOrientation::from_bits(15, bits);
            let c = good_matching_certificate(&g, &o).unwrap().unwrap();
            assert!(verify_certificate(&c, &p).is_valid());
        }
    }
}
