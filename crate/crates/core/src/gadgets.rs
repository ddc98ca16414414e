//! Constructions on partially oriented cubic graphs: the vertex split at an
//! a-arc and the two-copy and cube-based graphs built from it, the seven-vertex
//! replacement gadget, cubic expansion, triangle contraction and the 4-cycle
//! reduction for bipartite graphs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    bipartition, contract, is_k_vertex_connected, prism_embedding, Contraction, Dir, MultiGraph,
    OrientedGraph, PartialOrientation, PlaneEmbedding,
};
use crate::search::{
    exists_orientation_all_pm_cut, is_a_arc, verify_certificate, Certificate, CertificateKind,
    SearchProblem,
};

/// An edge under construction: endpoints and the state relative to them.
type Arc = (usize, usize, Dir);

/// Normalizes to graph6 edge order; builds the embedding when orders are given.
fn assemble(
    n: usize,
    arcs: &[Arc],
    orders: Option<Vec<Vec<usize>>>,
) -> Result<(OrientedGraph, Option<PlaneEmbedding>)> {
    let g = MultiGraph::new(n, arcs.iter().map(|&(a, b, _)| (a, b)))?;
    let o = PartialOrientation::from_states(arcs.iter().map(|&(_, _, d)| d).collect());
    let og = OrientedGraph::new(g, o)?.normalized();
    let emb = match orders {
        Some(orders) => {
            let emb = PlaneEmbedding::from_neighbor_orders(&orders)?;
            if emb.graph() != &og.graph {
                return Err(Error::InvalidEmbedding(
                    "rotation lists disagree with the constructed graph".into(),
                ));
            }
            Some(emb)
        }
        None => None,
    };
    Ok((og, emb))
}

fn cubic_check(g: &MultiGraph, what: &str) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::contract(format!("{what} needs a cubic host")));
    }
    Ok(())
}

/// Cyclic order of edges at each vertex: the rotation when embedded,
/// incidence order otherwise.
fn edge_rotations(g: &MultiGraph, emb: Option<&PlaneEmbedding>) -> Result<Vec<Vec<usize>>> {
    match emb {
        Some(e) => {
            if e.graph() != g {
                return Err(Error::InvalidEmbedding(
                    "embedding belongs to a different graph".into(),
                ));
            }
            Ok((0..g.n())
                .map(|v| e.rotation(v).iter().map(|d| d / 2).collect())
                .collect())
        }
        None => Ok((0..g.n())
            .map(|v| g.incident(v).iter().map(|&(_, e)| e).collect())
            .collect()),
    }
}

/// `D'`: the tail `u` of an arc `(u, v)` replaced by three degree-1 pendants,
/// one per former edge of `u`.
#[derive(Clone, Debug)]
pub struct SplitGadget {
    /// The split graph. Edge ids and states match the host's.
    pub graph: OrientedGraph,
    pub host: OrientedGraph,
    pub arc: usize,
    pub u: usize,
    pub v: usize,
    /// `[p_v, p_1, p_2]`: the pendant on the arc, then the other two in
    /// edge-id order of their edges.
    pub pendants: [usize; 3],
    /// The non-pendant neighbor of each pendant.
    pub attached: [usize; 3],
    /// Host vertex to split-graph vertex; `u` has none.
    pub vertex_map: Vec<Option<usize>>,
    /// Pendants in the host's cyclic order around `u`, starting at `p_v`.
    pub pendant_cycle: [usize; 3],
    /// Cyclic neighbor orders of the split graph when the host was embedded.
    pub orders: Option<Vec<Vec<usize>>>,
}

impl SplitGadget {
    pub fn is_embedded(&self) -> bool {
        self.orders.is_some()
    }

    /// Split-graph vertices that are not pendants.
    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.graph.n()).filter(move |w| !self.pendants.contains(w))
    }
}

pub fn split_vertex(d: &OrientedGraph, arc: usize) -> Result<SplitGadget> {
    split_impl(d, None, arc)
}

/// Split of an embedded host; the gadget keeps rotation lists so that the
/// constructions built from it stay embedded.
pub fn split_vertex_embedded(
    d: &OrientedGraph,
    emb: &PlaneEmbedding,
    arc: usize,
) -> Result<SplitGadget> {
    if !d.graph.is_simple() {
        return Err(Error::contract("embedded splits need a simple host"));
    }
    split_impl(d, Some(emb), arc)
}

fn split_impl(d: &OrientedGraph, emb: Option<&PlaneEmbedding>, arc: usize) -> Result<SplitGadget> {
    let g = &d.graph;
    cubic_check(g, "vertex split")?;
    g.check_edge(arc)?;
    let (u, v) = d
        .arc(arc)
        .ok_or_else(|| Error::contract(format!("edge {arc} is not an arc")))?;
    for &(_, e) in g.incident(v) {
        if e != arc && d.orientation.get(e).is_directed() {
            return Err(Error::contract(format!(
                "edge {e} at the head {v} of the arc must be undirected"
            )));
        }
    }
    let n = g.n();
    let mut vertex_map = vec![None; n];
    let mut next = 0;
    for (w, slot) in vertex_map.iter_mut().enumerate() {
        if w != u {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut u_edges: Vec<usize> = g
        .incident(u)
        .iter()
        .map(|&(_, e)| e)
        .filter(|&e| e != arc)
        .collect();
    u_edges.sort_unstable();
    let u_edges = [arc, u_edges[0], u_edges[1]];
    let pendants = [n - 1, n, n + 1];
    let pendant_of = |e: usize| pendants[u_edges.iter().position(|&x| x == e).unwrap()];
    let mut edges = Vec::with_capacity(g.m());
    for (e, a, b) in g.edges() {
        let ma = if a == u {
            pendant_of(e)
        } else {
            vertex_map[a].unwrap()
        };
        let mb = if b == u {
            pendant_of(e)
        } else {
            vertex_map[b].unwrap()
        };
        edges.push((ma, mb));
    }
    let graph = OrientedGraph::new(MultiGraph::new(n + 2, edges)?, d.orientation.clone())?;
    let attached = u_edges.map(|e| vertex_map[g.other_end(e, u)].unwrap());
    let rot = edge_rotations(g, emb)?;
    let pos = rot[u].iter().position(|&e| e == arc).unwrap();
    let next_e = rot[u][(pos + 1) % 3];
    let pendant_cycle = [
        pendants[0],
        pendant_of(next_e),
        pendant_of(rot[u][(pos + 2) % 3]),
    ];
    let orders = emb.map(|_| {
        let mut orders = vec![Vec::new(); n + 2];
        for w in 0..n {
            if w == u {
                continue;
            }
            orders[vertex_map[w].unwrap()] = rot[w]
                .iter()
                .map(|&e| {
                    let x = g.other_end(e, w);
                    if x == u {
                        pendant_of(e)
                    } else {
                        vertex_map[x].unwrap()
                    }
                })
                .collect();
        }
        for i in 0..3 {
            orders[pendants[i]] = vec![attached[i]];
        }
        orders
    });
    Ok(SplitGadget {
        graph,
        host: d.clone(),
        arc,
        u,
        v,
        pendants,
        attached,
        vertex_map,
        pendant_cycle,
        orders,
    })
}

/// A 2-regular simple graph on the six pendant slots of the two copies:
/// slots 0..3 are `p_v, p_1, p_2` of the first copy, 3..6 of the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatWiring {
    pub edges: Vec<(usize, usize)>,
}

impl HatWiring {
    fn check(&self) -> Result<()> {
        let mut deg = [0; 6];
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &self.edges {
            if a >= 6 || b >= 6 || a == b {
                return Err(Error::contract(format!(
                    "wiring edge ({a}, {b}) is not a slot pair"
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::contract(format!(
                    "wiring repeats the pair ({a}, {b})"
                )));
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 2) {
            return Err(Error::contract(
                "every pendant slot needs exactly two wiring edges",
            ));
        }
        Ok(())
    }
}

/// All 70 simple 2-regular graphs on six slots (sixty 6-cycles and ten
/// triangle pairs), in lexicographic order of their sorted edge lists.
pub fn hat_wiring_patterns() -> Vec<HatWiring> {
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() != 6 {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let w = HatWiring { edges };
        if w.check().is_ok() {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// Two copies of a split gadget joined by a wiring.
#[derive(Clone, Debug)]
pub struct HatGraph {
    pub graph: OrientedGraph,
    pub wiring: HatWiring,
    /// Split-graph vertex to hat vertex, for each copy.
    pub copies: [Vec<usize>; 2],
    /// Edge ids of the wiring edges, in wiring order.
    pub wiring_edges: Vec<usize>,
}

/// Builds the hat graph: copy one is the split gadget, copy two its reverse,
/// joined along `wiring` with the given states (relative to each wiring
/// pair's slot order).
pub fn hat_construction(sg: &SplitGadget, wiring: &HatWiring, states: &[Dir]) -> Result<HatGraph> {
    wiring.check()?;
    if states.len() != wiring.edges.len() {
        return Err(Error::contract("one state per wiring edge is required"));
    }
    let g = &sg.graph.graph;
    let n = g.n();
    let copies = [(0..n).collect::<Vec<_>>(), (n..2 * n).collect::<Vec<_>>()];
    let mut arcs: Vec<Arc> = Vec::with_capacity(2 * g.m() + 6);
    for (c, rev) in [(0, false), (1, true)] {
        for (e, a, b) in g.edges() {
            let d = sg.graph.orientation.get(e);
            arcs.push((
                copies[c][a],
                copies[c][b],
                if rev { d.reversed() } else { d },
            ));
        }
    }
    let slot = |s: usize| copies[s / 3][sg.pendants[s % 3]];
    let mut wiring_edges = Vec::new();
    for (&(a, b), &d) in wiring.edges.iter().zip(states) {
        wiring_edges.push(arcs.len());
        arcs.push((slot(a), slot(b), d));
    }
    let graph = MultiGraph::new(2 * n, arcs.iter().map(|&(a, b, _)| (a, b)))?;
    if !graph.is_simple() {
        return Err(Error::contract("wiring creates parallel edges"));
    }
    let orientation = PartialOrientation::from_states(arcs.iter().map(|a| a.2).collect());
    Ok(HatGraph {
        graph: OrientedGraph::new(graph, orientation)?,
        wiring: wiring.clone(),
        copies,
        wiring_edges,
    })
}

/// A verified hat graph and its certificate.
#[derive(Clone, Debug)]
pub struct HatReconstruction {
    /// The hat graph carrying the orientation the search produced.
    pub hat: HatGraph,
    pub certificate: Certificate,
    pub pattern_index: usize,
    pub patterns_tried: usize,
}

/// Tries every wiring pattern in order; for the 3-connected ones, searches an
/// orientation of the remaining free edges under which every perfect
/// matching contains a directed bond. Returns the first pattern whose
/// certificate verifies.
pub fn reconstruct_hat_wiring(sg: &SplitGadget) -> Result<Option<HatReconstruction>> {
    if !is_a_arc(&sg.host, sg.arc)? {
        return Err(Error::contract(format!(
            "edge {} is not an a-arc of the host orientation",
            sg.arc
        )));
    }
    let patterns = hat_wiring_patterns();
    let attempts: Vec<Result<Option<(HatGraph, Certificate)>>> = patterns
        .par_iter()
        .map(|w| {
            let hat = hat_construction(sg, w, &[Dir::Undirected; 6])?;
            if !is_k_vertex_connected(&hat.graph.graph, 3) {
                return Ok(None);
            }
            let p =
                SearchProblem::new(hat.graph.graph.clone(), hat.graph.orientation.clone(), None)?;
            let c = exists_orientation_all_pm_cut(&p)?;
            if c.kind != CertificateKind::OrientationFound || !verify_certificate(&c, &p).is_valid()
            {
                return Ok(None);
            }
            Ok(Some((hat, c)))
        })
        .collect();
    for (i, a) in attempts.into_iter().enumerate() {
        if let Some((mut hat, c)) = a? {
            hat.graph.orientation = c.orientation.clone().expect("found certificates carry one");
            return Ok(Some(HatReconstruction {
                hat,
                certificate: c,
                pattern_index: i,
                patterns_tried: patterns.len(),
            }));
        }
    }
    Ok(None)
}

/// The cube-based construction: three split gadgets glued around a cube vertex.
#[derive(Clone, Debug)]
pub struct TildeGraph {
    pub graph: OrientedGraph,
    pub embedding: Option<PlaneEmbedding>,
    /// The cube vertex all three arc pendants are identified with.
    pub y: usize,
    /// Split-graph vertex to result vertex, per copy (pendants map to the
    /// cube vertex they are identified with).
    pub copies: Vec<Vec<usize>>,
}

/// Replaces the three cube neighbors of `y` by copies of the split gadget:
/// each copy's arc pendant becomes `y`, its other two pendants become the
/// replaced vertex's other two cube neighbors. Embedded gadgets give an
/// embedded result.
pub fn tilde_construction(sg: &SplitGadget) -> Result<TildeGraph> {
    let q = prism_embedding(4);
    let qg = q.graph();
    let y = 0;
    let replaced: Vec<usize> = {
        let mut r: Vec<usize> = qg.neighbors(y).collect();
        r.sort_unstable();
        r
    };
    let kept: Vec<usize> = (0..qg.n()).filter(|v| !replaced.contains(v)).collect();
    let mut id = vec![usize::MAX; qg.n()];
    for (i, &v) in kept.iter().enumerate() {
        id[v] = i;
    }
    let inner: Vec<usize> = sg.internal_vertices().collect();
    let per_copy = inner.len();
    let total = kept.len() + 3 * per_copy;
    let g = &sg.graph.graph;
    let mut copies = Vec::new();
    // for each replaced x: which kept cube vertex each pendant becomes
    for (c, &x) in replaced.iter().enumerate() {
        let mut map = vec![usize::MAX; g.n()];
        for (i, &w) in inner.iter().enumerate() {
            map[w] = kept.len() + c * per_copy + i;
        }
        let rot = q.neighbor_order(x);
        let at = rot.iter().position(|&w| w == y).unwrap();
        let (s, t) = (rot[(at + 1) % 3], rot[(at + 2) % 3]);
        // the cyclic order flips when a gadget is turned inside out
        let [pv, q1, q2] = sg.pendant_cycle;
        map[pv] = id[y];
        map[q2] = id[s];
        map[q1] = id[t];
        copies.push(map);
    }
    let mut arcs: Vec<Arc> = Vec::new();
    for map in &copies {
        for (e, a, b) in g.edges() {
            arcs.push((map[a], map[b], sg.graph.orientation.get(e)));
        }
    }
    for (_, a, b) in qg.edges() {
        if id[a] != usize::MAX && id[b] != usize::MAX {
            arcs.push((id[a], id[b], Dir::Undirected));
        }
    }
    let orders = sg.orders.as_ref().map(|sg_orders| {
        let mut orders = vec![Vec::new(); total];
        for map in &copies {
            for &w in &inner {
                orders[map[w]] = sg_orders[w].iter().map(|&z| map[z]).collect();
            }
        }
        for &z in &kept {
            orders[id[z]] = q
                .neighbor_order(z)
                .iter()
                .map(|&w| match replaced.iter().position(|&x| x == w) {
                    None => id[w],
                    Some(c) => {
                        // the copy vertex attached to the pendant identified with z
                        let p = (0..3)
                            .find(|&i| copies[c][sg.pendants[i]] == id[z])
                            .unwrap();
                        copies[c][sg.attached[p]]
                    }
                })
                .collect();
        }
        orders
    });
    let (graph, embedding) = assemble(total, &arcs, orders)?;
    Ok(TildeGraph {
        graph,
        embedding,
        y: id[y],
        copies,
    })
}

/// The seven-vertex replacement `R_v` on `v1..v7` (indices 0..7).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RvGadget {
    pub arcs: [(usize, usize); 9],
    /// Attachment of the single out-going suspension arc.
    pub out_attach: usize,
    /// Attachments of the two in-coming suspension arcs.
    pub in_attach: [usize; 2],
}

impl RvGadget {
    /// The gadget for a vertex with one out-arc and two in-arcs.
    pub fn standard() -> Self {
        RvGadget {
            arcs: [
                (6, 5),
                (6, 1),
                (6, 3),
                (3, 4),
                (5, 4),
                (0, 5),
                (0, 1),
                (1, 2),
                (3, 2),
            ],
            out_attach: 0,
            in_attach: [2, 4],
        }
    }

    /// The arc-reversed gadget, used at vertices with two out-arcs.
    pub fn reversed() -> Self {
        let mut r = RvGadget::standard();
        for a in r.arcs.iter_mut() {
            *a = (a.1, a.0);
        }
        r
    }

    /// Cyclic neighbor orders of a plane drawing (hexagon `v1..v6` around
    /// `v7`); `None` marks the suspension arc. Around the hexagon the
    /// attachments appear in the cyclic order `v1, v5, v3`.
    fn rotation() -> [[Option<usize>; 3]; 7] {
        [
            [Some(5), Some(1), None],
            [Some(0), Some(6), Some(2)],
            [Some(1), Some(3), None],
            [Some(2), Some(6), Some(4)],
            [Some(3), Some(5), None],
            [Some(4), Some(6), Some(0)],
            [Some(1), Some(5), Some(3)],
        ]
    }
}

/// Where one original vertex went in `D⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSite {
    pub original: usize,
    pub vertices: [usize; 7],
    pub reversed: bool,
    /// Edge ids (in the result) of the three suspension arcs.
    pub suspension: [usize; 3],
}

#[derive(Clone, Debug)]
pub struct DPlus {
    pub graph: OrientedGraph,
    pub embedding: Option<PlaneEmbedding>,
    pub gadgets: Vec<GadgetSite>,
}

/// Replaces every vertex of out-degree 1 or 2 by the gadget `R_v` (reversed
/// for out-degree 2). Original vertex `v` keeps its id as `v1` of its gadget.
pub fn dplus(d: &OrientedGraph, emb: Option<&PlaneEmbedding>) -> Result<DPlus> {
    let g = &d.graph;
    cubic_check(g, "the gadget replacement")?;
    if !d.orientation.is_full() {
        return Err(Error::contract(
            "the gadget replacement needs a full orientation",
        ));
    }
    if emb.is_some() && !g.is_simple() {
        return Err(Error::contract("embedded replacement needs a simple graph"));
    }
    let rot = edge_rotations(g, emb)?;
    let n = g.n();
    let mut sites: Vec<Option<([usize; 7], bool)>> = vec![None; n];
    let mut next = n;
    for v in 0..n {
        let out = d.out_degree(v);
        if out == 1 || out == 2 {
            let mut vs = [v; 7];
            for slot in vs.iter_mut().skip(1) {
                *slot = next;
                next += 1;
            }
            sites[v] = Some((vs, out == 2));
        }
    }
    // attachment vertex of edge e at its endpoint v
    let attach = |v: usize, e: usize| -> (usize, Option<usize>) {
        let Some((vs, reversed)) = sites[v] else {
            return (v, None);
        };
        let special = rot[v]
            .iter()
            .position(|&f| {
                let outgoing = d.arc(f).unwrap().0 == v;
                outgoing != reversed
            })
            .unwrap();
        let at = rot[v].iter().position(|&f| f == e).unwrap();
        let slot = match (at + 3 - special) % 3 {
            0 => 0,
            1 => 4,
            _ => 2,
        };
        (vs[slot], Some(slot))
    };
    let mut arcs: Vec<Arc> = Vec::new();
    for (e, a, b) in g.edges() {
        arcs.push((attach(a, e).0, attach(b, e).0, d.orientation.get(e)));
    }
    for site in sites.iter().flatten() {
        let (vs, reversed) = *site;
        let gadget = if reversed {
            RvGadget::reversed()
        } else {
            RvGadget::standard()
        };
        for (a, b) in gadget.arcs {
            arcs.push((vs[a], vs[b], Dir::Forward));
        }
    }
    let orders = emb.map(|_| {
        let mut orders = vec![Vec::new(); next];
        for v in 0..n {
            match sites[v] {
                None => {
                    orders[v] = rot[v]
                        .iter()
                        .map(|&e| attach(g.other_end(e, v), e).0)
                        .collect()
                }
                Some((vs, _)) => {
                    let mut external = [0; 7];
                    for &e in &rot[v] {
                        let (_, slot) = attach(v, e);
                        let w = g.other_end(e, v);
                        external[slot.unwrap()] = attach(w, e).0;
                    }
                    for (i, row) in RvGadget::rotation().iter().enumerate() {
                        orders[vs[i]] = row
                            .iter()
                            .map(|x| match x {
                                Some(j) => vs[*j],
                                None => external[i],
                            })
                            .collect();
                    }
                }
            }
        }
        orders
    });
    let (graph, embedding) = assemble(next, &arcs, orders)?;
    let mut gadgets = Vec::new();
    for (v, site) in sites.iter().enumerate() {
        if let Some((vs, reversed)) = *site {
            let mut suspension = [0; 3];
            for (k, &e) in rot[v].iter().enumerate() {
                let w = g.other_end(e, v);
                let (here, _) = attach(v, e);
                let (there, _) = attach(w, e);
                suspension[k] = graph
                    .graph
                    .edges_between(here, there)
                    .next()
                    .expect("suspension arc exists");
            }
            gadgets.push(GadgetSite {
                original: v,
                vertices: vs,
                reversed,
                suspension,
            });
        }
    }
    Ok(DPlus {
        graph,
        embedding,
        gadgets,
    })
}

/// Number of vertices with out-degree 1 or 2 under a full orientation.
pub fn internal_vertex_count(d: &OrientedGraph) -> usize {
    (0..d.graph.n())
        .filter(|&v| {
            let out = d.out_degree(v);
            out == 1 || out == 2
        })
        .count()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Open,
    Source,
    Sink,
    Mixed,
}

struct Extremal<'a> {
    g: &'a MultiGraph,
    order: Vec<usize>,
    /// Fixed out-arcs and in-arcs per vertex.
    fixed_out: Vec<bool>,
    fixed_in: Vec<bool>,
    role: Vec<Role>,
    mixed: usize,
    best: usize,
    best_role: Vec<Role>,
}

impl Extremal<'_> {
    fn allowed(&self, v: usize, r: Role) -> bool {
        match r {
            Role::Source if self.fixed_in[v] => false,
            Role::Sink if self.fixed_out[v] => false,
            Role::Source | Role::Sink => self.g.neighbors(v).all(|w| self.role[w] != r),
            _ => true,
        }
    }

    fn run(&mut self, i: usize) {
        if self.mixed >= self.best {
            return;
        }
        if i == self.order.len() {
            self.best = self.mixed;
            self.best_role = self.role.clone();
            return;
        }
        let v = self.order[i];
        for r in [Role::Source, Role::Sink] {
            if self.allowed(v, r) {
                self.role[v] = r;
                self.run(i + 1);
            }
        }
        self.role[v] = Role::Mixed;
        self.mixed += 1;
        self.run(i + 1);
        self.mixed -= 1;
        self.role[v] = Role::Open;
    }
}

/// Completes the orientation so that as few vertices as possible have
/// out-degree 1 or 2. Every vertex is labeled source, sink or mixed with no
/// two adjacent sources or sinks; the labeling with fewest mixed vertices is
/// found by branch and bound and then realized. Returns the completion and
/// the count achieved.
pub fn orient_extremal_sinks_sources(d: &OrientedGraph) -> Result<(OrientedGraph, usize)> {
    let g = &d.graph;
    cubic_check(g, "sink/source completion")?;
    let n = g.n();
    let mut fixed_out = vec![false; n];
    let mut fixed_in = vec![false; n];
    for e in 0..g.m() {
        if let Some((t, h)) = d.arc(e) {
            fixed_out[t] = true;
            fixed_in[h] = true;
        }
    }
    // BFS order keeps labeled vertices clustered, which sharpens the pruning
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut x = Extremal {
        g,
        order,
        fixed_out,
        fixed_in,
        role: vec![Role::Open; n],
        mixed: 0,
        best: n + 1,
        best_role: Vec::new(),
    };
    x.run(0);
    let role = x.best_role;
    let mut states = d.orientation.states().to_vec();
    for (e, a, b) in g.edges() {
        if states[e].is_directed() {
            continue;
        }
        states[e] = match (role[a], role[b]) {
            (Role::Source, _) | (_, Role::Sink) => Dir::Forward,
            (_, Role::Source) | (Role::Sink, _) => Dir::Backward,
            _ => Dir::Forward,
        };
    }
    let out = OrientedGraph::new(g.clone(), PartialOrientation::from_states(states))?;
    let count = internal_vertex_count(&out);
    Ok((out, count))
}

/// Result of [`cubic_expansion`].
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: OrientedGraph,
    pub embedding: Option<PlaneEmbedding>,
    /// Result vertices of the cycle replacing each original vertex.
    pub cycles: Vec<Vec<usize>>,
    /// Result edge id of each original edge.
    pub edge_map: Vec<usize>,
}

/// Replaces every vertex of degree `d >= 3` by an undirected cycle of length
/// `d`, one original edge per cycle vertex (in rotation order when embedded).
pub fn cubic_expansion(d: &OrientedGraph, emb: Option<&PlaneEmbedding>) -> Result<Expansion> {
    let g = &d.graph;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 3) {
        return Err(Error::contract(format!(
            "vertex {v} has degree {} < 3",
            g.degree(v)
        )));
    }
    let rot = edge_rotations(g, emb)?;
    let mut cycles = Vec::with_capacity(g.n());
    let mut next = 0;
    for v in 0..g.n() {
        cycles.push((next..next + rot[v].len()).collect::<Vec<_>>());
        next += rot[v].len();
    }
    let end = |v: usize, e: usize| cycles[v][rot[v].iter().position(|&f| f == e).unwrap()];
    // with parallel edges the same edge id appears once per endpoint
    let mut arcs: Vec<Arc> = Vec::new();
    for (e, a, b) in g.edges() {
        arcs.push((end(a, e), end(b, e), d.orientation.get(e)));
    }
    for c in &cycles {
        for i in 0..c.len() {
            arcs.push((c[i], c[(i + 1) % c.len()], Dir::Undirected));
        }
    }
    let orders = emb.map(|_| {
        let mut orders = vec![Vec::new(); next];
        for v in 0..g.n() {
            let c = &cycles[v];
            let k = c.len();
            for (i, &e) in rot[v].iter().enumerate() {
                let w = g.other_end(e, v);
                orders[c[i]] = vec![c[(i + k - 1) % k], end(w, e), c[(i + 1) % k]];
            }
        }
        orders
    });
    let graph = MultiGraph::new(next, arcs.iter().map(|&(a, b, _)| (a, b)))?;
    let o = PartialOrientation::from_states(arcs.iter().map(|a| a.2).collect());
    let raw = OrientedGraph::new(graph, o)?;
    let (_, new_id) = raw.graph.normalized();
    let (graph, embedding) = assemble(next, &arcs, orders)?;
    Ok(Expansion {
        graph,
        embedding,
        cycles,
        edge_map: (0..g.m()).map(|e| new_id[e]).collect(),
    })
}

/// Contracts the triangle on the three given vertices of a cubic graph.
pub fn contract_triangle(
    d: &OrientedGraph,
    tri: [usize; 3],
) -> Result<(OrientedGraph, Contraction)> {
    let g = &d.graph;
    cubic_check(g, "triangle contraction")?;
    for &v in &tri {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    let mut ids = Vec::new();
    for i in 0..3 {
        let (a, b) = (tri[i], tri[(i + 1) % 3]);
        let found: Vec<usize> = g.edges_between(a, b).collect();
        if a == b || found.is_empty() {
            return Err(Error::contract(format!("{tri:?} is not a triangle")));
        }
        ids.extend(found);
    }
    let c = contract(g, &ids)?;
    let o = c.carry(&d.orientation);
    Ok((OrientedGraph::new(c.graph.clone(), o)?, c))
}

/// Which of the two 4-cycle reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum C4Side {
    /// Deletes `w, x`; adds `x'v` and `w'u`.
    Uv,
    /// Deletes `x, u`; adds `u'w` and `x'v`.
    Vw,
}

/// The two reductions of a bipartite cubic graph along a 4-cycle.
#[derive(Clone, Debug)]
pub struct C4Reduction {
    pub host: MultiGraph,
    pub cycle: [usize; 4],
    /// Outside neighbors `u', v', w', x'`.
    pub outside: [usize; 4],
    pub g_uv: MultiGraph,
    pub g_vw: MultiGraph,
    /// Host vertex to reduced vertex (deleted vertices map to `None`).
    pub map_uv: Vec<Option<usize>>,
    pub map_vw: Vec<Option<usize>>,
}

fn reduce_once(
    g: &MultiGraph,
    delete: [usize; 2],
    add: [(usize, usize); 2],
) -> Result<(MultiGraph, Vec<Option<usize>>)> {
    let mut map = vec![None; g.n()];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if !delete.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(_, a, b)| map[a].is_some() && map[b].is_some())
        .map(|(_, a, b)| (map[a].unwrap(), map[b].unwrap()))
        .collect();
    for (a, b) in add {
        edges.push((map[a].unwrap(), map[b].unwrap()));
    }
    Ok((MultiGraph::new(next, edges)?, map))
}

/// Builds `G_{u,v}` and `G_{v,w}` for the 4-cycle `(u, v, w, x)`.
pub fn c4_reduction(g: &MultiGraph, cycle: [usize; 4]) -> Result<C4Reduction> {
    cubic_check(g, "4-cycle reduction")?;
    if !g.is_simple() || bipartition(g).is_none() {
        return Err(Error::contract(
            "4-cycle reduction needs a simple bipartite graph",
        ));
    }
    for &v in &cycle {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    for i in 0..4 {
        if !g.has_edge(cycle[i], cycle[(i + 1) % 4]) {
            return Err(Error::contract(format!("{cycle:?} is not a 4-cycle")));
        }
    }
    let [u, v, w, x] = cycle;
    let mut outside = [0; 4];
    for i in 0..4 {
        let c = cycle[i];
        let out: Vec<usize> = g
            .neighbors(c)
            .filter(|z| *z != cycle[(i + 1) % 4] && *z != cycle[(i + 3) % 4])
            .collect();
        if out.len() != 1 || cycle.contains(&out[0]) {
            return Err(Error::contract(format!(
                "{cycle:?} is not an induced 4-cycle"
            )));
        }
        outside[i] = out[0];
    }
    let [up, vp, wp, xp] = outside;
    if up == wp {
        return Err(Error::contract(format!(
            "u and w share the outside neighbor {up}; the reduction would double an edge"
        )));
    }
    if vp == xp {
        return Err(Error::contract(format!(
            "v and x share the outside neighbor {vp}; the reduction would double an edge"
        )));
    }
    let (g_uv, map_uv) = reduce_once(g, [w, x], [(xp, v), (wp, u)])?;
    let (g_vw, map_vw) = reduce_once(g, [x, u], [(up, w), (xp, v)])?;
    Ok(C4Reduction {
        host: g.clone(),
        cycle,
        outside,
        g_uv,
        g_vw,
        map_uv,
        map_vw,
    })
}

impl C4Reduction {
    pub fn reduced(&self, side: C4Side) -> &MultiGraph {
        match side {
            C4Side::Uv => &self.g_uv,
            C4Side::Vw => &self.g_vw,
        }
    }

    /// Pulls a Hamiltonian cycle of a reduced graph back to the host: the
    /// cycle's edges away from the 4-cycle are kept and every choice of the
    /// eight host edges at the 4-cycle is tried.
    pub fn lift_hamiltonian(&self, side: C4Side, cycle: &[usize]) -> Option<Vec<usize>> {
        let map = match side {
            C4Side::Uv => &self.map_uv,
            C4Side::Vw => &self.map_vw,
        };
        let mut back = vec![0; self.reduced(side).n()];
        for (h, m) in map.iter().enumerate() {
            if let Some(r) = m {
                back[*r] = h;
            }
        }
        let local: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| {
                [
                    (self.cycle[i], self.cycle[(i + 1) % 4]),
                    (self.cycle[i], self.outside[i]),
                ]
            })
            .collect();
        let touches = |a: usize, b: usize| self.cycle.contains(&a) || self.cycle.contains(&b);
        let kept: Vec<(usize, usize)> = (0..cycle.len())
            .map(|i| (back[cycle[i]], back[cycle[(i + 1) % cycle.len()]]))
            .filter(|&(a, b)| !touches(a, b))
            .collect();
        let g = &self.host;
        for mask in 0u32..1 << local.len() {
            if (kept.len() + mask.count_ones() as usize) != g.n() {
                continue;
            }
            let mut edges = kept.clone();
            edges.extend(
                (0..local.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| local[i]),
            );
            if let Some(c) = cycle_from_pairs(g.n(), &edges) {
                return Some(c);
            }
        }
        None
    }
}

/// Vertex order of a Hamiltonian cycle given as an edge list, if it is one.
fn cycle_from_pairs(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|l| l.len() != 2) {
        return None;
    }
    let mut order = vec![0];
    let (mut prev, mut cur) = (0, adj[0][0]);
    while cur != 0 {
        order.push(cur);
        let nxt = if adj[cur][0] == prev {
            adj[cur][1]
        } else {
            adj[cur][0]
        };
        prev = cur;
        cur = nxt;
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n).then_some(order)
}
