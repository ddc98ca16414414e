//! Directed duality of plane graphs, and the two-acyclic-sets partition
//! problem together with its dual even-subgraph formulation.
//!
//! The face on the left of a dart `d` is the face traced from `d`, i.e. the
//! walk `d, succ(rev d), ...`. The dual arc of a primal arc points from its
//! left face to its right face. Dual edge `e` is stored as
//! `(face(2e), face(2e + 1))`, so an arc and its dual share the same
//! [`Dir`] state and the same edge id.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{
    bonds, contract, digirth, is_acyclic, is_cut, is_even_subgraph, is_k_edge_connected,
    is_strongly_connected, Dir, MultiGraph, PartialOrientation, PlaneEmbedding,
};
use crate::matchings::{even_subgraph_with_strong_contraction, EvenSearchMode, EvenSearchOutcome};

/// Face boundary walks (as dart sequences) of a connected plane graph.
pub fn faces(e: &PlaneEmbedding) -> Result<Vec<Vec<usize>>> {
    if !e.is_connected() {
        return Err(Error::contract("faces are traced on connected hosts only"));
    }
    let walks = e.face_walks();
    let g = e.graph();
    if g.n() as i64 - g.m() as i64 + walks.len() as i64 != 2 {
        return Err(Error::InvalidEmbedding(format!(
            "{} vertices, {} edges and {} faces violate Euler's formula",
            g.n(),
            g.m(),
            walks.len()
        )));
    }
    Ok(walks)
}

/// A plane digraph and its directed dual. Edge ids coincide: dual edge `e`
/// crosses primal edge `e`.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub primal: PlaneEmbedding,
    pub primal_orientation: PartialOrientation,
    pub dual: PlaneEmbedding,
    pub dual_orientation: PartialOrientation,
    /// Dual edge id of each primal edge; the identity unless tampered with.
    pub edge_map: Vec<usize>,
    /// Face (dual vertex) of every primal dart.
    pub face_of_dart: Vec<usize>,
}

pub fn directed_dual(p: &PlaneEmbedding, o: &PartialOrientation) -> Result<DualPair> {
    let g = p.graph();
    o.check_host(g)?;
    let walks = faces(p)?;
    let (face_of_dart, count) = p.face_of_darts();
    let mut edges = Vec::with_capacity(g.m());
    for e in 0..g.m() {
        let (a, b) = (face_of_dart[2 * e], face_of_dart[2 * e + 1]);
        if a == b {
            return Err(Error::contract(format!(
                "edge {e} is a bridge; its dual would be a loop"
            )));
        }
        edges.push((a, b));
    }
    let dual_graph = MultiGraph::new(count, edges)?;
    // dual dart 2e sits at face(2e), which is exactly where the walk lists it
    let dual = PlaneEmbedding::new(dual_graph, walks)?;
    Ok(DualPair {
        primal: p.clone(),
        primal_orientation: o.clone(),
        dual,
        dual_orientation: o.clone(),
        edge_map: (0..g.m()).collect(),
        face_of_dart,
    })
}

/// Outcome of checking the four duality clauses on one instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    /// Each entry names a violated clause and the offending data.
    pub violations: Vec<String>,
    pub cut_sets_checked: usize,
    pub deletions_checked: usize,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive over all edge subsets up to this many edges; sampled beyond.
const EXHAUSTIVE_SUBSETS: usize = 16;
const SAMPLED_SUBSETS: usize = 4096;

fn mapped(dp: &DualPair, ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|&e| dp.edge_map[e]).collect()
}

fn subsets(m: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    if m <= EXHAUSTIVE_SUBSETS {
        (0u32..1 << m)
            .map(|mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect())
            .collect()
    } else {
        (0..SAMPLED_SUBSETS)
            .map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).collect())
            .collect()
    }
}

/// Checks on one instance:
/// 1. a fully oriented primal is strongly connected iff its dual is acyclic;
/// 2. the primal is simple iff the dual is 3-edge-connected;
/// 3. an edge set is a cut of the primal iff its dual image is even (every
///    bond, then all or sampled subsets);
/// 4. deleting a set in the primal and dualizing equals contracting its
///    image in the dual (sampled sets that leave the primal bridgeless).
pub fn duality_properties_check(dp: &DualPair, rng: &mut impl Rng) -> Result<DualityReport> {
    let mut r = DualityReport::default();
    let g = dp.primal.graph();
    let d = dp.dual.graph();
    let m = g.m();
    if dp.primal_orientation.is_full() && dp.dual_orientation.is_full() {
        let strong = is_strongly_connected(g, &dp.primal_orientation)?;
        let acyclic = is_acyclic(d, &dp.dual_orientation);
        if strong != acyclic {
            r.violations.push(format!(
                "clause 1: primal strongly connected = {strong}, dual acyclic = {acyclic}"
            ));
        }
    }
    let simple = g.is_simple();
    let three = is_k_edge_connected(d, 3);
    if simple != three {
        r.violations.push(format!(
            "clause 2: primal simple = {simple}, dual 3-edge-connected = {three}"
        ));
    }
    let mut sets: Vec<Vec<usize>> = bonds(g)?.into_iter().map(|b| b.edges).collect();
    sets.extend(subsets(m, rng));
    for ids in &sets {
        let cut = is_cut(g, ids)?;
        let even = is_even_subgraph(d, &mapped(dp, ids))?;
        r.cut_sets_checked += 1;
        if cut != even {
            r.violations.push(format!(
                "clause 3: {ids:?} is a cut = {cut}, dual image even = {even}"
            ));
            break;
        }
    }
    for ids in subsets(m, rng).into_iter().take(SAMPLED_SUBSETS) {
        if let Some(v) = deletion_contraction(dp, &ids)? {
            r.violations.push(v);
            break;
        }
        r.deletions_checked += 1;
    }
    Ok(r)
}

/// Clause 4 on one set. Returns `Ok(None)` when it holds or the set is not
/// admissible (the deletion would disconnect or leave a bridge).
fn deletion_contraction(dp: &DualPair, ids: &[usize]) -> Result<Option<String>> {
    let g = dp.primal.graph();
    let mut remove = vec![false; g.m()];
    for &e in ids {
        remove[e] = true;
    }
    let (deleted, new_id) = dp.primal.delete_edges(&remove)?;
    if !deleted.is_connected() || deleted.graph().m() == 0 {
        return Ok(None);
    }
    let kept_o = PartialOrientation::from_states(
        (0..g.m())
            .filter(|&e| !remove[e])
            .map(|e| dp.primal_orientation.get(e))
            .collect(),
    );
    let left = match directed_dual(&deleted, &kept_o) {
        Ok(x) => x,
        Err(Error::Contract(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let c = contract(dp.dual.graph(), &mapped(dp, ids))?;
    let right_o = c.carry(&dp.dual_orientation);
    // align vertices through the surviving edges
    let lg = left.dual.graph();
    let mut fwd = vec![usize::MAX; lg.n()];
    let mut back = vec![usize::MAX; c.graph.n()];
    let mut bind = |a: usize, b: usize| -> bool {
        if fwd[a] == usize::MAX && back[b] == usize::MAX {
            fwd[a] = b;
            back[b] = a;
        }
        fwd[a] == b && back[b] == a
    };
    for e in 0..g.m() {
        let Some(le) = new_id[e] else { continue };
        let Some(re) = c.edge_map[dp.edge_map[e]] else {
            return Ok(Some(format!(
                "clause 4: edge {e} survives deletion but not contraction"
            )));
        };
        let (la, lb) = lg.endpoints(le);
        let (ra, rb) = c.graph.endpoints(re);
        let same_dir = left.dual_orientation.get(le) == right_o.get(re);
        if !(bind(la, ra) && bind(lb, rb) && same_dir) {
            return Ok(Some(format!(
                "clause 4: deleting {ids:?} then dualizing differs from contracting at edge {e}"
            )));
        }
    }
    if lg.n() != c.graph.n() || lg.m() != c.graph.m() {
        return Ok(Some(format!(
            "clause 4: size mismatch after deleting {ids:?}"
        )));
    }
    Ok(None)
}

/// Exhaustive partition bound (vertex count).
pub const NL_BOUND: usize = 30;

fn check_oriented(g: &MultiGraph, o: &PartialOrientation) -> Result<()> {
    o.check_host(g)?;
    if !o.is_full() {
        return Err(Error::contract("a full orientation is required"));
    }
    if digirth(g, o).is_some_and(|k| k < 3) {
        return Err(Error::contract("digirth below 3: not an oriented graph"));
    }
    if g.n() > NL_BOUND {
        return Err(Error::BoundExceeded {
            what: format!("{} vertices", g.n()),
            limit: NL_BOUND,
            hint: "the partition search is exhaustive".into(),
        });
    }
    Ok(())
}

/// A directed cycle inside one class, as a vertex list.
fn mono_cycle(out: &[Vec<usize>], side: &[bool]) -> Option<Vec<usize>> {
    let n = out.len();
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = out[v].get(*i) {
                *i += 1;
                if side[w] != side[v] {
                    continue;
                }
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cyc = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cyc.push(x);
                        }
                        cyc.reverse();
                        return Some(cyc);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn nl_branch(out: &[Vec<usize>], side: &mut [bool], frozen: &mut [bool]) -> bool {
    let Some(cycle) = mono_cycle(out, side) else {
        return true;
    };
    let mut newly = Vec::new();
    let mut found = false;
    for &x in &cycle {
        if frozen[x] {
            continue;
        }
        side[x] = !side[x];
        frozen[x] = true;
        if nl_branch(out, side, frozen) {
            found = true;
            break;
        }
        side[x] = !side[x];
        // later branches keep x where it is
        newly.push(x);
    }
    if !found {
        for x in newly {
            frozen[x] = false;
        }
    }
    found
}

/// Splits the vertices into two sets inducing acyclic subdigraphs, or
/// reports that none exists. Branches on which vertex of a monochromatic
/// directed cycle changes sides; every vertex is fixed at most once per path.
pub fn neumann_lara_partition(
    g: &MultiGraph,
    o: &PartialOrientation,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    check_oriented(g, o)?;
    let out = o.out_adjacency(g);
    let mut side = vec![false; g.n()];
    let mut frozen = vec![false; g.n()];
    if !nl_branch(&out, &mut side, &mut frozen) {
        return Ok(None);
    }
    let x = (0..g.n()).filter(|&v| !side[v]).collect();
    let y = (0..g.n()).filter(|&v| side[v]).collect();
    Ok(Some((x, y)))
}

/// The same question phrased on edges: a cut whose removal leaves the
/// digraph acyclic.
pub fn cut_complement_acyclic(
    g: &MultiGraph,
    o: &PartialOrientation,
) -> Result<Option<Vec<usize>>> {
    let Some((x, _)) = neumann_lara_partition(g, o)? else {
        return Ok(None);
    };
    let mut in_x = vec![false; g.n()];
    for v in x {
        in_x[v] = true;
    }
    Ok(Some(
        g.edges()
            .filter(|&(_, a, b)| in_x[a] != in_x[b])
            .map(|(e, _, _)| e)
            .collect(),
    ))
}

/// True when deleting `ids` leaves an acyclic digraph.
pub fn acyclic_after_deleting(
    g: &MultiGraph,
    o: &PartialOrientation,
    ids: &[usize],
) -> Result<bool> {
    let mask = g.edge_mask(ids)?;
    let mut states = o.states().to_vec();
    for (e, s) in states.iter_mut().enumerate() {
        if mask[e] {
            *s = Dir::Undirected;
        }
    }
    Ok(is_acyclic(g, &PartialOrientation::from_states(states)))
}

/// True when contracting `ids` leaves a strongly connected digraph.
pub fn strong_after_contracting(
    g: &MultiGraph,
    o: &PartialOrientation,
    ids: &[usize],
) -> Result<bool> {
    let c = contract(g, ids)?;
    let carried = c.carry(o);
    if c.graph.n() <= 1 {
        return Ok(true);
    }
    is_strongly_connected(&c.graph, &carried)
}

/// Both sides of the duality on one plane digraph.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    /// Cut of the primal leaving it acyclic.
    pub cut: Option<Vec<usize>>,
    /// Even subgraph of the dual whose contraction is strongly connected.
    pub even: Option<Vec<usize>>,
    pub agree: bool,
}

/// Runs the partition search on the primal and the even-subgraph search on
/// the dual, and checks that each witness maps to a witness of the other
/// side through the shared edge ids.
pub fn nl_hochstaettler_crosscheck(
    p: &PlaneEmbedding,
    o: &PartialOrientation,
) -> Result<CrossCheck> {
    let g = p.graph();
    if !g.is_simple() {
        return Err(Error::contract("the cross-check needs a simple primal"));
    }
    check_oriented(g, o)?;
    let dp = directed_dual(p, o)?;
    let cut = cut_complement_acyclic(g, o)?;
    let outcome = even_subgraph_with_strong_contraction(
        dp.dual.graph(),
        &dp.dual_orientation,
        EvenSearchMode::default(),
    )?;
    let even = match outcome {
        EvenSearchOutcome::Found(e) => Some(e),
        EvenSearchOutcome::NoneExists => None,
        EvenSearchOutcome::NotFound { .. } => {
            return Err(Error::contract(
                "exhaustive dual search returned no verdict",
            ))
        }
    };
    let mut agree = cut.is_some() == even.is_some();
    if let Some(c) = &cut {
        let image = mapped(&dp, c);
        agree &= is_even_subgraph(dp.dual.graph(), &image)?
            && strong_after_contracting(dp.dual.graph(), &dp.dual_orientation, &image)?;
    }
    if let Some(e) = &even {
        let back: Vec<usize> = e
            .iter()
            .map(|&d| dp.edge_map.iter().position(|&x| x == d).unwrap())
            .collect();
        agree &= is_cut(g, &back)? && acyclic_after_deleting(g, o, &back)?;
    }
    Ok(CrossCheck { cut, even, agree })
}

/// A random plane triangulation on `n >= 3` vertices: repeated vertex
/// insertion into a random face followed by random edge flips.
pub fn random_triangulation(n: usize, flips: usize, rng: &mut impl Rng) -> Result<PlaneEmbedding> {
    if n < 3 {
        return Err(Error::contract("a triangulation needs at least 3 vertices"));
    }
    // orders[v] lists neighbors so that the face traced u -> v -> w has w
    // right after u in orders[v]
    let mut orders: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let after = |orders: &mut Vec<Vec<usize>>, v: usize, u: usize, x: usize| {
        let i = orders[v].iter().position(|&w| w == u).unwrap();
        orders[v].insert(i + 1, x);
    };
    for x in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        after(&mut orders, b, a, x);
        after(&mut orders, c, b, x);
        after(&mut orders, a, c, x);
        orders.push(vec![b, a, c]);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    for _ in 0..flips {
        let &[u, v, w] = faces.choose(rng).unwrap();
        // the other face on edge u-v is traced v -> u -> z
        let Some(oi) = faces
            .iter()
            .position(|f| (0..3).any(|i| f[i] == v && f[(i + 1) % 3] == u))
        else {
            continue;
        };
        let f = faces[oi];
        let k = (0..3).find(|&i| f[i] == v).unwrap();
        let z = f[(k + 2) % 3];
        if w == z || orders[w].contains(&z) || orders[u].len() <= 3 || orders[v].len() <= 3 {
            continue;
        }
        orders[u].retain(|&x| x != v);
        orders[v].retain(|&x| x != u);
        after(&mut orders, w, v, z);
        after(&mut orders, z, u, w);
        let fi = faces.iter().position(|f| *f == [u, v, w]).unwrap();
        faces[fi] = [w, u, z];
        let oi = faces.iter().position(|g| *g == f).unwrap();
        faces[oi] = [z, v, w];
    }
    PlaneEmbedding::from_neighbor_orders(&orders)
}
