use serde::{Deserialize, Serialize};

use super::{is_connected, Dir, MultiGraph, PartialOrientation};
use crate::error::{Error, Result};

/// Which way a directed bond points relative to its stored side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CutDirection {
    AwayFromSide,
    TowardSide,
}

impl CutDirection {
    pub fn flipped(self) -> CutDirection {
        match self {
            CutDirection::AwayFromSide => CutDirection::TowardSide,
            CutDirection::TowardSide => CutDirection::AwayFromSide,
        }
    }
}

/// A minimal edge cut `δ(S)`. The stored side is the one holding vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bond {
    pub side: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Bond {
    /// Builds `δ(S)` from a side membership mask, normalizing the side so it
    /// contains vertex 0. Does not check minimality; see [`Bond::is_valid`].
    pub fn from_side(g: &MultiGraph, in_side: &[bool]) -> Bond {
        let flip = !in_side.first().copied().unwrap_or(true);
        let side: Vec<usize> = (0..g.n()).filter(|&v| in_side[v] != flip).collect();
        let edges: Vec<usize> = g
            .edges()
            .filter(|&(_, a, b)| in_side[a] != in_side[b])
            .map(|(e, _, _)| e)
            .collect();
        Bond { side, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn side_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.side {
            mask[v] = true;
        }
        mask
    }

    /// Checks that the edges are exactly `δ(side)` and both sides are
    /// nonempty and induce connected subgraphs.
    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        if self.side.is_empty() || self.side.len() >= g.n() || self.side.iter().any(|&v| v >= g.n())
        {
            return false;
        }
        let mask = self.side_mask(g.n());
        let expected = Bond::from_side(g, &mask);
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        if edges != expected.edges || edges.len() != self.edges.len() {
            return false;
        }
        induces_connected(g, &mask, true) && induces_connected(g, &mask, false)
    }

    /// The orientation state every edge needs for the bond to point `dir`.
    pub fn required_states(&self, g: &MultiGraph, dir: CutDirection) -> Vec<(usize, Dir)> {
        let mask = self.side_mask(g.n());
        self.edges
            .iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e);
                let inside = if mask[a] { a } else { b };
                let outside = g.other_end(e, inside);
                let tail = match dir {
                    CutDirection::AwayFromSide => inside,
                    CutDirection::TowardSide => outside,
                };
                (e, PartialOrientation::dir_from(g, e, tail))
            })
            .collect()
    }

    /// Direction in which `o` directs every edge of the bond consistently,
    /// if any. A bond with an undirected edge is not directed.
    pub fn directed_by(&self, g: &MultiGraph, o: &PartialOrientation) -> Option<CutDirection> {
        let mask = self.side_mask(g.n());
        let mut dir = None;
        for &e in &self.edges {
            let (tail, _) = o.arc(g, e)?;
            let d = if mask[tail] {
                CutDirection::AwayFromSide
            } else {
                CutDirection::TowardSide
            };
            match dir {
                None => dir = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        dir
    }

    /// True when `dir` can still be reached by extending `o`.
    pub fn compatible_with(
        &self,
        g: &MultiGraph,
        o: &PartialOrientation,
        dir: CutDirection,
    ) -> bool {
        self.required_states(g, dir)
            .iter()
            .all(|&(e, d)| o.get(e) == Dir::Undirected || o.get(e) == d)
    }
}

fn induces_connected(g: &MultiGraph, mask: &[bool], value: bool) -> bool {
    let Some(start) = (0..g.n()).find(|&v| mask[v] == value) else {
        return false;
    };
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in g.incident(v) {
            if mask[w] == value && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == mask.iter().filter(|&&x| x == value).count()
}

/// True when `ids` equals `δ(S)` for some vertex set `S` (the empty set counts).
pub fn is_cut(g: &MultiGraph, ids: &[usize]) -> Result<bool> {
    let mask = g.edge_mask(ids)?;
    // 2-color the graph so that cut edges switch color and the others keep it
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let c = color[v].unwrap();
            for &(w, e) in g.incident(v) {
                let want = c ^ mask[e];
                match color[w] {
                    None => {
                        color[w] = Some(want);
                        stack.push(w);
                    }
                    Some(cw) if cw != want => return Ok(false),
                    _ => {}
                }
            }
        }
    }
    Ok(true)
}

const MASK_BOUND: usize = 128;

struct BondSearch<'a> {
    g: &'a MultiGraph,
    nbr: Vec<u128>,
    full: u128,
    /// Largest cut size still of interest.
    max: usize,
}

impl BondSearch<'_> {
    fn edges_to(&self, v: usize, set: u128) -> usize {
        self.g
            .incident(v)
            .iter()
            .filter(|&&(w, _)| set >> w & 1 == 1)
            .count()
    }

    fn connected(&self, set: u128) -> bool {
        if set == 0 {
            return false;
        }
        let start = set.trailing_zeros() as usize;
        let mut reached = 1u128 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.nbr[v] & set & !reached;
            reached |= new;
            frontier |= new;
        }
        reached == set
    }

    /// Grows connected sets containing vertex 0; `cut` is the number of
    /// edges between `inside` and `excluded`.
    fn grow(
        &mut self,
        inside: u128,
        excluded: u128,
        cut: usize,
        visit: &mut dyn FnMut(u128, usize) -> Option<usize>,
    ) {
        if cut > self.max {
            return;
        }
        let mut frontier = 0u128;
        let mut rest = inside;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            frontier |= self.nbr[v];
        }
        frontier &= !inside & !excluded;
        if frontier == 0 {
            let complement = self.full & !inside;
            if complement != 0 && self.connected(complement) {
                if let Some(new_max) = visit(inside, cut) {
                    self.max = self.max.min(new_max);
                }
            }
            return;
        }
        let v = frontier.trailing_zeros() as usize;
        let with_v = self.edges_to(v, excluded);
        self.grow(inside | 1 << v, excluded, cut + with_v, visit);
        let without_v = self.edges_to(v, inside);
        self.grow(inside, excluded | 1 << v, cut + without_v, visit);
    }
}

/// Calls `visit(side_mask, size)` for every bond of connected `g` with at most
/// `max` edges. `visit` may return a new (smaller) bound.
fn for_each_bond(
    g: &MultiGraph,
    max: usize,
    visit: &mut dyn FnMut(u128, usize) -> Option<usize>,
) -> Result<()> {
    if g.n() > MASK_BOUND {
        return Err(Error::BoundExceeded {
            what: format!("bond enumeration on {} vertices", g.n()),
            limit: MASK_BOUND,
            hint: "contract the graph first".into(),
        });
    }
    if !is_connected(g) {
        return Err(Error::contract("bond enumeration needs a connected graph"));
    }
    if g.n() < 2 {
        return Ok(());
    }
    let mut nbr = vec![0u128; g.n()];
    for (_, a, b) in g.edges() {
        nbr[a] |= 1 << b;
        nbr[b] |= 1 << a;
    }
    let full = if g.n() == 128 {
        u128::MAX
    } else {
        (1u128 << g.n()) - 1
    };
    let mut search = BondSearch { g, nbr, full, max };
    search.grow(1, 0, 0, visit);
    Ok(())
}

fn mask_to_bool(mask: u128, n: usize) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

/// All bonds of a connected graph with at most `max` edges, sorted.
pub fn bonds_up_to(g: &MultiGraph, max: usize) -> Result<Vec<Bond>> {
    let mut out = Vec::new();
    for_each_bond(g, max, &mut |side, _| {
        out.push(Bond::from_side(g, &mask_to_bool(side, g.n())));
        None
    })?;
    out.sort();
    Ok(out)
}

/// All bonds of a connected graph, sorted by side.
pub fn bonds(g: &MultiGraph) -> Result<Vec<Bond>> {
    bonds_up_to(g, usize::MAX)
}

fn has_cycle_inside(g: &MultiGraph, set: u128) -> bool {
    let vertices = set.count_ones() as usize;
    let edges = g
        .edges()
        .filter(|&(_, a, b)| set >> a & 1 == 1 && set >> b & 1 == 1)
        .count();
    // a connected induced subgraph has a cycle iff it has at least as many edges as vertices
    edges >= vertices
}

/// Size of a smallest cyclic bond of a connected cubic graph, or `None`
/// when no bond leaves a cycle on both sides.
pub fn cyclic_connectivity(g: &MultiGraph) -> Result<Option<usize>> {
    if !g.is_cubic() {
        return Err(Error::contract(
            "cyclic connectivity is only defined here for cubic graphs",
        ));
    }
    let full = if g.n() >= 128 {
        u128::MAX
    } else {
        (1u128 << g.n()) - 1
    };
    // each side of a cyclic bond of size k in a cubic graph has at least k vertices
    for k in 1..=g.n() / 2 {
        let mut found = false;
        for_each_bond(g, k, &mut |side, size| {
            if size <= k && has_cycle_inside(g, side) && has_cycle_inside(g, full & !side) {
                found = true;
                return Some(0);
            }
            None
        })?;
        if found {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
