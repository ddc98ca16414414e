//! Isomorph-free generation of small connected cubic graphs, and streams of
//! full orientations.
//!
//! Three generators, picked by the filters:
//! - 3-connected: every 3-connected cubic graph other than K4 arises from a
//!   smaller one by joining the midpoints of two distinct edges, so levels
//!   are grown from K4 and deduplicated by canonical form;
//! - bipartite: 3-regular biadjacency matrices in doubly lexical order;
//! - otherwise: labeled backtracking in breadth-first order (small n only).

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{
    bipartition, canonical_form, digirth, girth, is_connected, is_k_vertex_connected, named,
    MultiGraph, PartialOrientation,
};
use crate::search::{act, edge_actions};

/// Largest order the generators accept.
pub const GENERATE_BOUND: usize = 20;
/// Largest order for the unrestricted generator.
pub const GENERAL_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CubicFilters {
    pub bipartite: bool,
    pub girth_min: Option<usize>,
    pub three_connected: bool,
}

impl CubicFilters {
    pub fn accepts(&self, g: &MultiGraph) -> bool {
        if self.bipartite && bipartition(g).is_none() {
            return false;
        }
        if let Some(k) = self.girth_min {
            if girth(g).is_some_and(|x| x < k) {
                return false;
            }
        }
        !self.three_connected || is_k_vertex_connected(g, 3)
    }
}

/// All connected simple cubic graphs on `n` vertices passing `filters`, one
/// per isomorphism class, in the order the generator produces them.
pub fn generate_cubic(n: usize, filters: CubicFilters) -> Result<Vec<MultiGraph>> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::contract(format!(
            "no simple cubic graph has {n} vertices"
        )));
    }
    if n > GENERATE_BOUND {
        return Err(Error::BoundExceeded {
            what: format!("generation on {n} vertices"),
            limit: GENERATE_BOUND,
            hint: "ingest a census file (graph6) from an external generator".into(),
        });
    }
    let raw = if filters.bipartite {
        bipartite_cubic(n)?
    } else if filters.three_connected {
        three_connected_cubic(n)?
    } else {
        if n > GENERAL_BOUND {
            return Err(Error::BoundExceeded {
                what: format!("unrestricted generation on {n} vertices"),
                limit: GENERAL_BOUND,
                hint: "add the three-connected or bipartite filter, or ingest a census file".into(),
            });
        }
        general_cubic(n)?
    };
    Ok(raw.into_iter().filter(|g| filters.accepts(g)).collect())
}

/// Joins new vertices subdividing `e` and `f`.
fn insert_edge(g: &MultiGraph, e: usize, f: usize) -> MultiGraph {
    let n = g.n();
    let (x, y) = (n, n + 1);
    let mut edges = Vec::with_capacity(g.m() + 3);
    for (id, a, b) in g.edges() {
        if id == e {
            edges.push((a, x));
            edges.push((x, b));
        } else if id == f {
            edges.push((a, y));
            edges.push((y, b));
        } else {
            edges.push((a, b));
        }
    }
    edges.push((x, y));
    MultiGraph::from_edges(n + 2, &edges)
}

fn three_connected_cubic(n: usize) -> Result<Vec<MultiGraph>> {
    let mut level = vec![named::k4()];
    let mut order = 4;
    while order < n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for e in 0..g.m() {
                for f in e + 1..g.m() {
                    let h = insert_edge(g, e, f);
                    if !h.is_simple() || !is_k_vertex_connected(&h, 3) {
                        continue;
                    }
                    if seen.insert(canonical_form(&h)?) {
                        next.push(h);
                    }
                }
            }
        }
        level = next;
        order += 2;
    }
    Ok(level)
}

struct Biadjacency {
    k: usize,
    rows: Vec<u32>,
    col_sum: Vec<u8>,
    seen: HashSet<Vec<u8>>,
    out: Vec<MultiGraph>,
}

impl Biadjacency {
    /// Column `j` read top-down over the filled rows, as a comparable key.
    fn column_prefix_ok(&self) -> bool {
        // columns must be non-increasing in lexicographic order (row 0 most significant)
        let k = self.k;
        for j in 0..k - 1 {
            for &r in &self.rows {
                let a = r >> (k - 1 - j) & 1;
                let b = r >> (k - 2 - j) & 1;
                if a != b {
                    if a < b {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    fn run(&mut self) -> Result<()> {
        let k = self.k;
        let i = self.rows.len();
        if i == k {
            let mut edges = Vec::with_capacity(3 * k);
            for (r, &bits) in self.rows.iter().enumerate() {
                for j in 0..k {
                    if bits >> (k - 1 - j) & 1 == 1 {
                        edges.push((r, k + j));
                    }
                }
            }
            let g = MultiGraph::from_edges(2 * k, &edges);
            if is_connected(&g) && self.seen.insert(canonical_form(&g)?) {
                self.out.push(g);
            }
            return Ok(());
        }
        let prev = self.rows.last().copied().unwrap_or(u32::MAX);
        let remaining_rows = (k - i) as u8;
        // rows as k-bit numbers, column 0 the most significant bit
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    let bits = 1 << (k - 1 - a) | 1 << (k - 1 - b) | 1 << (k - 1 - c);
                    if bits > prev {
                        continue;
                    }
                    if [a, b, c].iter().any(|&j| self.col_sum[j] >= 3) {
                        continue;
                    }
                    for j in [a, b, c] {
                        self.col_sum[j] += 1;
                    }
                    // every column still needs to reach 3 within the remaining rows
                    let feasible = self.col_sum.iter().all(|&s| 3 - s < remaining_rows);
                    self.rows.push(bits);
                    if feasible && self.column_prefix_ok() {
                        self.run()?;
                    }
                    self.rows.pop();
                    for j in [a, b, c] {
                        self.col_sum[j] -= 1;
                    }
                }
            }
        }
        Ok(())
    }
}

fn bipartite_cubic(n: usize) -> Result<Vec<MultiGraph>> {
    let k = n / 2;
    if k < 3 {
        return Ok(Vec::new());
    }
    let mut b = Biadjacency {
        k,
        rows: Vec::with_capacity(k),
        col_sum: vec![0; k],
        seen: HashSet::new(),
        out: Vec::new(),
    };
    b.run()?;
    Ok(b.out)
}

struct Labeled {
    n: usize,
    adj: Vec<Vec<usize>>,
    seen: HashSet<Vec<u8>>,
    out: Vec<MultiGraph>,
}

impl Labeled {
    /// Fills the neighbors of `v` above `v`; new vertices are taken in order,
    /// which fixes a breadth-first labeling and keeps the graph connected.
    fn run(&mut self, v: usize, next_new: usize) -> Result<()> {
        if v == self.n {
            let edges: Vec<(usize, usize)> = (0..self.n)
                .flat_map(|a| {
                    self.adj[a]
                        .iter()
                        .filter(move |&&b| b > a)
                        .map(move |&b| (a, b))
                })
                .collect();
            let g = MultiGraph::from_edges(self.n, &edges);
            if self.seen.insert(canonical_form(&g)?) {
                self.out.push(g);
            }
            return Ok(());
        }
        if v >= next_new {
            // v was never reached: the graph would be disconnected
            return Ok(());
        }
        let need = 3 - self.adj[v].len();
        let lo = self.adj[v]
            .iter()
            .copied()
            .filter(|&w| w > v)
            .max()
            .unwrap_or(v)
            + 1;
        self.choose(v, need, lo, next_new)
    }

    fn choose(&mut self, v: usize, need: usize, lo: usize, next_new: usize) -> Result<()> {
        if need == 0 {
            return self.run(v + 1, next_new);
        }
        for w in lo..=next_new.min(self.n - 1) {
            if self.adj[w].len() >= 3 || self.adj[v].contains(&w) {
                continue;
            }
            let nn = if w == next_new {
                next_new + 1
            } else {
                next_new
            };
            self.adj[v].push(w);
            self.adj[w].push(v);
            self.choose(v, need - 1, w + 1, nn)?;
            self.adj[v].pop();
            self.adj[w].pop();
            if w == next_new {
                break;
            }
        }
        Ok(())
    }
}

fn general_cubic(n: usize) -> Result<Vec<MultiGraph>> {
    let mut l = Labeled {
        n,
        adj: vec![Vec::new(); n],
        seen: HashSet::new(),
        out: Vec::new(),
    };
    l.run(0, 1)?;
    Ok(l.out)
}

/// Largest edge count for a full orientation stream.
pub const ORIENTATION_BOUND: usize = 24;

/// Calls `f` on every full orientation of `g` whose digirth is at least
/// `digirth_min` (acyclic ones always pass), in bitmask order; with
/// `up_to_automorphism`, only on the smallest bitmask of each orbit.
pub fn for_each_orientation<F>(
    g: &MultiGraph,
    digirth_min: usize,
    up_to_automorphism: bool,
    mut f: F,
) -> Result<()>
where
    F: FnMut(u64, &PartialOrientation) -> ControlFlow<()>,
{
    let m = g.m();
    if m > ORIENTATION_BOUND {
        return Err(Error::BoundExceeded {
            what: format!("{m} edges"),
            limit: ORIENTATION_BOUND,
            hint: "stream orientations from a digraph6 file instead".into(),
        });
    }
    let actions = if up_to_automorphism {
        edge_actions(g)?
    } else {
        Vec::new()
    };
    for bits in 0..1u64 << m {
        if actions.iter().any(|a| act(a, bits) < bits) {
            continue;
        }
        let o = PartialOrientation::from_bits(m, bits);
        if digirth(g, &o).is_some_and(|d| d < digirth_min) {
            continue;
        }
        if f(bits, &o).is_break() {
            break;
        }
    }
    Ok(())
}

pub fn orientations(
    g: &MultiGraph,
    digirth_min: usize,
    up_to_automorphism: bool,
) -> Result<Vec<PartialOrientation>> {
    let mut out = Vec::new();
    for_each_orientation(g, digirth_min, up_to_automorphism, |_, o| {
        out.push(o.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
