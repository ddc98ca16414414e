//! Perfect matchings, the bonds they contain, and the even/odd subgraph
//! machinery around strongly connected contractions.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    bonds, contract, is_connected, is_k_edge_connected, tarjan, Bond, CutDirection,
};
use crate::graph::{MultiGraph, PartialOrientation};

/// A perfect matching as a sorted list of edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

impl PerfectMatching {
    /// Checks that `edges` covers every vertex of `g` exactly once.
    pub fn new(g: &MultiGraph, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        let mut covered = vec![false; g.n()];
        for &e in &edges {
            g.check_edge(e)?;
            let (a, b) = g.endpoints(e);
            for v in [a, b] {
                if covered[v] {
                    return Err(Error::contract(format!(
                        "vertex {v} is covered twice by the matching"
                    )));
                }
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::contract(format!(
                "vertex {v} is not covered by the matching"
            )));
        }
        Ok(PerfectMatching { edges })
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &e in &self.edges {
            mask[e] = true;
        }
        mask
    }

    /// The edges not in the matching (a 2-factor when the host is cubic).
    pub fn complement(&self, m: usize) -> Vec<usize> {
        let mask = self.mask(m);
        (0..m).filter(|&e| !mask[e]).collect()
    }
}

#[derive(Clone)]
struct MatchState {
    covered: Vec<bool>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
}

struct Enumerator<'a> {
    g: &'a MultiGraph,
}

impl Enumerator<'_> {
    fn take(&self, s: &mut MatchState, e: usize, queue: &mut Vec<usize>) {
        let (a, b) = self.g.endpoints(e);
        s.covered[a] = true;
        s.covered[b] = true;
        s.chosen.push(e);
        for v in [a, b] {
            queue.extend(self.g.incident(v).iter().map(|&(w, _)| w));
        }
    }

    /// Forces edges at vertices with one remaining option; false on a dead end.
    fn propagate(&self, s: &mut MatchState, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            if s.covered[v] {
                continue;
            }
            let mut options = self
                .g
                .incident(v)
                .iter()
                .filter(|&&(w, e)| !s.excluded[e] && !s.covered[w]);
            match (options.next(), options.next()) {
                (None, _) => return false,
                (Some(&(_, e)), None) => self.take(s, e, &mut queue),
                _ => {}
            }
        }
        true
    }

    fn run(
        &self,
        s: MatchState,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let next = self
            .g
            .edges()
            .find(|&(e, a, b)| !s.excluded[e] && !s.covered[a] && !s.covered[b]);
        let Some((e, a, b)) = next else {
            if s.covered.iter().all(|&c| c) {
                let mut m = s.chosen.clone();
                m.sort_unstable();
                return visit(&m);
            }
            return ControlFlow::Continue(());
        };
        let mut with = s.clone();
        let mut queue = Vec::new();
        self.take(&mut with, e, &mut queue);
        if self.propagate(&mut with, queue) {
            self.run(with, visit)?;
        }
        let mut without = s;
        without.excluded[e] = true;
        if self.propagate(&mut without, vec![a, b]) {
            self.run(without, visit)?;
        }
        ControlFlow::Continue(())
    }
}

/// Streams every perfect matching of `g` in lexicographic order of their
/// sorted edge-id lists. Graphs of odd order have none.
pub fn for_each_perfect_matching(
    g: &MultiGraph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    if g.n() % 2 == 1 {
        return;
    }
    let s = MatchState {
        covered: vec![false; g.n()],
        excluded: vec![false; g.m()],
        chosen: Vec::with_capacity(g.n() / 2),
    };
    let en = Enumerator { g };
    let start: Vec<usize> = (0..g.n()).collect();
    let mut s = s;
    if !en.propagate(&mut s, start) {
        return;
    }
    let _ = en.run(s, &mut visit);
}

pub fn perfect_matchings(g: &MultiGraph) -> Vec<PerfectMatching> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, |m| {
        out.push(PerfectMatching { edges: m.to_vec() });
        ControlFlow::Continue(())
    });
    out
}

/// The perfect matchings that use edge `e`, in lexicographic order.
pub fn perfect_matchings_containing(g: &MultiGraph, e: usize) -> Result<Vec<PerfectMatching>> {
    g.check_edge(e)?;
    let mut out = Vec::new();
    for_each_perfect_matching(g, |m| {
        if m.binary_search(&e).is_ok() {
            out.push(PerfectMatching { edges: m.to_vec() });
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Counts perfect matchings by expanding along the lowest uncovered vertex,
/// memoized on the uncovered set. Independent of the enumerator.
pub fn count_perfect_matchings(g: &MultiGraph) -> u128 {
    fn go(g: &MultiGraph, free: &mut Vec<u64>, memo: &mut HashMap<Vec<u64>, u128>) -> u128 {
        let Some(word) = free.iter().position(|&w| w != 0) else {
            return 1;
        };
        if let Some(&c) = memo.get(free.as_slice()) {
            return c;
        }
        let v = word * 64 + free[word].trailing_zeros() as usize;
        free[v / 64] &= !(1 << (v % 64));
        let mut total = 0;
        for &(w, _) in g.incident(v) {
            if free[w / 64] >> (w % 64) & 1 == 1 {
                free[w / 64] &= !(1 << (w % 64));
                total += go(g, free, memo);
                free[w / 64] |= 1 << (w % 64);
            }
        }
        free[v / 64] |= 1 << (v % 64);
        memo.insert(free.clone(), total);
        total
    }
    if g.n() % 2 == 1 {
        return 0;
    }
    let mut free = vec![0u64; g.n().div_ceil(64)];
    for v in 0..g.n() {
        free[v / 64] |= 1 << (v % 64);
    }
    go(g, &mut free, &mut HashMap::new())
}

/// Every bond of connected `g` whose edges all lie in `ids`, sorted by size
/// and then by side. Computed as the bonds of `g` with the other edges
/// contracted.
pub fn bonds_within(g: &MultiGraph, ids: &[usize]) -> Result<Vec<Bond>> {
    if !is_connected(g) {
        return Err(Error::contract("bonds need a connected host"));
    }
    let keep = g.edge_mask(ids)?;
    let rest: Vec<usize> = (0..g.m()).filter(|&e| !keep[e]).collect();
    let c = contract(g, &rest)?;
    let mut out: Vec<Bond> = bonds(&c.graph)?
        .into_iter()
        .map(|b| {
            let side = b.side_mask(c.graph.n());
            let mask: Vec<bool> = c.vertex_map.iter().map(|&h| side[h]).collect();
            Bond::from_side(g, &mask)
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Bonds `δ(S) ⊆ M` for a perfect matching `M`.
pub fn bonds_within_matching(g: &MultiGraph, m: &PerfectMatching) -> Result<Vec<Bond>> {
    PerfectMatching::new(g, m.edges.clone())?;
    bonds_within(g, &m.edges)
}

/// Number of components of the graph left after deleting `M`.
fn complement_components(g: &MultiGraph, m: &PerfectMatching) -> Result<usize> {
    PerfectMatching::new(g, m.edges.clone())?;
    let rest = m.complement(g.m());
    Ok(contract(g, &rest)?.graph.n())
}

/// True iff `M` contains an edge cut, i.e. `E \ M` is disconnected.
pub fn matching_contains_cut(g: &MultiGraph, m: &PerfectMatching) -> Result<bool> {
    if !is_connected(g) {
        return Err(Error::contract("cuts need a connected host"));
    }
    Ok(complement_components(g, m)? >= 2)
}

/// A bond inside `ids` that `o` directs, with its direction.
pub fn directed_cut_within(
    g: &MultiGraph,
    o: &PartialOrientation,
    ids: &[usize],
) -> Result<Option<(Bond, CutDirection)>> {
    o.check_host(g)?;
    // only fully directed edges can take part
    let directed: Vec<usize> = ids
        .iter()
        .copied()
        .filter(|&e| o.get(e).is_directed())
        .collect();
    for b in bonds_within(g, &directed)? {
        if let Some(d) = b.directed_by(g, o) {
            return Ok(Some((b, d)));
        }
    }
    Ok(None)
}

pub fn directed_cut_in_matching(
    g: &MultiGraph,
    o: &PartialOrientation,
    m: &PerfectMatching,
) -> Result<Option<(Bond, CutDirection)>> {
    PerfectMatching::new(g, m.edges.clone())?;
    directed_cut_within(g, o, &m.edges)
}

/// A Hamiltonian cycle as a closed vertex sequence (first vertex not repeated).
pub fn is_hamiltonian(g: &MultiGraph) -> Option<Vec<usize>> {
    if g.n() == 0 {
        return None;
    }
    if g.is_cubic() && is_connected(g) {
        let mut found = None;
        for_each_perfect_matching(g, |m| {
            let pm = PerfectMatching { edges: m.to_vec() };
            let rest = pm.complement(g.m());
            if contract(g, &rest)
                .map(|c| c.graph.n() == 1)
                .unwrap_or(false)
            {
                found = Some(trace_cycle(g, &rest));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        return found;
    }
    hamiltonian_backtrack(g)
}

/// Walks a connected 2-regular edge set from vertex 0.
fn trace_cycle(g: &MultiGraph, ids: &[usize]) -> Vec<usize> {
    let mask = g.edge_mask(ids).expect("ids come from g");
    let mut cycle = vec![0];
    let mut prev_edge = usize::MAX;
    let mut v = 0;
    loop {
        let &(w, e) = g
            .incident(v)
            .iter()
            .find(|&&(_, e)| mask[e] && e != prev_edge)
            .expect("2-regular");
        if w == 0 {
            return cycle;
        }
        cycle.push(w);
        prev_edge = e;
        v = w;
    }
}

fn hamiltonian_backtrack(g: &MultiGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        // two vertices need a parallel pair; one vertex a loop
        if n == 2 && g.edges_between(0, 1).count() >= 2 {
            return Some(vec![0, 1]);
        }
        return None;
    }
    if g.min_degree() < 2 || !is_connected(g) {
        return None;
    }
    fn extend(g: &MultiGraph, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let v = *path.last().unwrap();
        if path.len() == g.n() {
            return g.has_edge(v, 0);
        }
        let mut nbrs: Vec<usize> = g.neighbors(v).filter(|&w| !on[w]).collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        for w in nbrs {
            on[w] = true;
            path.push(w);
            if extend(g, path, on) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    let mut on = vec![false; n];
    on[0] = true;
    let mut path = vec![0];
    extend(g, &mut path, &mut on).then_some(path)
}

/// Outcome of [`min_cut_in_perfect_matching`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingCutSize {
    NoPerfectMatching,
    /// No perfect matching contains a cut.
    Infinite,
    Finite(usize),
}

/// Smallest bond contained in some perfect matching.
pub fn min_cut_in_perfect_matching(g: &MultiGraph) -> Result<MatchingCutSize> {
    if !is_connected(g) {
        return Err(Error::contract("cuts need a connected host"));
    }
    let mut best: Option<usize> = None;
    let mut any = false;
    let mut err = None;
    for_each_perfect_matching(g, |m| {
        any = true;
        match bonds_within(g, m) {
            Ok(bs) => {
                if let Some(b) = bs.first() {
                    best = Some(best.map_or(b.len(), |x| x.min(b.len())));
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(match (any, best) {
        (false, _) => MatchingCutSize::NoPerfectMatching,
        (true, None) => MatchingCutSize::Infinite,
        (true, Some(k)) => MatchingCutSize::Finite(k),
    })
}

/// Default cycle-space dimension bound for exhaustive even-subgraph search.
pub const CYCLE_SPACE_BOUND: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvenSearchMode {
    /// All `2^dim` cycle-space elements; errors above `bound`.
    Exhaustive { bound: usize },
    /// Uniform random cycle-space elements.
    Sampling { samples: u64, seed: u64 },
}

impl Default for EvenSearchMode {
    fn default() -> Self {
        EvenSearchMode::Exhaustive {
            bound: CYCLE_SPACE_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvenSearchOutcome {
    /// An even subgraph `E` with `D/E` strongly connected.
    Found(Vec<usize>),
    /// Exhaustive search proved there is none.
    NoneExists,
    /// Sampling saw no witness; nothing is proved.
    NotFound { samples: u64 },
}

/// Fundamental cycles of a spanning forest, as edge bitsets over `u64` words.
pub fn cycle_space_basis(g: &MultiGraph) -> Vec<Vec<u64>> {
    let words = g.m().div_ceil(64).max(1);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    let mut depth = vec![usize::MAX; g.n()];
    let mut tree = vec![false; g.m()];
    for root in 0..g.n() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.incident(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for (e, a, b) in g.edges() {
        if tree[e] {
            continue;
        }
        let mut set = vec![0u64; words];
        set[e / 64] ^= 1 << (e % 64);
        let (mut x, mut y) = (a, b);
        while x != y {
            if depth[x] < depth[y] {
                std::mem::swap(&mut x, &mut y);
            }
            let (p, pe) = parent[x].unwrap();
            set[pe / 64] ^= 1 << (pe % 64);
            x = p;
        }
        basis.push(set);
    }
    basis
}

/// Strong connectivity of `D/E`: contracting `E` is the same as making its
/// edges two-way.
fn contraction_strong(
    g: &MultiGraph,
    o: &PartialOrientation,
    out_base: &[Vec<usize>],
    set: &[u64],
) -> bool {
    let mut out = out_base.to_vec();
    for e in 0..g.m() {
        if set[e / 64] >> (e % 64) & 1 == 1 {
            let (t, h) = o.arc(g, e).expect("full orientation");
            out[h].push(t);
        }
    }
    tarjan(&out).1 <= 1
}

fn bits_to_ids(set: &[u64], m: usize) -> Vec<usize> {
    (0..m)
        .filter(|&e| set[e / 64] >> (e % 64) & 1 == 1)
        .collect()
}

/// Searches for an even subgraph `E` such that contracting it leaves `D`
/// strongly connected.
pub fn even_subgraph_with_strong_contraction(
    g: &MultiGraph,
    o: &PartialOrientation,
    mode: EvenSearchMode,
) -> Result<EvenSearchOutcome> {
    o.check_host(g)?;
    if !o.is_full() {
        return Err(Error::contract(
            "even-subgraph search needs a full orientation",
        ));
    }
    if !is_k_edge_connected(g, 3) {
        return Err(Error::contract(
            "even-subgraph search needs a 3-edge-connected host",
        ));
    }
    let basis = cycle_space_basis(g);
    let words = g.m().div_ceil(64).max(1);
    let out_base = o.out_adjacency(g);
    match mode {
        EvenSearchMode::Exhaustive { bound } => {
            if basis.len() > bound {
                return Err(Error::BoundExceeded {
                    what: format!("cycle space of dimension {}", basis.len()),
                    limit: bound,
                    hint: "request sampling mode explicitly".into(),
                });
            }
            // Gray-code walk through all combinations
            let mut set = vec![0u64; words];
            let total: u64 = 1 << basis.len();
            for i in 0..total {
                if i > 0 {
                    let flip = i.trailing_zeros() as usize;
                    for (w, b) in set.iter_mut().zip(&basis[flip]) {
                        *w ^= b;
                    }
                }
                if contraction_strong(g, o, &out_base, &set) {
                    return Ok(EvenSearchOutcome::Found(bits_to_ids(&set, g.m())));
                }
            }
            Ok(EvenSearchOutcome::NoneExists)
        }
        EvenSearchMode::Sampling { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let set = random_even_subgraph(&basis, words, &mut rng);
                if contraction_strong(g, o, &out_base, &set) {
                    return Ok(EvenSearchOutcome::Found(bits_to_ids(&set, g.m())));
                }
            }
            Ok(EvenSearchOutcome::NotFound { samples })
        }
    }
}

/// Uniform element of the cycle space spanned by `basis`.
pub fn random_even_subgraph(basis: &[Vec<u64>], words: usize, rng: &mut impl Rng) -> Vec<u64> {
    let mut set = vec![0u64; words];
    for b in basis {
        if rng.gen::<bool>() {
            for (w, x) in set.iter_mut().zip(b) {
                *w ^= x;
            }
        }
    }
    set
}

/// Odd-subgraph view for cubic hosts: `O = A \ E` has no directed cut
/// exactly when `D/E` is strongly connected.
pub fn odd_subgraph_without_directed_cut(
    g: &MultiGraph,
    o: &PartialOrientation,
    mode: EvenSearchMode,
) -> Result<Option<Vec<usize>>> {
    if !g.is_cubic() {
        return Err(Error::contract("odd-subgraph view needs a cubic host"));
    }
    Ok(match even_subgraph_with_strong_contraction(g, o, mode)? {
        EvenSearchOutcome::Found(even) => {
            let mut mask = vec![true; g.m()];
            for e in even {
                mask[e] = false;
            }
            Some((0..g.m()).filter(|&e| mask[e]).collect())
        }
        _ => None,
    })
}
