//! Undirected multigraphs with stable edge identities, partial orientations
//! layered on top of them, and the structural predicates used everywhere else.
//!
//! Edge ids are dense `0..m` and key all per-edge state, so an orientation
//! survives contraction through the edge map returned by [`contract`].

mod bond;
mod canon;
mod connectivity;
mod contract;
mod embedding;
pub mod formats;
pub mod named;
mod orientation;

pub use bond::{bonds, bonds_up_to, cyclic_connectivity, is_cut, Bond, CutDirection};
pub use canon::{automorphisms, canonical_form, canonical_form_bounded, CANONICAL_BOUND};
pub(crate) use connectivity::tarjan;
pub use connectivity::{
    bipartition, components, digirth, edge_connectivity, girth, is_acyclic, is_connected,
    is_k_edge_connected, is_k_vertex_connected, is_strongly_connected, strong_components,
    vertex_connectivity,
};
pub use contract::{contract, Contraction};
pub use embedding::{
    find_plane_embedding, k4_embedding, prism_embedding, PlaneEmbedding, PLANARITY_BOUND,
};
pub use orientation::{Dir, OrientedGraph, PartialOrientation};

use crate::error::{Error, Result};

/// An undirected multigraph. Parallel edges are allowed, loops are not.
///
/// Immutable after construction; the adjacency lists list `(neighbor, edge)`
/// pairs in increasing edge-id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<[usize; 2]> = edges.into_iter().map(|(a, b)| [a, b]).collect();
        let mut adj = vec![Vec::new(); n];
        for (id, &[a, b]) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::contract(format!(
                    "edge {id} is a loop at vertex {a}"
                )));
            }
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        Ok(MultiGraph { n, edges, adj })
    }

    /// Builds a graph from edges known to be valid; panics otherwise.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::new(n, edges.iter().copied()).expect("valid edge list")
    }

    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edges[e];
        (a, b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(id, &[a, b])| (id, a, b))
    }

    /// `(neighbor, edge)` pairs at `v`.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn check_edge(&self, e: usize) -> Result<()> {
        if e < self.m() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    pub fn edges_between(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u]
            .iter()
            .filter(move |&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges_between(u, v).next().is_some()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = vec![usize::MAX; self.n];
        for v in 0..self.n {
            for &(w, _) in &self.adj[v] {
                if seen[w] == v {
                    return false;
                }
                seen[w] = v;
            }
        }
        true
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|a| a.len() == d)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// Applies a vertex relabeling `perm[old] = new`; edge ids are kept.
    pub fn relabeled(&self, perm: &[usize]) -> MultiGraph {
        assert_eq!(perm.len(), self.n);
        MultiGraph::new(self.n, self.edges.iter().map(|&[a, b]| (perm[a], perm[b])))
            .expect("permutation keeps the graph valid")
    }

    /// Edge ids sorted by `(min endpoint, max endpoint, id)`, which is the edge
    /// order graph6 assigns.
    pub fn lexicographic_edge_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.m()).collect();
        order.sort_by_key(|&e| {
            let (a, b) = self.endpoints(e);
            (a.min(b), a.max(b), e)
        });
        order
    }

    /// The same graph with edges renumbered in lexicographic order and
    /// stored as `(min, max)`. Returns the graph and `new_id[old_id]`.
    pub fn normalized(&self) -> (MultiGraph, Vec<usize>) {
        let order = self.lexicographic_edge_order();
        let mut new_id = vec![0; self.m()];
        let mut edges = Vec::with_capacity(self.m());
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
            let (a, b) = self.endpoints(old);
            edges.push((a.min(b), a.max(b)));
        }
        (MultiGraph::from_edges(self.n, &edges), new_id)
    }

    /// Disjoint union; vertices and edges of `other` are shifted after ours.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let shift = self.n;
        let edges: Vec<(usize, usize)> = self
            .edges()
            .map(|(_, a, b)| (a, b))
            .chain(other.edges().map(|(_, a, b)| (a + shift, b + shift)))
            .collect();
        MultiGraph::from_edges(self.n + other.n, &edges)
    }

    /// Degree of every vertex in the edge subset `set` (given as a membership mask).
    pub fn subset_degrees(&self, set: &[bool]) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if set[e] {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        deg
    }

    pub fn edge_mask(&self, ids: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.m()];
        for &e in ids {
            self.check_edge(e)?;
            mask[e] = true;
        }
        Ok(mask)
    }
}

/// Checks the degree-parity definitions of even and odd edge subsets.
pub fn is_even_subgraph(g: &MultiGraph, ids: &[usize]) -> Result<bool> {
    let mask = g.edge_mask(ids)?;
    Ok(g.subset_degrees(&mask).iter().all(|d| d % 2 == 0))
}

pub fn is_odd_subgraph(g: &MultiGraph, ids: &[usize]) -> Result<bool> {
    let mask = g.edge_mask(ids)?;
    Ok(g.subset_degrees(&mask).iter().all(|d| d % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(
            MultiGraph::new(2, [(0, 0)]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            MultiGraph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn parallel_edges_keep_identity() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]);
        assert_eq!(g.m(), 3);
        assert!(!g.is_simple());
        assert!(g.is_cubic());
        assert_eq!(g.edges_between(0, 1).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn normalization_sorts_edges() {
        let g = MultiGraph::from_edges(3, &[(2, 1), (0, 2), (1, 0)]);
        let (h, new_id) = g.normalized();
        assert_eq!(new_id, vec![2, 1, 0]);
        assert_eq!(h.endpoints(0), (0, 1));
        assert_eq!(h.endpoints(2), (1, 2));
    }

    #[test]
    fn parity_predicates() {
        let k4 = named::k4();
        // triangle 0-1-2
        let tri: Vec<usize> = k4
            .edges()
            .filter(|&(_, a, b)| a < 3 && b < 3)
            .map(|(e, _, _)| e)
            .collect();
        assert!(is_even_subgraph(&k4, &tri).unwrap());
        assert!(!is_odd_subgraph(&k4, &tri).unwrap());
        assert_eq!(is_even_subgraph(&k4, &[17]), Err(Error::UnknownEdge(17)));
    }
}
