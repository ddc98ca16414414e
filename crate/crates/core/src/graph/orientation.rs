use serde::{Deserialize, Serialize};

use super::MultiGraph;
use crate::error::{Error, Result};

/// Direction state of one edge. `Forward` means first endpoint to second
/// endpoint as stored in the host graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    Undirected,
    Forward,
    Backward,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::Undirected => Dir::Undirected,
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }

    pub fn is_directed(self) -> bool {
        self != Dir::Undirected
    }
}

/// Per-edge direction states over a host graph with the same edge count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialOrientation {
    states: Vec<Dir>,
}

impl PartialOrientation {
    pub fn undirected(m: usize) -> Self {
        PartialOrientation {
            states: vec![Dir::Undirected; m],
        }
    }

    pub fn from_states(states: Vec<Dir>) -> Self {
        PartialOrientation { states }
    }

    /// Full orientation from a bitmask: bit `e` set means `Backward`.
    pub fn from_bits(m: usize, bits: u64) -> Self {
        PartialOrientation {
            states: (0..m)
                .map(|e| {
                    if bits >> e & 1 == 1 {
                        Dir::Backward
                    } else {
                        Dir::Forward
                    }
                })
                .collect(),
        }
    }

    pub fn check_host(&self, g: &MultiGraph) -> Result<()> {
        if self.states.len() == g.m() {
            Ok(())
        } else {
            Err(Error::contract(format!(
                "orientation has {} states but the host has {} edges",
                self.states.len(),
                g.m()
            )))
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.states.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    #[inline]
    pub fn get(&self, e: usize) -> Dir {
        self.states[e]
    }

    #[inline]
    pub fn set(&mut self, e: usize, d: Dir) {
        self.states[e] = d;
    }

    pub fn states(&self) -> &[Dir] {
        &self.states
    }

    pub fn is_full(&self) -> bool {
        self.states.iter().all(|d| d.is_directed())
    }

    pub fn directed_count(&self) -> usize {
        self.states.iter().filter(|d| d.is_directed()).count()
    }

    /// `self >= other`: agrees with `other` on every edge `other` directs.
    pub fn extends(&self, other: &PartialOrientation) -> bool {
        self.states.len() == other.states.len()
            && self
                .states
                .iter()
                .zip(&other.states)
                .all(|(&s, &o)| o == Dir::Undirected || s == o)
    }

    pub fn reversed(&self) -> PartialOrientation {
        PartialOrientation {
            states: self.states.iter().map(|d| d.reversed()).collect(),
        }
    }

    /// `(tail, head)` of edge `e`, if directed.
    #[inline]
    pub fn arc(&self, g: &MultiGraph, e: usize) -> Option<(usize, usize)> {
        let (a, b) = g.endpoints(e);
        match self.states[e] {
            Dir::Undirected => None,
            Dir::Forward => Some((a, b)),
            Dir::Backward => Some((b, a)),
        }
    }

    /// State that directs `e` from `tail` to the other endpoint.
    pub fn dir_from(g: &MultiGraph, e: usize, tail: usize) -> Dir {
        if g.endpoints(e).0 == tail {
            Dir::Forward
        } else {
            Dir::Backward
        }
    }

    pub fn out_degree(&self, g: &MultiGraph, v: usize) -> usize {
        g.incident(v)
            .iter()
            .filter(|&&(_, e)| matches!(self.arc(g, e), Some((t, _)) if t == v))
            .count()
    }

    pub fn in_degree(&self, g: &MultiGraph, v: usize) -> usize {
        g.incident(v)
            .iter()
            .filter(|&&(_, e)| matches!(self.arc(g, e), Some((_, h)) if h == v))
            .count()
    }

    /// Out-neighbor lists using directed edges only.
    pub fn out_adjacency(&self, g: &MultiGraph) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); g.n()];
        for e in 0..g.m() {
            if let Some((t, h)) = self.arc(g, e) {
                out[t].push(h);
            }
        }
        out
    }

    /// Reorders states through `new_id[old] = new`.
    pub fn permuted(&self, new_id: &[usize]) -> PartialOrientation {
        let mut states = vec![Dir::Undirected; self.states.len()];
        for (old, &d) in self.states.iter().enumerate() {
            states[new_id[old]] = d;
        }
        PartialOrientation { states }
    }
}

/// A multigraph together with a partial orientation of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    pub graph: MultiGraph,
    pub orientation: PartialOrientation,
}

impl OrientedGraph {
    pub fn new(graph: MultiGraph, orientation: PartialOrientation) -> Result<Self> {
        orientation.check_host(&graph)?;
        Ok(OrientedGraph { graph, orientation })
    }

    pub fn undirected(graph: MultiGraph) -> Self {
        let orientation = PartialOrientation::undirected(graph.m());
        OrientedGraph { graph, orientation }
    }

    pub fn arc(&self, e: usize) -> Option<(usize, usize)> {
        self.orientation.arc(&self.graph, e)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.orientation.out_degree(&self.graph, v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.orientation.in_degree(&self.graph, v)
    }

    /// Edges renumbered lexicographically with endpoints stored `(min, max)`;
    /// directions are rewritten so every arc keeps its tail and head.
    pub fn normalized(&self) -> OrientedGraph {
        let (graph, new_id) = self.graph.normalized();
        let mut states = vec![Dir::Undirected; graph.m()];
        for old in 0..self.graph.m() {
            let new = new_id[old];
            states[new] = match self.arc(old) {
                None => Dir::Undirected,
                Some((t, _)) => PartialOrientation::dir_from(&graph, new, t),
            };
        }
        OrientedGraph {
            graph,
            orientation: PartialOrientation::from_states(states),
        }
    }

    pub fn reversed(&self) -> OrientedGraph {
        OrientedGraph {
            graph: self.graph.clone(),
            orientation: self.orientation.reversed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_order() {
        let s = PartialOrientation::from_states(vec![Dir::Forward, Dir::Undirected]);
        let t = PartialOrientation::from_states(vec![Dir::Forward, Dir::Backward]);
        let u = PartialOrientation::from_states(vec![Dir::Backward, Dir::Backward]);
        assert!(t.extends(&s));
        assert!(!s.extends(&t));
        assert!(!u.extends(&s));
        assert!(s.extends(&PartialOrientation::undirected(2)));
    }

    #[test]
    fn normalization_keeps_arcs() {
        let g = MultiGraph::from_edges(3, &[(2, 1), (1, 0)]);
        let o = PartialOrientation::from_states(vec![Dir::Forward, Dir::Undirected]);
        let d = OrientedGraph::new(g, o).unwrap().normalized();
        // old edge 0 (2 -> 1) is now edge 1 stored as (1, 2)
        assert_eq!(d.arc(1), Some((2, 1)));
        assert_eq!(d.orientation.get(1), Dir::Backward);
        assert_eq!(d.arc(0), None);
    }
}
