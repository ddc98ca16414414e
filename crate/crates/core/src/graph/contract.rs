use super::{MultiGraph, PartialOrientation};
use crate::error::Result;

/// Result of contracting an edge set.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[old] = Some(new)` for surviving edges; contracted edges and
    /// edges that became loops map to `None`.
    pub edge_map: Vec<Option<usize>>,
}

impl Contraction {
    /// Carries an orientation of the original graph over to the contracted one.
    pub fn carry(&self, o: &PartialOrientation) -> PartialOrientation {
        let mut states = vec![super::Dir::Undirected; self.graph.m()];
        for (old, new) in self.edge_map.iter().enumerate() {
            if let Some(new) = new {
                states[*new] = o.get(old);
            }
        }
        PartialOrientation::from_states(states)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Contracts the edges in `ids`. Merged vertices are numbered by their
/// smallest original vertex; surviving edges keep their relative order and
/// their endpoint order, so edge states carry over unchanged.
pub fn contract(g: &MultiGraph, ids: &[usize]) -> Result<Contraction> {
    let mask = g.edge_mask(ids)?;
    let mut parent: Vec<usize> = (0..g.n()).collect();
    for (e, a, b) in g.edges() {
        if mask[e] {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut root_label = vec![usize::MAX; g.n()];
    let mut vertex_map = vec![0; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        let r = find(&mut parent, v);
        if root_label[r] == usize::MAX {
            root_label[r] = next;
            next += 1;
        }
        vertex_map[v] = root_label[r];
    }
    let mut edges = Vec::new();
    let mut edge_map = vec![None; g.m()];
    for (e, a, b) in g.edges() {
        if mask[e] {
            continue;
        }
        let (na, nb) = (vertex_map[a], vertex_map[b]);
        if na != nb {
            edge_map[e] = Some(edges.len());
            edges.push((na, nb));
        }
    }
    Ok(Contraction {
        graph: MultiGraph::from_edges(next, &edges),
        vertex_map,
        edge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Dir};
    use crate::Error;

    #[test]
    fn contract_one_edge_of_k4() {
        let k4 = named::k4();
        let c = contract(&k4, &[0]).unwrap();
        assert_eq!(c.graph.n(), 3);
        assert_eq!(c.graph.m(), 5);
        assert!(!c.graph.is_simple());
    }

    #[test]
    fn contract_everything() {
        let p = named::petersen();
        let all: Vec<usize> = (0..p.m()).collect();
        let c = contract(&p, &all).unwrap();
        assert_eq!((c.graph.n(), c.graph.m()), (1, 0));
    }

    #[test]
    fn contract_outer_five_cycle_of_petersen() {
        let p = named::petersen();
        let outer: Vec<usize> = (0..5).collect();
        let c = contract(&p, &outer).unwrap();
        assert_eq!(c.graph.n(), 6);
        assert_eq!(c.graph.degree(c.vertex_map[0]), 5);
    }

    #[test]
    fn orientation_carries_through_edge_map() {
        let p = named::petersen();
        let mut o = PartialOrientation::undirected(p.m());
        o.set(5, Dir::Forward); // spoke 0 -> 5
        o.set(10, Dir::Backward);
        let c = contract(&p, &[0, 1]).unwrap();
        let carried = c.carry(&o);
        let new5 = c.edge_map[5].unwrap();
        assert_eq!(
            carried.arc(&c.graph, new5),
            Some((c.vertex_map[0], c.vertex_map[5]))
        );
        assert_eq!(carried.get(c.edge_map[10].unwrap()), Dir::Backward);
        assert_eq!(contract(&p, &[99]).unwrap_err(), Error::UnknownEdge(99));
    }
}
