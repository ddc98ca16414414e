use super::{is_connected, MultiGraph};
use crate::error::{Error, Result};

/// A combinatorial plane embedding given by a rotation system.
///
/// Dart `2e` sits at the first stored endpoint of edge `e` and points to the
/// second; dart `2e + 1` is its reverse. `rotation[v]` is the cyclic order of
/// darts leaving `v`. Faces are traced with `next(d) = succ_{head(d)}(rev d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEmbedding {
    graph: MultiGraph,
    rotation: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl PlaneEmbedding {
    /// Validates that `rotation` lists each vertex's darts once and that the
    /// traced faces satisfy Euler's formula (per component).
    pub fn new(graph: MultiGraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::InvalidEmbedding(format!(
                "rotation lists {} vertices, graph has {}",
                rotation.len(),
                graph.n()
            )));
        }
        let mut position = vec![usize::MAX; 2 * graph.m()];
        for (v, darts) in rotation.iter().enumerate() {
            if darts.len() != graph.degree(v) {
                return Err(Error::InvalidEmbedding(format!(
                    "vertex {v} has degree {} but {} darts in its rotation",
                    graph.degree(v),
                    darts.len()
                )));
            }
            for (i, &d) in darts.iter().enumerate() {
                if d >= 2 * graph.m() || position[d] != usize::MAX || dart_tail(&graph, d) != v {
                    return Err(Error::InvalidEmbedding(format!(
                        "dart {d} misplaced in the rotation of vertex {v}"
                    )));
                }
                position[d] = i;
            }
        }
        let emb = PlaneEmbedding {
            graph,
            rotation,
            position,
        };
        let faces = emb.face_count();
        let (_, comps) = super::components(&emb.graph);
        let lhs = emb.graph.n() as i64 - emb.graph.m() as i64 + faces as i64;
        // faces are traced per component, so each contributes its own outer face
        if emb.graph.n() > 0 && lhs != 2 * comps as i64 {
            return Err(Error::InvalidEmbedding(format!(
                "rotation has Euler characteristic {lhs}, not planar"
            )));
        }
        Ok(emb)
    }

    /// Builds a graph and its embedding from cyclic neighbor lists.
    /// Edge ids follow graph6 lexicographic order. Repeated neighbors are
    /// paired first-with-last so that a bundle of parallel edges nests.
    pub fn from_neighbor_orders(orders: &[Vec<usize>]) -> Result<Self> {
        let n = orders.len();
        let mut edges = Vec::new();
        for (u, list) in orders.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(Error::InvalidEmbedding(format!("loop at vertex {u}")));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        let graph = MultiGraph::new(n, edges.iter().copied())?;
        // ids of the parallel class {u, v}, in increasing order
        let class = |u: usize, v: usize| -> Vec<usize> {
            let (a, b) = (u.min(v), u.max(v));
            let start = edges.partition_point(|&x| x < (a, b));
            let end = edges.partition_point(|&x| x <= (a, b));
            (start..end).collect()
        };
        let mut rotation = vec![Vec::new(); n];
        for (u, list) in orders.iter().enumerate() {
            let mut seen_count = std::collections::HashMap::new();
            for &v in list {
                let ids = class(u, v);
                let k = seen_count.entry(v).or_insert(0usize);
                let back_count = orders[v].iter().filter(|&&w| w == u).count();
                if ids.len() != back_count || ids.len() != list.iter().filter(|&&w| w == v).count()
                {
                    return Err(Error::InvalidEmbedding(format!(
                        "neighbor lists of {u} and {v} disagree"
                    )));
                }
                let e = if u < v {
                    ids[*k]
                } else {
                    ids[ids.len() - 1 - *k]
                };
                *k += 1;
                rotation[u].push(if u < v { 2 * e } else { 2 * e + 1 });
            }
        }
        PlaneEmbedding::new(graph, rotation)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Neighbor order around `v` as listed by the rotation.
    pub fn neighbor_order(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&d| self.head(d)).collect()
    }

    #[inline]
    pub fn tail(&self, d: usize) -> usize {
        dart_tail(&self.graph, d)
    }

    #[inline]
    pub fn head(&self, d: usize) -> usize {
        dart_tail(&self.graph, d ^ 1)
    }

    /// Successor of `d` in the rotation at its tail.
    #[inline]
    pub fn succ(&self, d: usize) -> usize {
        let v = self.tail(d);
        let rot = &self.rotation[v];
        rot[(self.position[d] + 1) % rot.len()]
    }

    /// Next dart along the face containing `d`.
    #[inline]
    pub fn next_in_face(&self, d: usize) -> usize {
        self.succ(d ^ 1)
    }

    /// Face index per dart, and the number of faces.
    pub fn face_of_darts(&self) -> (Vec<usize>, usize) {
        let darts = 2 * self.graph.m();
        let mut face = vec![usize::MAX; darts];
        let mut count = 0;
        for start in 0..darts {
            if face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face[d] == usize::MAX {
                face[d] = count;
                d = self.next_in_face(d);
            }
            count += 1;
        }
        (face, count)
    }

    /// Boundary walks as dart sequences, in order of their first dart.
    pub fn face_walks(&self) -> Vec<Vec<usize>> {
        let darts = 2 * self.graph.m();
        let mut seen = vec![false; darts];
        let mut walks = Vec::new();
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.next_in_face(d);
            }
            walks.push(walk);
        }
        walks
    }

    pub fn face_count(&self) -> usize {
        // an isolated vertex bounds one face of its own
        let isolated = (0..self.graph.n())
            .filter(|&v| self.graph.degree(v) == 0)
            .count();
        self.face_of_darts().1 + isolated
    }

    pub fn is_connected(&self) -> bool {
        is_connected(&self.graph)
    }

    /// The embedding with the masked edges removed from graph and rotation;
    /// surviving edges are renumbered in order, returned as `new_id[old]`.
    pub fn delete_edges(&self, remove: &[bool]) -> Result<(PlaneEmbedding, Vec<Option<usize>>)> {
        let mut new_id = vec![None; self.graph.m()];
        let mut edges = Vec::new();
        for (e, a, b) in self.graph.edges() {
            if !remove[e] {
                new_id[e] = Some(edges.len());
                edges.push((a, b));
            }
        }
        let graph = MultiGraph::from_edges(self.graph.n(), &edges);
        let rotation = self
            .rotation
            .iter()
            .map(|darts| {
                darts
                    .iter()
                    .filter_map(|&d| new_id[d / 2].map(|ne| 2 * ne + (d & 1)))
                    .collect()
            })
            .collect();
        Ok((PlaneEmbedding::new(graph, rotation)?, new_id))
    }
}

/// Rotation systems tried by [`find_plane_embedding`] before giving up.
pub const PLANARITY_BOUND: u64 = 1 << 22;

/// Searches all rotation systems of a connected graph for a planar one.
/// Exponential in the number of vertices of degree at least 4; meant for
/// small cubic inputs that arrive without an embedding.
pub fn find_plane_embedding(g: &MultiGraph) -> Result<Option<PlaneEmbedding>> {
    if !is_connected(g) {
        return Err(Error::contract("planarity search needs a connected graph"));
    }
    if g.m() == 0 {
        return PlaneEmbedding::new(g.clone(), vec![Vec::new(); g.n()]).map(Some);
    }
    // Euler with faces of length at least the girth k: m (k - 2) <= k (n - 2)
    if let Some(k) = super::girth(g).filter(|_| g.is_simple()) {
        if g.m() * (k - 2) > k * (g.n() - 2) {
            return Ok(None);
        }
    }
    // each vertex keeps its first dart fixed and permutes the rest
    let choices: Vec<Vec<Vec<usize>>> = (0..g.n())
        .map(|v| {
            let darts: Vec<usize> = g
                .incident(v)
                .iter()
                .map(|&(_, e)| {
                    if g.endpoints(e).0 == v {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                })
                .collect();
            rotations_with_fixed_first(&darts)
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&t| t <= PLANARITY_BOUND)
        .ok_or_else(|| Error::BoundExceeded {
            what: "rotation systems".into(),
            limit: PLANARITY_BOUND as usize,
            hint: "supply a planar_code embedding instead".into(),
        })?;
    let darts = 2 * g.m();
    let target = (2 + g.m()) as i64 - g.n() as i64;
    let mut succ = vec![0usize; darts];
    let set = |succ: &mut [usize], rot: &[usize]| {
        for (i, &d) in rot.iter().enumerate() {
            succ[d] = rot[(i + 1) % rot.len()];
        }
    };
    let mut digit = vec![0usize; g.n()];
    for c in &choices {
        set(&mut succ, &c[0]);
    }
    let mut seen = vec![0u32; darts];
    for round in 1..=total as u32 {
        let mut faces = 0i64;
        for start in 0..darts {
            if seen[start] == round {
                continue;
            }
            let mut d = start;
            while seen[d] != round {
                seen[d] = round;
                d = succ[d ^ 1];
            }
            faces += 1;
        }
        if faces == target {
            let rotation = (0..g.n()).map(|v| choices[v][digit[v]].clone()).collect();
            return PlaneEmbedding::new(g.clone(), rotation).map(Some);
        }
        // mixed-radix increment
        for v in 0..g.n() {
            digit[v] += 1;
            if digit[v] < choices[v].len() {
                set(&mut succ, &choices[v][digit[v]]);
                break;
            }
            digit[v] = 0;
            set(&mut succ, &choices[v][0]);
        }
    }
    Ok(None)
}

fn rotations_with_fixed_first(darts: &[usize]) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, k: usize, prefix: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            let mut r = vec![prefix];
            r.extend_from_slice(rest);
            out.push(r);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, prefix, out);
            rest.swap(k, i);
        }
    }
    let Some((&first, rest)) = darts.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    permute(&mut rest.to_vec(), 0, first, &mut out);
    out
}

#[inline]
fn dart_tail(g: &MultiGraph, d: usize) -> usize {
    let (a, b) = g.endpoints(d / 2);
    if d & 1 == 0 {
        a
    } else {
        b
    }
}

/// Plane embedding of K4 with vertex 0 inside the triangle 1, 2, 3.
pub fn k4_embedding() -> PlaneEmbedding {
    PlaneEmbedding::from_neighbor_orders(&[
        vec![1, 2, 3],
        vec![2, 0, 3],
        vec![3, 0, 1],
        vec![1, 0, 2],
    ])
    .expect("K4 is planar")
}

/// Plane embedding of the prism `C_k x K_2` with the labels of
/// [`super::named::prism`]; `k = 4` gives the 3-cube.
pub fn prism_embedding(k: usize) -> PlaneEmbedding {
    let mut orders = vec![Vec::new(); 2 * k];
    for i in 0..k {
        orders[i] = vec![(i + 1) % k, k + i, (i + k - 1) % k];
        orders[k + i] = vec![i, k + (i + 1) % k, k + (i + k - 1) % k];
    }
    PlaneEmbedding::from_neighbor_orders(&orders).expect("prisms are planar")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;
    use crate::graph::named;

    #[test]
    fn planarity_search_on_named_graphs() {
        for g in [named::k4(), named::prism(3), named::cube(), named::prism(7)] {
            let e = find_plane_embedding(&g).unwrap().expect("planar");
            assert_eq!(e.graph(), &g);
            assert_eq!(e.face_count(), 2 + g.m() - g.n());
        }
        assert!(find_plane_embedding(&named::k33()).unwrap().is_none());
        assert!(find_plane_embedding(&named::petersen()).unwrap().is_none());
        assert!(find_plane_embedding(&named::complete(5)).unwrap().is_none());
        assert!(matches!(
            find_plane_embedding(&named::tutte()),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn k4_has_four_faces() {
        let e = k4_embedding();
        assert_eq!(e.face_count(), 4);
        assert!(e.face_walks().iter().all(|w| w.len() == 3));
    }

    #[test]
    fn prism_embeddings_are_cubic_and_euler() {
        for k in 3..10 {
            let e = prism_embedding(k);
            assert!(e.graph().is_cubic());
            assert_eq!(e.face_count(), 2 + e.graph().n() / 2);
        }
        let q3 = prism_embedding(4);
        assert_eq!(
            canonical_form(q3.graph()).unwrap(),
            canonical_form(&named::cube()).unwrap()
        );
        assert!(q3.face_walks().iter().all(|w| w.len() == 4));
    }

    #[test]
    fn nonplanar_rotation_is_rejected() {
        // any rotation of K_{3,3} has too few faces
        let g = named::k33();
        let orders: Vec<Vec<usize>> = (0..6).map(|v| g.neighbors(v).collect()).collect();
        assert!(matches!(
            PlaneEmbedding::from_neighbor_orders(&orders),
            Err(Error::InvalidEmbedding(_))
        ));
    }

    #[test]
    fn twisted_k4_rotation_is_rejected() {
        let bad = PlaneEmbedding::from_neighbor_orders(&[
            vec![1, 2, 3],
            vec![0, 2, 3],
            vec![3, 0, 1],
            vec![1, 0, 2],
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn parallel_bundle_nests() {
        // theta graph: three parallel edges, three faces
        let e = PlaneEmbedding::from_neighbor_orders(&[vec![1, 1, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(e.face_count(), 3);
    }
}
