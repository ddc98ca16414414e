use std::collections::VecDeque;

use super::{MultiGraph, PartialOrientation};
use crate::error::{Error, Result};

/// Component index per vertex and the number of components.
pub fn components(g: &MultiGraph) -> (Vec<usize>, usize) {
    let mut comp = vec![usize::MAX; g.n()];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &(w, _) in g.incident(v) {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

pub fn is_connected(g: &MultiGraph) -> bool {
    components(g).1 <= 1
}

/// A proper 2-coloring (`true` = second class), if one exists.
pub fn bipartition(g: &MultiGraph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &(w, _) in g.incident(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Length of a shortest cycle; `None` for forests. A parallel pair has girth 2.
pub fn girth(g: &MultiGraph) -> Option<usize> {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent_edge = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent_edge[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for &(w, e) in g.incident(v) {
                if e == parent_edge[v] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Length of a shortest directed cycle using directed edges only; `None` if
/// there is none.
pub fn digirth(g: &MultiGraph, o: &PartialOrientation) -> Option<usize> {
    let out = o.out_adjacency(g);
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(v) = queue.pop_front() {
            if dist[v] + 1 >= best {
                break;
            }
            for &w in &out[v] {
                if w == root {
                    best = best.min(dist[v] + 1);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Strongly connected component index per vertex (directed edges only),
/// numbered in reverse topological order, and the component count.
pub fn strong_components(g: &MultiGraph, o: &PartialOrientation) -> (Vec<usize>, usize) {
    let out = o.out_adjacency(g);
    tarjan(&out)
}

pub(crate) fn tarjan(out: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = out.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        call.push((s, 0));
        index[s] = next_index;
        low[s] = next_index;
        next_index += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < out[v].len() {
                let w = out[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// Strong connectivity of a fully oriented graph.
pub fn is_strongly_connected(g: &MultiGraph, o: &PartialOrientation) -> Result<bool> {
    o.check_host(g)?;
    if !o.is_full() {
        return Err(Error::contract(
            "strong connectivity needs a full orientation",
        ));
    }
    Ok(strong_components(g, o).1 <= 1)
}

/// True when the directed edges contain no directed cycle.
pub fn is_acyclic(g: &MultiGraph, o: &PartialOrientation) -> bool {
    let out = o.out_adjacency(g);
    let mut indeg = vec![0usize; g.n()];
    for list in &out {
        for &w in list {
            indeg[w] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    seen == g.n()
}

/// Unit-capacity flow network solved by BFS augmentation.
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    /// Adds arc `a -> b` with capacity `c` and its residual twin.
    fn add(&mut self, a: usize, b: usize, c: u32, c_back: u32) {
        self.out[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.out[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(c_back);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.out.len();
        let mut flow = 0;
        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            pred[s] = usize::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.out[v] {
                    let w = self.head[a];
                    if self.cap[a] > 0 && pred[w] == usize::MAX {
                        pred[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

fn local_edge_connectivity(g: &MultiGraph, s: usize, t: usize, limit: usize) -> usize {
    let mut net = FlowNet::new(g.n());
    for (_, a, b) in g.edges() {
        net.add(a, b, 1, 1);
    }
    net.max_flow(s, t, limit)
}

/// Minimum number of edges whose removal disconnects `g` (0 if disconnected
/// or on fewer than two vertices).
pub fn edge_connectivity(g: &MultiGraph) -> usize {
    edge_connectivity_capped(g, usize::MAX)
}

fn edge_connectivity_capped(g: &MultiGraph, cap: usize) -> usize {
    if g.n() < 2 || !is_connected(g) {
        return 0;
    }
    let mut best = cap.min(g.min_degree());
    for t in 1..g.n() {
        if best == 0 {
            break;
        }
        best = best.min(local_edge_connectivity(g, 0, t, best));
    }
    best
}

pub fn is_k_edge_connected(g: &MultiGraph, k: usize) -> bool {
    g.n() >= 2 && edge_connectivity_capped(g, k) >= k
}

/// Internally vertex-disjoint `s`-`t` paths for non-adjacent `s`, `t`.
fn local_vertex_connectivity(g: &MultiGraph, s: usize, t: usize, limit: usize) -> usize {
    // vertex v splits into v_in = 2v and v_out = 2v + 1
    let n = g.n();
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { u32::MAX / 4 } else { 1 };
        net.add(2 * v, 2 * v + 1, c, 0);
    }
    for (_, a, b) in g.edges() {
        net.add(2 * a + 1, 2 * b, 1, 0);
        net.add(2 * b + 1, 2 * a, 1, 0);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Vertex connectivity; `n - 1` for graphs whose vertices are pairwise adjacent.
pub fn vertex_connectivity(g: &MultiGraph) -> usize {
    vertex_connectivity_capped(g, usize::MAX)
}

fn vertex_connectivity_capped(g: &MultiGraph, cap: usize) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if !is_connected(g) {
        return 0;
    }
    let mut adjacent = vec![false; n * n];
    for (_, a, b) in g.edges() {
        adjacent[a * n + b] = true;
        adjacent[b * n + a] = true;
    }
    let mut best = cap.min(n - 1);
    // Every minimum separator misses one of the first best + 1 vertices.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !adjacent[i * n + j] {
                best = best.min(local_vertex_connectivity(g, i, j, best));
            }
        }
        i += 1;
    }
    best
}

pub fn is_k_vertex_connected(g: &MultiGraph, k: usize) -> bool {
    g.n() > k && vertex_connectivity_capped(g, k) >= k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Dir};

    fn directed_cycle(n: usize) -> (MultiGraph, PartialOrientation) {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = MultiGraph::from_edges(n, &edges);
        let o = PartialOrientation::from_states(vec![Dir::Forward; n]);
        (g, o)
    }

    #[test]
    fn small_named_graphs() {
        let k4 = named::k4();
        assert!(k4.is_cubic());
        assert!(bipartition(&k4).is_none());
        assert_eq!(girth(&k4), Some(3));
        assert_eq!(edge_connectivity(&k4), 3);
        assert_eq!(vertex_connectivity(&k4), 3);

        let k33 = named::k33();
        assert!(bipartition(&k33).is_some());
        assert_eq!(girth(&k33), Some(4));

        let p = named::petersen();
        assert!(p.is_cubic());
        assert!(bipartition(&p).is_none());
        assert_eq!(girth(&p), Some(5));
        assert_eq!(edge_connectivity(&p), 3);
        assert_eq!(vertex_connectivity(&p), 3);
    }

    #[test]
    fn girth_of_forest_and_parallel_pair() {
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(girth(&path), None);
        let theta = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(girth(&theta), Some(2));
        assert_eq!(edge_connectivity(&theta), 3);
    }

    #[test]
    fn digirth_examples() {
        let (g, o) = directed_cycle(3);
        assert_eq!(digirth(&g, &o), Some(3));
        let two = MultiGraph::from_edges(2, &[(0, 1), (1, 0)]);
        let o2 = PartialOrientation::from_states(vec![Dir::Forward, Dir::Forward]);
        assert_eq!(digirth(&two, &o2), Some(2));
        let tree = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        for bits in 0..8 {
            assert_eq!(
                digirth(&tree, &PartialOrientation::from_bits(3, bits)),
                None
            );
        }
        // undirected edges do not close cycles
        let mut o3 = o.clone();
        o3.set(0, Dir::Undirected);
        assert_eq!(digirth(&g, &o3), None);
    }

    #[test]
    fn strong_and_acyclic() {
        let (g, o) = directed_cycle(4);
        assert!(is_strongly_connected(&g, &o).unwrap());
        assert!(!is_acyclic(&g, &o));
        let mut partial = o.clone();
        partial.set(1, Dir::Undirected);
        assert!(is_strongly_connected(&g, &partial).is_err());
        assert!(is_acyclic(&g, &partial));
        let mut flipped = o;
        flipped.set(2, Dir::Backward);
        assert!(!is_strongly_connected(&g, &flipped).unwrap());
        assert!(is_acyclic(&g, &flipped));
    }

    #[test]
    fn connectivity_of_disconnected_and_bridged() {
        let two_k4 = named::k4().disjoint_union(&named::k4());
        assert_eq!(edge_connectivity(&two_k4), 0);
        assert_eq!(vertex_connectivity(&two_k4), 0);
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(edge_connectivity(&path), 1);
        assert_eq!(vertex_connectivity(&path), 1);
        assert!(!is_k_vertex_connected(&named::k4(), 4));
        assert!(is_k_vertex_connected(&named::k4(), 3));
    }
}
