//! Small named graphs used as fixtures and as construction inputs.

use super::formats::parse_graph6;
use super::MultiGraph;

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    MultiGraph::from_edges(n, &edges)
}

pub fn k4() -> MultiGraph {
    complete(4)
}

/// K_{3,3} with classes `{0, 1, 2}` and `{3, 4, 5}`.
pub fn k33() -> MultiGraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    MultiGraph::from_edges(6, &edges)
}

pub fn cycle(n: usize) -> MultiGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_edges(n, &edges)
}

/// `C_k x K_2`: outer cycle `0..k`, inner cycle `k..2k`, spokes `i -- k + i`.
pub fn prism(k: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
    }
    for i in 0..k {
        edges.push((k + i, k + (i + 1) % k));
    }
    for i in 0..k {
        edges.push((i, k + i));
    }
    MultiGraph::from_edges(2 * k, &edges)
}

/// The 3-cube on bit strings `0..8`.
pub fn cube() -> MultiGraph {
    let mut edges = Vec::new();
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            let b = a ^ bit;
            if a < b {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::from_edges(8, &edges)
}

/// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i + 5`.
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    MultiGraph::from_edges(10, &edges)
}

/// Coxeter graph: for `i` mod 7, `d_i` joins `a_i, b_i, c_i`, and
/// `a_i ~ a_{i+1}`, `b_i ~ b_{i+2}`, `c_i ~ c_{i+3}`.
pub fn coxeter() -> MultiGraph {
    let a = |i: usize| i % 7;
    let b = |i: usize| 7 + i % 7;
    let c = |i: usize| 14 + i % 7;
    let d = |i: usize| 21 + i % 7;
    let mut edges = Vec::new();
    for i in 0..7 {
        edges.push((a(i), a(i + 1)));
        edges.push((b(i), b(i + 2)));
        edges.push((c(i), c(i + 3)));
        edges.push((d(i), a(i)));
        edges.push((d(i), b(i)));
        edges.push((d(i), c(i)));
    }
    MultiGraph::from_edges(28, &edges)
}

/// Tutte's 46-vertex non-Hamiltonian planar cubic graph.
pub fn tutte() -> MultiGraph {
    parse_graph6(include_str!("../../assets/tutte.g6").trim()).expect("bundled asset")
}

/// Tietze's graph: Petersen with one vertex replaced by a triangle.
pub fn tietze() -> MultiGraph {
    let p = petersen();
    // replace vertex 0 (neighbours 1, 4, 5) with triangle 10, 11, 12
    let mut edges: Vec<(usize, usize)> = p
        .edges()
        .filter(|&(_, a, b)| a != 0 && b != 0)
        .map(|(_, a, b)| (a, b))
        .collect();
    edges.extend([(10, 1), (11, 4), (12, 5), (10, 11), (11, 12), (12, 10)]);
    let shifted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    MultiGraph::from_edges(12, &shifted)
}

/// Octahedron `K_{2,2,2}`; antipodal pairs are `(0, 1)`, `(2, 3)`, `(4, 5)`.
pub fn octahedron() -> MultiGraph {
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if a / 2 != b / 2 {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::from_edges(6, &edges)
}
