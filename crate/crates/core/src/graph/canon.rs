//! Exact canonical labeling by equitable refinement and exhaustive
//! individualization. No automorphism pruning is done, which keeps the leaf
//! set complete: the leaves attaining the best string are exactly one orbit
//! under the automorphism group.

use super::MultiGraph;
use crate::error::{Error, Result};

/// Default vertex bound for [`canonical_form`].
pub const CANONICAL_BOUND: usize = 20;

type Cells = Vec<Vec<usize>>;

struct Canon {
    n: usize,
    count: Vec<u8>,
    best: Option<Vec<u8>>,
    best_labelings: Vec<Vec<usize>>,
}

impl Canon {
    fn new(g: &MultiGraph) -> Self {
        let n = g.n();
        let mut count = vec![0u8; n * n];
        for (_, a, b) in g.edges() {
            count[a * n + b] = count[a * n + b].saturating_add(1);
            count[b * n + a] = count[b * n + a].saturating_add(1);
        }
        Canon {
            n,
            count,
            best: None,
            best_labelings: Vec::new(),
        }
    }

    fn refine(&self, mut cells: Cells) -> Cells {
        'outer: loop {
            for w in 0..cells.len() {
                for x in 0..cells.len() {
                    if cells[x].len() < 2 {
                        continue;
                    }
                    let mut keyed: Vec<(usize, usize)> = cells[x]
                        .iter()
                        .map(|&v| {
                            let k = cells[w]
                                .iter()
                                .map(|&u| self.count[v * self.n + u] as usize)
                                .sum();
                            (k, v)
                        })
                        .collect();
                    if keyed.iter().all(|&(k, _)| k == keyed[0].0) {
                        continue;
                    }
                    keyed.sort_unstable();
                    let mut groups: Cells = Vec::new();
                    let mut last = usize::MAX;
                    for (k, v) in keyed {
                        if k != last {
                            groups.push(Vec::new());
                            last = k;
                        }
                        groups.last_mut().unwrap().push(v);
                    }
                    cells.splice(x..=x, groups);
                    continue 'outer;
                }
            }
            return cells;
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        // label[v] = position of v's cell
        let mut order = Vec::with_capacity(self.n);
        for c in cells {
            order.push(c[0]);
        }
        let mut string = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
        for j in 1..self.n {
            for i in 0..j {
                string.push(self.count[order[i] * self.n + order[j]]);
            }
        }
        let mut label = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            label[v] = i;
        }
        match &self.best {
            Some(b) if *b > string => {}
            Some(b) if *b == string => self.best_labelings.push(label),
            _ => {
                self.best = Some(string);
                self.best_labelings = vec![label];
            }
        }
    }

    fn search(&mut self, cells: Cells) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            self.leaf(&cells);
            return;
        };
        for &v in &cells[t] {
            let rest: Vec<usize> = cells[t].iter().copied().filter(|&u| u != v).collect();
            let mut next = cells.clone();
            next.splice(t..=t, [vec![v], rest]);
            let next = self.refine(next);
            self.search(next);
        }
    }

    fn run(g: &MultiGraph) -> Canon {
        let mut canon = Canon::new(g);
        let mut by_degree: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
        by_degree.sort_unstable();
        let mut cells: Cells = Vec::new();
        let mut last = usize::MAX;
        for (d, v) in by_degree {
            if d != last {
                cells.push(Vec::new());
                last = d;
            }
            cells.last_mut().unwrap().push(v);
        }
        if g.n() == 0 {
            canon.best = Some(Vec::new());
            canon.best_labelings = vec![Vec::new()];
            return canon;
        }
        let cells = canon.refine(cells);
        canon.search(cells);
        canon
    }
}

fn check_bound(g: &MultiGraph, bound: usize) -> Result<()> {
    if g.n() > bound {
        return Err(Error::BoundExceeded {
            what: format!("canonical labeling of a {}-vertex graph", g.n()),
            limit: bound,
            hint: "use an external canonicalizer such as nauty's labelg".into(),
        });
    }
    Ok(())
}

/// Byte string equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &MultiGraph) -> Result<Vec<u8>> {
    canonical_form_bounded(g, CANONICAL_BOUND)
}

pub fn canonical_form_bounded(g: &MultiGraph, bound: usize) -> Result<Vec<u8>> {
    check_bound(g, bound)?;
    let canon = Canon::run(g);
    let mut out = (g.n() as u16).to_be_bytes().to_vec();
    out.extend(canon.best.unwrap());
    Ok(out)
}

/// All automorphisms as vertex permutations `perm[v] = image of v`; the
/// identity comes first.
pub fn automorphisms(g: &MultiGraph) -> Result<Vec<Vec<usize>>> {
    check_bound(g, CANONICAL_BOUND.max(32))?;
    let canon = Canon::run(g);
    let base = &canon.best_labelings[0];
    let mut autos: Vec<Vec<usize>> = canon
        .best_labelings
        .iter()
        .map(|lab| {
            let mut inv = vec![0; g.n()];
            for (v, &l) in lab.iter().enumerate() {
                inv[l] = v;
            }
            base.iter().map(|&l| inv[l]).collect()
        })
        .collect();
    autos.sort();
    autos.dedup();
    Ok(autos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn relabeling_invariance_on_petersen() {
        let p = named::petersen();
        let base = canonical_form(&p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut perm: Vec<usize> = (0..p.n()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&p.relabeled(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn distinguishes_k33_from_prism() {
        assert_ne!(
            canonical_form(&named::k33()).unwrap(),
            canonical_form(&named::prism(3)).unwrap()
        );
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&named::k4()).unwrap().len(), 24);
        assert_eq!(automorphisms(&named::k33()).unwrap().len(), 72);
        assert_eq!(automorphisms(&named::cube()).unwrap().len(), 48);
        assert_eq!(automorphisms(&named::petersen()).unwrap().len(), 120);
        let p = named::petersen();
        for a in automorphisms(&p).unwrap() {
            for (_, x, y) in p.edges() {
                assert!(p.has_edge(a[x], a[y]));
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        let err = canonical_form(&named::coxeter()).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { limit: 20, .. }));
    }

    #[test]
    fn multigraphs_count_parallel_edges() {
        let a = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]);
        let b = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (1, 2)]);
        let c = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }
}
