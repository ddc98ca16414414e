//! Acceptance suite: one line per criterion. Runs without the libtest
//! harness so the report is printed as it goes; exits non-zero when a
//! criterion outside `UNATTAINABLE` fails or one inside it starts passing.

use std::process::ExitCode;
use std::time::Instant;

use pmcut::gadgets::{
    c4_reduction, contract_triangle, dplus, internal_vertex_count, orient_extremal_sinks_sources,
    reconstruct_hat_wiring, split_vertex, tilde_construction, C4Side,
};
use pmcut::generate::{generate_cubic, CubicFilters};
use pmcut::graph::{
    bipartition, cyclic_connectivity, girth, is_k_edge_connected, is_k_vertex_connected,
    k4_embedding, named, prism_embedding, MultiGraph, OrientedGraph, PartialOrientation,
    PlaneEmbedding,
};
use pmcut::matchings::{
    bonds_within_matching, count_perfect_matchings, cycle_space_basis,
    even_subgraph_with_strong_contraction, is_hamiltonian, min_cut_in_perfect_matching,
    perfect_matchings, random_even_subgraph, EvenSearchMode, EvenSearchOutcome, MatchingCutSize,
};
use pmcut::planar::{
    directed_dual, duality_properties_check, nl_hochstaettler_crosscheck, random_triangulation,
};
use pmcut::search::{
    can_edge_be_a_arc, every_matching_has_directed_cut, sweep_good_matchings, verify_certificate,
    CertificateKind, SearchProblem,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot be met; the ledger explains why.
const UNATTAINABLE: &[usize] = &[3];

/// Sample sizes for criterion 5.
const EVEN_SAMPLES: u64 = 100_000;
const ODD_SAMPLES: usize = 10_000;

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: pmcut::Error) -> String {
    e.to_string()
}

fn petersen_arc() -> Result<OrientedGraph, String> {
    let g = named::petersen();
    let c = can_edge_be_a_arc(&g, 0).map_err(err)?;
    let o = c.orientation.ok_or("no a-arc orientation")?;
    OrientedGraph::new(g, o).map_err(err)
}

fn three_connected(n: usize) -> Result<Vec<MultiGraph>, String> {
    generate_cubic(
        n,
        CubicFilters {
            three_connected: true,
            ..Default::default()
        },
    )
    .map_err(err)
}

fn c1() -> Outcome {
    let r = sweep_good_matchings(&named::petersen(), false).map_err(err)?;
    ensure(r.checked == 1 << 15, format!("checked {}", r.checked))?;
    ensure(
        r.all_pass(),
        format!("counterexample {:?}", r.counterexample),
    )?;
    Ok(format!(
        "{} of {} orientations have a good matching",
        r.passed, r.checked
    ))
}

fn c2() -> Outcome {
    let g = named::petersen();
    let c = can_edge_be_a_arc(&g, 0).map_err(err)?;
    ensure(
        c.kind == CertificateKind::OrientationFound,
        format!("{:?}", c.kind),
    )?;
    let o = c.orientation.clone().ok_or("no orientation")?;
    let p = SearchProblem::new(g.clone(), PartialOrientation::undirected(g.m()), Some(0))
        .map_err(err)?;
    let constrained = p.constrained_matchings();
    ensure(
        constrained.len() == 2,
        format!("{} constrained matchings", constrained.len()),
    )?;
    ensure(
        c.witnesses.len() == 2,
        format!("{} witnesses", c.witnesses.len()),
    )?;
    for (w, m) in c.witnesses.iter().zip(&constrained) {
        ensure(w.matching == m.edges, "witness matching out of order")?;
        ensure(w.bond.len() == 5, format!("bond of size {}", w.bond.len()))?;
        // the bond is the whole matching and the only one inside it
        let bonds = bonds_within_matching(&g, m).map_err(err)?;
        ensure(
            bonds.len() == 1 && bonds[0].edges == m.edges,
            "matching is not a single bond",
        )?;
        ensure(
            w.bond.directed_by(&g, &o) == Some(w.direction),
            "witness bond not directed",
        )?;
    }
    ensure(
        verify_certificate(&c, &p).is_valid(),
        "certificate does not verify",
    )?;
    Ok(format!(
        "2 constrained matchings, each a single directed 5-bond, {} arcs",
        o.directed_count()
    ))
}

fn c3() -> Outcome {
    let sg = split_vertex(&petersen_arc()?, 0).map_err(err)?;
    match reconstruct_hat_wiring(&sg).map_err(err)? {
        Some(r) => {
            let g = &r.hat.graph.graph;
            ensure(g.n() == 24 && g.is_cubic(), "wrong shape")?;
            ensure(is_k_vertex_connected(g, 3), "not 3-connected")?;
            ensure(
                every_matching_has_directed_cut(&r.hat.graph).map_err(err)?,
                "some perfect matching avoids directed cuts",
            )?;
            Ok(format!(
                "pattern {} of {}",
                r.pattern_index, r.patterns_tried
            ))
        }
        None => Err(
            "no 2-regular pendant wiring of two split Petersen copies admits an \
                     orientation in which every perfect matching contains a directed cut"
                .into(),
        ),
    }
}

fn c4() -> Outcome {
    let sg = split_vertex(&petersen_arc()?, 0).map_err(err)?;
    let t = tilde_construction(&sg).map_err(err)?;
    let g = &t.graph.graph;
    ensure(g.n() == 32, format!("{} vertices", g.n()))?;
    ensure(
        g.is_cubic() && is_k_vertex_connected(g, 3),
        "not cubic 3-connected",
    )?;
    ensure(
        every_matching_has_directed_cut(&t.graph).map_err(err)?,
        "a matching avoids directed cuts",
    )?;
    Ok(format!(
        "32 vertices, all {} perfect matchings contain a directed cut",
        count_perfect_matchings(g)
    ))
}

fn c5() -> Outcome {
    let sg = split_vertex(&petersen_arc()?, 0).map_err(err)?;
    let t = tilde_construction(&sg).map_err(err)?;
    let (oriented, k) = orient_extremal_sinks_sources(&t.graph).map_err(err)?;
    ensure(
        k == 15 && internal_vertex_count(&oriented) == 15,
        format!("internal count {k}"),
    )?;
    let r = dplus(&oriented, None).map_err(err)?;
    let g = &r.graph.graph;
    ensure(g.n() == 122, format!("{} vertices", g.n()))?;
    ensure(
        g.is_cubic() && is_k_edge_connected(g, 3),
        "not cubic 3-edge-connected",
    )?;
    let mode = EvenSearchMode::Sampling {
        samples: EVEN_SAMPLES,
        seed: 0x5eed,
    };
    match even_subgraph_with_strong_contraction(g, &r.graph.orientation, mode).map_err(err)? {
        EvenSearchOutcome::NotFound { samples } => ensure(samples == EVEN_SAMPLES, "short run")?,
        other => return Err(format!("sampling gave {other:?}")),
    }
    // parity law: every odd subgraph meets each gadget in an odd number of
    // suspension arcs
    let basis = cycle_space_basis(g);
    let words = g.m().div_ceil(64).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..ODD_SAMPLES {
        let even = random_even_subgraph(&basis, words, &mut rng);
        for site in &r.gadgets {
            let odd = site
                .suspension
                .iter()
                .filter(|&&e| even[e / 64] >> (e % 64) & 1 == 0)
                .count();
            ensure(odd % 2 == 1, "parity law violated")?;
        }
    }
    Ok(format!(
        "122 vertices; {EVEN_SAMPLES} even subgraphs of a {}-dim cycle space, none strong; \
         parity law on {ODD_SAMPLES} odd subgraphs",
        basis.len()
    ))
}

fn c6() -> Outcome {
    // (a)
    let mut graphs = 0;
    let mut orientations: u64 = 0;
    for n in (4..=14).step_by(2) {
        for g in three_connected(n)? {
            let r = sweep_good_matchings(&g, false).map_err(err)?;
            ensure(
                r.all_pass(),
                format!("counterexample on n = {n}: {:?}", r.counterexample),
            )?;
            graphs += 1;
            orientations += r.checked;
        }
    }
    // (b) and (c)
    let mut bip = 0;
    let mut girth6 = 0;
    let mut raw_verdict = true;
    let mut filtered_verdict = true;
    for n in (6..=20).step_by(2) {
        let all = generate_cubic(
            n,
            CubicFilters {
                bipartite: true,
                three_connected: true,
                girth_min: None,
            },
        )
        .map_err(err)?;
        let filtered = generate_cubic(
            n,
            CubicFilters {
                bipartite: true,
                three_connected: true,
                girth_min: Some(6),
            },
        )
        .map_err(err)?;
        let by_hand: Vec<&MultiGraph> = all
            .iter()
            .filter(|g| girth(g).is_some_and(|k| k >= 6))
            .collect();
        ensure(
            by_hand.len() == filtered.len(),
            "girth filter disagrees with the corpus",
        )?;
        for g in &all {
            raw_verdict &= is_hamiltonian(g).is_some();
        }
        for g in &filtered {
            filtered_verdict &= is_hamiltonian(g).is_some();
        }
        bip += all.len();
        girth6 += filtered.len();
    }
    ensure(
        raw_verdict,
        "a bipartite 3-connected graph is not Hamiltonian",
    )?;
    ensure(
        raw_verdict == filtered_verdict,
        "filtered and raw verdicts differ",
    )?;
    Ok(format!(
        "(a) {graphs} graphs, {orientations} orientations; (b) {bip} bipartite graphs Hamiltonian; \
         (c) {girth6} girth-6 graphs agree"
    ))
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let hosts: [(&str, PlaneEmbedding); 3] = [
        ("K4", k4_embedding()),
        ("prism", prism_embedding(3)),
        ("Q3", prism_embedding(4)),
    ];
    let mut total = 0;
    for (name, e) in hosts {
        let m = e.graph().m();
        for bits in 0..1u64 << m {
            let o = PartialOrientation::from_bits(m, bits);
            let dp = directed_dual(&e, &o).map_err(err)?;
            let r = duality_properties_check(&dp, &mut rng).map_err(err)?;
            ensure(r.holds(), format!("{name} {bits:#b}: {:?}", r.violations))?;
            // simple hosts: every orientation has digirth at least 3
            let c = nl_hochstaettler_crosscheck(&e, &o).map_err(err)?;
            ensure(c.agree, format!("{name} {bits:#b}: cross-check disagrees"))?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} orientations, four clauses and cross-check hold"
    ))
}

fn c8() -> Outcome {
    let cc = |g: &MultiGraph| cyclic_connectivity(g).map_err(err);
    ensure(cc(&named::coxeter())? == Some(7), "Coxeter")?;
    ensure(cc(&named::petersen())? == Some(5), "Petersen")?;
    ensure(
        min_cut_in_perfect_matching(&named::cube()).map_err(err)? == MatchingCutSize::Finite(4),
        "Q3",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut embedded: Vec<PlaneEmbedding> = (3..12).map(prism_embedding).collect();
    for n in 4..20 {
        let t = random_triangulation(n, 3 * n, &mut rng).map_err(err)?;
        let m = t.graph().m();
        embedded.push(
            directed_dual(&t, &PartialOrientation::undirected(m))
                .map_err(err)?
                .dual,
        );
    }
    for e in &embedded {
        let n = e.graph().n();
        ensure(e.graph().is_cubic(), "corpus graph not cubic")?;
        ensure(
            e.face_count() == 2 + n / 2,
            format!("{n} vertices, {} faces", e.face_count()),
        )?;
    }
    Ok(format!(
        "cyclic connectivity 7 and 5, Q3 min cut 4, f = 2 + n/2 on {} embeddings",
        embedded.len()
    ))
}

fn hamiltonian_cycle(g: &MultiGraph, order: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    order.len() == g.n()
        && order
            .iter()
            .all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && (0..order.len()).all(|i| g.has_edge(order[i], order[(i + 1) % order.len()]))
}

fn c9() -> Outcome {
    let mut corpus = Vec::new();
    for n in (4..=12).step_by(2) {
        corpus.extend(generate_cubic(n, CubicFilters::default()).map_err(err)?);
    }
    corpus.extend(three_connected(14)?);
    // matching enumerator vs an independent counter
    fn count(g: &MultiGraph, used: &mut [bool]) -> u128 {
        let Some(v) = used.iter().position(|u| !u) else {
            return 1;
        };
        used[v] = true;
        let mut total = 0;
        for &(w, _) in g.incident(v) {
            if !used[w] {
                used[w] = true;
                total += count(g, used);
                used[w] = false;
            }
        }
        used[v] = false;
        total
    }
    for g in &corpus {
        let c = count(g, &mut vec![false; g.n()]);
        ensure(
            perfect_matchings(g).len() as u128 == c,
            "enumerator disagrees",
        )?;
    }
    // bonds inside matchings vs all vertex subsets, up to 12 vertices
    let mut pairs = 0;
    for g in corpus.iter().filter(|g| g.n() <= 12) {
        for m in perfect_matchings(g) {
            let mut in_m = vec![false; g.m()];
            for &e in &m.edges {
                in_m[e] = true;
            }
            let mut brute = std::collections::BTreeSet::new();
            for s in (1..(1u32 << g.n()) - 1).step_by(2) {
                let side: Vec<bool> = (0..g.n()).map(|v| s >> v & 1 == 1).collect();
                let ids: Vec<usize> = g
                    .edges()
                    .filter(|&(_, a, b)| side[a] != side[b])
                    .map(|(e, _, _)| e)
                    .collect();
                if ids.iter().all(|&e| in_m[e]) {
                    let b = pmcut::graph::Bond::from_side(g, &side);
                    if b.is_valid(g) {
                        brute.insert(b.edges.clone());
                    }
                }
            }
            let ours: std::collections::BTreeSet<Vec<usize>> = bonds_within_matching(g, &m)
                .map_err(err)?
                .into_iter()
                .map(|b| b.edges)
                .collect();
            ensure(ours == brute, "bond enumeration disagrees with subsets")?;
            pairs += 1;
        }
    }
    // certificate soundness over every search run here
    let mut certs = 0;
    for g in corpus
        .iter()
        .filter(|g| g.n() <= 10 && is_k_vertex_connected(g, 3))
    {
        for e in 0..g.m() {
            let p = SearchProblem::new(g.clone(), PartialOrientation::undirected(g.m()), Some(e))
                .map_err(err)?;
            let c = can_edge_be_a_arc(g, e).map_err(err)?;
            ensure(
                verify_certificate(&c, &p).is_valid(),
                "a-arc certificate fails",
            )?;
            certs += 1;
        }
        let p = SearchProblem::unrestricted(g.clone()).map_err(err)?;
        let c = pmcut::search::exists_orientation_all_pm_cut(&p).map_err(err)?;
        ensure(
            verify_certificate(&c, &p).is_valid(),
            "search certificate fails",
        )?;
        certs += 1;
    }
    // triangle contraction transfers Hamiltonicity upwards
    let mut triangles = 0;
    for g in &corpus {
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                for c in b + 1..g.n() {
                    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                        continue;
                    }
                    let (small, _) =
                        contract_triangle(&OrientedGraph::undirected(g.clone()), [a, b, c])
                            .map_err(err)?;
                    if is_hamiltonian(&small.graph).is_some() {
                        let cyc = is_hamiltonian(g).ok_or("Hamiltonicity did not lift")?;
                        ensure(hamiltonian_cycle(g, &cyc), "bad cycle")?;
                    }
                    triangles += 1;
                }
            }
        }
    }
    // 4-cycle reductions lift Hamiltonian cycles
    let mut lifts = 0;
    for n in (6..=16).step_by(2) {
        let bip = generate_cubic(
            n,
            CubicFilters {
                bipartite: true,
                three_connected: true,
                girth_min: None,
            },
        )
        .map_err(err)?;
        for g in &bip {
            for u in 0..g.n() {
                for v in g.neighbors(u) {
                    for w in g.neighbors(v) {
                        for x in g.neighbors(w) {
                            if w == u
                                || x == v
                                || x == u
                                || !g.has_edge(x, u)
                                || !(u < v && u < w && u < x && v < x)
                            {
                                continue;
                            }
                            let Ok(r) = c4_reduction(g, [u, v, w, x]) else {
                                continue;
                            };
                            for side in [C4Side::Uv, C4Side::Vw] {
                                if let Some(cyc) = is_hamiltonian(r.reduced(side)) {
                                    let up = r.lift_hamiltonian(side, &cyc).ok_or("no lift")?;
                                    ensure(hamiltonian_cycle(g, &up), "lift is not a cycle")?;
                                    lifts += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(bipartition(&named::cube()).is_some(), "fixture")?;
    Ok(format!(
        "{} graphs counted, {pairs} matchings' bonds, {certs} certificates, {triangles} triangles, {lifts} lifts",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "Petersen sweep", c1),
        (2, "a-arc existence", c2),
        (3, "hat reconstruction", c3),
        (4, "tilde construction", c4),
        (5, "122-vertex pipeline", c5),
        (6, "scaled-down sweeps", c6),
        (7, "duality exhaustive", c7),
        (8, "parameter checks", c8),
        (9, "property suites", c9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let expected_fail = UNATTAINABLE.contains(&id);
        match &outcome {
            Ok(detail) => println!("criterion {id} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(why) => println!(
                "criterion {id} ({name}): FAIL{} [{secs:.1}s] {why}",
                if expected_fail {
                    " (known unattainable)"
                } else {
                    ""
                }
            ),
        }
        if outcome.is_ok() == expected_fail {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
