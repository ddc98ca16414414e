use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use pmcut::graph::formats::{parse_digraph6, parse_graph6, parse_planar_code, read_sidecar};
use pmcut::graph::{canonical_form, is_k_edge_connected, named, MultiGraph, OrientedGraph};
use pmcut::matchings::count_perfect_matchings;

fn pmcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmcut"))
        .args(args)
        .env_remove("PMCUT_JOBS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn summary(o: &Output) -> Value {
    lines(o).pop().expect("summary")["summary"].clone()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let o = pmcut(&full);
    assert_eq!(code(&o), 0);
    write(dir, name, &String::from_utf8(o.stdout).unwrap())
}

#[test]
fn analyze_named_graphs() {
    let o = pmcut(&["analyze", "named:petersen", "named:k4", "named:coxeter"]);
    assert_eq!(code(&o), 0);
    let r = lines(&o);
    assert_eq!(r[0]["girth"], 5);
    assert_eq!(r[0]["cyclic_connectivity"], 5);
    assert_eq!(r[0]["perfect_matchings"], 6);
    assert_eq!(r[0]["min_cut_in_perfect_matching"], 5);
    assert_eq!(r[0]["hamiltonian"], false);
    assert_eq!(r[0]["planar"], false);
    assert_eq!(r[1]["hamiltonian"], true);
    assert_eq!(r[1]["min_cut_in_perfect_matching"], "infinite");
    assert_eq!(r[1]["planar"], true);
    assert_eq!(r[2]["cyclic_connectivity"], 7);
    assert_eq!(r[2]["hamiltonian"], false);
}

#[test]
fn analyze_reports_parse_errors_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "mixed.g6", "C~\nthis is not graph6\nEFz_\n");
    let o = pmcut(&["analyze", &f]);
    assert_eq!(code(&o), 65);
    let r = lines(&o);
    assert_eq!(r.len(), 3);
    assert_eq!(r[0]["n"], 4);
    assert!(r[1]["parse_error"].is_string());
    assert_eq!(r[2]["n"], 6);
}

#[test]
fn usage_and_io_errors_exit_above_two() {
    assert_eq!(code(&pmcut(&["verify"])), 64);
    assert_eq!(code(&pmcut(&["verify", "no-such-mode", "named:k4"])), 64);
    assert_eq!(code(&pmcut(&["analyze", "/definitely/not/here.g6"])), 66);
    assert_eq!(code(&pmcut(&["analyze", "named:nonsense"])), 64);
}

#[test]
fn hochstaettler_prime_campaign_finds_nothing_with_or_without_filters() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(
        dir.path(),
        "c3.g6",
        &["4,6,8,10,12,14", "--three-connected"],
    );
    for extra in [&[][..], &["--no-a-arc-filter", "--no-triangle-filter"][..]] {
        let mut args = vec!["verify", "hochstaettler-prime", &f];
        args.extend_from_slice(extra);
        let o = pmcut(&args);
        assert_eq!(code(&o), 0);
        let s = summary(&o);
        assert_eq!(s["holds"], 419);
        assert_eq!(s["counterexamples"], 0);
    }
}

#[test]
fn tutte_campaign_agrees_with_and_without_girth_filter() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(
        dir.path(),
        "bip.g6",
        &["6,8,10,12,14,16", "--bipartite", "--three-connected"],
    );
    let filtered = pmcut(&["verify", "tutte", &f]);
    let raw = pmcut(&["verify", "tutte", &f, "--no-girth-filter"]);
    assert_eq!(code(&filtered), 0);
    assert_eq!(code(&raw), 0);
    let (a, b) = (summary(&filtered), summary(&raw));
    assert_eq!(a["holds"], b["holds"]);
    assert_eq!(a["holds"], 50);
    let methods: Vec<Value> = lines(&filtered)
        .into_iter()
        .map(|l| l["detail"].clone())
        .collect();
    assert!(methods
        .iter()
        .any(|m| m.as_str().is_some_and(|s| s.contains("4-cycle"))));
}

#[test]
fn class_mismatches_are_skipped_with_a_note() {
    let o = pmcut(&["verify", "tait", "named:petersen", "named:cube"]);
    assert_eq!(code(&o), 0);
    let r = lines(&o);
    assert_eq!(r[0]["status"], "skipped");
    assert_eq!(r[0]["detail"], "not planar");
    assert_eq!(r[1]["status"], "holds");
    let o = pmcut(&["verify", "kv", "named:petersen"]);
    assert_eq!(lines(&o)[0]["detail"], "not bipartite");
}

/// Independent certificate check: every witness bond lies inside its
/// matching, separates `side` from the rest, and is directed one way.
fn check_found_certificate(cert: &Value) -> OrientedGraph {
    assert_eq!(cert["schema_version"], 1);
    assert_eq!(cert["verification"]["status"], "passed");
    let text = format!(
        "{}\n{}\n",
        cert["graph"].as_str().unwrap(),
        cert["orientation"].as_str().unwrap()
    );
    let d = read_sidecar(&text).pop().unwrap().unwrap();
    let g = &d.graph;
    let witnesses = cert["witnesses"].as_array().unwrap();
    for w in witnesses {
        let ids = |v: &Value| -> Vec<usize> {
            v.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect()
        };
        let matching = ids(&w["matching"]);
        let side = ids(&w["bond"]["side"]);
        let edges = ids(&w["bond"]["edges"]);
        assert_eq!(matching.len() * 2, g.n());
        let mut covered = vec![false; g.n()];
        for &e in &matching {
            let (a, b) = g.endpoints(e);
            assert!(!covered[a] && !covered[b]);
            covered[a] = true;
            covered[b] = true;
        }
        let mut in_side = vec![false; g.n()];
        for &v in &side {
            in_side[v] = true;
        }
        let crossing: Vec<usize> = g
            .edges()
            .filter(|&(_, a, b)| in_side[a] != in_side[b])
            .map(|(e, _, _)| e)
            .collect();
        assert_eq!(crossing, edges);
        assert!(edges.iter().all(|e| matching.contains(e)));
        let away = w["direction"] == "away";
        for &e in &edges {
            let (t, _) = d.arc(e).expect("bond edges are directed");
            assert_eq!(in_side[t], away);
        }
    }
    d
}

#[test]
fn search_a_arc_on_petersen() {
    let o = pmcut(&["search", "a-arc", "named:petersen"]);
    assert_eq!(code(&o), 0);
    let cert = &lines(&o)[0]["certificate"];
    assert_eq!(cert["kind"], "orientation-found");
    let ws = cert["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 2);
    for w in ws {
        assert_eq!(w["bond"]["edges"].as_array().unwrap().len(), 5);
    }
    check_found_certificate(cert);
}

#[test]
fn search_refutes_k33() {
    for mode in ["a-arc", "all-pm-cut"] {
        let o = pmcut(&["search", mode, "named:k33"]);
        assert_eq!(code(&o), 0);
        assert_eq!(lines(&o)[0]["certificate"]["kind"], "refuted");
    }
}

#[test]
fn search_keeps_fixed_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let p = named::petersen();
    let g6 = pmcut::graph::formats::write_graph6(&p).unwrap();
    // edge 3 (lexicographic) fixed from its larger to its smaller endpoint
    let fix = write(dir.path(), "fix.txt", &format!("{g6}\nO:000200000000000\n"));
    let o = pmcut(&[
        "search",
        "a-arc",
        "named:petersen",
        "--fix-orientation",
        &fix,
    ]);
    assert_eq!(code(&o), 0);
    let cert = &lines(&o)[0]["certificate"];
    let d = check_found_certificate(cert);
    let (a, b) = d.graph.endpoints(3);
    assert_eq!(d.arc(3), Some((a.max(b), a.min(b))));
}

#[test]
fn incomplete_search_exits_two() {
    let o = pmcut(&[
        "search",
        "all-pm-cut",
        "named:petersen",
        "--node-limit",
        "1",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(lines(&o)[0]["certificate"]["kind"], "incomplete");
}

fn construct(args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let o = pmcut(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn tilde_is_a_counterexample_with_verified_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "tilde.txt",
        &construct(&["tilde", "named:petersen"]),
    );
    let o = pmcut(&["verify", "hochstaettler-prime", &f]);
    assert_eq!(code(&o), 1);
    let r = lines(&o);
    assert_eq!(r[0]["status"], "counterexample");
    let d = check_found_certificate(&r[0]["certificate"]);
    assert_eq!(d.graph.n(), 32);
    let witnesses = r[0]["certificate"]["witnesses"].as_array().unwrap().len();
    assert_eq!(witnesses as u128, count_perfect_matchings(&d.graph));
}

#[test]
fn chain_builds_the_122_vertex_graph() {
    let out = construct(&[
        "tilde,orient,dplus",
        "named:petersen",
        "--format",
        "digraph6",
    ]);
    let d = parse_digraph6(out.trim()).unwrap();
    assert_eq!(d.graph.n(), 122);
    assert!(d.graph.is_cubic());
    assert!(is_k_edge_connected(&d.graph, 3));
    assert!(d.orientation.is_full());

    // exhausting the cycle space is out of reach: reported as incomplete
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d122.d6", &out);
    let o = pmcut(&["verify", "hochstaettler", &f, "--samples", "2000"]);
    assert_eq!(code(&o), 2);
    assert_eq!(lines(&o)[0]["status"], "incomplete");
}

#[test]
fn contract_triangle_on_prism_gives_k4() {
    let out = construct(&["contract-triangle", "named:prism3", "--format", "graph6"]);
    let g = parse_graph6(out.trim()).unwrap();
    assert_eq!(
        canonical_form(&g).unwrap(),
        canonical_form(&named::k4()).unwrap()
    );
}

#[test]
fn c4_reduce_on_cube_gives_k33() {
    let out = construct(&["c4-reduce", "named:cube", "--format", "graph6"]);
    let g = parse_graph6(out.trim()).unwrap();
    assert_eq!(
        canonical_form(&g).unwrap(),
        canonical_form(&named::k33()).unwrap()
    );
}

#[test]
fn dual_of_48_vertex_cubic_graph_has_26_vertices() {
    let o = pmcut(&[
        "construct",
        "dual",
        "named:prism24",
        "--format",
        "planar-code",
    ]);
    assert_eq!(code(&o), 0);
    let embs = parse_planar_code(&o.stdout).unwrap();
    assert_eq!(embs.len(), 1);
    assert_eq!(embs[0].graph().n(), 2 + 48 / 2);
}

#[test]
fn expand_then_dual_round_trip_is_embedded() {
    // K4 expanded is the truncated tetrahedron: 12 vertices, 8 faces
    let o = pmcut(&["construct", "expand", "named:k4", "--format", "planar-code"]);
    let e = &parse_planar_code(&o.stdout).unwrap()[0];
    assert_eq!(e.graph().n(), 12);
    assert_eq!(e.face_count(), 8);
}

#[test]
fn nl_and_hochstaettler_small_cases_hold() {
    let o = pmcut(&["verify", "nl", "named:octahedron", "named:k4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&o)["holds"], 2);
    let o = pmcut(&[
        "verify",
        "hochstaettler",
        "named:k4",
        "named:cube",
        "named:petersen",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&o)["holds"], 3);
}

#[test]
fn batch_is_ordered_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.g6", "C~\n");
    write(dir.path(), "b.g6", "EFz_\n");
    write(
        dir.path(),
        "c.g6",
        &format!(
            "{}\n",
            pmcut::graph::formats::write_graph6(&named::petersen()).unwrap()
        ),
    );
    let m = write(
        dir.path(),
        "manifest.txt",
        "a.g6\n# skipped\n\nb.g6\nc.g6\n",
    );
    let one = pmcut(&["batch", "--jobs", "1", &m, "--", "analyze"]);
    let many = pmcut(&["batch", "--jobs", "8", &m, "--", "analyze"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    let r = lines(&one);
    let heads: Vec<&Value> = r.iter().filter(|l| l.get("batch_item").is_some()).collect();
    assert_eq!(heads.len(), 3);
    let ns: Vec<u64> = r.iter().filter_map(|l| l["n"].as_u64()).collect();
    assert_eq!(ns, [4, 6, 10]);
}

#[test]
fn batch_isolates_item_errors_and_merges_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "ok.g6", "C~\n");
    let tilde = construct(&["tilde", "named:petersen"]);
    write(dir.path(), "tilde.txt", &tilde);
    let m = write(dir.path(), "m.txt", "ok.g6\nmissing.g6\ntilde.txt\n");
    let o = pmcut(&["batch", &m, "--", "verify", "hochstaettler-prime"]);
    assert_eq!(code(&o), 1);
    let heads: Vec<Value> = lines(&o)
        .into_iter()
        .filter(|l| l.get("batch_item").is_some())
        .collect();
    assert_eq!(heads[0]["exit"], 0);
    assert!(heads[1]["error"].as_str().unwrap().contains("missing.g6"));
    assert_eq!(heads[2]["exit"], 1);
}

#[test]
fn empty_manifest_is_an_empty_success() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "empty.txt", "");
    let o = pmcut(&["batch", &m, "--", "analyze"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn hat_wiring_search_reports_no_pattern() {
    let o = pmcut(&["construct", "hat", "named:petersen"]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no wiring pattern"));
    // a fixed pattern still builds the 24-vertex graph
    let out = construct(&[
        "hat",
        "named:petersen",
        "--pattern",
        "0",
        "--format",
        "graph6",
    ]);
    let g: MultiGraph = parse_graph6(out.trim()).unwrap();
    assert_eq!(g.n(), 24);
    assert!(g.is_cubic());
}
