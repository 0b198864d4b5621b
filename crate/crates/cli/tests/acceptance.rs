//! Acceptance criteria. Every check is exact: integer and boolean
//! comparisons only, zero tolerance. Each test prints one PASS/FAIL line;
//! run with `--nocapture` to see them all.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wgraph_core::fock::FockBasis;
use wgraph_core::verify::{
    all_words, check_path_relation, check_relations, random_graphs, reduce_randomly,
};
use wgraph_core::{
    check_projection, is_projection, to_shadow_word, DirectedGraph, GroupoidWord, OperatorWord,
};

const G1: &str = "vertex x\nvertex y\nedge e x y\n";
const G2: &str = "vertex v\nedge f v v\n";
const G3: &str = "vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\n";

const FOCK_LEN: usize = 6;
const MAX_WORD_LEN: usize = 4;
const MAX_LETTER_LEN: usize = 2;
const MAX_PATH_LEN: usize = 3;
const CONFLUENCE_TRIALS: usize = 100;
const FUZZ_GRAPHS: usize = 20;
const FUZZ_SEED: u64 = 0;

fn named_graphs() -> Vec<(&'static str, DirectedGraph)> {
    [("G1", G1), ("G2", G2), ("G3", G3)]
        .into_iter()
        .map(|(n, t)| (n, DirectedGraph::parse(t).unwrap()))
        .collect()
}

fn report(criterion: &str, failures: &[String], summary: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status} ({summary})");
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    if failures.len() > 10 {
        println!("    ... {} more", failures.len() - 10);
    }
}

/// Criterion 2 on one graph: lattice and groupoid verdicts agree on every
/// word, including the identified vertex.
fn theorem_equivalence(name: &str, g: &DirectedGraph) -> (usize, Vec<String>) {
    let words = all_words(g, MAX_WORD_LEN, MAX_LETTER_LEN);
    let failures = words
        .iter()
        .filter(|w| is_projection(g, w) != check_projection(g, w))
        .map(|w| format!("{name}: `{}` groupoid {:?} lattice {:?}", w.render(g), is_projection(g, w), check_projection(g, w)))
        .collect();
    (words.len(), failures)
}

/// Criterion 3 on one graph, evaluating every word and its normal form
/// directly on the truncated Fock space.
fn fock_soundness(name: &str, g: &DirectedGraph) -> (usize, Vec<String>) {
    let basis = FockBasis::new(g, FOCK_LEN).unwrap();
    let words = all_words(g, MAX_WORD_LEN, MAX_LETTER_LEN);
    let mut failures = Vec::new();
    for w in &words {
        let op = basis.evaluate(w).unwrap();
        let nf = to_shadow_word(g, w).reduce();
        let ok = match &nf {
            GroupoidWord::Zero => op.is_zero(),
            GroupoidWord::Unit(v) => {
                op.is_projection() && op.subprojection_leq(&basis.vertex_projection(*v)).unwrap()
            }
            GroupoidWord::Path(_) => true,
        };
        let sub_map = match nf.to_operator_word(g) {
            None => true,
            Some(reduced) => op.leq(&basis.evaluate(&reduced).unwrap()).unwrap(),
        };
        if !ok || !sub_map {
            failures.push(format!("{name}: `{}` normal form {}", w.render(g), nf.render(g)));
        }
    }
    (words.len(), failures)
}

/// Criterion 4 on one graph: signed length, idempotence and confluence on
/// every distinct shadow word, plus the path-level relation.
fn rewriting(name: &str, g: &DirectedGraph, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let shadows: HashSet<GroupoidWord> = all_words(g, MAX_WORD_LEN, MAX_LETTER_LEN)
        .iter()
        .map(|w| to_shadow_word(g, w))
        .collect();
    let mut shadows: Vec<GroupoidWord> = shadows.into_iter().collect();
    shadows.sort();
    for w in &shadows {
        let sigma = w.signed_length();
        let trace = w.reduction_trace();
        let nf = w.reduce();
        if trace.iter().any(|s| s.signed_length() != sigma) {
            failures.push(format!("{name}: signed length drifts on {}", w.render(g)));
        }
        if nf.reduce() != nf || trace.last() != Some(&nf) {
            failures.push(format!("{name}: not idempotent on {}", w.render(g)));
        }
        if nf.as_unit().is_some() && sigma != 0 {
            failures.push(format!("{name}: unit normal form with nonzero signed length {}", w.render(g)));
        }
        if (0..CONFLUENCE_TRIALS).any(|_| reduce_randomly(w, &mut rng) != nf) {
            failures.push(format!("{name}: rewrite order changes the normal form of {}", w.render(g)));
        }
    }
    let path = check_path_relation(g, MAX_PATH_LEN);
    failures.extend(path.examples.iter().map(|v| format!("{name}: path relation fails for {}", v.detail)));
    (shadows.len(), failures)
}

#[test]
fn criterion_1_relation_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut paths = 0;
    for (name, g) in named_graphs() {
        let r = check_relations(&g, MAX_PATH_LEN, FOCK_LEN).unwrap();
        paths += r.paths_checked;
        failures.extend(r.examples.iter().map(|v| format!("{name}: {}", v.detail)));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}, expected under 1 s"));
    }
    report("1 (relation suite)", &failures, format!("{paths} elements, N={FOCK_LEN}, {elapsed:?}"));
    assert!(failures.is_empty());
}

#[test]
fn criterion_2_theorem_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut words = 0;
    for (name, g) in named_graphs() {
        let (n, f) = theorem_equivalence(name, &g);
        words += n;
        failures.extend(f);
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("took {elapsed:?}, expected under 10 s"));
    }
    report("2 (lattice <=> groupoid)", &failures, format!("{words} words, {elapsed:?}"));
    assert_eq!(words, 1554 + 1554 + 22620);
    assert!(failures.is_empty());
}

#[test]
fn criterion_3_fock_soundness() {
    let mut failures = Vec::new();
    let mut words = 0;
    for (name, g) in named_graphs() {
        let (n, f) = fock_soundness(name, &g);
        words += n;
        failures.extend(f);
    }
    report("3 (Fock soundness)", &failures, format!("{words} words, N={FOCK_LEN}"));
    assert!(failures.is_empty());
}

#[test]
fn criterion_4_rewriting() {
    let mut failures = Vec::new();
    let mut shadows = 0;
    for (i, (name, g)) in named_graphs().into_iter().enumerate() {
        let (n, f) = rewriting(name, &g, i as u64);
        shadows += n;
        failures.extend(f);
    }
    report(
        "4 (rewriting)",
        &failures,
        format!("{shadows} shadow words, {CONFLUENCE_TRIALS} random orders each"),
    );
    assert!(failures.is_empty());
}

#[test]
fn criterion_5_fuzz() {
    let mut failures = Vec::new();
    let mut words = 0;
    for (i, g) in random_graphs(FUZZ_SEED, FUZZ_GRAPHS).iter().enumerate() {
        let name = format!("random graph {i}");
        let (n, f2) = theorem_equivalence(&name, g);
        let (_, f3) = fock_soundness(&name, g);
        let (_, f4) = rewriting(&name, g, i as u64);
        words += n;
        let status = |f: &[String]| if f.is_empty() { "ok" } else { "FAIL" };
        println!(
            "    {name}: {n} words; crit 2 {} ({}), crit 3 {}, crit 4 {}",
            status(&f2),
            f2.len(),
            status(&f3),
            status(&f4)
        );
        failures.extend(f2.into_iter().take(2));
        failures.extend(f3);
        failures.extend(f4);
    }
    report(
        "5 (fuzz)",
        &failures,
        format!("{FUZZ_GRAPHS} graphs, seed {FUZZ_SEED}, {words} words"),
    );
    assert!(failures.is_empty());
}

/// Sign of a walk's edges summed along a spanning-tree path; see
/// `fuzz_disagreements_are_balanced_cycles`.
fn has_balanced_cycle(g: &DirectedGraph) -> bool {
    let n = g.vertex_count();
    let mut potential: Vec<Option<i64>> = vec![None; n];
    let mut tree_edges = BTreeSet::new();
    for root in 0..n {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for (i, e) in g.edges().iter().enumerate() {
                let (s, r) = (e.source().index(), e.range().index());
                let next = if s == u && potential[r].is_none() {
                    Some((r, potential[u].unwrap() + 1))
                } else if r == u && potential[s].is_none() {
                    Some((s, potential[u].unwrap() - 1))
                } else {
                    None
                };
                if let Some((v, p)) = next {
                    potential[v] = Some(p);
                    tree_edges.insert(i);
                    stack.push(v);
                }
            }
        }
    }
    // Non-tree edges generate each component's cycle space; a generator's
    // signed length is potential(source) + 1 - potential(range).
    let mut per_component: Vec<Vec<i64>> = vec![Vec::new(); n];
    let component = |v: usize| -> usize {
        // Smallest vertex reachable ignoring direction.
        let mut seen = vec![false; n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for e in g.edges() {
                for (a, b) in [(e.source().index(), e.range().index()), (e.range().index(), e.source().index())] {
                    if a == u && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().position(|&s| s).unwrap()
    };
    for (i, e) in g.edges().iter().enumerate() {
        if tree_edges.contains(&i) {
            continue;
        }
        let (s, r) = (e.source().index(), e.range().index());
        per_component[component(s)].push(potential[s].unwrap() + 1 - potential[r].unwrap());
    }
    per_component
        .iter()
        .any(|gens| gens.len() >= 2 || gens.first() == Some(&0))
}

/// Not an acceptance criterion: pins down where criterion 5 fails. The
/// lattice test sees only letter lengths, so it cannot tell apart two
/// closed words with the same length profile. Exactly the graphs with a
/// nontrivial reduced closed walk of signed length zero (cycle rank >= 2 in
/// some component, or one cycle of balanced orientation) disagree.
#[test]
fn fuzz_disagreements_are_balanced_cycles() {
    let mut predicted = BTreeSet::new();
    let mut observed = BTreeSet::new();
    for (i, g) in random_graphs(FUZZ_SEED, FUZZ_GRAPHS).iter().enumerate() {
        if has_balanced_cycle(g) {
            predicted.insert(i);
        }
        if !theorem_equivalence("", g).1.is_empty() {
            observed.insert(i);
        }
    }
    println!("fuzz graphs with method disagreement: {observed:?}");
    assert_eq!(observed, predicted);

    let parallel = DirectedGraph::parse("vertex x\nvertex y\nedge a x y\nedge b x y").unwrap();
    let w = OperatorWord::parse(&parallel, "a b*").unwrap();
    assert_eq!(check_projection(&parallel, &w), parallel.vertex_by_name("x"));
    assert_eq!(is_projection(&parallel, &w), None);
    assert!(has_balanced_cycle(&parallel));
    assert!(!has_balanced_cycle(&DirectedGraph::parse(G3).unwrap()));
}

fn wgraph(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_6_cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let g1 = path("g1.graph", G1);
    let g2 = path("g2.graph", G2);
    let g3 = path("g3.graph", G3);
    let mut failures = Vec::new();

    let out = wgraph(&["check", &g1, "e* e", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    if out.status.code() != Some(0) || json["vertex"] != "y" || json["projection"] != true {
        failures.push(format!("check `e* e`: exit {:?}, {json}", out.status.code()));
    }
    let out = wgraph(&["check", &g1, "e* e"]);
    if out.status.code() != Some(0) || !String::from_utf8_lossy(&out.stdout).contains("projection at y") {
        failures.push("check `e* e` text output".into());
    }
    let out = wgraph(&["check", &g1, "e"]);
    if out.status.code() != Some(1) {
        failures.push(format!("check `e`: exit {:?}", out.status.code()));
    }

    for (name, text) in [
        ("canonical", G3.to_string()),
        ("messy", "# G3, out of order\nvertex z\nvertex x\n\nvertex y\nedge e2 y z # second\nedge e1 x y\n".to_string()),
    ] {
        let p = path(&format!("{name}.graph"), &text);
        let first = wgraph(&["graph", "validate", &p]);
        let again = path(&format!("{name}.again"), &String::from_utf8(first.stdout.clone()).unwrap());
        let second = wgraph(&["graph", "validate", &again]);
        let parsed = DirectedGraph::parse(&String::from_utf8(first.stdout.clone()).unwrap()).unwrap();
        if first.stdout != second.stdout
            || first.stdout != G3.as_bytes()
            || parsed.serialize().as_bytes() != first.stdout
        {
            failures.push(format!("round trip not byte-identical for {name} graph"));
        }
    }

    for g in [&g1, &g2, &g3] {
        let out = wgraph(&["verify", g]);
        if out.status.code() != Some(0) {
            failures.push(format!("verify {g}: exit {:?}", out.status.code()));
        }
    }
    report("6 (CLI contract)", &failures, "check, graph validate, verify".into());
    assert!(failures.is_empty());
}
