//! Expected values for the derived examples, computed by oracles that share
//! no code with the implementation paths they check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use wgraph_core::fock::FockBasis;
use wgraph_core::{enumerate, normal_form, DirectedGraph, OperatorWord};

const G1: &str = "vertex x\nvertex y\nedge e x y";
const G2: &str = "vertex v\nedge f v v";
const G3: &str = "vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z";

/// Explores every rewrite order of a word given as tokens (`e`, `e^-1`) and
/// returns the set of irreducible results. An emptied word is reported as
/// `<empty>`.
fn all_normal_forms(word: &[&str]) -> BTreeSet<String> {
    fn cancels(a: &str, b: &str) -> bool {
        a.strip_suffix("^-1") == Some(b) || b.strip_suffix("^-1") == Some(a)
    }
    let start: Vec<String> = word.iter().map(|s| s.to_string()).collect();
    let mut seen = BTreeSet::new();
    let mut results = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        let mut irreducible = true;
        for i in 0..w.len().saturating_sub(1) {
            if cancels(&w[i], &w[i + 1]) {
                irreducible = false;
                let mut next = w.clone();
                next.drain(i..i + 2);
                queue.push_back(next);
            }
        }
        if irreducible {
            results.insert(if w.is_empty() { "<empty>".into() } else { w.join(".") });
        }
    }
    results
}

#[test]
fn reduction_examples_agree_with_every_rewrite_order() {
    assert_eq!(all_normal_forms(&["f", "f", "f^-1"]), BTreeSet::from(["f".to_string()]));
    assert_eq!(
        all_normal_forms(&["e1", "e2", "e2^-1", "e1^-1"]),
        BTreeSet::from(["<empty>".to_string()])
    );

    let g2 = DirectedGraph::parse(G2).unwrap();
    assert_eq!(normal_form(&g2, &OperatorWord::parse(&g2, "f f f*").unwrap()).render(&g2), "f");
    let g3 = DirectedGraph::parse(G3).unwrap();
    // The emptied word leaves the source of its first letter, x.
    assert_eq!(
        normal_form(&g3, &OperatorWord::parse(&g3, "e1 e2 e2* e1*").unwrap()).render(&g3),
        "x"
    );
}

/// Independent Fock model: basis vectors are strings (a vertex name or
/// dot-joined edge names), found by brute-force concatenation.
struct StringFock {
    vertices: Vec<String>,
    basis: Vec<String>,
    ends: BTreeMap<String, (String, String)>,
}

impl StringFock {
    fn new(vertices: &[&str], edges: &[(&str, &str, &str)], max_len: usize) -> StringFock {
        let mut ends: BTreeMap<String, (String, String)> = vertices
            .iter()
            .map(|v| (v.to_string(), (v.to_string(), v.to_string())))
            .collect();
        let mut basis: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let mut layer: Vec<String> = vec![];
        for len in 1..=max_len {
            let mut next = vec![];
            let prefixes: Vec<Option<&String>> = if len == 1 {
                vec![None]
            } else {
                layer.iter().map(Some).collect()
            };
            for p in prefixes {
                for (e, s, r) in edges {
                    let ok = p.is_none_or(|p| ends[p].1 == *s);
                    if ok {
                        let name = p.map_or(e.to_string(), |p| format!("{p}.{e}"));
                        let start = p.map_or(s.to_string(), |p| ends[p].0.clone());
                        ends.insert(name.clone(), (start, r.to_string()));
                        next.push(name);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            layer = next;
        }
        StringFock {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            basis,
            ends,
        }
    }

    fn is_vertex(&self, w: &str) -> bool {
        self.vertices.iter().any(|v| v == w)
    }

    fn concat(&self, a: &str, b: &str) -> Option<String> {
        if self.ends[a].1 != self.ends[b].0 {
            return None;
        }
        Some(match (self.is_vertex(a), self.is_vertex(b)) {
            (true, _) => b.to_string(),
            (_, true) => a.to_string(),
            _ => format!("{a}.{b}"),
        })
    }

    fn creation(&self, w: &str) -> Vec<String> {
        let mut out = vec![];
        for h in &self.basis {
            if let Some(wh) = self.concat(w, h) {
                if self.basis.contains(&wh) {
                    out.push(format!("{h} -> {wh}"));
                }
            }
        }
        out
    }

    fn annihilation(&self, w: &str) -> Vec<String> {
        let mut out = vec![];
        for wh in &self.basis {
            for h in &self.basis {
                if self.concat(w, h).as_deref() == Some(wh.as_str()) {
                    out.push(format!("{wh} -> {h}"));
                }
            }
        }
        out
    }
}

fn dump_lines(dump: String) -> Vec<String> {
    dump.lines().map(str::to_string).collect()
}

#[test]
fn fock_examples_match_string_model() {
    let g1 = DirectedGraph::parse(G1).unwrap();
    let b1 = FockBasis::new(&g1, 2).unwrap();
    let m1 = StringFock::new(&["x", "y"], &[("e", "x", "y")], 2);
    assert_eq!(m1.creation("e"), ["y -> e"]);
    assert_eq!(m1.annihilation("e"), ["e -> y"]);
    for w in ["e", "x", "y"] {
        let el = wgraph_core::Element::parse(&g1, w).unwrap();
        assert_eq!(dump_lines(b1.creation(&el).unwrap().dump()), m1.creation(w));
        assert_eq!(dump_lines(b1.annihilation(&el).unwrap().dump()), m1.annihilation(w));
    }

    let g2 = DirectedGraph::parse(G2).unwrap();
    let b2 = FockBasis::new(&g2, 2).unwrap();
    let m2 = StringFock::new(&["v"], &[("f", "v", "v")], 2);
    assert_eq!(m2.basis, ["v", "f", "f.f"]);
    assert_eq!(m2.creation("f"), ["v -> f", "f -> f.f"]);
    assert_eq!(m2.annihilation("f"), ["f -> v", "f.f -> f"]);
    let f = wgraph_core::Element::parse(&g2, "f").unwrap();
    assert_eq!(dump_lines(b2.creation(&f).unwrap().dump()), m2.creation("f"));
    assert_eq!(dump_lines(b2.annihilation(&f).unwrap().dump()), m2.annihilation("f"));
    let names: Vec<String> = enumerate(&g2, 2).iter().map(|w| w.render(&g2)).collect();
    assert_eq!(names, m2.basis);

    let g3 = DirectedGraph::parse(G3).unwrap();
    let b3 = FockBasis::new(&g3, 3).unwrap();
    let m3 = StringFock::new(&["x", "y", "z"], &[("e1", "x", "y"), ("e2", "y", "z")], 3);
    for w in ["e1", "e2", "e1.e2", "x", "y", "z"] {
        let el = wgraph_core::Element::parse(&g3, w).unwrap();
        assert_eq!(dump_lines(b3.creation(&el).unwrap().dump()), m3.creation(w), "{w}");
        assert_eq!(dump_lines(b3.annihilation(&el).unwrap().dump()), m3.annihilation(w), "{w}");
    }
}

#[test]
fn range_projection_is_strict_subprojection_of_source() {
    // 3x3 hand computation over G1 at N=2: L_e L_e^* fixes only ξ_e while
    // L_x fixes ξ_x and ξ_e.
    let g1 = DirectedGraph::parse(G1).unwrap();
    let b = FockBasis::new(&g1, 2).unwrap();
    let p = b.evaluate(&OperatorWord::parse(&g1, "e e*").unwrap()).unwrap();
    let lx = b.vertex_projection(g1.vertex_by_name("x").unwrap());
    assert_eq!(p.dump(), "e -> e\n");
    assert_eq!(lx.dump(), "x -> x\ne -> e\n");
    assert!(p.subprojection_leq(&lx).unwrap());
    assert!(!lx.subprojection_leq(&p).unwrap());
}
