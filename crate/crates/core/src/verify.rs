//! Exhaustive cross-checking of the three projection tests over every
//! operator word within small bounds.
//!
//! For each word the harness compares the lattice and groupoid verdicts,
//! checks the Fock evaluation against the groupoid normal form, and checks
//! the rewriting system itself (signed length, idempotence, confluence
//! under random rewrite orders) on every distinct shadow word.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fock::{safe_len, FockBasis, FockOperator};
use crate::graph::{DirectedGraph, GraphBuilder};
use crate::groupoid::{
    is_projection, normal_form, Exponent, GroupoidWord, Letter, OperatorWord,
    ShadowLetter,
};
use crate::lattice::{check_projection, lattice_path};
use crate::semigroupoid::{enumerate, Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_word_len: usize,
    pub max_letter_len: usize,
    pub fock_len: usize,
    /// Random rewrite orders tried per shadow word.
    pub confluence_trials: usize,
    /// Longest path used by the relation suite.
    pub relation_path_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_word_len: 4,
            max_letter_len: 2,
            fock_len: 6,
            confluence_trials: 100,
            relation_path_len: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// Lattice and groupoid tests disagree on projection-hood or vertex.
    MethodDisagreement,
    /// Empty lattice path without a Zero shadow word, or the reverse.
    EmptyPathMismatch,
    /// Lattice endpoint differs from the signed length of the word.
    EndpointMismatch,
    /// Groupoid Zero but the Fock operator is nonzero.
    ZeroNotFockZero,
    /// Groupoid unit `v` but the Fock operator is not a projection under `L_v`.
    ProjectionNotDominated,
    /// Fock operator is not a sub-map of its normal form's operator.
    NotSubMap,
    SignedLengthChanged,
    NotIdempotent,
    NotConfluent,
    /// The path-level cancellation rule is not recovered.
    PathRelation,
    /// A relation between creation and annihilation operators fails.
    FockRelation,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::MethodDisagreement => "method-disagreement",
            ViolationKind::EmptyPathMismatch => "empty-path-mismatch",
            ViolationKind::EndpointMismatch => "endpoint-mismatch",
            ViolationKind::ZeroNotFockZero => "zero-not-fock-zero",
            ViolationKind::ProjectionNotDominated => "projection-not-dominated",
            ViolationKind::NotSubMap => "not-sub-map",
            ViolationKind::SignedLengthChanged => "signed-length-changed",
            ViolationKind::NotIdempotent => "not-idempotent",
            ViolationKind::NotConfluent => "not-confluent",
            ViolationKind::PathRelation => "path-relation",
            ViolationKind::FockRelation => "fock-relation",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

const MAX_EXAMPLES: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub words_checked: usize,
    pub shadow_words_checked: usize,
    pub projections: usize,
    pub zeros: usize,
    pub paths_checked: usize,
    /// Safe basis length used by the relation suite, per path length.
    pub safe_lengths: BTreeMap<usize, usize>,
    pub counts: BTreeMap<ViolationKind, usize>,
    /// The first few violations per kind, in enumeration order.
    pub examples: Vec<Violation>,
}

impl Report {
    pub fn violations(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    fn record(&mut self, kind: ViolationKind, detail: impl FnOnce() -> String) {
        let n = self.counts.entry(kind).or_insert(0);
        *n += 1;
        if *n <= MAX_EXAMPLES {
            self.examples.push(Violation {
                kind,
                detail: detail(),
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.words_checked += other.words_checked;
        self.shadow_words_checked += other.shadow_words_checked;
        self.projections += other.projections;
        self.zeros += other.zeros;
        self.paths_checked += other.paths_checked;
        for (k, v) in other.safe_lengths {
            self.safe_lengths.entry(k).or_insert(v);
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.examples.extend(other.examples);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "words checked: {}", self.words_checked)?;
        writeln!(f, "distinct shadow words: {}", self.shadow_words_checked)?;
        writeln!(f, "projections found: {}", self.projections)?;
        writeln!(f, "zeros found: {}", self.zeros)?;
        writeln!(f, "relation paths checked: {}", self.paths_checked)?;
        for (len, safe) in &self.safe_lengths {
            writeln!(f, "  safe basis length for |w|={len}: {safe}")?;
        }
        writeln!(f, "violations: {}", self.violations())?;
        for (kind, n) in &self.counts {
            writeln!(f, "  {kind}: {n}")?;
        }
        for v in &self.examples {
            writeln!(f, "  [{}] {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}

/// Every letter built from a semigroupoid element of length at most
/// `max_letter_len`, each with both exponents.
pub fn alphabet(graph: &DirectedGraph, max_letter_len: usize) -> Vec<Letter> {
    enumerate(graph, max_letter_len)
        .into_iter()
        .flat_map(|w| [Letter::creation(w.clone()), Letter::annihilation(w)])
        .collect()
}

/// All operator words with `1..=max_word_len` letters over the alphabet,
/// shortest first.
pub fn all_words(graph: &DirectedGraph, max_word_len: usize, max_letter_len: usize) -> Vec<OperatorWord> {
    let alphabet = alphabet(graph, max_letter_len);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_word_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for prefix in &layer {
            for l in &alphabet {
                let mut w = prefix.clone();
                w.push(l.clone());
                next.push(w);
            }
        }
        out.extend(
            next.iter()
                .map(|ls| OperatorWord::new(ls.clone()).expect("nonempty, one graph")),
        );
        layer = next;
    }
    out
}

/// Relations between creation and annihilation operators on the truncated
/// Fock space, for every path of length at most `max_path_len`:
///
/// - `L_w^*` is the transpose of `L_w`;
/// - `L_w^* L_w = L_{range(w)}` on the safe region;
/// - `L_w L_w^* ≤ L_{source(w)}`;
/// - `L_w L_w^* L_w = L_w` and `L_w^* L_w L_w^* = L_w^*` on the safe region;
/// - `L_v^* L_v = L_v = L_v L_v^* = L_v^*` exactly for vertices.
pub fn check_relations(graph: &DirectedGraph, max_path_len: usize, fock_len: usize) -> Result<Report> {
    let basis = FockBasis::new(graph, fock_len)?;
    let mut report = Report::default();
    let eval = |letters: Vec<Letter>| -> Result<(FockOperator, Option<usize>)> {
        let w = OperatorWord::new(letters)?;
        Ok((basis.evaluate(&w)?, safe_len(&w, fock_len)))
    };

    for w in enumerate(graph, max_path_len) {
        report.paths_checked += 1;
        let name = w.render(graph);
        let create = Letter::creation(w.clone());
        let annihilate = Letter::annihilation(w.clone());
        let l_w = basis.creation(&w)?;
        let l_w_star = basis.annihilation(&w)?;

        if let Some(v) = w.as_unit() {
            let p = basis.vertex_projection(v);
            let (vv_star, _) = eval(vec![annihilate.clone(), create.clone()])?;
            let (v_vstar, _) = eval(vec![create.clone(), annihilate.clone()])?;
            if !(vv_star == p && v_vstar == p && l_w_star == p && p.is_projection()) {
                report.record(ViolationKind::FockRelation, || {
                    format!("L_{name} is not a self-adjoint projection")
                });
            }
            continue;
        }

        if l_w.adjoint() != l_w_star {
            report.record(ViolationKind::FockRelation, || {
                format!("L_{name}^* is not the transpose of L_{name}")
            });
        }

        let (star_w, safe) = eval(vec![annihilate.clone(), create.clone()])?;
        let range = basis.vertex_projection(w.range());
        match safe {
            Some(s) => {
                report.safe_lengths.entry(w.len()).or_insert(s);
                if star_w.restrict_to_len(s) != range.restrict_to_len(s) || !star_w.leq(&range)? {
                    report.record(ViolationKind::FockRelation, || {
                        format!("L_{name}^* L_{name} != L_range on |h| <= {s}")
                    });
                }
            }
            None => report.record(ViolationKind::FockRelation, || {
                format!("path {name} leaves no safe region at N={fock_len}")
            }),
        }

        let (w_star, _) = eval(vec![create.clone(), annihilate.clone()])?;
        let source = basis.vertex_projection(w.source());
        if !w_star.subprojection_leq(&source)? {
            report.record(ViolationKind::FockRelation, || {
                format!("L_{name} L_{name}^* is not below L_source")
            });
        }

        let (www, safe) = eval(vec![create.clone(), annihilate.clone(), create.clone()])?;
        let s = safe.unwrap_or(0);
        if www.restrict_to_len(s) != l_w.restrict_to_len(s) || !www.leq(&l_w)? {
            report.record(ViolationKind::FockRelation, || {
                format!("L_w L_w^* L_w != L_w for w={name} on |h| <= {s}")
            });
        }
        let (w_star_3, safe) = eval(vec![annihilate.clone(), create, annihilate])?;
        let s = safe.unwrap_or(0);
        if w_star_3.restrict_to_len(s) != l_w_star.restrict_to_len(s) {
            report.record(ViolationKind::FockRelation, || {
                format!("L_w^* L_w L_w^* != L_w^* for w={name} on |h| <= {s}")
            });
        }
        if !l_w.is_partial_isometry() {
            report.record(ViolationKind::FockRelation, || {
                format!("L_{name} is not a partial isometry")
            });
        }
    }
    Ok(report)
}

/// Edge-level cancellation recovers `w^-1 w = range(w)` and
/// `w w^-1 = source(w)` for every path of length at most `max_path_len`.
pub fn check_path_relation(graph: &DirectedGraph, max_path_len: usize) -> Report {
    let mut report = Report::default();
    for w in enumerate(graph, max_path_len).into_iter().filter(|w| !w.is_unit()) {
        let pair = |a: Letter, b: Letter| OperatorWord::new(vec![a, b]).expect("one graph");
        let inv_w = pair(Letter::annihilation(w.clone()), Letter::creation(w.clone()));
        let w_inv = pair(Letter::creation(w.clone()), Letter::annihilation(w.clone()));
        if normal_form(graph, &inv_w) != GroupoidWord::Unit(w.range())
            || normal_form(graph, &w_inv) != GroupoidWord::Unit(w.source())
        {
            report.record(ViolationKind::PathRelation, || w.render(graph));
        }
    }
    report
}

/// Rewrites `word` to normal form by cancelling a uniformly random
/// cancellable pair at each step.
pub fn reduce_randomly<R: Rng>(word: &GroupoidWord, rng: &mut R) -> GroupoidWord {
    let GroupoidWord::Path(letters) = word else {
        return word.clone();
    };
    let start = letters[0].source();
    let mut buf: Vec<ShadowLetter> = letters.clone();
    let mut spots = Vec::new();
    loop {
        spots.clear();
        spots.extend((0..buf.len().saturating_sub(1)).filter(|&i| buf[i].cancels(buf[i + 1])));
        let Some(&i) = spots.choose(rng) else { break };
        buf.drain(i..i + 2);
    }
    if buf.is_empty() {
        GroupoidWord::Unit(start)
    } else {
        GroupoidWord::Path(buf)
    }
}

struct Harness<'a> {
    graph: &'a DirectedGraph,
    basis: Arc<FockBasis>,
    /// Fock operators of single shadow letters, indexed by edge and
    /// direction, used to evaluate normal forms on demand.
    forward: Vec<FockOperator>,
    inverse: Vec<FockOperator>,
    vertex: Vec<FockOperator>,
    seen: HashSet<GroupoidWord>,
    rng: ChaCha8Rng,
    bounds: Bounds,
    report: Report,
}

impl<'a> Harness<'a> {
    fn new(graph: &'a DirectedGraph, bounds: Bounds, seed: u64) -> Result<Self> {
        let basis = FockBasis::new(graph, bounds.fock_len)?;
        let edge_ops = |exp: Exponent| {
            graph
                .edge_ids()
                .map(|e| basis.letter(&Letter::new(Element::edge(graph, e), exp)))
                .collect::<Result<Vec<_>>>()
        };
        Ok(Harness {
            forward: edge_ops(Exponent::One)?,
            inverse: edge_ops(Exponent::Star)?,
            vertex: graph.vertices().map(|v| basis.vertex_projection(v)).collect(),
            basis,
            graph,
            seen: HashSet::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
            report: Report::default(),
        })
    }

    /// Applies the operator of a groupoid word (rightmost letter first) to
    /// basis vector `i`.
    fn apply_normal_form(&self, nf: &GroupoidWord, i: usize) -> Option<usize> {
        match nf {
            GroupoidWord::Zero => None,
            GroupoidWord::Unit(v) => self.vertex[v.index()].apply(i),
            GroupoidWord::Path(p) => p.iter().rev().try_fold(i, |at, l| {
                let ops = if l.is_inverse() { &self.inverse } else { &self.forward };
                ops[l.edge().index()].apply(at)
            }),
        }
    }

    fn check_word(&mut self, word: &OperatorWord, shadow: &GroupoidWord, op: &FockOperator) {
        let graph = self.graph;
        let show = || word.render(graph);
        self.report.words_checked += 1;

        let nf = shadow.reduce();
        let by_groupoid = nf.as_unit();
        debug_assert_eq!(by_groupoid, is_projection(graph, word));
        let path = lattice_path(graph, word);
        let by_lattice = check_projection(graph, word);

        if by_groupoid.is_some() {
            self.report.projections += 1;
        }
        if shadow.is_zero() {
            self.report.zeros += 1;
        }
        if by_groupoid != by_lattice {
            let name = |v: Option<_>| v.map_or("none".to_string(), |v| graph.vertex_name(v).to_string());
            self.report.record(ViolationKind::MethodDisagreement, || {
                format!(
                    "{}: groupoid {} (normal form {}), lattice {}",
                    show(),
                    name(by_groupoid),
                    nf.render(graph),
                    name(by_lattice)
                )
            });
        }
        if path.is_empty() != shadow.is_zero() {
            self.report.record(ViolationKind::EmptyPathMismatch, show);
        }
        if let Some((x, _)) = path.endpoint() {
            let sigma: i64 = word
                .letters()
                .iter()
                .map(|l| l.exponent.sign() * l.element.len() as i64)
                .sum();
            if x != sigma || x != shadow.signed_length() {
                self.report.record(ViolationKind::EndpointMismatch, show);
            }
        }

        match &nf {
            GroupoidWord::Zero => {
                if !op.is_zero() {
                    self.report.record(ViolationKind::ZeroNotFockZero, show);
                }
            }
            GroupoidWord::Unit(v) => {
                let dominated = op
                    .subprojection_leq(&self.vertex[v.index()])
                    .expect("same basis");
                if !dominated {
                    self.report.record(ViolationKind::ProjectionNotDominated, show);
                }
            }
            GroupoidWord::Path(_) => {}
        }
        if !nf.is_zero() {
            let sub_map = op.pairs().all(|(i, j)| self.apply_normal_form(&nf, i) == Some(j));
            if !sub_map {
                self.report.record(ViolationKind::NotSubMap, || {
                    format!("{} vs normal form {}", show(), nf.render(graph))
                });
            }
        }

        if !self.seen.contains(shadow) {
            self.check_rewriting(shadow, &nf);
            self.seen.insert(shadow.clone());
        }
    }

    fn check_rewriting(&mut self, shadow: &GroupoidWord, nf: &GroupoidWord) {
        let graph = self.graph;
        let show = || shadow.render(graph);
        self.report.shadow_words_checked += 1;

        let trace = shadow.reduction_trace();
        let sigma = shadow.signed_length();
        if trace.iter().any(|w| w.signed_length() != sigma) {
            self.report.record(ViolationKind::SignedLengthChanged, show);
        }
        if trace.last() != Some(nf) || nf.reduce() != *nf {
            self.report.record(ViolationKind::NotIdempotent, show);
        }
        if matches!(nf, GroupoidWord::Unit(_)) && sigma != 0 {
            self.report.record(ViolationKind::SignedLengthChanged, show);
        }
        if !shadow.cancellable_positions().is_empty() {
            for _ in 0..self.bounds.confluence_trials {
                if reduce_randomly(shadow, &mut self.rng) != *nf {
                    self.report.record(ViolationKind::NotConfluent, show);
                    break;
                }
            }
        }
    }

    fn run(mut self) -> Report {
        let alphabet = alphabet(self.graph, self.bounds.max_letter_len);
        let images: Vec<GroupoidWord> = alphabet.iter().map(|l| l.shadow_image(self.graph)).collect();
        let ops: Vec<FockOperator> = alphabet
            .iter()
            .map(|l| self.basis.letter(l).expect("alphabet over the basis graph"))
            .collect();

        // Depth-first over words, extending on the right. Each frame keeps
        // the shadow word and Fock operator of its prefix.
        let mut letters: Vec<Letter> = Vec::new();
        let mut stack: Vec<(GroupoidWord, FockOperator)> = Vec::new();
        let mut cursor: Vec<usize> = vec![0];
        while let Some(&k) = cursor.last() {
            if k == alphabet.len() {
                cursor.pop();
                if letters.pop().is_some() {
                    stack.pop();
                }
                if let Some(c) = cursor.last_mut() {
                    *c += 1;
                }
                continue;
            }
            let (shadow, op) = match stack.last() {
                None => (images[k].clone(), ops[k].clone()),
                Some((s, o)) => {
                    let s = if s.is_zero() {
                        GroupoidWord::Zero
                    } else {
                        s.clone().concat(images[k].clone())
                    };
                    (s, o.compose(&ops[k]).expect("same basis"))
                }
            };
            letters.push(alphabet[k].clone());
            let word = OperatorWord::new(letters.clone()).expect("nonempty, one graph");
            self.check_word(&word, &shadow, &op);
            if letters.len() < self.bounds.max_word_len {
                stack.push((shadow, op));
                cursor.push(0);
            } else {
                letters.pop();
                *cursor.last_mut().expect("cursor nonempty") += 1;
            }
        }
        self.report
    }
}

/// Runs the relation suite, the path-level cancellation check and the
/// exhaustive word harness on one graph. `seed` drives the random rewrite
/// orders.
pub fn verify(graph: &DirectedGraph, bounds: Bounds, seed: u64) -> Result<Report> {
    let mut report = check_relations(graph, bounds.relation_path_len, bounds.fock_len)?;
    report.merge(check_path_relation(graph, bounds.relation_path_len));
    report.merge(Harness::new(graph, bounds, seed)?.run());
    Ok(report)
}

/// A graph with 1 to `max_vertices` vertices named `v0, v1, ...` and 0 to
/// `max_edges` edges `e0, e1, ...` with uniformly random endpoints. Loops
/// and parallel edges occur.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let mut b = GraphBuilder::default();
    for i in 0..n {
        b.add_vertex(&format!("v{i}")).expect("fresh id");
    }
    for i in 0..m {
        let s = rng.gen_range(0..n);
        let r = rng.gen_range(0..n);
        b.add_edge(&format!("e{i}"), &format!("v{s}"), &format!("v{r}"))
            .expect("declared endpoints");
    }
    b.build().expect("nonempty")
}

/// `count` random graphs with at most 3 vertices and 3 edges, reproducible
/// from `seed`.
pub fn random_graphs(seed: u64, count: usize) -> Vec<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, 3, 3)).collect()
}
