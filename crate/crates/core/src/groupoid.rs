//! Operator words `L_{w1}^{u1} ... L_{wn}^{un}` and their image in the free
//! groupoid: words over the shadowed graph modulo cancellation of adjacent
//! `e e^-1` and `e^-1 e` pairs.
//!
//! Cancellation is applied at the edge level only. The path-level rule
//! `w^-1 w = range(w)`, `w w^-1 = source(w)` follows by induction on the
//! length of `w`, and the resulting rewriting system is confluent, so every
//! word has a unique normal form.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, GraphTag, VertexId, SHADOW_SUFFIX};
use crate::semigroupoid::Element;

/// Creation (`1`) or annihilation (`*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    One,
    Star,
}

impl Exponent {
    /// `+1` for creation, `-1` for annihilation.
    pub fn sign(self) -> i64 {
        match self {
            Exponent::One => 1,
            Exponent::Star => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub element: Element,
    pub exponent: Exponent,
}

impl Letter {
    pub fn new(element: Element, exponent: Exponent) -> Letter {
        Letter { element, exponent }
    }

    pub fn creation(element: Element) -> Letter {
        Letter::new(element, Exponent::One)
    }

    pub fn annihilation(element: Element) -> Letter {
        Letter::new(element, Exponent::Star)
    }

    /// Image of a single letter in the shadowed graph's semigroupoid.
    pub fn shadow_image(&self, graph: &DirectedGraph) -> GroupoidWord {
        if let Some(v) = self.element.as_unit() {
            return GroupoidWord::Unit(v);
        }
        let edges = self.element.edges();
        let letters = match self.exponent {
            Exponent::One => edges.iter().map(|&e| ShadowLetter::forward(graph, e)).collect(),
            Exponent::Star => edges
                .iter()
                .rev()
                .map(|&e| ShadowLetter::inverse(graph, e))
                .collect(),
        };
        GroupoidWord::Path(letters)
    }
}

/// A nonempty monomial in creation and annihilation operators, all letters
/// over one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    letters: Vec<Letter>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Result<OperatorWord> {
        let first = letters
            .first()
            .ok_or_else(|| Error::invalid("an operator word needs at least one letter"))?;
        let tag = first.element.graph_tag();
        if letters.iter().any(|l| l.element.graph_tag() != tag) {
            return Err(Error::GraphMismatch);
        }
        Ok(OperatorWord { letters })
    }

    /// Parses a word literal such as `e1.e2* e1 y*`: whitespace-separated
    /// letters, each a path literal or vertex id with an optional `*`.
    pub fn parse(graph: &DirectedGraph, text: &str) -> Result<OperatorWord> {
        if !graph.is_forward_only() {
            return Err(Error::invalid(
                "operator words are built over graphs without shadow edges",
            ));
        }
        let letters = text
            .split_whitespace()
            .map(|token| {
                let (body, exponent) = match token.strip_suffix('*') {
                    Some(body) => (body, Exponent::Star),
                    None => (token, Exponent::One),
                };
                Ok(Letter::new(Element::parse(graph, body)?, exponent))
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorWord::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn graph_tag(&self) -> GraphTag {
        self.letters[0].element.graph_tag()
    }

    /// Word with `letter` appended on the right.
    pub fn with(&self, letter: Letter) -> Result<OperatorWord> {
        if letter.element.graph_tag() != self.graph_tag() {
            return Err(Error::GraphMismatch);
        }
        let mut letters = self.letters.clone();
        letters.push(letter);
        Ok(OperatorWord { letters })
    }

    pub fn render(&self, graph: &DirectedGraph) -> String {
        self.letters
            .iter()
            .map(|l| {
                let mut s = l.element.render(graph);
                if l.exponent == Exponent::Star {
                    s.push('*');
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// An edge of the shadowed graph: a forward edge `e` or its inverse `e^-1`,
/// with endpoints taken in the shadowed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShadowLetter {
    edge: EdgeId,
    inverse: bool,
    source: VertexId,
    range: VertexId,
}

impl ShadowLetter {
    pub fn forward(graph: &DirectedGraph, e: EdgeId) -> ShadowLetter {
        let edge = graph.edge(e);
        ShadowLetter {
            edge: e,
            inverse: false,
            source: edge.source(),
            range: edge.range(),
        }
    }

    pub fn inverse(graph: &DirectedGraph, e: EdgeId) -> ShadowLetter {
        ShadowLetter::forward(graph, e).inverted()
    }

    pub fn inverted(self) -> ShadowLetter {
        ShadowLetter {
            edge: self.edge,
            inverse: !self.inverse,
            source: self.range,
            range: self.source,
        }
    }

    pub fn edge(self) -> EdgeId {
        self.edge
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn source(self) -> VertexId {
        self.source
    }

    pub fn range(self) -> VertexId {
        self.range
    }

    /// `+1` for a forward edge, `-1` for a shadow edge.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// True when `self` followed by `next` is `e e^-1` or `e^-1 e`.
    pub fn cancels(self, next: ShadowLetter) -> bool {
        self.edge == next.edge && self.inverse != next.inverse
    }

    pub fn render(self, graph: &DirectedGraph) -> String {
        let name = graph.edge(self.edge).label();
        if self.inverse {
            format!("{name}{SHADOW_SUFFIX}")
        } else {
            name
        }
    }
}

/// An element of the shadowed graph's semigroupoid, or `Zero` for an
/// inadmissible product.
///
/// `Path` letters are nonempty and consecutive-admissible in the shadowed
/// graph; interior units are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupoidWord {
    Zero,
    Unit(VertexId),
    Path(Vec<ShadowLetter>),
}

impl GroupoidWord {
    pub fn source(&self) -> Option<VertexId> {
        match self {
            GroupoidWord::Zero => None,
            GroupoidWord::Unit(v) => Some(*v),
            GroupoidWord::Path(p) => p.first().map(|l| l.source),
        }
    }

    pub fn range(&self) -> Option<VertexId> {
        match self {
            GroupoidWord::Zero => None,
            GroupoidWord::Unit(v) => Some(*v),
            GroupoidWord::Path(p) => p.last().map(|l| l.range),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GroupoidWord::Zero)
    }

    pub fn as_unit(&self) -> Option<VertexId> {
        match self {
            GroupoidWord::Unit(v) => Some(*v),
            _ => None,
        }
    }

    pub fn letters(&self) -> &[ShadowLetter] {
        match self {
            GroupoidWord::Path(p) => p,
            _ => &[],
        }
    }

    /// Concatenation in the shadowed graph. Zero absorbs; a mismatch at the
    /// junction gives Zero; units are absorbed into paths.
    pub fn concat(self, next: GroupoidWord) -> GroupoidWord {
        let (Some(r), Some(s)) = (self.range(), next.source()) else {
            return GroupoidWord::Zero;
        };
        if r != s {
            return GroupoidWord::Zero;
        }
        match (self, next) {
            (GroupoidWord::Unit(_), other) | (other, GroupoidWord::Unit(_)) => other,
            (GroupoidWord::Path(mut a), GroupoidWord::Path(b)) => {
                a.extend(b);
                GroupoidWord::Path(a)
            }
            _ => unreachable!("zero handled above"),
        }
    }

    /// Forward letters minus shadow letters. Invariant under cancellation.
    pub fn signed_length(&self) -> i64 {
        self.letters().iter().map(|l| l.sign()).sum()
    }

    /// Positions `i` where letters `i` and `i + 1` cancel.
    pub fn cancellable_positions(&self) -> Vec<usize> {
        self.letters()
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].cancels(w[1]))
            .map(|(i, _)| i)
            .collect()
    }

    /// One rewrite step: delete the cancelling pair at `i, i + 1`. Returns
    /// `None` if no pair cancels there.
    pub fn cancel_at(&self, i: usize) -> Option<GroupoidWord> {
        let letters = self.letters();
        if i + 1 >= letters.len() || !letters[i].cancels(letters[i + 1]) {
            return None;
        }
        if letters.len() == 2 {
            return Some(GroupoidWord::Unit(letters[0].source));
        }
        let mut rest = Vec::with_capacity(letters.len() - 2);
        rest.extend_from_slice(&letters[..i]);
        rest.extend_from_slice(&letters[i + 2..]);
        Some(GroupoidWord::Path(rest))
    }

    /// The normal form: Zero, a unit, or a path with no cancelling pair.
    pub fn reduce(&self) -> GroupoidWord {
        let letters = match self {
            GroupoidWord::Path(p) => p,
            other => return other.clone(),
        };
        // A stack scan removes pairs in the same order as repeatedly
        // cancelling the leftmost pair.
        let mut stack: Vec<ShadowLetter> = Vec::with_capacity(letters.len());
        for &l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        if stack.is_empty() {
            GroupoidWord::Unit(letters[0].source)
        } else {
            GroupoidWord::Path(stack)
        }
    }

    /// Every intermediate word under the leftmost-pair strategy, starting
    /// with `self` and ending with the normal form.
    pub fn reduction_trace(&self) -> Vec<GroupoidWord> {
        let mut trace = vec![self.clone()];
        loop {
            let current = trace.last().expect("trace is never empty");
            let Some(&i) = current.cancellable_positions().first() else {
                break;
            };
            let next = current.cancel_at(i).expect("position is cancellable");
            trace.push(next);
        }
        trace
    }

    /// The operator word with one letter per shadow letter (a unit letter
    /// for `Unit`). `None` for Zero.
    pub fn to_operator_word(&self, graph: &DirectedGraph) -> Option<OperatorWord> {
        let letters = match self {
            GroupoidWord::Zero => return None,
            GroupoidWord::Unit(v) => vec![Letter::creation(Element::unit(graph, *v))],
            GroupoidWord::Path(p) => p
                .iter()
                .map(|l| {
                    let exponent = if l.inverse { Exponent::Star } else { Exponent::One };
                    Letter::new(Element::edge(graph, l.edge), exponent)
                })
                .collect(),
        };
        Some(OperatorWord { letters })
    }

    /// `Zero`, a vertex id, or dot-joined letters such as `e2^-1.e1^-1`.
    pub fn render(&self, graph: &DirectedGraph) -> String {
        match self {
            GroupoidWord::Zero => "Zero".to_string(),
            GroupoidWord::Unit(v) => graph.vertex_name(*v).to_string(),
            GroupoidWord::Path(p) => p
                .iter()
                .map(|l| l.render(graph))
                .collect::<Vec<_>>()
                .join("."),
        }
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GroupoidWord, &'a DirectedGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, graph)
    }
}

/// Maps each letter to the shadowed graph (adjoints become reversed shadow
/// paths) and concatenates, yielding Zero at the first inadmissible junction.
pub fn to_shadow_word(graph: &DirectedGraph, word: &OperatorWord) -> GroupoidWord {
    debug_assert_eq!(graph.tag(), word.graph_tag());
    let mut letters = word.letters().iter();
    let first = letters.next().expect("operator words are nonempty");
    letters.fold(first.shadow_image(graph), |acc, l| {
        if acc.is_zero() {
            acc
        } else {
            acc.concat(l.shadow_image(graph))
        }
    })
}

/// Normal form of the word's image in the free groupoid.
pub fn normal_form(graph: &DirectedGraph, word: &OperatorWord) -> GroupoidWord {
    to_shadow_word(graph, word).reduce()
}

/// The vertex `v` with `word == L_v` in the free groupoid, if any.
pub fn is_projection(graph: &DirectedGraph, word: &OperatorWord) -> Option<VertexId> {
    normal_form(graph, word).as_unit()
}
