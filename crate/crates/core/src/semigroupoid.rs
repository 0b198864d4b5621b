//! The free semigroupoid of a graph: vertices as units plus all admissible
//! finite edge paths, composed by concatenation when endpoints match.
//!
//! Composition order is left to right: `w1 · w2` is defined when
//! `range(w1) == source(w2)` and means "walk `w1`, then `w2`".

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, GraphTag, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    Unit(VertexId),
    Path {
        edges: Vec<EdgeId>,
        source: VertexId,
        range: VertexId,
    },
}

/// An element of the free semigroupoid: a unit (vertex) or a nonempty
/// admissible edge path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    tag: GraphTag,
    kind: Kind,
}

impl Element {
    pub fn unit(graph: &DirectedGraph, v: VertexId) -> Element {
        assert!(v.index() < graph.vertex_count(), "vertex out of range");
        Element {
            tag: graph.tag(),
            kind: Kind::Unit(v),
        }
    }

    pub fn edge(graph: &DirectedGraph, e: EdgeId) -> Element {
        let edge = graph.edge(e);
        Element {
            tag: graph.tag(),
            kind: Kind::Path {
                edges: vec![e],
                source: edge.source(),
                range: edge.range(),
            },
        }
    }

    /// Builds a path from consecutive edges, rejecting empty or
    /// inadmissible sequences.
    pub fn path(graph: &DirectedGraph, edges: &[EdgeId]) -> Result<Element> {
        let (first, rest) = edges
            .split_first()
            .ok_or_else(|| Error::invalid("a path needs at least one edge"))?;
        if let Some(bad) = edges.iter().find(|e| e.index() >= graph.edge_count()) {
            return Err(Error::invalid(format!("edge index {} out of range", bad.index())));
        }
        let mut range = graph.edge(*first).range();
        for e in rest {
            let edge = graph.edge(*e);
            if edge.source() != range {
                return Err(Error::invalid(format!(
                    "edge {} does not start where the path ends",
                    edge.label()
                )));
            }
            range = edge.range();
        }
        Ok(Element {
            tag: graph.tag(),
            kind: Kind::Path {
                edges: edges.to_vec(),
                source: graph.edge(*first).source(),
                range,
            },
        })
    }

    /// Parses a path literal: a vertex id, or dot-joined edge ids such as
    /// `e1.e2`.
    pub fn parse(graph: &DirectedGraph, text: &str) -> Result<Element> {
        if !text.contains('.') {
            if let Some(v) = graph.vertex_by_name(text) {
                return Ok(Element::unit(graph, v));
            }
        }
        let edges = text
            .split('.')
            .map(|name| {
                graph
                    .edge_by_name(name)
                    .ok_or_else(|| Error::invalid(format!("unknown edge or vertex {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Element::path(graph, &edges)
    }

    pub fn graph_tag(&self) -> GraphTag {
        self.tag
    }

    pub fn source(&self) -> VertexId {
        match &self.kind {
            Kind::Unit(v) => *v,
            Kind::Path { source, .. } => *source,
        }
    }

    pub fn range(&self) -> VertexId {
        match &self.kind {
            Kind::Unit(v) => *v,
            Kind::Path { range, .. } => *range,
        }
    }

    /// Number of edges; zero for units.
    // Units play the role of `is_empty`; see `is_unit`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges().len()
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.kind, Kind::Unit(_))
    }

    pub fn as_unit(&self) -> Option<VertexId> {
        match self.kind {
            Kind::Unit(v) => Some(v),
            Kind::Path { .. } => None,
        }
    }

    /// The edge sequence; empty for units.
    pub fn edges(&self) -> &[EdgeId] {
        match &self.kind {
            Kind::Unit(_) => &[],
            Kind::Path { edges, .. } => edges,
        }
    }

    /// `self · other`, or `None` when the product is not admissible.
    pub fn compose(&self, other: &Element) -> Result<Option<Element>> {
        if self.tag != other.tag {
            return Err(Error::GraphMismatch);
        }
        if self.range() != other.source() {
            return Ok(None);
        }
        let kind = match (&self.kind, &other.kind) {
            (Kind::Unit(_), _) => other.kind.clone(),
            (_, Kind::Unit(_)) => self.kind.clone(),
            (
                Kind::Path { edges: a, source, .. },
                Kind::Path { edges: b, range, .. },
            ) => {
                let mut edges = Vec::with_capacity(a.len() + b.len());
                edges.extend_from_slice(a);
                edges.extend_from_slice(b);
                Kind::Path {
                    edges,
                    source: *source,
                    range: *range,
                }
            }
        };
        Ok(Some(Element {
            tag: self.tag,
            kind,
        }))
    }

    /// Finds `h` with `self == prefix · h`. The factorization is unique when
    /// it exists.
    pub fn strip_prefix(&self, prefix: &Element) -> Result<Option<Element>> {
        if self.tag != prefix.tag {
            return Err(Error::GraphMismatch);
        }
        if prefix.source() != self.source() {
            return Ok(None);
        }
        let kind = match (&prefix.kind, &self.kind) {
            (Kind::Unit(_), _) => self.kind.clone(),
            (Kind::Path { .. }, Kind::Unit(_)) => return Ok(None),
            (Kind::Path { edges: p, range: pr, .. }, Kind::Path { edges: w, range, .. }) => {
                match w.strip_prefix(p.as_slice()) {
                    None => return Ok(None),
                    Some([]) => Kind::Unit(*pr),
                    Some(rest) => Kind::Path {
                        edges: rest.to_vec(),
                        source: *pr,
                        range: *range,
                    },
                }
            }
        };
        Ok(Some(Element {
            tag: self.tag,
            kind,
        }))
    }

    /// Literal form: the vertex id, or dot-joined edge labels.
    pub fn render(&self, graph: &DirectedGraph) -> String {
        match &self.kind {
            Kind::Unit(v) => graph.vertex_name(*v).to_string(),
            Kind::Path { edges, .. } => edges
                .iter()
                .map(|e| graph.edge(*e).label())
                .collect::<Vec<_>>()
                .join("."),
        }
    }
}

/// Length first, then units by vertex, then paths lexicographically by edge
/// ids (which follow identifier order).
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_kind = match (&self.kind, &other.kind) {
            (Kind::Unit(a), Kind::Unit(b)) => a.cmp(b),
            (Kind::Unit(_), Kind::Path { .. }) => Ordering::Less,
            (Kind::Path { .. }, Kind::Unit(_)) => Ordering::Greater,
            (Kind::Path { edges: a, .. }, Kind::Path { edges: b, .. }) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
        };
        by_kind.then_with(|| self.tag.cmp(&other.tag))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All units and all admissible paths of length at most `max_len`, in
/// length-lexicographic order.
pub fn enumerate(graph: &DirectedGraph, max_len: usize) -> Vec<Element> {
    let mut out: Vec<Element> = graph.vertices().map(|v| Element::unit(graph, v)).collect();
    if max_len == 0 {
        return out;
    }
    let mut frontier: Vec<Element> = graph.edge_ids().map(|e| Element::edge(graph, e)).collect();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &e in graph.out_edges(w.range()) {
                let mut edges = w.edges().to_vec();
                edges.push(e);
                next.push(Element {
                    tag: w.tag,
                    kind: Kind::Path {
                        edges,
                        source: w.source(),
                        range: graph.edge(e).range(),
                    },
                });
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out.append(&mut frontier);
    out
}
