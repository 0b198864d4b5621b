//! Finite directed multigraphs, their shadow (every edge reversed) and the
//! shadowed graph carrying both orientations.
//!
//! Vertices and edges share one identifier namespace so that path and word
//! literals can be parsed without ambiguity. Identifiers are kept sorted, and
//! [`VertexId`]/[`EdgeId`] are positions in that sorted order, which makes
//! every derived enumeration deterministic.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Suffix used when rendering a shadow edge.
pub const SHADOW_SUFFIX: &str = "^-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Fingerprint of a graph's structure. Elements and words carry the tag of
/// the graph they were built over so mixing graphs is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphTag(u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Shadow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    name: String,
    source: VertexId,
    range: VertexId,
    orientation: Orientation,
}

impl Edge {
    /// The identifier without any shadow marker.
    pub fn base_name(&self) -> &str {
        &self.name
    }

    /// The identifier as written in files: `e` or `e^-1`.
    pub fn label(&self) -> String {
        match self.orientation {
            Orientation::Forward => self.name.clone(),
            Orientation::Shadow => format!("{}{}", self.name, SHADOW_SUFFIX),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    fn reversed(&self) -> Edge {
        let orientation = match self.orientation {
            Orientation::Forward => Orientation::Shadow,
            Orientation::Shadow => Orientation::Forward,
        };
        Edge {
            name: self.name.clone(),
            source: self.range,
            range: self.source,
            orientation,
        }
    }
}

/// A finite directed multigraph. Loops and parallel edges are allowed.
///
/// Immutable once built; use [`GraphBuilder`] or [`DirectedGraph::parse`].
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    tag: GraphTag,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges leaving `v`, in identifier order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    /// Looks up an edge by its label. Shadow edges are found under either
    /// `e^-1` or `e*`.
    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        if let Some(&e) = self.edge_index.get(name) {
            return Some(e);
        }
        let (base, orientation) = split_edge_label(name);
        if orientation == Orientation::Shadow {
            return self
                .edge_index
                .get(&format!("{base}{SHADOW_SUFFIX}"))
                .copied();
        }
        None
    }

    pub fn is_forward_only(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.orientation == Orientation::Forward)
    }

    /// Returns the shadow graph: same vertices, every edge reversed and
    /// marked as a shadow edge.
    pub fn shadow(&self) -> Result<DirectedGraph> {
        self.require_forward_only()?;
        Ok(Self::assemble(
            self.vertices.clone(),
            self.edges.iter().map(Edge::reversed).collect(),
        ))
    }

    /// Returns the graph carrying every edge together with its reversal.
    pub fn shadowed(&self) -> Result<DirectedGraph> {
        self.require_forward_only()?;
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(self.edges.iter().map(Edge::reversed))
            .collect();
        Ok(Self::assemble(self.vertices.clone(), edges))
    }

    /// Subgraph keeping only the edges with the given orientation.
    pub fn restrict(&self, orientation: Orientation) -> DirectedGraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.orientation == orientation)
            .cloned()
            .collect();
        Self::assemble(self.vertices.clone(), edges)
    }

    fn require_forward_only(&self) -> Result<()> {
        match self.edges.iter().find(|e| e.orientation == Orientation::Shadow) {
            Some(e) => Err(Error::invalid(format!(
                "graph already contains shadow edge {}",
                e.label()
            ))),
            None => Ok(()),
        }
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// vertex x
    /// vertex y
    /// edge e x y
    /// ```
    pub fn parse(text: &str) -> Result<DirectedGraph> {
        let mut builder = GraphBuilder::default();
        let mut last_line = 0;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            last_line = line_no;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let at_line = |err: Error| match err {
                Error::InvalidInput(message) => Error::Parse {
                    line: line_no,
                    message,
                },
                other => other,
            };
            match fields.as_slice() {
                [] => {}
                ["vertex", id] => builder.add_vertex(id).map_err(at_line)?,
                ["edge", id, source, range] => {
                    builder.add_edge(id, source, range).map_err(at_line)?
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("malformed line: {:?}", line.trim()),
                    })
                }
            }
        }
        builder.build().map_err(|err| match err {
            Error::InvalidInput(message) => Error::Parse {
                line: last_line.max(1),
                message,
            },
            other => other,
        })
    }

    /// Canonical text form: vertices sorted by id, then edges sorted by id.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(v);
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.label(),
                self.vertices[e.source.index()],
                self.vertices[e.range.index()]
            ));
        }
        out
    }

    fn assemble(mut vertices: Vec<String>, edges: Vec<Edge>) -> DirectedGraph {
        // Re-index so that ids follow the sorted order of names and labels.
        let old_names = vertices.clone();
        vertices.sort();
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();
        let remap = |v: VertexId| vertex_index[&old_names[v.index()]];

        let mut sorted: BTreeMap<String, Edge> = BTreeMap::new();
        for e in edges {
            let e = Edge {
                source: remap(e.source),
                range: remap(e.range),
                ..e
            };
            sorted.insert(e.label(), e);
        }
        let edge_index = sorted
            .keys()
            .enumerate()
            .map(|(i, label)| (label.clone(), EdgeId(i as u32)))
            .collect();
        let edges: Vec<Edge> = sorted.into_values().collect();

        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeId(i as u32));
        }

        let mut hasher = DefaultHasher::new();
        vertices.hash(&mut hasher);
        edges.hash(&mut hasher);
        let tag = GraphTag(hasher.finish());

        DirectedGraph {
            vertices,
            edges,
            out_edges,
            vertex_index,
            edge_index,
            tag,
        }
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Incremental construction with validation at every step.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    labels: HashMap<String, ()>,
}

impl GraphBuilder {
    pub fn add_vertex(&mut self, id: &str) -> Result<()> {
        validate_id(id)?;
        if self.labels.contains_key(id) {
            return Err(Error::invalid(format!("duplicate id {id}")));
        }
        let v = VertexId(self.vertices.len() as u32);
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), v);
        self.labels.insert(id.to_string(), ());
        Ok(())
    }

    /// Adds an edge. A label written `e*` or `e^-1` declares a shadow edge.
    pub fn add_edge(&mut self, id: &str, source: &str, range: &str) -> Result<()> {
        let (base, orientation) = split_edge_label(id);
        validate_id(base)?;
        let edge = Edge {
            name: base.to_string(),
            source: self.lookup(source)?,
            range: self.lookup(range)?,
            orientation,
        };
        let label = edge.label();
        if self.labels.contains_key(&label) {
            return Err(Error::invalid(format!("duplicate id {label}")));
        }
        self.labels.insert(label, ());
        self.edges.push(edge);
        Ok(())
    }

    pub fn vertex(mut self, id: &str) -> Result<Self> {
        self.add_vertex(id)?;
        Ok(self)
    }

    pub fn edge(mut self, id: &str, source: &str, range: &str) -> Result<Self> {
        self.add_edge(id, source, range)?;
        Ok(self)
    }

    pub fn build(self) -> Result<DirectedGraph> {
        if self.vertices.is_empty() {
            return Err(Error::invalid("graph has no vertices"));
        }
        Ok(DirectedGraph::assemble(self.vertices, self.edges))
    }

    fn lookup(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown vertex {name}")))
    }
}

fn split_edge_label(label: &str) -> (&str, Orientation) {
    if let Some(base) = label.strip_suffix(SHADOW_SUFFIX) {
        (base, Orientation::Shadow)
    } else if let Some(base) = label.strip_suffix('*') {
        (base, Orientation::Shadow)
    } else {
        (label, Orientation::Forward)
    }
}

/// Identifiers are nonempty and free of whitespace and the characters used
/// by the literal syntax (`*`, `.`, `^`).
pub fn validate_id(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::invalid("empty id"));
    }
    if let Some(c) = id
        .chars()
        .find(|c| c.is_whitespace() || matches!(c, '*' | '.' | '^' | '#'))
    {
        return Err(Error::invalid(format!("id {id:?} contains {c:?}")));
    }
    Ok(())
}
