use serde::Serialize;
use wgraph_core::{
    check_projection, lattice_path, normal_form, DirectedGraph, FockBasis, OperatorClass,
    OperatorWord, Result, VertexId,
};

pub const EXIT_PROJECTION: u8 = 0;
pub const EXIT_NOT_PROJECTION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;

/// Outcome of the Fock evaluation, when requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FockVerdict {
    Zero,
    /// A projection below `L_v` for the named vertex.
    ProjectionBelow(String),
    Projection,
    PartialIsometry,
    Other,
}

impl FockVerdict {
    pub fn label(&self) -> String {
        match self {
            FockVerdict::Zero => "zero".into(),
            FockVerdict::ProjectionBelow(v) => format!("projection-below({v})"),
            FockVerdict::Projection => "projection".into(),
            FockVerdict::PartialIsometry => "partial-isometry".into(),
            FockVerdict::Other => "other".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub word: String,
    pub groupoid: Option<VertexId>,
    pub lattice: Option<VertexId>,
    pub lattice_endpoint: Option<(i64, i64)>,
    pub star_axis: bool,
    pub zero: bool,
    pub normal_form: String,
    pub fock: Option<(usize, FockVerdict)>,
}

impl Verdict {
    pub fn compute(graph: &DirectedGraph, word: &OperatorWord, fock_len: Option<usize>) -> Result<Verdict> {
        let nf = normal_form(graph, word);
        let path = lattice_path(graph, word);
        let fock = match fock_len {
            None => None,
            Some(n) => Some((n, fock_verdict(graph, word, n)?)),
        };
        Ok(Verdict {
            word: word.render(graph),
            groupoid: nf.as_unit(),
            lattice: check_projection(graph, word),
            lattice_endpoint: path.endpoint(),
            star_axis: path.has_star_axis_property(),
            zero: nf.is_zero(),
            normal_form: nf.render(graph),
            fock,
        })
    }

    pub fn agreement(&self) -> bool {
        self.groupoid == self.lattice
    }

    pub fn is_projection(&self) -> bool {
        self.groupoid.is_some()
    }

    /// 0 for a projection, 1 otherwise, 3 when the methods disagree.
    pub fn exit_code(&self) -> u8 {
        if !self.agreement() {
            EXIT_DISAGREEMENT
        } else if self.is_projection() {
            EXIT_PROJECTION
        } else {
            EXIT_NOT_PROJECTION
        }
    }

    pub fn to_text(&self, graph: &DirectedGraph) -> String {
        let name = |v: Option<VertexId>| v.map(|v| graph.vertex_name(v).to_string());
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!("word: {}\nnormal form: {}\n", self.word, self.normal_form);
        out += &match name(self.groupoid) {
            Some(v) => format!("groupoid: projection L_{v}\n"),
            None if self.zero => "groupoid: zero operator\n".to_string(),
            None => "groupoid: not a projection\n".to_string(),
        };
        out += &match self.lattice_endpoint {
            Some((x, y)) => format!(
                "lattice: endpoint ({x},{y}), *-axis property {}, vertex {}\n",
                yes(self.star_axis),
                name(self.lattice).unwrap_or_else(|| "none".into())
            ),
            None => "lattice: empty path\n".to_string(),
        };
        if let Some((n, f)) = &self.fock {
            out += &format!("fock (N={n}): {}\n", f.label());
        }
        out += &format!("agreement: {}\n", yes(self.agreement()));
        out += &match name(self.groupoid) {
            Some(v) => format!("verdict: projection at {v}\n"),
            None => "verdict: not a projection\n".to_string(),
        };
        out
    }

    pub fn to_json(&self, graph: &DirectedGraph) -> String {
        let name = |v: Option<VertexId>| v.map(|v| graph.vertex_name(v).to_string());
        let doc = JsonVerdict {
            projection: self.is_projection(),
            vertex: name(self.groupoid),
            normal_form: &self.normal_form,
            lattice_endpoint: self.lattice_endpoint.map(|(x, y)| [x, y]),
            zero: self.zero,
            agreement: self.agreement(),
            groupoid_vertex: name(self.groupoid),
            lattice_vertex: name(self.lattice),
            star_axis: self.star_axis,
            fock: self.fock.as_ref().map(|(_, f)| f.label()),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct JsonVerdict<'a> {
    projection: bool,
    vertex: Option<String>,
    normal_form: &'a str,
    lattice_endpoint: Option<[i64; 2]>,
    zero: bool,
    agreement: bool,
    groupoid_vertex: Option<String>,
    lattice_vertex: Option<String>,
    star_axis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    fock: Option<String>,
}

fn fock_verdict(graph: &DirectedGraph, word: &OperatorWord, n: usize) -> Result<FockVerdict> {
    let basis = FockBasis::new(graph, n)?;
    let op = basis.evaluate(word)?;
    Ok(match op.classify() {
        OperatorClass::Zero => FockVerdict::Zero,
        OperatorClass::Projection => graph
            .vertices()
            .find(|&v| op.leq(&basis.vertex_projection(v)).unwrap_or(false))
            .map(|v| FockVerdict::ProjectionBelow(graph.vertex_name(v).to_string()))
            .unwrap_or(FockVerdict::Projection),
        OperatorClass::PartialIsometry => FockVerdict::PartialIsometry,
        OperatorClass::Other => FockVerdict::Other,
    })
}
