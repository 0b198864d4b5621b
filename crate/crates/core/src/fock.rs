//! Creation and annihilation operators on the length-truncated graph Fock
//! space, with one basis vector per semigroupoid element of length at most
//! `max_len`.
//!
//! Every generator maps basis vectors to basis vectors or to zero and is
//! injective where defined, so operators are stored as partial injections
//! on basis indices. Products and comparisons are exact.
//!
//! Creation results longer than `max_len` are sent to zero. Equalities that
//! hold on the full space therefore hold here only on a safe region of
//! short basis vectors; see [`safe_len`].

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphTag, VertexId};
use crate::groupoid::{Exponent, Letter, OperatorWord};
use crate::semigroupoid::{enumerate, Element};

#[derive(Debug)]
pub struct FockBasis {
    graph: DirectedGraph,
    max_len: usize,
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
}

impl FockBasis {
    pub fn new(graph: &DirectedGraph, max_len: usize) -> Result<Arc<FockBasis>> {
        if max_len == 0 {
            return Err(Error::invalid("Fock truncation length must be positive"));
        }
        let elements = enumerate(graph, max_len);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        Ok(Arc::new(FockBasis {
            graph: graph.clone(),
            max_len,
            elements,
            index,
        }))
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    fn check(&self, tag: GraphTag) -> Result<()> {
        if tag == self.graph.tag() {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    fn operator(self: &Arc<Self>, map: Vec<Option<u32>>) -> FockOperator {
        FockOperator {
            basis: Arc::clone(self),
            map,
        }
    }

    /// `L_w`: `ξ_h ↦ ξ_{wh}` when `wh` is admissible and fits in the
    /// truncation.
    pub fn creation(self: &Arc<Self>, w: &Element) -> Result<FockOperator> {
        self.check(w.graph_tag())?;
        let map = self
            .elements
            .iter()
            .map(|h| {
                w.compose(h)
                    .expect("same graph")
                    .filter(|wh| wh.len() <= self.max_len)
                    .map(|wh| self.index[&wh])
            })
            .collect();
        Ok(self.operator(map))
    }

    /// `L_w^*`: `ξ_{wh} ↦ ξ_h`, zero on vectors without prefix `w`.
    pub fn annihilation(self: &Arc<Self>, w: &Element) -> Result<FockOperator> {
        self.check(w.graph_tag())?;
        let map = self
            .elements
            .iter()
            .map(|wh| {
                wh.strip_prefix(w)
                    .expect("same graph")
                    .map(|h| self.index[&h])
            })
            .collect();
        Ok(self.operator(map))
    }

    pub fn letter(self: &Arc<Self>, letter: &Letter) -> Result<FockOperator> {
        match letter.exponent {
            Exponent::One => self.creation(&letter.element),
            Exponent::Star => self.annihilation(&letter.element),
        }
    }

    /// `L_v` for a vertex.
    pub fn vertex_projection(self: &Arc<Self>, v: VertexId) -> FockOperator {
        self.creation(&Element::unit(&self.graph, v))
            .expect("vertex of the basis graph")
    }

    pub fn identity(self: &Arc<Self>) -> FockOperator {
        self.operator((0..self.len() as u32).map(Some).collect())
    }

    pub fn zero(self: &Arc<Self>) -> FockOperator {
        self.operator(vec![None; self.len()])
    }

    /// The product of the letter operators in word order; the rightmost
    /// letter acts first.
    pub fn evaluate(self: &Arc<Self>, word: &OperatorWord) -> Result<FockOperator> {
        let mut letters = word.letters().iter().rev();
        let last = letters.next().expect("operator words are nonempty");
        letters.try_fold(self.letter(last)?, |acc, l| {
            Ok(self.letter(l)?.compose(&acc).expect("same basis"))
        })
    }
}

/// Largest basis length on which truncated evaluation of `word` agrees with
/// the untruncated operator: `max_len` minus the largest length the word
/// adds at any point while acting right to left. `None` when no basis
/// vector is safe.
pub fn safe_len(word: &OperatorWord, max_len: usize) -> Option<usize> {
    let mut running = 0i64;
    let mut peak = 0i64;
    for letter in word.letters().iter().rev() {
        running += letter.exponent.sign() * letter.element.len() as i64;
        peak = peak.max(running);
    }
    (max_len as i64 - peak).try_into().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorClass {
    Zero,
    Projection,
    PartialIsometry,
    Other,
}

/// A partial injection on the indices of a [`FockBasis`], i.e. a 0/1 matrix
/// with at most one 1 in each row and column.
#[derive(Debug, Clone)]
pub struct FockOperator {
    basis: Arc<FockBasis>,
    map: Vec<Option<u32>>,
}

impl PartialEq for FockOperator {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) && self.map == other.map
    }
}

impl Eq for FockOperator {}

impl FockOperator {
    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    /// Image of basis vector `i`, if nonzero.
    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map[i].map(|j| j as usize)
    }

    /// Mapped `(source, target)` index pairs in basis order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j as usize)))
    }

    fn same_basis(&self, other: &FockOperator) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis)
            || (self.basis.graph.tag() == other.basis.graph.tag()
                && self.basis.max_len == other.basis.max_len)
    }

    fn require_same_basis(&self, other: &FockOperator) -> Result<()> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(Error::invalid("operators act on different bases"))
        }
    }

    /// `self ∘ rhs`: `rhs` acts first.
    pub fn compose(&self, rhs: &FockOperator) -> Result<FockOperator> {
        self.require_same_basis(rhs)?;
        let map = rhs
            .map
            .iter()
            .map(|j| j.and_then(|j| self.map[j as usize]))
            .collect();
        Ok(self.basis.operator(map))
    }

    /// The transpose, which for a partial injection is its inverse.
    pub fn adjoint(&self) -> FockOperator {
        let mut map = vec![None; self.map.len()];
        for (i, j) in self.pairs() {
            map[j] = Some(i as u32);
        }
        self.basis.operator(map)
    }

    /// Keeps only the basis vectors of length at most `len` in the domain.
    pub fn restrict_to_len(&self, len: usize) -> FockOperator {
        let map = self
            .map
            .iter()
            .enumerate()
            .map(|(i, j)| j.filter(|_| self.basis.elements[i].len() <= len))
            .collect();
        self.basis.operator(map)
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// A restriction of the identity.
    pub fn is_projection(&self) -> bool {
        self.pairs().all(|(i, j)| i == j)
    }

    /// `V V^* V = V`.
    pub fn is_partial_isometry(&self) -> bool {
        let vvv = self
            .compose(&self.adjoint())
            .and_then(|p| p.compose(self))
            .expect("same basis");
        vvv == *self
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.pairs().all(|(_, j)| !std::mem::replace(&mut seen[j], true))
    }

    pub fn classify(&self) -> OperatorClass {
        if self.is_zero() {
            OperatorClass::Zero
        } else if self.is_projection() {
            OperatorClass::Projection
        } else if self.is_partial_isometry() {
            OperatorClass::PartialIsometry
        } else {
            OperatorClass::Other
        }
    }

    /// True when every mapped pair of `self` is also a pair of `other`. For
    /// projections this is the subprojection order.
    pub fn leq(&self, other: &FockOperator) -> Result<bool> {
        self.require_same_basis(other)?;
        Ok(self
            .pairs()
            .all(|(i, j)| other.map[i] == Some(j as u32)))
    }

    /// `a ≤ b` for projections; errors on operators over different bases.
    pub fn subprojection_leq(&self, other: &FockOperator) -> Result<bool> {
        Ok(self.is_projection() && other.is_projection() && self.leq(other)?)
    }

    /// One `<source> -> <target>` line per mapped pair, in basis order.
    pub fn dump(&self) -> String {
        let graph = &self.basis.graph;
        let mut out = String::new();
        for (i, j) in self.pairs() {
            let _ = writeln!(
                out,
                "{} -> {}",
                self.basis.elements[i].render(graph),
                self.basis.elements[j].render(graph)
            );
        }
        out
    }
}
