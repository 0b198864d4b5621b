//! Deciding when a monomial in creation and annihilation operators on a
//! graph Fock space is a vertex projection.
//!
//! Three independent routes are provided and cross-checked:
//!
//! - [`groupoid`]: map the word into the free groupoid of the graph and
//!   reduce it to normal form; the word is the projection `L_v` exactly when
//!   the normal form is the unit `v`.
//! - [`lattice`]: walk the word's lattice path and test whether it ends on
//!   the *-axis.
//! - [`fock`]: evaluate the word exactly on a truncated Fock space.
//!
//! [`verify`] enumerates every word within small bounds and reports any
//! disagreement.

pub mod error;
pub mod fock;
pub mod graph;
pub mod groupoid;
pub mod lattice;
pub mod semigroupoid;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockBasis, FockOperator, OperatorClass};
pub use graph::{DirectedGraph, Edge, EdgeId, GraphBuilder, Orientation, VertexId};
pub use groupoid::{
    is_projection, normal_form, to_shadow_word, Exponent, GroupoidWord, Letter, OperatorWord,
    ShadowLetter,
};
pub use lattice::{check_projection, lattice_path, ExportFormat, LatticePath};
pub use semigroupoid::{enumerate, Element};
pub use verify::{verify, Bounds, Report, ViolationKind};
