//! Library side of the `wgraph` command: the verdict aggregated from the
//! three projection tests and its text/JSON renderings.

pub mod verdict;

pub use verdict::{FockVerdict, Verdict};
