//! Fixtures shared by the benchmarks.

use wgraph_core::DirectedGraph;

/// The single edge `e: x -> y`.
pub fn single_edge() -> DirectedGraph {
    DirectedGraph::parse("vertex x\nvertex y\nedge e x y\n").unwrap()
}

/// One vertex with a loop `f`.
pub fn single_loop() -> DirectedGraph {
    DirectedGraph::parse("vertex v\nedge f v v\n").unwrap()
}

/// The path `x -e1-> y -e2-> z`.
pub fn two_path() -> DirectedGraph {
    DirectedGraph::parse("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\n").unwrap()
}

/// A chain of `n` edges `e0 .. e{n-1}` through vertices `v0 .. vn`.
pub fn chain(n: usize) -> DirectedGraph {
    let mut text = String::new();
    for i in 0..=n {
        text.push_str(&format!("vertex v{i}\n"));
    }
    for i in 0..n {
        text.push_str(&format!("edge e{i} v{i} v{}\n", i + 1));
    }
    DirectedGraph::parse(&text).unwrap()
}

/// The word `e0.e1...e{n-1}` followed by its adjoint, a projection onto
/// the last vertex of [`chain`].
pub fn chain_projection(n: usize) -> String {
    let path: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let path = path.join(".");
    format!("{path}* {path}")
}
