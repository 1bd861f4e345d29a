//! Random small graphs for property tests and experiments.

use rand::Rng;

use super::label::Label;
use super::operation::GraphOperation;
use super::test_graph::{Edge, TestGraph};

/// A random connected 0-graph with `1..=max_vertices` vertices and at most
/// `max_edges` edges (at least a spanning tree), labels drawn from `labels`.
pub fn random_test_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_edges: usize, labels: &[Label]) -> TestGraph {
    let n = rng.random_range(1..=max_vertices.max(1));
    let tree_edges = n - 1;
    let total = rng.random_range(tree_edges.max(usize::from(n == 1))..=max_edges.max(tree_edges));
    let mut edges = Vec::with_capacity(total);
    let pick = |rng: &mut R| labels[rng.random_range(0..labels.len())].clone();
    for v in 1..n {
        let u = rng.random_range(0..v);
        let e = if rng.random_bool(0.5) { Edge::new(u, v, pick(rng)) } else { Edge::new(v, u, pick(rng)) };
        edges.push(e);
    }
    while edges.len() < total {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        edges.push(Edge::new(a, b, pick(rng)));
    }
    // shuffle edge order so trees are not always listed first
    for i in (1..edges.len()).rev() {
        let j = rng.random_range(0..=i);
        edges.swap(i, j);
    }
    TestGraph::new(n, edges, vec![]).expect("spanning tree keeps it connected")
}

/// A random graph operation with at most `max_vertices` vertices and exactly
/// `edges` edges when that suffices to connect them.
pub fn random_operation<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, edges: usize) -> GraphOperation {
    let n = rng.random_range(1..=max_vertices.max(1)).min(edges + 1);
    let mut list = Vec::with_capacity(edges);
    for v in 1..n {
        let u = rng.random_range(0..v);
        list.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
    }
    while list.len() < edges {
        list.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    for i in (1..list.len()).rev() {
        let j = rng.random_range(0..=i);
        list.swap(i, j);
    }
    let input = rng.random_range(0..n);
    let output = rng.random_range(0..n);
    GraphOperation::new(n, list, input, output).expect("connected by construction")
}
