use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::canonical::{canonical_form, CanonicalForm};
use super::label::Label;
use crate::combinatorics::partition::{SetPartition, UnionFind};
use crate::error::{Error, Result};

/// A directed edge. For matrix evaluation, an edge `source -> target` labeled
/// `A` contributes the entry `A[k(target), k(source)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Label,
}

impl Edge {
    pub fn new(source: usize, target: usize, label: impl Into<Label>) -> Self {
        Self { source, target, label: label.into() }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A test graph (n-graph monomial): a connected directed multigraph on the
/// vertices `0..num_vertices`, with ordered labeled edges and an ordered list
/// of output vertices.
///
/// Equality is isomorphism of labeled digraphs respecting output order; use
/// [`TestGraph::same_structure`] for literal comparison.
#[derive(Clone)]
pub struct TestGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    outputs: Vec<usize>,
}

impl TestGraph {
    pub fn new(num_vertices: usize, edges: Vec<Edge>, outputs: Vec<usize>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidGraph("a test graph has at least one vertex".into()));
        }
        for e in &edges {
            if e.source >= num_vertices || e.target >= num_vertices {
                return Err(Error::InvalidGraph(format!("edge {}->{} references a missing vertex", e.source, e.target)));
            }
        }
        if let Some(&v) = outputs.iter().find(|&&v| v >= num_vertices) {
            return Err(Error::InvalidGraph(format!("output {v} is not a vertex")));
        }
        let graph = Self { num_vertices, edges, outputs };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    /// One vertex, no edges, no outputs.
    pub fn single_vertex() -> Self {
        Self { num_vertices: 1, edges: Vec::new(), outputs: Vec::new() }
    }

    /// Directed cycle whose normalized trace is `Tr(a_1 ⋯ a_n)/N`: edge `i`
    /// runs from vertex `i+1` to vertex `i`, so the word is read against the
    /// orientation.
    pub fn word_cycle(word: &[Label]) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Ok(Self::single_vertex());
        }
        let edges = word.iter().enumerate().map(|(i, l)| Edge::new((i + 1) % n, i, l.clone())).collect();
        Self::new(n, edges, Vec::new())
    }

    /// Directed path `v_0 <- v_1 <- ... <- v_n` with edge `i` labeled `word[i]`
    /// and outputs `(v_0, v_n)`: it is the 2-graph of the matrix product.
    pub fn word_path(word: &[Label]) -> Result<Self> {
        let n = word.len();
        let edges = word.iter().enumerate().map(|(i, l)| Edge::new(i + 1, i, l.clone())).collect();
        Self::new(n + 1, edges, vec![0, n])
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Distinct labels in order of first appearance.
    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = Vec::new();
        for e in &self.edges {
            if !out.contains(&e.label) {
                out.push(e.label.clone());
            }
        }
        out
    }

    /// Distinct letter names, ignoring stars.
    pub fn letters(&self) -> BTreeSet<String> {
        self.edges.iter().map(|e| e.label.name.clone()).collect()
    }

    pub fn with_outputs(&self, outputs: Vec<usize>) -> Result<Self> {
        Self::new(self.num_vertices, self.edges.clone(), outputs)
    }

    pub fn with_edges(&self, edges: Vec<Edge>) -> Result<Self> {
        Self::new(self.num_vertices, edges, self.outputs.clone())
    }

    /// Literal equality: same vertex count, edge list and outputs.
    pub fn same_structure(&self, other: &TestGraph) -> bool {
        self.num_vertices == other.num_vertices && self.edges == other.edges && self.outputs == other.outputs
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.num_vertices);
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        uf.into_partition().num_blocks() == 1
    }

    /// `t^π`: vertices in a block of `pi` are identified. Block `b` of the
    /// restricted growth string becomes vertex `b`; edge order, labels,
    /// orientation and the output list (with repetitions) are kept.
    pub fn quotient(&self, pi: &SetPartition) -> Result<Self> {
        if pi.len() != self.num_vertices {
            return Err(Error::InvalidPartition(format!(
                "partition of {} elements applied to a graph with {} vertices",
                pi.len(),
                self.num_vertices
            )));
        }
        let map = |v: usize| pi.block_of(v);
        Ok(Self {
            num_vertices: pi.num_blocks(),
            edges: self.edges.iter().map(|e| Edge { source: map(e.source), target: map(e.target), label: e.label.clone() }).collect(),
            outputs: self.outputs.iter().map(|&v| map(v)).collect(),
        })
    }

    /// `t*`: edges reversed and labels starred; outputs unchanged.
    pub fn involute(&self) -> Self {
        Self {
            num_vertices: self.num_vertices,
            edges: self.edges.iter().map(|e| Edge { source: e.target, target: e.source, label: e.label.adjoint() }).collect(),
            outputs: self.outputs.clone(),
        }
    }

    /// `t|s`: disjoint union with the i-th outputs identified; a 0-graph.
    /// The vertices of `t` come first, edges of `t` precede edges of `s`.
    pub fn merge_outputs(&self, other: &TestGraph) -> Result<Self> {
        if self.outputs.len() != other.outputs.len() {
            return Err(Error::ArityMismatch { expected: self.outputs.len(), found: other.outputs.len() });
        }
        if self.outputs.is_empty() {
            return Err(Error::InvalidArgument("merging requires at least one output".into()));
        }
        let offset = self.num_vertices;
        let total = offset + other.num_vertices;
        let mut uf = UnionFind::new(total);
        for (&a, &b) in self.outputs.iter().zip(&other.outputs) {
            uf.union(a, offset + b);
        }
        let pi = uf.into_partition();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge { source: e.source + offset, target: e.target + offset, label: e.label.clone() }));
        let union = Self { num_vertices: total, edges, outputs: Vec::new() };
        union.quotient(&pi)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_vertices {
            return Err(Error::SizeMismatch(perm.len(), self.num_vertices));
        }
        crate::combinatorics::Permutation::new(perm.to_vec())?;
        Ok(Self {
            num_vertices: self.num_vertices,
            edges: self.edges.iter().map(|e| Edge { source: perm[e.source], target: perm[e.target], label: e.label.clone() }).collect(),
            outputs: self.outputs.iter().map(|&v| perm[v]).collect(),
        })
    }

    /// Edge order permuted: the new edge `i` is the old edge `order[i]`.
    pub fn reorder_edges(&self, order: &[usize]) -> Result<Self> {
        crate::combinatorics::Permutation::new(order.to_vec())?;
        if order.len() != self.edges.len() {
            return Err(Error::SizeMismatch(order.len(), self.edges.len()));
        }
        Ok(Self { num_vertices: self.num_vertices, edges: order.iter().map(|&i| self.edges[i].clone()).collect(), outputs: self.outputs.clone() })
    }

    /// Labels replaced edge by edge.
    pub fn map_labels(&self, f: impl Fn(&Label) -> Label) -> Self {
        Self {
            num_vertices: self.num_vertices,
            edges: self.edges.iter().map(|e| Edge { source: e.source, target: e.target, label: f(&e.label) }).collect(),
            outputs: self.outputs.clone(),
        }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &TestGraph) -> bool {
        self.num_vertices == other.num_vertices
            && self.edges.len() == other.edges.len()
            && self.outputs.len() == other.outputs.len()
            && self.canonical_form() == other.canonical_form()
    }
}

impl PartialEq for TestGraph {
    fn eq(&self, other: &Self) -> bool {
        self.is_isomorphic(other)
    }
}

impl Eq for TestGraph {}

impl Hash for TestGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_form().hash(state);
    }
}

impl fmt::Debug for TestGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestGraph[{}v;", self.num_vertices)?;
        for e in &self.edges {
            write!(f, " {}->{}:{}", e.source, e.target, e.label)?;
        }
        if !self.outputs.is_empty() {
            write!(f, "; out {:?}", self.outputs)?;
        }
        write!(f, "]")
    }
}
