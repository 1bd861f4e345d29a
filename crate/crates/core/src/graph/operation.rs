use std::fmt;

use super::label::Label;
use super::test_graph::{Edge, TestGraph};
use crate::combinatorics::partition::UnionFind;
use crate::combinatorics::Permutation;
use crate::error::{Error, Result};

/// A K-graph operation: a connected digraph with K ordered unlabeled edges
/// and distinguished input and output vertices (possibly equal).
///
/// Vertices are renumbered by first appearance (input, output, then edge
/// endpoints in edge order), so structural equality is isomorphism that
/// respects input, output and edge order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphOperation {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    input: usize,
    output: usize,
}

impl GraphOperation {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, input: usize, output: usize) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidGraph("a graph operation has at least one vertex".into()));
        }
        if input >= num_vertices || output >= num_vertices || edges.iter().any(|&(s, t)| s >= num_vertices || t >= num_vertices) {
            return Err(Error::InvalidGraph("vertex out of range".into()));
        }
        let mut uf = UnionFind::new(num_vertices);
        for &(s, t) in &edges {
            uf.union(s, t);
        }
        if uf.into_partition().num_blocks() != 1 {
            return Err(Error::Disconnected);
        }
        Ok(Self::normalized(num_vertices, &edges, input, output))
    }

    fn normalized(num_vertices: usize, edges: &[(usize, usize)], input: usize, output: usize) -> Self {
        let mut map = vec![usize::MAX; num_vertices];
        let mut next = 0;
        let order = [input, output].into_iter().chain(edges.iter().flat_map(|&(s, t)| [s, t]));
        for v in order {
            if map[v] == usize::MAX {
                map[v] = next;
                next += 1;
            }
        }
        Self { num_vertices: next, edges: edges.iter().map(|&(s, t)| (map[s], map[t])).collect(), input: map[input], output: map[output] }
    }

    /// The constant `0`: one vertex, no edges.
    pub fn zero() -> Self {
        Self { num_vertices: 1, edges: vec![], input: 0, output: 0 }
    }

    /// `I`: one edge from input to output.
    pub fn identity() -> Self {
        Self::new(2, vec![(0, 1)], 0, 1).expect("valid")
    }

    /// `(· <-1- · <-2- ·)`, acting as the matrix product `A_1 A_2`.
    pub fn product() -> Self {
        // input 0, middle 1, output 2
        Self::new(3, vec![(1, 2), (0, 1)], 0, 2).expect("valid")
    }

    /// Hadamard product: two edges from input to output.
    pub fn hadamard() -> Self {
        Self::new(2, vec![(0, 1), (0, 1)], 0, 1).expect("valid")
    }

    /// `Δ`: one vertex carrying a loop; keeps the diagonal.
    pub fn diagonal() -> Self {
        Self::new(1, vec![(0, 0)], 0, 0).expect("valid")
    }

    /// One edge from output to input; acts as the transpose.
    pub fn transpose() -> Self {
        Self::new(2, vec![(1, 0)], 0, 1).expect("valid")
    }

    /// `deg`: input = output = `u`, one edge into `u` from a second vertex, so
    /// that `deg(A) = diag(Σ_j A_ij)`.
    pub fn degree() -> Self {
        Self::new(2, vec![(1, 0)], 0, 0).expect("valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arity(&self) -> usize {
        self.edges.len()
    }

    pub fn input(&self) -> usize {
        self.input
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// `g ∘ (g_1, .., g_K)`: edge `i` of `g` is replaced by `g_i`, the input
    /// of `g_i` glued to the source of the edge and its output to the target.
    /// Edges of the result are those of `g_1`, then `g_2`, and so on.
    pub fn compose(&self, parts: &[GraphOperation]) -> Result<Self> {
        if parts.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: parts.len() });
        }
        let total = self.num_vertices + parts.iter().map(|p| p.num_vertices).sum::<usize>();
        let mut uf = UnionFind::new(total);
        let mut edges = Vec::new();
        let mut offset = self.num_vertices;
        for (&(s, t), part) in self.edges.iter().zip(parts) {
            uf.union(s, offset + part.input);
            uf.union(t, offset + part.output);
            edges.extend(part.edges.iter().map(|&(a, b)| (offset + a, offset + b)));
            offset += part.num_vertices;
        }
        let pi = uf.into_partition();
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (pi.block_of(a), pi.block_of(b))).collect();
        Ok(Self::normalized(pi.num_blocks(), &edges, pi.block_of(self.input), pi.block_of(self.output)))
    }

    /// `g ∘ σ`: the i-th edge of the result is edge `σ^{-1}(i)` of `g`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: sigma.len() });
        }
        let inv = sigma.inverse();
        let edges: Vec<(usize, usize)> = (0..self.arity()).map(|i| self.edges[inv.apply(i)]).collect();
        Ok(Self::normalized(self.num_vertices, &edges, self.input, self.output))
    }

    /// `g*`: edges reversed, input and output interchanged.
    pub fn involution(&self) -> Self {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(s, t)| (t, s)).collect();
        Self::normalized(self.num_vertices, &edges, self.output, self.input)
    }

    /// The 2-graph monomial with edge `i` labeled `labels[i]` and outputs
    /// `(output, input)`.
    pub fn to_test_graph(&self, labels: &[Label]) -> Result<TestGraph> {
        if labels.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: labels.len() });
        }
        let edges = self.edges.iter().zip(labels).map(|(&(s, t), l)| Edge::new(s, t, l.clone())).collect();
        TestGraph::new(self.num_vertices, edges, vec![self.output, self.input])
    }

    /// The 0-graph whose value is `Tr Z_g(a_1 ⊗ .. ⊗ a_K) / N`: the input and
    /// output are merged.
    pub fn trace_graph(&self, labels: &[Label]) -> Result<TestGraph> {
        let t = self.to_test_graph(labels)?;
        let mut uf = UnionFind::new(self.num_vertices);
        uf.union(self.input, self.output);
        t.with_outputs(vec![])?.quotient(&uf.into_partition())
    }
}

impl fmt::Debug for GraphOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op[{}v in={} out={};", self.num_vertices, self.input, self.output)?;
        for (s, t) in &self.edges {
            write!(f, " {s}->{t}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_law_on_special_operations() {
        for g in [GraphOperation::product(), GraphOperation::hadamard(), GraphOperation::diagonal(), GraphOperation::degree()] {
            let ids = vec![GraphOperation::identity(); g.arity()];
            assert_eq!(g.compose(&ids).unwrap(), g);
            assert_eq!(GraphOperation::identity().compose(std::slice::from_ref(&g)).unwrap(), g);
        }
    }

    #[test]
    fn product_is_associative() {
        let p = GraphOperation::product();
        let i = GraphOperation::identity();
        let left = p.compose(&[p.clone(), i.clone()]).unwrap();
        let right = p.compose(&[i, p.clone()]).unwrap();
        assert_eq!(left, right);
        // output <- . <- . <- input
        assert_eq!(left, GraphOperation::new(4, vec![(2, 3), (1, 2), (0, 1)], 0, 3).unwrap());
    }

    #[test]
    fn hadamard_with_transpose() {
        let g = GraphOperation::hadamard().compose(&[GraphOperation::identity(), GraphOperation::transpose()]).unwrap();
        assert_eq!(g, GraphOperation::new(2, vec![(0, 1), (1, 0)], 0, 1).unwrap());
    }

    #[test]
    fn zero_collapses_an_edge() {
        let g = GraphOperation::identity().compose(&[GraphOperation::zero()]).unwrap();
        assert_eq!(g, GraphOperation::zero());
        let d = GraphOperation::hadamard().compose(&[GraphOperation::zero(), GraphOperation::identity()]).unwrap();
        assert_eq!(d, GraphOperation::diagonal());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(GraphOperation::identity().involution(), GraphOperation::identity());
        assert_eq!(GraphOperation::transpose().involution(), GraphOperation::transpose());
        let p = GraphOperation::product();
        assert_eq!(p.involution().involution(), p);
        // (AB)* = B* A*: the involuted product is the product with edges swapped
        assert_eq!(p.involution(), p.permute(&Permutation::full_cycle(2)).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GraphOperation::new(2, vec![], 0, 1).unwrap_err(), Error::Disconnected);
        assert!(GraphOperation::product().compose(&[GraphOperation::identity()]).is_err());
        assert!(GraphOperation::new(1, vec![(0, 1)], 0, 0).is_err());
    }
}
