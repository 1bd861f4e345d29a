//! Linear combinations of labeled 1-input 1-output graph operations, the
//! elements `Z_g(a_1 ⊗ .. ⊗ a_K)` of the algebra generated by the letters.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{GraphOperation, Label, TestGraph};

#[derive(Clone, Debug, Default)]
pub struct GraphPolynomial {
    terms: Vec<(Complex64, GraphOperation, Vec<Label>)>,
}

impl GraphPolynomial {
    pub fn monomial(op: GraphOperation, labels: Vec<Label>) -> Result<Self> {
        if op.arity() != labels.len() {
            return Err(Error::ArityMismatch { expected: op.arity(), found: labels.len() });
        }
        Ok(Self { terms: vec![(Complex64::new(1.0, 0.0), op, labels)] })
    }

    pub fn unit() -> Self {
        Self::monomial(GraphOperation::zero(), vec![]).expect("nullary")
    }

    /// The letter itself: one edge from input to output.
    pub fn edge(label: Label) -> Self {
        Self::monomial(GraphOperation::identity(), vec![label]).expect("unary")
    }

    /// The transpose: one edge from output to input.
    pub fn transpose(label: Label) -> Self {
        Self::monomial(GraphOperation::transpose(), vec![label]).expect("unary")
    }

    pub fn degree(label: Label) -> Self {
        Self::monomial(GraphOperation::degree(), vec![label]).expect("unary")
    }

    pub fn terms(&self) -> &[(Complex64, GraphOperation, Vec<Label>)] {
        &self.terms
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { terms: self.terms.iter().map(|(a, g, l)| (a * c, g.clone(), l.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Product in the algebra: `Z_{·←·←·}(self ⊗ other)`, expanded.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let product = GraphOperation::product();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, g, l) in &self.terms {
            for (b, h, m) in &other.terms {
                let op = product.compose(&[g.clone(), h.clone()])?;
                terms.push((a * b, op, [l.as_slice(), m.as_slice()].concat()));
            }
        }
        Ok(Self { terms })
    }

    /// Graphs obtained by identifying input and output, with coefficients.
    pub fn trace_graphs(&self) -> Result<Vec<(Complex64, TestGraph)>> {
        self.terms.iter().map(|(c, g, l)| Ok((*c, g.trace_graph(l)?))).collect()
    }

    /// `Σ c · f(trace graph)`, i.e. the induced trace when `f` is a traffic
    /// distribution.
    pub fn trace_with(&self, mut f: impl FnMut(&TestGraph) -> Result<Complex64>) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (c, t) in self.trace_graphs()? {
            if c != Complex64::new(0.0, 0.0) {
                total += c * f(&t)?;
            }
        }
        Ok(total)
    }

    /// `self - trace(self) · 1`.
    pub fn centered(&self, f: impl FnMut(&TestGraph) -> Result<Complex64>) -> Result<Self> {
        let m = self.trace_with(f)?;
        Ok(if m == Complex64::new(0.0, 0.0) { self.clone() } else { self.sub(&Self::unit().scale(m)) })
    }
}
