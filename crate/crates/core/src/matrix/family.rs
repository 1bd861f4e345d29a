use std::collections::BTreeMap;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::graph::{Label, TestGraph};

/// Square matrices of a common dimension, keyed by letter. A starred label
/// resolves to the adjoint.
#[derive(Clone, Debug, Default)]
pub struct MatrixFamily {
    dim: Option<usize>,
    matrices: BTreeMap<String, ComplexMatrix>,
}

impl MatrixFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, letter: impl Into<String>, m: ComplexMatrix) -> Result<()> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        if let Some(d) = self.dim {
            if m.nrows() != d {
                return Err(Error::DimensionMismatch { expected: d, found: m.nrows() });
            }
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
        }
        self.dim = Some(m.nrows());
        self.matrices.insert(letter.into(), m);
        Ok(())
    }

    pub fn with(mut self, letter: impl Into<String>, m: ComplexMatrix) -> Result<Self> {
        self.insert(letter, m)?;
        Ok(self)
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn letters(&self) -> impl Iterator<Item = &str> {
        self.matrices.keys().map(String::as_str)
    }

    pub fn get(&self, letter: &str) -> Option<&ComplexMatrix> {
        self.matrices.get(letter)
    }

    pub fn resolve(&self, label: &Label) -> Result<ComplexMatrix> {
        let m = self.matrices.get(&label.name).ok_or_else(|| Error::UnresolvedLabel(label.to_string()))?;
        Ok(if label.star { m.adjoint() } else { m.clone() })
    }

    /// One matrix per edge of `t`, in edge order, with adjoints computed once
    /// per distinct starred label.
    pub(crate) fn edge_matrices(&self, t: &TestGraph) -> Result<(usize, Vec<ComplexMatrix>)> {
        let mut cache: BTreeMap<&Label, usize> = BTreeMap::new();
        let mut distinct: Vec<ComplexMatrix> = Vec::new();
        let mut index = Vec::with_capacity(t.num_edges());
        for e in t.edges() {
            let i = match cache.get(&e.label) {
                Some(&i) => i,
                None => {
                    distinct.push(self.resolve(&e.label)?);
                    cache.insert(&e.label, distinct.len() - 1);
                    distinct.len() - 1
                }
            };
            index.push(i);
        }
        let dim = match self.dim {
            Some(d) => d,
            None if t.num_edges() == 0 => 1,
            None => return Err(Error::UnresolvedLabel(t.edges()[0].label.to_string())),
        };
        Ok((dim, index.into_iter().map(|i| distinct[i].clone()).collect()))
    }

    /// Entrywise map, e.g. to conjugate every matrix by a unitary.
    pub fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let mut out = Self::new();
        for (k, m) in &self.matrices {
            out.insert(k.clone(), f(m))?;
        }
        Ok(out)
    }
}

/// `N × N` identity.
pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// `N × N` all-ones matrix.
pub fn ones(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_element(n, n, Complex64::new(1.0, 0.0))
}

/// Real matrix from rows.
pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<ComplexMatrix> {
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0)))
}
