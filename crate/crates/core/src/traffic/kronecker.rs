//! Injective traces of Kronecker products `X ⊗ Y` split over pairs of vertex
//! partitions whose meet is discrete.

use num_complex::Complex64;

use crate::combinatorics::partition::Partitions;
use crate::combinatorics::SetPartition;
use crate::error::{Error, Result};
use crate::graph::TestGraph;
use crate::matrix::{tau_injective_exact, MatrixFamily};

pub const LAMBDA_VERTEX_CAP: usize = 7;

/// `Λ_T`: pairs `(π₁, π₂)` of partitions of the vertices such that no two
/// vertices share a block in both.
pub fn lambda_pairs(t: &TestGraph) -> Result<Vec<(SetPartition, SetPartition)>> {
    let n = t.num_vertices();
    if n > LAMBDA_VERTEX_CAP {
        return Err(Error::CapExceeded { size: n, cap: LAMBDA_VERTEX_CAP });
    }
    let all: Vec<SetPartition> = Partitions::new(n).collect();
    let mut pairs = Vec::new();
    for a in &all {
        for b in &all {
            if a.meet(b)?.num_blocks() == n {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

/// Letterwise `X_l ⊗ Y_l`, rows indexed by `(i, i')` as `i M + i'`.
pub fn kronecker_family(x: &MatrixFamily, y: &MatrixFamily) -> Result<MatrixFamily> {
    let mut out = MatrixFamily::new();
    for l in x.letters() {
        let b = y.get(l).ok_or_else(|| Error::UnresolvedLabel(l.to_string()))?;
        out.insert(l, x.get(l).expect("listed letter").kronecker(b))?;
    }
    if let Some(l) = y.letters().find(|l| x.get(l).is_none()) {
        return Err(Error::UnresolvedLabel(l.to_string()));
    }
    Ok(out)
}

/// `Σ_{(π₁, π₂) ∈ Λ_T} τ⁰[T^{π₁}(X)] τ⁰[T^{π₂}(Y)]`, which equals
/// `τ⁰[T](X ⊗ Y)` exactly for every realization.
pub fn lambda_sum(t: &TestGraph, x: &MatrixFamily, y: &MatrixFamily) -> Result<Complex64> {
    let n = t.num_vertices();
    if n > LAMBDA_VERTEX_CAP {
        return Err(Error::CapExceeded { size: n, cap: LAMBDA_VERTEX_CAP });
    }
    let all: Vec<SetPartition> = Partitions::new(n).collect();
    let tx: Vec<Complex64> = all.iter().map(|p| tau_injective_exact(&t.quotient(p)?, x)).collect::<Result<_>>()?;
    let ty: Vec<Complex64> = all.iter().map(|p| tau_injective_exact(&t.quotient(p)?, y)).collect::<Result<_>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for (i, a) in all.iter().enumerate() {
        if tx[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, b) in all.iter().enumerate() {
            if a.meet(b)?.num_blocks() == n {
                total += tx[i] * ty[j];
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::matrix::family::from_real_rows;

    #[test]
    fn pair_counts() {
        assert_eq!(lambda_pairs(&TestGraph::single_vertex()).unwrap().len(), 1);
        let edge = TestGraph::new(2, vec![Edge::new(0, 1, "x")], vec![]).unwrap();
        assert_eq!(lambda_pairs(&edge).unwrap().len(), 3);
    }

    #[test]
    fn split_is_exact() {
        let x = MatrixFamily::new().with("a", from_real_rows(&[vec![1.0, 2.0], vec![-1.0, 0.5]]).unwrap()).unwrap();
        let y = MatrixFamily::new()
            .with("a", from_real_rows(&[vec![0.0, 1.0, 2.0], vec![1.0, 1.0, 0.0], vec![3.0, -1.0, 1.0]]).unwrap())
            .unwrap();
        let xy = kronecker_family(&x, &y).unwrap();
        let t = TestGraph::new(3, vec![Edge::new(0, 1, "a"), Edge::new(1, 2, "a*"), Edge::new(2, 0, "a")], vec![]).unwrap();
        let direct = tau_injective_exact(&t, &xy).unwrap();
        let split = lambda_sum(&t, &x, &y).unwrap();
        assert!((direct - split).norm() < 1e-10 * (1.0 + direct.norm()), "{direct} vs {split}");
    }
}
