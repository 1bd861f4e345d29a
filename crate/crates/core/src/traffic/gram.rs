//! Positivity checks: Gram matrices `[τ(t_i | t_j*)]`.

use std::collections::HashSet;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::functional::TrafficFunctional;
use crate::error::{Error, Result};
use crate::graph::{Edge, Label, TestGraph};
use crate::matrix::ComplexMatrix;

/// `G_ij = τ[t_i | t_j*]` for graphs sharing their output arity (at least 1).
pub fn gram_matrix(ts: &[TestGraph], tau: &dyn TrafficFunctional) -> Result<ComplexMatrix> {
    let Some(first) = ts.first() else {
        return Ok(ComplexMatrix::zeros(0, 0));
    };
    let arity = first.outputs().len();
    if let Some(t) = ts.iter().find(|t| t.outputs().len() != arity) {
        return Err(Error::ArityMismatch { expected: arity, found: t.outputs().len() });
    }
    let mirrored: Vec<TestGraph> = ts.iter().map(TestGraph::involute).collect();
    let n = ts.len();
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = tau.tau(&ts[i].merge_outputs(&mirrored[j])?)?;
        }
    }
    Ok(g)
}

/// Smallest eigenvalue of the Hermitian part `(G + G*) / 2`; `+∞` when empty.
pub fn min_eigenvalue(g: &ComplexMatrix) -> f64 {
    if g.nrows() == 0 {
        return f64::INFINITY;
    }
    let h = (g + g.adjoint()).map(|z| z * 0.5);
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Largest deviation from Hermitian symmetry, `max |G_ij - conj(G_ji)|`.
pub fn hermitian_defect(g: &ComplexMatrix) -> f64 {
    (g - g.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Every connected graph monomial with `outputs` outputs and at most
/// `max_edges` edges labeled from `letters`, one per isomorphism class, in
/// order of increasing edge count.
pub fn graph_monomials(letters: &[Label], outputs: usize, max_edges: usize) -> Vec<TestGraph> {
    let mut seen: HashSet<TestGraph> = HashSet::new();
    let mut out = Vec::new();
    for m in 0..=max_edges {
        for nv in 1..=m + 1 {
            let slots: Vec<(usize, usize, &Label)> =
                (0..nv).flat_map(|s| (0..nv).flat_map(move |t| letters.iter().map(move |l| (s, t, l)))).collect();
            let mut choice = vec![0usize; m];
            loop {
                let edges: Vec<Edge> = choice.iter().map(|&c| Edge::new(slots[c].0, slots[c].1, slots[c].2.clone())).collect();
                let mut outs = vec![0usize; outputs];
                loop {
                    if let Ok(t) = TestGraph::new(nv, edges.clone(), outs.clone()) {
                        if seen.insert(t.clone()) {
                            out.push(t);
                        }
                    }
                    if !advance(&mut outs, nv) {
                        break;
                    }
                }
                if !advance(&mut choice, slots.len()) {
                    break;
                }
            }
        }
    }
    out
}

/// Odometer step over `0..base` digits; false after the last state.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Hermitian check value for a scalar: `τ[t|t*]` should be real.
pub fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * (1.0 + z.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traffic::functional::CactusLimit;
    use crate::traffic::moments::FreeGaussian;

    #[test]
    fn output_vertex_gram_is_one() {
        let tau = CactusLimit::new(FreeGaussian::semicircle("s"));
        let v = TestGraph::new(1, vec![], vec![0]).unwrap();
        let g = gram_matrix(&[v], &tau).unwrap();
        assert_eq!(g[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(min_eigenvalue(&g), 1.0);
    }

    #[test]
    fn arity_mismatch() {
        let tau = CactusLimit::new(FreeGaussian::semicircle("s"));
        let a = TestGraph::new(1, vec![], vec![0]).unwrap();
        let b = TestGraph::new(1, vec![], vec![0, 0]).unwrap();
        assert!(matches!(gram_matrix(&[a, b], &tau), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn monomial_counts() {
        let s = [Label::new("s")];
        // one vertex; one loop; one edge with outputs on 2 vertices
        assert_eq!(graph_monomials(&s, 1, 0).len(), 1);
        assert_eq!(graph_monomials(&s, 1, 1).len(), 1 + 1 + 2);
        let two = graph_monomials(&s, 2, 2);
        assert!(two.iter().all(|t| t.outputs().len() == 2 && t.num_edges() <= 2));
        for (i, a) in two.iter().enumerate() {
            for b in &two[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn semicircle_path_is_positive() {
        let tau = CactusLimit::new(FreeGaussian::semicircle("s"));
        let path = TestGraph::new(3, vec![Edge::new(0, 1, "s"), Edge::new(1, 2, "s")], vec![2, 0]).unwrap();
        let g = gram_matrix(&[path], &tau).unwrap();
        assert!(is_real(g[(0, 0)], 1e-12));
        assert!(g[(0, 0)].re >= -1e-8);
    }
}
