//! Exact expectation of a traffic trace under Haar conjugation, by the
//! Weingarten integration formula.

use std::collections::BTreeSet;

use num_complex::Complex64;

use super::family::MatrixFamily;
use super::ComplexMatrix;
use crate::combinatorics::{all_permutations, weingarten};
use crate::error::{Error, Result};
use crate::graph::{perm_to_partition, TestGraph};

pub const HAAR_EDGE_CAP: usize = 6;

/// `E_U τ[t](U X U*)` for Haar `U` of size `N`, every label of `t` conjugated
/// by the same `U`:
///
/// `(1/N) Σ_{α,β ∈ S_E} N^{#π(α)} Wg(αβ⁻¹) Π_{cycles (e, βe, .., β^{k-1}e) of β} Tr(X_{β^{k-1}e} ⋯ X_{βe} X_e)`
///
/// where `π(α)` identifies `target(e)` with `source(α(e))`. A starred label
/// stands for `U X* U*`, so the fixed matrices need not be Hermitian.
pub fn haar_expectation_exact(t: &TestGraph, fixed: &MatrixFamily, conjugated: &BTreeSet<String>, dim: usize) -> Result<Complex64> {
    if !t.outputs().is_empty() {
        return Err(Error::InvalidArgument("expected a 0-graph".into()));
    }
    let n = t.num_edges();
    if n > HAAR_EDGE_CAP {
        return Err(Error::TooManyEdges { edges: n, limit: HAAR_EDGE_CAP });
    }
    if let Some(e) = t.edges().iter().find(|e| !conjugated.contains(&e.label.name)) {
        return Err(Error::InvalidArgument(format!("label `{}` is not conjugated", e.label)));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mats: Vec<ComplexMatrix> = t.edges().iter().map(|e| fixed.resolve(&e.label)).collect::<Result<_>>()?;
    if let Some(m) = mats.iter().find(|m| m.nrows() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: m.nrows() });
    }
    let wg = weingarten(n, dim)?;
    let perms = all_permutations(n);
    let index_weight: Vec<f64> = perms
        .iter()
        .map(|alpha| Ok((dim as f64).powi(perm_to_partition(t, alpha)?.num_blocks() as i32)))
        .collect::<Result<_>>()?;
    let trace_weight: Vec<Complex64> = perms
        .iter()
        .map(|beta| {
            beta.cycles()
                .iter()
                .map(|cycle| {
                    // X_{β^{k-1}e} ⋯ X_{βe} X_e
                    let mut prod = mats[cycle[0]].clone();
                    for &e in &cycle[1..] {
                        prod = &mats[e] * prod;
                    }
                    prod.trace()
                })
                .product()
        })
        .collect();
    let inverses: Vec<_> = perms.iter().map(|p| p.inverse()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (alpha, &w_alpha) in perms.iter().zip(&index_weight) {
        for (beta_inv, &w_beta) in inverses.iter().zip(&trace_weight) {
            acc += wg.get(&alpha.compose(beta_inv)) * w_alpha * w_beta;
        }
    }
    Ok(acc / dim as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Label};
    use crate::matrix::family::from_real_rows;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn conjugation_invariant_words_are_unchanged() {
        let x = from_real_rows(&[vec![1.0, 2.0, 0.0, 1.0], vec![0.0, -1.0, 3.0, 0.5], vec![2.0, 0.0, 1.0, 1.0], vec![1.0, 1.0, 0.0, 2.0]])
            .unwrap();
        let y = from_real_rows(&[vec![0.0, 1.0, 0.0, 0.0], vec![2.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, 3.0], vec![1.0, 0.0, 1.0, 0.0]])
            .unwrap();
        let fam = MatrixFamily::new().with("x", x.clone()).unwrap().with("y", y.clone()).unwrap();
        let conj = set(&["x", "y"]);
        let loop_ = TestGraph::new(1, vec![Edge::new(0, 0, "x")], vec![]).unwrap();
        let v = haar_expectation_exact(&loop_, &fam, &conj, 4).unwrap();
        assert!((v - x.trace() / 4.0).norm() < 1e-12);
        let words: Vec<Vec<Label>> = vec![
            vec!["x".into(), "x".into()],
            vec!["x".into(), "y".into(), "y".into()],
            vec!["x".into(), "y*".into(), "x".into(), "y".into()],
        ];
        for w in words {
            let t = TestGraph::word_cycle(&w).unwrap();
            let expected = w.iter().fold(ComplexMatrix::identity(4, 4), |acc, l| acc * fam.resolve(l).unwrap()).trace() / 4.0;
            let v = haar_expectation_exact(&t, &fam, &conj, 4).unwrap();
            assert!((v - expected).norm() < 1e-9 * (1.0 + expected.norm()), "{w:?}: {v} vs {expected}");
        }
    }

    #[test]
    fn contract_violations() {
        let fam = MatrixFamily::new().with("x", ComplexMatrix::identity(2, 2)).unwrap();
        let t = TestGraph::word_cycle(&vec![Label::new("x"); 3]).unwrap();
        assert!(matches!(haar_expectation_exact(&t, &fam, &set(&["x"]), 2), Err(Error::SingularWeingarten { .. } | Error::DimensionMismatch { .. })));
        assert!(haar_expectation_exact(&t, &fam, &set(&[]), 2).is_err());
        let big = TestGraph::word_cycle(&vec![Label::new("x"); 7]).unwrap();
        assert!(matches!(haar_expectation_exact(&big, &fam, &set(&["x"]), 8), Err(Error::TooManyEdges { .. })));
    }
}
