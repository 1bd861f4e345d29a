//! Functions on the symmetric group: the group-algebra convolution `∗`, the
//! geodesic convolution `⋆` and its finite-`N` deformation `⋆_N`, the
//! Weingarten function and the Möbius function of the geodesic order.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::perm::{all_permutations, factorial, Permutation};
use crate::error::{Error, Result};

/// Largest `n` for which functions on `S_n` are materialized.
pub const SN_CAP: usize = 7;
/// Largest `n` for the dense `|S_n| × |S_n|` Weingarten solve.
pub const DENSE_WG_CAP: usize = 6;

/// A complex-valued function on `S_n`, stored by lexicographic rank.
#[derive(Clone, Debug, PartialEq)]
pub struct SnFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl SnFunction {
    pub fn from_fn(n: usize, f: impl Fn(&Permutation) -> Complex64) -> Result<Self> {
        check_cap(n)?;
        let values = all_permutations(n).iter().map(f).collect();
        Ok(Self { n, values })
    }

    pub fn from_values(n: usize, values: Vec<Complex64>) -> Result<Self> {
        check_cap(n)?;
        if values.len() != factorial(n) {
            return Err(Error::SizeMismatch(values.len(), factorial(n)));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, sigma: &Permutation) -> Complex64 {
        self.values[sigma.rank()]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Pointwise product.
    pub fn pointwise(&self, other: &SnFunction) -> Result<SnFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Self { n: self.n, values })
    }

    pub fn max_abs_diff(&self, other: &SnFunction) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    fn check_same(&self, other: &SnFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > SN_CAP {
        return Err(Error::CapExceeded { size: n, cap: SN_CAP });
    }
    Ok(())
}

/// The identically-one function ζ.
pub fn zeta(n: usize) -> Result<SnFunction> {
    SnFunction::from_fn(n, |_| Complex64::new(1.0, 0.0))
}

/// Indicator of the identity.
pub fn delta_id(n: usize) -> Result<SnFunction> {
    SnFunction::from_fn(n, |s| if s.num_cycles() == n { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// `Ω_{n,N}(σ) = N^{#σ}`.
pub fn omega(n: usize, dim: usize) -> Result<SnFunction> {
    SnFunction::from_fn(n, |s| Complex64::new((dim as f64).powi(s.num_cycles() as i32), 0.0))
}

struct Table {
    elems: Vec<Permutation>,
    inverse: Vec<usize>,
    length: Vec<usize>,
}

impl Table {
    fn new(n: usize) -> Self {
        let elems = all_permutations(n);
        let inverse = elems.iter().map(|p| p.inverse().rank()).collect();
        let length = elems.iter().map(|p| n - p.num_cycles()).collect();
        Self { elems, inverse, length }
    }

    /// Rank of `elems[a] ∘ elems[b]`.
    fn product(&self, a: usize, b: usize) -> usize {
        self.elems[a].compose(&self.elems[b]).rank()
    }
}

/// Full group-algebra convolution `(f ∗ g)(σ) = Σ_π f(π) g(π^{-1} σ)`.
pub fn group_convolve(f: &SnFunction, g: &SnFunction) -> Result<SnFunction> {
    weighted_convolve(f, g, |_, _| Some(1.0))
}

/// Geodesic convolution `(f ⋆ g)(σ) = Σ_{π ⪯ σ} f(π) g(π^{-1} σ)`.
pub fn sn_convolve(f: &SnFunction, g: &SnFunction) -> Result<SnFunction> {
    weighted_convolve(f, g, |excess, _| if excess == 0 { Some(1.0) } else { None })
}

/// Deformed convolution `⋆_N`, weighting each term by
/// `N^{d(id,σ) - d(id,π) - d(π,σ)}`; it tends to `⋆` as `N → ∞`.
pub fn sn_convolve_n(f: &SnFunction, g: &SnFunction, dim: f64) -> Result<SnFunction> {
    weighted_convolve(f, g, |excess, _| Some(dim.powi(-(excess as i32))))
}

/// Sum over π of `w(excess) f(π) g(π^{-1}σ)` where
/// `excess = d(id,π) + d(π,σ) - d(id,σ) ≥ 0`.
fn weighted_convolve(f: &SnFunction, g: &SnFunction, weight: impl Fn(usize, usize) -> Option<f64>) -> Result<SnFunction> {
    f.check_same(g)?;
    let n = f.n;
    let table = Table::new(n);
    let size = table.elems.len();
    let mut values = vec![Complex64::new(0.0, 0.0); size];
    for (s, out) in values.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..size {
            let rest = table.product(table.inverse[p], s);
            // d(π, σ) = |π^{-1} σ|
            let excess = table.length[p] + table.length[rest] - table.length[s];
            if let Some(w) = weight(excess, s) {
                acc += f.values[p] * g.values[rest] * w;
            }
        }
        *out = acc;
    }
    Ok(SnFunction { n, values })
}

/// Integer partitions of `n` in non-increasing part order, reverse lexicographic.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation with the given cycle type.
pub fn class_representative(cycle_type: &[usize]) -> Permutation {
    let n = cycle_type.iter().sum();
    let mut start = 0;
    let mut cycles = Vec::new();
    for &len in cycle_type {
        cycles.push((start..start + len).collect());
        start += len;
    }
    Permutation::from_cycles(n, &cycles).expect("disjoint cycles")
}

/// Weingarten values indexed by conjugacy class (cycle type).
#[derive(Clone, Debug)]
pub struct WeingartenTable {
    pub n: usize,
    pub dim: usize,
    pub classes: Vec<(Vec<usize>, f64)>,
}

impl WeingartenTable {
    pub fn value(&self, sigma: &Permutation) -> f64 {
        let ty = sigma.cycle_type();
        self.classes.iter().find(|(c, _)| *c == ty).map(|(_, v)| *v).expect("every cycle type is tabulated")
    }

    pub fn to_function(&self) -> Result<SnFunction> {
        SnFunction::from_fn(self.n, |s| Complex64::new(self.value(s), 0.0))
    }
}

/// Weingarten function `Wg_{n,N}`, the `∗`-inverse of `Ω_{n,N}`, solved in
/// the basis of class functions.
pub fn weingarten_classes(n: usize, dim: usize) -> Result<WeingartenTable> {
    check_cap(n)?;
    if dim < n {
        return Err(Error::SingularWeingarten { n, dim });
    }
    let classes = integer_partitions(n);
    let index: HashMap<Vec<usize>, usize> = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let k = classes.len();
    let elems = all_permutations(n);
    let weights: Vec<f64> = elems.iter().map(|p| (dim as f64).powi(p.num_cycles() as i32)).collect();
    let inverses: Vec<Permutation> = elems.iter().map(Permutation::inverse).collect();
    let mut system = DMatrix::<f64>::zeros(k, k);
    for (row, ty) in classes.iter().enumerate() {
        let sigma = class_representative(ty);
        for (pi_inv, w) in inverses.iter().zip(&weights) {
            let col = index[&pi_inv.compose(&sigma).cycle_type()];
            system[(row, col)] += w;
        }
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(k);
    rhs[index[&vec![1; n]]] = 1.0;
    let solution = system.lu().solve(&rhs).ok_or(Error::SingularWeingarten { n, dim })?;
    if solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularWeingarten { n, dim });
    }
    Ok(WeingartenTable { n, dim, classes: classes.into_iter().zip(solution.iter().copied()).collect() })
}

/// Weingarten function as a function on `S_n`.
pub fn weingarten(n: usize, dim: usize) -> Result<SnFunction> {
    weingarten_classes(n, dim)?.to_function()
}

/// Weingarten function from the dense `|S_n| × |S_n|` system
/// `Σ_τ N^{#(σ τ^{-1})} Wg(τ) = δ(σ)`.
pub fn weingarten_dense(n: usize, dim: usize) -> Result<SnFunction> {
    if n > DENSE_WG_CAP {
        return Err(Error::CapExceeded { size: n, cap: DENSE_WG_CAP });
    }
    if dim < n {
        return Err(Error::SingularWeingarten { n, dim });
    }
    let elems = all_permutations(n);
    let size = elems.len();
    let inverses: Vec<Permutation> = elems.iter().map(Permutation::inverse).collect();
    let system = DMatrix::<f64>::from_fn(size, size, |s, t| (dim as f64).powi(elems[s].compose(&inverses[t]).num_cycles() as i32));
    let mut rhs = nalgebra::DVector::<f64>::zeros(size);
    rhs[0] = 1.0; // rank 0 is the identity
    let solution = system.lu().solve(&rhs).ok_or(Error::SingularWeingarten { n, dim })?;
    SnFunction::from_values(n, solution.iter().map(|&v| Complex64::new(v, 0.0)).collect())
}

/// Möbius function of the geodesic order: the `⋆`-inverse of ζ, by
/// triangular solve along increasing length.
pub fn sn_mobius(n: usize) -> Result<SnFunction> {
    check_cap(n)?;
    let table = Table::new(n);
    let size = table.elems.len();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&s| (table.length[s], s));
    let mut mu = vec![Complex64::new(0.0, 0.0); size];
    for &s in &order {
        if table.length[s] == 0 {
            mu[s] = Complex64::new(1.0, 0.0);
            continue;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..size {
            if p == s || table.length[p] >= table.length[s] {
                continue;
            }
            let rest = table.product(table.inverse[p], s);
            if table.length[p] + table.length[rest] == table.length[s] {
                acc += mu[p];
            }
        }
        mu[s] = -acc;
    }
    Ok(SnFunction { n, values: mu })
}

/// `N^{2n} Ω_{n,N}^{-1}(σ) Wg_{n,N}(σ)`, which tends to `μ(σ)`.
pub fn scaled_weingarten(n: usize, dim: usize) -> Result<SnFunction> {
    let wg = weingarten(n, dim)?;
    let scale = SnFunction::from_fn(n, |s| Complex64::new((dim as f64).powi(2 * n as i32 - s.num_cycles() as i32), 0.0))?;
    wg.pointwise(&scale)
}
