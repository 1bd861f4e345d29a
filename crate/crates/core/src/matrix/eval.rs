use num_complex::Complex64;

use super::contract::{contract, contract_naive};
use super::family::MatrixFamily;
use super::ComplexMatrix;
use crate::combinatorics::{enumerate_partitions, mobius_to_singletons};
use crate::error::{Error, Result};
use crate::graph::{GraphOperation, TestGraph};

/// Cap on `N^|V|` for the brute-force paths.
pub const NAIVE_CAP: usize = 50_000_000;

fn check_dims(args: &[&ComplexMatrix]) -> Result<usize> {
    let dim = args.first().map_or(0, |m| m.nrows());
    for m in args {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: if m.nrows() != dim { m.nrows() } else { m.ncols() } });
        }
    }
    Ok(dim)
}

/// `Z_g(A_1 ⊗ .. ⊗ A_K)`: entry `(i, j)` sums over colorings with the output
/// at `i` and the input at `j`. With zero edges `dim` fixes the size.
pub fn eval_graph_op_dim(g: &GraphOperation, args: &[&ComplexMatrix], dim: usize) -> Result<ComplexMatrix> {
    if args.len() != g.arity() {
        return Err(Error::ArityMismatch { expected: g.arity(), found: args.len() });
    }
    if !args.is_empty() {
        let d = check_dims(args)?;
        if d != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d });
        }
    }
    let edges: Vec<(usize, usize, &ComplexMatrix)> = g.edges().iter().zip(args).map(|(&(s, t), &m)| (s, t, m)).collect();
    if g.input() == g.output() {
        let diag = contract(g.num_vertices(), &edges, &[g.output()], dim);
        Ok(ComplexMatrix::from_fn(dim, dim, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) }))
    } else {
        let t = contract(g.num_vertices(), &edges, &[g.output(), g.input()], dim);
        Ok(ComplexMatrix::from_fn(dim, dim, |i, j| t[i * dim + j]))
    }
}

pub fn eval_graph_op(g: &GraphOperation, args: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let dim = args.first().map(|m| m.nrows()).ok_or(Error::InvalidArgument("a 0-ary operation needs an explicit dimension".into()))?;
    eval_graph_op_dim(g, args, dim)
}

/// Reference evaluation of `Z_g` by the full entry sum.
pub fn eval_graph_op_naive(g: &GraphOperation, args: &[&ComplexMatrix], dim: usize) -> Result<ComplexMatrix> {
    if args.len() != g.arity() {
        return Err(Error::ArityMismatch { expected: g.arity(), found: args.len() });
    }
    check_naive(dim, g.num_vertices())?;
    let edges: Vec<(usize, usize, &ComplexMatrix)> = g.edges().iter().zip(args).map(|(&(s, t), &m)| (s, t, m)).collect();
    if g.input() == g.output() {
        let diag = contract_naive(g.num_vertices(), &edges, &[g.output()], dim);
        Ok(ComplexMatrix::from_fn(dim, dim, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) }))
    } else {
        let t = contract_naive(g.num_vertices(), &edges, &[g.output(), g.input()], dim);
        Ok(ComplexMatrix::from_fn(dim, dim, |i, j| t[i * dim + j]))
    }
}

fn check_naive(dim: usize, vertices: usize) -> Result<()> {
    let work = (dim as f64).powi(vertices as i32);
    if work > NAIVE_CAP as f64 {
        return Err(Error::CapExceeded { size: work as usize, cap: NAIVE_CAP });
    }
    Ok(())
}

fn require_zero_graph(t: &TestGraph) -> Result<()> {
    if !t.outputs().is_empty() {
        return Err(Error::InvalidArgument(format!("expected a 0-graph, found {} outputs", t.outputs().len())));
    }
    Ok(())
}

/// `τ[t] = (1/N) Σ_k Π_e M_e[k(t_e), k(s_e)]` for one realization.
pub fn tau_exact(t: &TestGraph, family: &MatrixFamily) -> Result<Complex64> {
    require_zero_graph(t)?;
    let (dim, mats) = family.edge_matrices(t)?;
    let edges: Vec<(usize, usize, &ComplexMatrix)> = t.edges().iter().zip(&mats).map(|(e, m)| (e.source, e.target, m)).collect();
    Ok(contract(t.num_vertices(), &edges, &[], dim)[0] / dim as f64)
}

/// `τ[t]` by enumerating all colorings.
pub fn tau_naive(t: &TestGraph, family: &MatrixFamily) -> Result<Complex64> {
    require_zero_graph(t)?;
    let (dim, mats) = family.edge_matrices(t)?;
    check_naive(dim, t.num_vertices())?;
    let edges: Vec<(usize, usize, &ComplexMatrix)> = t.edges().iter().zip(&mats).map(|(e, m)| (e.source, e.target, m)).collect();
    Ok(contract_naive(t.num_vertices(), &edges, &[], dim)[0] / dim as f64)
}

/// `τ⁰[t]` by Möbius inversion over the partitions of the vertices:
/// `τ⁰[t] = Σ_π μ(0, π) τ[t^π]`.
pub fn tau_injective_exact(t: &TestGraph, family: &MatrixFamily) -> Result<Complex64> {
    require_zero_graph(t)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for pi in enumerate_partitions(t.num_vertices())? {
        let mu = mobius_to_singletons(&pi);
        acc += tau_exact(&t.quotient(&pi)?, family)? * mu as f64;
    }
    Ok(acc)
}

/// `τ⁰[t]` by summing over injective colorings only.
pub fn tau_injective_direct(t: &TestGraph, family: &MatrixFamily) -> Result<Complex64> {
    require_zero_graph(t)?;
    let (dim, mats) = family.edge_matrices(t)?;
    let n = t.num_vertices();
    check_naive(dim, n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    if n > dim {
        return Ok(acc);
    }
    let mut k = vec![0usize; n];
    let mut used = vec![false; dim];
    fn rec(
        depth: usize,
        k: &mut [usize],
        used: &mut [bool],
        t: &TestGraph,
        mats: &[ComplexMatrix],
        acc: &mut Complex64,
    ) {
        if depth == k.len() {
            let mut prod = Complex64::new(1.0, 0.0);
            for (e, m) in t.edges().iter().zip(mats) {
                prod *= m[(k[e.target], k[e.source])];
            }
            *acc += prod;
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                k[depth] = c;
                rec(depth + 1, k, used, t, mats, acc);
                used[c] = false;
            }
        }
    }
    rec(0, &mut k, &mut used, t, &mats, &mut acc);
    Ok(acc / dim as f64)
}
