//! Tensor-network contraction of graph entry sums.
//!
//! Every vertex is an index in `0..N`, every edge `s -> t` carrying a matrix
//! `A` is the factor `A[k(t), k(s)]`. Non-free vertices are summed out one at
//! a time in greedy minimum-fill order (ties broken by smaller resulting
//! scope, then by vertex id).

use num_complex::Complex64;

use super::ComplexMatrix;

#[derive(Clone, Debug)]
struct Factor {
    /// Sorted, distinct vertex ids.
    scope: Vec<usize>,
    /// Row-major values over `scope` (first variable slowest).
    values: Vec<Complex64>,
}

impl Factor {
    fn from_edge(source: usize, target: usize, m: &ComplexMatrix) -> Self {
        let n = m.nrows();
        if source == target {
            return Self { scope: vec![source], values: (0..n).map(|i| m[(i, i)]).collect() };
        }
        let mut values = Vec::with_capacity(n * n);
        if source < target {
            for s in 0..n {
                for t in 0..n {
                    values.push(m[(t, s)]);
                }
            }
            Self { scope: vec![source, target], values }
        } else {
            for t in 0..n {
                for s in 0..n {
                    values.push(m[(t, s)]);
                }
            }
            Self { scope: vec![target, source], values }
        }
    }

    /// Stride of `var` in this factor's layout, 0 when absent.
    fn stride(&self, var: usize, dim: usize) -> usize {
        match self.scope.iter().position(|&v| v == var) {
            Some(p) => dim.pow((self.scope.len() - 1 - p) as u32),
            None => 0,
        }
    }
}

/// Product of `factors` over the union of their scopes, summed over `sum_out`
/// when given.
fn combine(factors: &[Factor], sum_out: Option<usize>, dim: usize) -> Factor {
    let mut scope: Vec<usize> = factors.iter().flat_map(|f| f.scope.iter().copied()).collect();
    scope.sort_unstable();
    scope.dedup();
    let kept: Vec<usize> = scope.iter().copied().filter(|&v| Some(v) != sum_out).collect();
    // loop variables: kept ones first (row-major output), summed one innermost
    let mut vars = kept.clone();
    if let Some(v) = sum_out {
        vars.push(v);
    }
    let strides: Vec<Vec<usize>> = factors.iter().map(|f| vars.iter().map(|&v| f.stride(v, dim)).collect()).collect();
    let out_len = dim.pow(kept.len() as u32);
    let inner = if sum_out.is_some() { dim } else { 1 };
    let mut values = Vec::with_capacity(out_len);
    let mut counter = vec![0usize; kept.len()];
    let mut offsets = vec![0usize; factors.len()];
    for _ in 0..out_len {
        let mut acc = Complex64::new(0.0, 0.0);
        if sum_out.is_some() {
            let last = vars.len() - 1;
            for k in 0..inner {
                let mut prod = Complex64::new(1.0, 0.0);
                for (f, (off, st)) in factors.iter().zip(offsets.iter().zip(&strides)) {
                    prod *= f.values[off + k * st[last]];
                }
                acc += prod;
            }
        } else {
            acc = Complex64::new(1.0, 0.0);
            for (f, off) in factors.iter().zip(&offsets) {
                acc *= f.values[*off];
            }
        }
        values.push(acc);
        // odometer over kept variables, last fastest
        for pos in (0..kept.len()).rev() {
            counter[pos] += 1;
            for (off, st) in offsets.iter_mut().zip(&strides) {
                *off += st[pos];
            }
            if counter[pos] < dim {
                break;
            }
            for (off, st) in offsets.iter_mut().zip(&strides) {
                *off -= st[pos] * dim;
            }
            counter[pos] = 0;
        }
    }
    Factor { scope: kept, values }
}

/// Sums out `v` with dense matrix products when every factor touching it is a
/// vector or a matrix and at most two other vertices are involved:
/// `Σ_v M_a[v, a] d[v] M_b[v, b] = (M_aᵀ D M_b)[a, b]`.
fn eliminate_fast(factors: &[Factor], v: usize, dim: usize) -> Option<Factor> {
    if factors.iter().any(|f| f.scope.len() > 2) {
        return None;
    }
    let mut others: Vec<usize> = factors.iter().flat_map(|f| f.scope.iter().copied()).filter(|&w| w != v).collect();
    others.sort_unstable();
    others.dedup();
    if others.len() > 2 {
        return None;
    }
    let mut d = vec![Complex64::new(1.0, 0.0); dim];
    let mut mats: Vec<ComplexMatrix> = others.iter().map(|_| ComplexMatrix::from_element(dim, dim, Complex64::new(1.0, 0.0))).collect();
    for f in factors {
        if f.scope.len() == 1 {
            for (x, y) in d.iter_mut().zip(&f.values) {
                *x *= y;
            }
            continue;
        }
        let w = if f.scope[0] == v { f.scope[1] } else { f.scope[0] };
        let m = &mut mats[others.iter().position(|&o| o == w).expect("neighbour")];
        let v_first = f.scope[0] == v;
        for i in 0..dim {
            for j in 0..dim {
                let val = if v_first { f.values[i * dim + j] } else { f.values[j * dim + i] };
                m[(i, j)] *= val;
            }
        }
    }
    let values = match mats.len() {
        0 => vec![d.iter().sum()],
        1 => (0..dim).map(|a| (0..dim).map(|i| d[i] * mats[0][(i, a)]).sum()).collect(),
        _ => {
            let mut left = mats[0].transpose();
            for (i, x) in d.iter().enumerate() {
                for a in 0..dim {
                    left[(a, i)] *= x;
                }
            }
            let r = left * &mats[1];
            let mut out = Vec::with_capacity(dim * dim);
            for a in 0..dim {
                for b in 0..dim {
                    out.push(r[(a, b)]);
                }
            }
            out
        }
    };
    Some(Factor { scope: others, values })
}

/// Number of new interaction edges created by eliminating `v`, and the size
/// of the resulting scope.
fn elimination_cost(factors: &[Factor], v: usize) -> (usize, usize) {
    let mut neighbours: Vec<usize> = factors
        .iter()
        .filter(|f| f.scope.contains(&v))
        .flat_map(|f| f.scope.iter().copied())
        .filter(|&w| w != v)
        .collect();
    neighbours.sort_unstable();
    neighbours.dedup();
    let mut fill = 0;
    for (i, &a) in neighbours.iter().enumerate() {
        for &b in &neighbours[i + 1..] {
            if !factors.iter().any(|f| f.scope.contains(&a) && f.scope.contains(&b)) {
                fill += 1;
            }
        }
    }
    (fill, neighbours.len())
}

/// Elimination order chosen greedily by minimum fill.
pub fn elimination_order(num_vertices: usize, edges: &[(usize, usize)], free: &[usize]) -> Vec<usize> {
    let mut factors: Vec<Factor> = edges
        .iter()
        .map(|&(s, t)| {
            let mut scope = vec![s, t];
            scope.sort_unstable();
            scope.dedup();
            Factor { scope, values: Vec::new() }
        })
        .collect();
    let mut remaining: Vec<usize> = (0..num_vertices).filter(|v| !free.contains(v)).collect();
    let mut order = Vec::new();
    while !remaining.is_empty() {
        let (idx, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| {
                let (fill, size) = elimination_cost(&factors, v);
                (fill, size, v)
            })
            .expect("nonempty");
        remaining.remove(idx);
        order.push(v);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.scope.contains(&v));
        let mut scope: Vec<usize> = touching.iter().flat_map(|f| f.scope.iter().copied()).filter(|&w| w != v).collect();
        scope.sort_unstable();
        scope.dedup();
        factors = rest;
        factors.push(Factor { scope, values: Vec::new() });
    }
    order
}

/// The tensor `T[k(free_0), k(free_1), ..]` (row-major, free vertices in the
/// given order) of the entry sum `Σ_k Π_e M_e[k(t_e), k(s_e)]` over all
/// indices of the non-free vertices. `edges` are `(source, target, matrix)`.
pub fn contract(num_vertices: usize, edges: &[(usize, usize, &ComplexMatrix)], free: &[usize], dim: usize) -> Vec<Complex64> {
    let order = elimination_order(num_vertices, &edges.iter().map(|&(s, t, _)| (s, t)).collect::<Vec<_>>(), free);
    let mut factors: Vec<Factor> = edges.iter().map(|&(s, t, m)| Factor::from_edge(s, t, m)).collect();
    // vertices with no edge (or free vertices) still range over 0..dim
    for v in 0..num_vertices {
        if !factors.iter().any(|f| f.scope.contains(&v)) {
            factors.push(Factor { scope: vec![v], values: vec![Complex64::new(1.0, 0.0); dim] });
        }
    }
    for v in order {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        factors.push(eliminate_fast(&touching, v, dim).unwrap_or_else(|| combine(&touching, Some(v), dim)));
    }
    let result = if factors.len() == 1 { factors.pop().expect("one factor") } else { combine(&factors, None, dim) };
    // reorder from sorted scope to the requested free order
    let mut sorted_free = free.to_vec();
    sorted_free.sort_unstable();
    sorted_free.dedup();
    assert_eq!(result.scope, sorted_free, "free vertices are exactly the remaining scope");
    if free.len() <= 1 || free.windows(2).all(|w| w[0] < w[1]) {
        return result.values;
    }
    let total = dim.pow(free.len() as u32);
    let strides: Vec<usize> = free.iter().map(|&v| result.stride(v, dim)).collect();
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut off = 0;
        for pos in (0..free.len()).rev() {
            off += (rem % dim) * strides[pos];
            rem /= dim;
        }
        out.push(result.values[off]);
    }
    out
}

/// Brute-force reference: the same entry sum by enumerating all `N^|V|`
/// colorings. Intended for tiny cases.
pub fn contract_naive(num_vertices: usize, edges: &[(usize, usize, &ComplexMatrix)], free: &[usize], dim: usize) -> Vec<Complex64> {
    let total_free = dim.pow(free.len() as u32);
    let mut out = vec![Complex64::new(0.0, 0.0); total_free];
    let mut k = vec![0usize; num_vertices];
    let count = dim.pow(num_vertices as u32);
    for _ in 0..count {
        let mut prod = Complex64::new(1.0, 0.0);
        for &(s, t, m) in edges {
            prod *= m[(k[t], k[s])];
        }
        let idx = free.iter().fold(0, |acc, &v| acc * dim + k[v]);
        out[idx] += prod;
        for x in k.iter_mut().rev() {
            *x += 1;
            if *x < dim {
                break;
            }
            *x = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, f: impl Fn(usize, usize) -> f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(f(i, j), 0.3 * (i as f64) - 0.1 * (j as f64)))
    }

    #[test]
    fn agrees_with_naive_sum() {
        let a = m(3, |i, j| (i * 3 + j) as f64 - 4.0);
        let b = m(3, |i, j| (i + 2 * j) as f64 * 0.5);
        let cases: Vec<(usize, Vec<(usize, usize, &ComplexMatrix)>, Vec<usize>)> = vec![
            (3, vec![(0, 1, &a), (1, 2, &b), (2, 0, &a)], vec![]),
            (3, vec![(0, 1, &a), (1, 2, &b), (2, 0, &a), (0, 0, &b)], vec![2, 0]),
            (4, vec![(0, 1, &a), (1, 2, &b), (2, 3, &a), (3, 0, &b), (0, 2, &a)], vec![1]),
            (2, vec![(0, 1, &a), (0, 1, &b)], vec![1, 0]),
            (2, vec![], vec![0, 1]),
            (3, vec![(1, 0, &a), (2, 1, &b)], vec![0, 2]),
        ];
        for (n, edges, free) in cases {
            let fast = contract(n, &edges, &free, 3);
            let slow = contract_naive(n, &edges, &free, 3);
            for (x, y) in fast.iter().zip(&slow) {
                assert!((x - y).norm() <= 1e-9 * (1.0 + y.norm()), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn order_prefers_low_fill() {
        // star centre 0 with leaves 1..4: the centre waits until one leaf is left
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4)];
        let order = elimination_order(5, &edges, &[]);
        assert_eq!(order, vec![1, 2, 3, 0, 4]);
        // a 4-cycle never needs a scope of three
        let order = elimination_order(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[]);
        assert_eq!(order[0], 0);
    }
}
