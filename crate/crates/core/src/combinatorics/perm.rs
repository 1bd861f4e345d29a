use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` in one-line notation: `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// The long cycle `i -> i + 1 mod n`.
    pub fn full_cycle(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n.max(1)).collect())
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if !seen[start] {
                count += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.0[x];
                }
            }
        }
        count
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Rank in the lexicographic enumeration of `S_n` (Lehmer code).
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.0[(i + 1)..].iter().filter(|&&y| y < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        Permutation(digits.into_iter().map(|d| pool.remove(d)).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let items: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `{0, .., n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let total: usize = (1..=n).product();
    (0..total).map(|r| Permutation::unrank(n, r)).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Metric `d(alpha, beta) = n - #(beta alpha^{-1})` on `S_n`.
pub fn perm_metric(alpha: &Permutation, beta: &Permutation) -> Result<usize> {
    if alpha.len() != beta.len() {
        return Err(Error::SizeMismatch(alpha.len(), beta.len()));
    }
    Ok(alpha.len() - beta.compose(&alpha.inverse()).num_cycles())
}

/// `lower ⪯ upper`: `lower` lies on a geodesic from the identity to `upper`.
pub fn geodesic_leq(lower: &Permutation, upper: &Permutation) -> Result<bool> {
    let id = Permutation::identity(lower.len());
    Ok(perm_metric(&id, lower)? + perm_metric(lower, upper)? == perm_metric(&id, upper)?)
}
