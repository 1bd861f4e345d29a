//! Set partitions of `{0, .., n-1}` and the Möbius function of the partition
//! lattice.
//!
//! Partitions are stored as restricted growth strings: element `i` carries the
//! index of its block, and blocks are numbered in order of their smallest
//! element. Two partitions are equal iff their strings are equal.
//!
//! The partition lattice is ordered here by refinement: `p.refines(q)` means
//! every block of `p` sits inside a block of `q`. The inverse order (coarser
//! is smaller) is exposed as [`SetPartition::coarsens`].

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the ground-set size for materialized enumerations.
pub const DEFAULT_PARTITION_CAP: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    /// Builds a partition from arbitrary block labels, one per element.
    pub fn from_labels<T: PartialEq + Clone>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(l.clone());
                    seen.len() - 1
                }
            })
            .collect();
        Self { rgs }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("element {x} outside ground set of size {n}")));
                }
                if label[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {x} appears twice")));
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} is not covered")));
        }
        Ok(Self::from_labels(&label))
    }

    pub fn singletons(n: usize) -> Self {
        Self { rgs: (0..n).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        Self { rgs: vec![0; n] }
    }

    /// Size of the ground set.
    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.rgs[x]
    }

    /// Block index of every element (restricted growth string).
    pub fn labels(&self) -> &[usize] {
        &self.rgs
    }

    /// Blocks in order of their smallest element, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.rgs[x] == self.rgs[y]
    }

    /// True when every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.num_blocks()];
        for (x, &b) in self.rgs.iter().enumerate() {
            let target = other.rgs[x];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return false;
            }
        }
        true
    }

    /// True when every block of `other` is contained in a block of `self`.
    pub fn coarsens(&self, other: &SetPartition) -> bool {
        other.refines(self)
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            for y in (x + 1)..self.len() {
                if self.same_block(x, y) || other.same_block(x, y) {
                    uf.union(x, y);
                }
            }
        }
        Ok(uf.into_partition())
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let pairs: Vec<(usize, usize)> = self.rgs.iter().copied().zip(other.rgs.iter().copied()).collect();
        Ok(Self::from_labels(&pairs))
    }

    /// For `self` coarser than `finer`, the partition `self / finer` of the
    /// blocks of `finer`.
    pub fn over(&self, finer: &SetPartition) -> Result<SetPartition> {
        if !finer.refines(self) {
            return Err(Error::IncomparablePartitions);
        }
        let mut labels = vec![0; finer.num_blocks()];
        for (x, &b) in finer.rgs.iter().enumerate() {
            labels[b] = self.rgs[x];
        }
        Ok(Self::from_labels(&labels))
    }

    /// Non-crossing test with respect to the natural cyclic order of the ground set.
    pub fn is_noncrossing(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.same_block(a, b) {
                    continue;
                }
                for c in (a + 1)..b {
                    if self.same_block(a, c) {
                        continue;
                    }
                    for d in (b + 1)..n {
                        if self.same_block(c, d) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

/// Iterator over all partitions of `{0, .., n-1}` in restricted-growth-string order.
pub struct Partitions {
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Self { rgs: vec![0; n], maxes: vec![0; n], done: false }
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let current = SetPartition { rgs: self.rgs.clone() };
        // advance: rightmost position that can still grow
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let bound = self.maxes[i - 1] + 1;
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in (i + 1)..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                break;
            }
        }
        Some(current)
    }
}

pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    enumerate_partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Vec<SetPartition>> {
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    Ok(Partitions::new(n).collect())
}

/// Möbius function of the partition lattice on the interval between `fine`
/// and `coarse` (with `fine` refining `coarse`).
///
/// In the inverse-refinement order where coarser partitions are smaller this
/// is `Mob(coarse, fine)`; the interval factors over the blocks of `coarse`
/// into full partition lattices.
pub fn partition_mobius(coarse: &SetPartition, fine: &SetPartition) -> Result<i64> {
    if !fine.refines(coarse) {
        return Err(Error::IncomparablePartitions);
    }
    let mut counts = vec![0usize; coarse.num_blocks()];
    let mut seen = vec![false; fine.num_blocks()];
    for x in 0..fine.len() {
        let b = fine.block_of(x);
        if !seen[b] {
            seen[b] = true;
            counts[coarse.block_of(x)] += 1;
        }
    }
    Ok(counts.into_iter().map(mobius_full_lattice).product())
}

/// `(-1)^(k-1) (k-1)!`, the Möbius number of the lattice of partitions of a `k`-set.
fn mobius_full_lattice(k: usize) -> i64 {
    let mut value: i64 = 1;
    for i in 1..k {
        value *= -(i as i64);
    }
    value
}

/// Möbius weight `Mob(pi, singletons)` used to pass from a trace to its
/// injective version.
pub fn mobius_to_singletons(pi: &SetPartition) -> i64 {
    let mut sizes = vec![0usize; pi.num_blocks()];
    for &b in pi.labels() {
        sizes[b] += 1;
    }
    sizes.into_iter().map(mobius_full_lattice).product()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn into_partition(mut self) -> SetPartition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        SetPartition::from_labels(&roots)
    }
}
