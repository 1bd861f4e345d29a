//! Non-crossing partitions and the Kreweras complement.

use std::sync::OnceLock;

use super::partition::{Partitions, SetPartition};
use super::perm::Permutation;
use crate::error::{Error, Result};

pub const NC_CAP: usize = 12;

/// All non-crossing partitions of `{0, .., n-1}`, filtered from the full
/// partition lattice, in restricted-growth-string order.
pub fn enumerate_nc(n: usize) -> Result<Vec<SetPartition>> {
    Ok(nc_partitions(n)?.to_vec())
}

/// Cached variant of [`enumerate_nc`].
pub fn nc_partitions(n: usize) -> Result<&'static [SetPartition]> {
    static CACHE: [OnceLock<Vec<SetPartition>>; NC_CAP + 1] = [const { OnceLock::new() }; NC_CAP + 1];
    if n > NC_CAP {
        return Err(Error::CapExceeded { size: n, cap: NC_CAP });
    }
    Ok(CACHE[n].get_or_init(|| Partitions::new(n).filter(SetPartition::is_noncrossing).collect()))
}

/// Permutation whose cycles are the blocks of `p`, each traversed increasingly.
pub fn partition_to_permutation(p: &SetPartition) -> Permutation {
    Permutation::from_cycles(p.len(), &p.blocks()).expect("blocks form a partition")
}

pub fn permutation_to_partition(p: &Permutation) -> SetPartition {
    SetPartition::from_blocks(p.len(), &p.cycles()).expect("cycles form a partition")
}

/// Kreweras complement `K(nu)`, computed as the cycles of `P_nu^{-1} ∘ γ`
/// with `γ = (0 1 .. n-1)`.
pub fn kreweras(nu: &SetPartition) -> Result<SetPartition> {
    if !nu.is_noncrossing() {
        return Err(Error::InvalidPartition(format!("{nu:?} is crossing")));
    }
    let gamma = Permutation::full_cycle(nu.len());
    Ok(permutation_to_partition(&partition_to_permutation(nu).inverse().compose(&gamma)))
}

/// `nu` with every element shifted by `shift` modulo `n`.
pub fn rotate(nu: &SetPartition, shift: isize) -> SetPartition {
    let n = nu.len() as isize;
    let mut labels = vec![0; nu.len()];
    for x in 0..nu.len() {
        let y = ((x as isize + shift).rem_euclid(n)) as usize;
        labels[y] = nu.block_of(x);
    }
    SetPartition::from_labels(&labels)
}
