//! Set partitions, non-crossing partitions, permutations and functions on `S_n`.

pub mod nc;
pub mod partition;
pub mod perm;
pub mod sn;

pub use nc::{enumerate_nc, kreweras, nc_partitions, partition_to_permutation, permutation_to_partition, rotate};
pub use partition::{enumerate_partitions, mobius_to_singletons, partition_mobius, SetPartition};
pub use perm::{all_permutations, geodesic_leq, perm_metric, Permutation};
pub use sn::{
    delta_id, group_convolve, omega, scaled_weingarten, sn_convolve, sn_convolve_n, sn_mobius, weingarten, weingarten_classes,
    weingarten_dense, zeta, SnFunction, WeingartenTable,
};
