//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use traffic_core::graph::{Edge, Label};
use traffic_core::matrix::ensemble::gue;
use traffic_core::{MatrixFamily, TestGraph};

/// Directed `n`-cycle in one letter.
pub fn cycle(n: usize, letter: &str) -> TestGraph {
    TestGraph::word_cycle(&vec![Label::new(letter); n]).expect("n >= 1")
}

/// A 2-cycle and a triangle glued at a vertex, with a pendant double edge:
/// the shape mixes cycles, a cut vertex and a non-cactus piece.
pub fn mixed_graph(letter: &str) -> TestGraph {
    let e = |s, t| Edge::new(s, t, letter);
    TestGraph::new(5, vec![e(0, 1), e(1, 0), e(0, 2), e(2, 3), e(3, 0), e(3, 4), e(3, 4)], vec![]).expect("connected")
}

/// One GUE matrix of size `n` under `letter`.
pub fn gue_family(letter: &str, n: usize, seed: u64) -> MatrixFamily {
    MatrixFamily::new().with(letter, gue(n, &mut ChaCha8Rng::seed_from_u64(seed))).expect("fresh family")
}
