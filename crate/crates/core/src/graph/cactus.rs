//! Oriented cacti, the partition `π(α)` attached to a permutation of edges, and
//! the Kreweras witness of a cactus quotient of a cycle.

use super::test_graph::TestGraph;
use crate::combinatorics::partition::{SetPartition, UnionFind};
use crate::combinatorics::Permutation;
use crate::error::{Error, Result};

/// Edge sets of the 2-edge-connected blocks of the underlying undirected
/// multigraph (bridges form one-edge blocks, each loop its own block).
fn blocks(t: &TestGraph) -> Vec<Vec<usize>> {
    struct Dfs<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }

    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent_edge: Option<usize>) {
            self.timer += 1;
            self.disc[v] = self.timer;
            self.low[v] = self.timer;
            for &(e, w) in &self.adj[v] {
                if Some(e) == parent_edge {
                    continue;
                }
                if self.disc[w] == 0 {
                    self.stack.push(e);
                    self.visit(w, Some(e));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v] {
                        let mut block = Vec::new();
                        while let Some(f) = self.stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                } else if self.disc[w] < self.disc[v] {
                    self.stack.push(e);
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
        }
    }

    let mut adj = vec![Vec::new(); t.num_vertices()];
    let mut out = Vec::new();
    for (i, e) in t.edges().iter().enumerate() {
        if e.is_loop() {
            out.push(vec![i]);
        } else {
            adj[e.source].push((i, e.target));
            adj[e.target].push((i, e.source));
        }
    }
    let mut dfs = Dfs { adj: &adj, disc: vec![0; t.num_vertices()], low: vec![0; t.num_vertices()], timer: 0, stack: Vec::new(), out };
    for v in 0..t.num_vertices() {
        if dfs.disc[v] == 0 {
            dfs.visit(v, None);
        }
    }
    dfs.out
}

/// The cycles of `t` if it is a cactus whose cycles are all consistently
/// oriented, each as a list of edge ids following the orientation and
/// starting at the edge leaving the smallest vertex; `None` otherwise. A loop
/// is a cycle of length one; a graph without edges has no cycles.
pub fn oriented_cactus_decomposition(t: &TestGraph) -> Option<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    for block in blocks(t) {
        let mut vertices: Vec<usize> = block.iter().flat_map(|&i| [t.edges()[i].source, t.edges()[i].target]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != block.len() {
            return None;
        }
        for &v in &vertices {
            let outs = block.iter().filter(|&&i| t.edges()[i].source == v).count();
            let ins = block.iter().filter(|&&i| t.edges()[i].target == v).count();
            if outs != 1 || ins != 1 {
                return None;
            }
        }
        let next_from = |v: usize| *block.iter().find(|&&i| t.edges()[i].source == v).expect("one out-edge per vertex");
        let mut cycle = vec![next_from(vertices[0])];
        while cycle.len() < block.len() {
            let last = &t.edges()[*cycle.last().expect("nonempty")];
            cycle.push(next_from(last.target));
        }
        cycles.push(cycle);
    }
    cycles.sort_by_key(|c| *c.iter().min().expect("nonempty cycle"));
    Some(cycles)
}

pub fn is_oriented_cactus(t: &TestGraph) -> bool {
    oriented_cactus_decomposition(t).is_some()
}

/// `π(α)`: the finest vertex partition with `target(e) ~ source(α(e))`.
pub fn perm_to_partition(t: &TestGraph, alpha: &Permutation) -> Result<SetPartition> {
    if alpha.len() != t.num_edges() {
        return Err(Error::InvalidPermutation(format!("{} edges permuted on a graph with {}", alpha.len(), t.num_edges())));
    }
    let mut uf = UnionFind::new(t.num_vertices());
    for (i, e) in t.edges().iter().enumerate() {
        uf.union(e.target, t.edges()[alpha.apply(i)].source);
    }
    Ok(uf.into_partition())
}

/// Whether `t` is one simple directed cycle through all its vertices.
pub fn is_simple_directed_cycle(t: &TestGraph) -> bool {
    t.num_edges() == t.num_vertices()
        && t.num_edges() > 0
        && oriented_cactus_decomposition(t).is_some_and(|c| c.len() == 1)
}

/// For a simple directed cycle `t` and a vertex partition `pi` making `t^π`
/// an oriented cactus, the partition of the edges of `t` by the cycles of
/// `t^π`. It is non-crossing with respect to the edge order of `t`.
pub fn kreweras_witness(t: &TestGraph, pi: &SetPartition) -> Result<SetPartition> {
    if !is_simple_directed_cycle(t) {
        return Err(Error::InvalidGraph("expected a simple directed cycle".into()));
    }
    let q = t.quotient(pi)?;
    let cycles = oriented_cactus_decomposition(&q).ok_or(Error::NotOrientedCactus)?;
    SetPartition::from_blocks(t.num_edges(), &cycles)
}
