use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use traffic_core::combinatorics::{all_permutations, enumerate_nc, enumerate_partitions, Permutation, SetPartition};
use traffic_core::graph::random::{random_operation, random_test_graph};
use traffic_core::graph::{
    is_oriented_cactus, kreweras_witness, oriented_cactus_decomposition, perm_to_partition, GraphOperation, Label, TestGraph,
};

fn labels() -> Vec<Label> {
    vec![Label::new("a"), Label::starred("a"), Label::new("b")]
}

/// Maximum number of edge-disjoint u-v paths in the underlying undirected
/// multigraph, by unit-capacity augmenting paths. Loops are irrelevant.
fn edge_connectivity(t: &TestGraph, u: usize, v: usize) -> usize {
    // residual capacity per (edge, direction)
    let m = t.num_edges();
    let mut flow = vec![0i32; m]; // +1: source->target used, -1: target->source used
    let mut total = 0;
    loop {
        let mut prev: Vec<Option<(usize, i32)>> = vec![None; t.num_vertices()];
        let mut seen = vec![false; t.num_vertices()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for (i, e) in t.edges().iter().enumerate() {
                if e.is_loop() {
                    continue;
                }
                for (from, to, dir) in [(e.source, e.target, 1), (e.target, e.source, -1)] {
                    if from == x && !seen[to] && flow[i] != dir {
                        seen[to] = true;
                        prev[to] = Some((i, dir));
                        queue.push_back(to);
                    }
                }
            }
        }
        if !seen[v] {
            return total;
        }
        let mut x = v;
        while x != u {
            let (i, dir) = prev[x].expect("on the path");
            flow[i] += dir;
            let e = &t.edges()[i];
            x = if dir == 1 { e.source } else { e.target };
        }
        total += 1;
    }
}

fn balanced(t: &TestGraph) -> bool {
    let mut d = vec![0i32; t.num_vertices()];
    for e in t.edges() {
        d[e.source] += 1;
        d[e.target] -= 1;
    }
    d.iter().all(|&x| x == 0)
}

fn block_order(parts: &[GraphOperation], order: &[usize]) -> Vec<usize> {
    let mut starts = vec![0];
    for p in parts {
        starts.push(starts.last().unwrap() + p.arity());
    }
    order.iter().flat_map(|&i| starts[i]..starts[i + 1]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cactus_matches_menger(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_test_graph(&mut rng, 5, 8, &labels());
        let n = t.num_vertices();
        let all_two = (0..n).all(|u| (u + 1..n).all(|v| edge_connectivity(&t, u, v) == 2));
        prop_assert_eq!(is_oriented_cactus(&t), all_two && balanced(&t), "{:?}", t);
        if let Some(cycles) = oriented_cactus_decomposition(&t) {
            let covered: BTreeSet<usize> = cycles.iter().flatten().copied().collect();
            prop_assert_eq!(covered.len(), t.num_edges());
            prop_assert_eq!(cycles.iter().map(Vec::len).sum::<usize>(), t.num_edges());
        }
    }

    #[test]
    fn quotients_compose_along_refinement(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_test_graph(&mut rng, 4, 5, &labels());
        let all = enumerate_partitions(t.num_vertices()).unwrap();
        for pi in &all {
            for sigma in all.iter().filter(|s| pi.refines(s)) {
                let two = t.quotient(pi).unwrap().quotient(&sigma.over(pi).unwrap()).unwrap();
                prop_assert!(two.same_structure(&t.quotient(sigma).unwrap()));
            }
        }
    }

    #[test]
    fn involution_and_mirror_merge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_test_graph(&mut rng, 4, 5, &labels());
        prop_assert!(t.involute().involute().same_structure(&t));
        let with_out = t.with_outputs(vec![0, t.num_vertices() - 1]).unwrap();
        let base = with_out.merge_outputs(&with_out.involute()).unwrap();
        let perms = all_permutations(t.num_vertices());
        let p = &perms[(seed as usize) % perms.len()];
        let r = with_out.relabel(p.images()).unwrap();
        prop_assert_eq!(r.merge_outputs(&r.involute()).unwrap(), base);
    }

    #[test]
    fn operad_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_operation(&mut rng, 4, (seed % 5) as usize);
        prop_assert_eq!(g.compose(&vec![GraphOperation::identity(); g.arity()]).unwrap(), g.clone());
        prop_assert_eq!(GraphOperation::identity().compose(std::slice::from_ref(&g)).unwrap(), g);
    }

    #[test]
    fn operad_associativity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 1 + (seed % 3) as usize;
        let g = random_operation(&mut rng, 3, k);
        let parts: Vec<GraphOperation> = (0..k).map(|i| random_operation(&mut rng, 3, (seed as usize >> (2 * i)) % 3)).collect();
        let inner: Vec<Vec<GraphOperation>> =
            parts.iter().map(|p| (0..p.arity()).map(|_| small_op(&mut rng, 1)).collect()).collect();
        let composed_parts: Vec<GraphOperation> = parts.iter().zip(&inner).map(|(p, gs)| p.compose(gs).unwrap()).collect();
        let left = g.compose(&composed_parts).unwrap();
        let flat: Vec<GraphOperation> = inner.into_iter().flatten().collect();
        let right = g.compose(&parts).unwrap().compose(&flat).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn operad_equivariance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 1 + (seed % 4) as usize;
        let g = random_operation(&mut rng, 4, k);
        let parts: Vec<GraphOperation> = (0..k).map(|_| small_op(&mut rng, 0)).collect();
        let perms = all_permutations(k);
        let pi = &perms[(seed as usize / 7) % perms.len()];
        let pi_inv = pi.inverse();

        // (g∘π)∘(g_{π⁻¹(1)},..) equals g∘(g_1,..) up to the block permutation
        // that lists the blocks in the order π⁻¹(1), π⁻¹(2), ..
        let reordered: Vec<GraphOperation> = (0..k).map(|i| parts[pi_inv.apply(i)].clone()).collect();
        let left = g.permute(pi).unwrap().compose(&reordered).unwrap();
        let order = block_order(&parts, &(0..k).map(|i| pi_inv.apply(i)).collect::<Vec<_>>());
        let right = g.compose(&parts).unwrap().permute(&Permutation::new(order).unwrap().inverse()).unwrap();
        prop_assert_eq!(left, right);

        // g∘(g_1∘σ_1, ..) = (g∘(g_1, ..))∘(σ_1 × .. × σ_K)
        let sigmas: Vec<Permutation> = parts.iter().map(|p| {
            let all = all_permutations(p.arity());
            all[(seed as usize / 13) % all.len()].clone()
        }).collect();
        let twisted: Vec<GraphOperation> = parts.iter().zip(&sigmas).map(|(p, s)| p.permute(s).unwrap()).collect();
        let left = g.compose(&twisted).unwrap();
        let mut product = Vec::new();
        for s in &sigmas {
            let offset = product.len();
            product.extend(s.images().iter().map(|&x| x + offset));
        }
        let right = g.compose(&parts).unwrap().permute(&Permutation::new(product).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_commutes_with_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 1 + (seed % 3) as usize;
        let g = random_operation(&mut rng, 3, k);
        let parts: Vec<GraphOperation> = (0..k).map(|_| small_op(&mut rng, 0)).collect();
        let stars: Vec<GraphOperation> = parts.iter().map(GraphOperation::involution).collect();
        prop_assert_eq!(g.compose(&parts).unwrap().involution(), g.involution().compose(&stars).unwrap());
        prop_assert_eq!(g.involution().involution(), g);
    }
}

/// A random operation on at most 3 vertices with `min_edges..min_edges + 3` edges.
fn small_op(rng: &mut ChaCha8Rng, min_edges: usize) -> GraphOperation {
    use rand::Rng;
    let edges = min_edges + rng.random_range(0..3);
    random_operation(rng, 3, edges)
}

#[test]
fn equality_case_permutations_are_catalan_and_biject_with_cactus_quotients() {
    let catalan = [1, 1, 2, 5, 14, 42];
    for n in 1..=5 {
        let t = TestGraph::word_cycle(&vec![Label::new("x"); n]).unwrap();
        let mut quotients = BTreeSet::new();
        let mut count = 0;
        for alpha in all_permutations(n) {
            let pi = perm_to_partition(&t, &alpha).unwrap();
            assert!(pi.num_blocks() + alpha.num_cycles() <= n + 1);
            if pi.num_blocks() + alpha.num_cycles() == n + 1 {
                count += 1;
                let q = t.quotient(&pi).unwrap();
                let cycles = oriented_cactus_decomposition(&q).expect("equality case gives an oriented cactus");
                // round trip: the cycles of the quotient are the cycles of α
                let mut from_alpha: Vec<BTreeSet<usize>> = alpha.cycles().into_iter().map(|c| c.into_iter().collect()).collect();
                let mut from_cactus: Vec<BTreeSet<usize>> = cycles.into_iter().map(|c| c.into_iter().collect()).collect();
                from_alpha.sort();
                from_cactus.sort();
                assert_eq!(from_alpha, from_cactus);
                quotients.insert(pi);
            }
        }
        assert_eq!(count, catalan[n]);
        let cactus_partitions: BTreeSet<SetPartition> =
            enumerate_partitions(n).unwrap().into_iter().filter(|p| is_oriented_cactus(&t.quotient(p).unwrap())).collect();
        assert_eq!(quotients, cactus_partitions);
    }
}

#[test]
fn kreweras_witness_is_a_bijection_onto_nc() {
    for n in 1..=6 {
        let t = TestGraph::word_cycle(&vec![Label::new("x"); n]).unwrap();
        let mut witnesses: Vec<SetPartition> = enumerate_partitions(n).unwrap().iter().filter_map(|p| kreweras_witness(&t, p).ok()).collect();
        let total = witnesses.len();
        witnesses.sort();
        witnesses.dedup();
        assert_eq!(witnesses.len(), total);
        let mut nc = enumerate_nc(n).unwrap();
        nc.sort();
        assert_eq!(witnesses, nc);
    }
}
