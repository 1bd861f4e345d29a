use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use traffic_core::combinatorics::{nc_partitions, SetPartition};
use traffic_core::graph::random::random_test_graph;
use traffic_core::graph::{Coloring, Edge, Label, TestGraph};
use traffic_core::matrix::{ComplexMatrix, MatrixFamily};
use traffic_core::traffic::{
    free_cumulant, free_cumulant_sn, free_product_tau, gram_matrix, graph_monomials, min_eigenvalue, tau_phi, tau_phi_injective, CactusLimit,
    FamilyFunctionals, FreeGaussian, FreeProduct, FreeProductMoments, GraphPolynomial, HaarUnitaryLetter, MatrixMoments, MomentFunctional,
    MomentTable, TrafficFunctional,
};

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm()))
}

fn all_words(letters: &[Label], max_len: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Label>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |l| [w.as_slice(), std::slice::from_ref(l)].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn nc_moment(phi: &dyn MomentFunctional, word: &[Label]) -> Complex64 {
    nc_partitions(word.len())
        .unwrap()
        .iter()
        .map(|pi| {
            pi.blocks()
                .iter()
                .map(|b| free_cumulant(phi, &b.iter().map(|&i| word[i].clone()).collect::<Vec<_>>()).unwrap())
                .product::<Complex64>()
        })
        .sum()
}

#[test]
fn cycles_recover_moments() {
    let letters = [Label::new("a"), Label::starred("a"), Label::new("b")];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fam = MatrixFamily::new().with("a", random_matrix(&mut rng, 3)).unwrap().with("b", random_matrix(&mut rng, 3)).unwrap();
    let matrices = MatrixMoments::new(fam).unwrap();
    let table = MomentTable::from_functional(&matrices, &letters, &[], 5).unwrap();
    let free = FreeGaussian::new().with_semicircle("a").with_semicircle("b");
    for phi in [&matrices as &dyn MomentFunctional, &table, &free] {
        for w in all_words(&letters, 5) {
            let t = TestGraph::word_cycle(&w).unwrap();
            let expected = phi.moment(&w).unwrap();
            let got = tau_phi(&t, phi).unwrap();
            assert!(close(got, expected, 1e-10), "{w:?}: {got} vs {expected}");
            assert!(close(nc_moment(phi, &w), expected, 1e-10));
        }
    }
}

#[test]
fn cumulant_paths_agree_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fam = MatrixFamily::new().with("a", random_matrix(&mut rng, 3)).unwrap().with("b", random_matrix(&mut rng, 3)).unwrap();
    let phi = MatrixMoments::new(fam).unwrap();
    let letters = [Label::new("a"), Label::starred("a"), Label::new("b"), Label::starred("b")];
    for _ in 0..40 {
        let n = rng.random_range(1..=7);
        let w: Vec<Label> = (0..n).map(|_| letters[rng.random_range(0..4)].clone()).collect();
        let x = free_cumulant(&phi, &w).unwrap();
        let y = free_cumulant_sn(&phi, &w).unwrap();
        assert!(close(x, y, 1e-10), "{w:?}: {x} vs {y}");
    }
}

/// Replaces edge `e` (`s -> t`) by `s -> m -> t` labeled `first` then `second`.
fn subdivide(t: &TestGraph, e: usize, first: &str, second: &str) -> TestGraph {
    let m = t.num_vertices();
    let mut edges = t.edges().to_vec();
    let old = edges[e].clone();
    edges[e] = Edge::new(old.source, m, first);
    edges.push(Edge::new(m, old.target, second));
    TestGraph::new(m + 1, edges, vec![]).unwrap()
}

/// Identifies the endpoints of edge `e`, then removes it.
fn contract_edge(t: &TestGraph, e: usize) -> TestGraph {
    let old = &t.edges()[e];
    let labels: Vec<usize> = (0..t.num_vertices()).map(|v| if v == old.target { old.source } else { v }).collect();
    let q = t.quotient(&SetPartition::from_labels(&labels)).unwrap();
    let mut edges = q.edges().to_vec();
    edges.remove(e);
    q.with_edges(edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn subdividing_a_product_edge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, 3);
        let b = random_matrix(&mut rng, 3);
        let fam = MatrixFamily::new().with("a", a.clone()).unwrap().with("b", b.clone()).unwrap().with("w", &a * &b).unwrap();
        let phi = MatrixMoments::new(fam).unwrap();
        let labels = [Label::new("a"), Label::new("b"), Label::new("w")];
        let mut t = random_test_graph(&mut rng, 4, 4, &labels);
        let e = rng.random_range(0..t.num_edges().max(1));
        if t.num_edges() == 0 {
            t = TestGraph::new(1, vec![Edge::new(0, 0, "w")], vec![]).unwrap();
        }
        let edges: Vec<Edge> = t.edges().iter().enumerate().map(|(i, x)| if i == e { Edge::new(x.source, x.target, "w") } else { x.clone() }).collect();
        let t = t.with_edges(edges).unwrap();
        // the edge s -> t labeled ab becomes s -> m labeled b, then m -> t labeled a
        let split = subdivide(&t, e, "b", "a");
        let x = tau_phi(&t, &phi).unwrap();
        let y = tau_phi(&split, &phi).unwrap();
        prop_assert!(close(x, y, 1e-9), "{x} vs {y}");
    }

    #[test]
    fn unit_edges_identify_their_endpoints(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = MatrixFamily::new()
            .with("a", random_matrix(&mut rng, 3)).unwrap()
            .with("e", ComplexMatrix::identity(3, 3)).unwrap();
        let phi = MatrixMoments::new(fam).unwrap();
        let t = random_test_graph(&mut rng, 4, 5, &[Label::new("a"), Label::starred("a"), Label::new("e")]);
        if let Some(e) = t.edges().iter().position(|x| x.label.name == "e") {
            let x = tau_phi(&t, &phi).unwrap();
            let y = tau_phi(&contract_edge(&t, e), &phi).unwrap();
            prop_assert!(close(x, y, 1e-9), "{x} vs {y}");
        }
    }

    #[test]
    fn free_moments_factor_as_traffic_free_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fa = MatrixMoments::new(MatrixFamily::new().with("a", random_matrix(&mut rng, 3)).unwrap()).unwrap();
        let pa: Arc<dyn MomentFunctional> = Arc::new(fa);
        let pb: Arc<dyn MomentFunctional> = Arc::new(HaarUnitaryLetter::new("u"));
        let phi = FreeProductMoments::new(vec![pa.clone(), pb.clone()]);
        let taus: FamilyFunctionals = [
            (0, Arc::new(CactusLimit::new(pa)) as Arc<dyn TrafficFunctional>),
            (1, Arc::new(CactusLimit::new(pb)) as Arc<dyn TrafficFunctional>),
        ].into_iter().collect();
        let coloring = Coloring::from_pairs([("a", 0), ("u", 1)]);
        let labels = [Label::new("a"), Label::starred("a"), Label::new("u"), Label::starred("u")];
        let t = random_test_graph(&mut rng, 4, 4, &labels);
        let limit = CactusLimit::new(&phi);
        let x = limit.tau(&t).unwrap();
        let y = free_product_tau(&t, &coloring, &taus).unwrap();
        prop_assert!(close(x, y, 1e-9), "{x} vs {y}");
        prop_assert!(close(limit.tau_injective(&t).unwrap(), FreeProduct::new(coloring.clone(), taus.clone()).tau_injective(&t).unwrap(), 1e-9));
        // swapping the family indices changes nothing
        let swapped: FamilyFunctionals = taus.iter().map(|(k, v)| (1 - k, v.clone())).collect();
        let z = free_product_tau(&t, &coloring.remap(|j| 1 - j), &swapped).unwrap();
        prop_assert!(close(y, z, 1e-12));
    }

    #[test]
    fn eta_vanishes_under_the_cactus_limit(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = MatrixMoments::new(MatrixFamily::new().with("a", random_matrix(&mut rng, 4)).unwrap()).unwrap();
        let gadget = TestGraph::new(1, vec![Edge::new(0, 0, "a"), Edge::new(0, 0, "a*")], vec![]).unwrap();
        let single = TestGraph::new(1, vec![Edge::new(0, 0, "a")], vec![]).unwrap();
        let eta = tau_phi(&gadget, &phi).unwrap() - tau_phi(&single, &phi).unwrap().norm_sqr();
        prop_assert!(eta.norm() < 1e-12, "{eta}");
    }
}

fn alternating_words(len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
    for _ in 1..len {
        out = out.iter().flat_map(|w| (0..3).filter(|&j| j != *w.last().unwrap()).map(move |j| [w.as_slice(), &[j]].concat())).collect();
    }
    out
}

#[test]
fn transpose_and_degree_are_free_in_the_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let general = MatrixMoments::new(MatrixFamily::new().with("a", random_matrix(&mut rng, 3)).unwrap()).unwrap();
    let semicircle = FreeGaussian::semicircle("a");
    for phi in [&general as &dyn MomentFunctional, &semicircle] {
        let limit = CactusLimit::new(phi);
        let tr = |t: &TestGraph| limit.tau(t);
        let a = Label::new("a");
        let pieces = [
            GraphPolynomial::edge(a.clone()).centered(tr).unwrap(),
            GraphPolynomial::transpose(a.clone()).centered(tr).unwrap(),
            GraphPolynomial::degree(a.clone()).centered(tr).unwrap(),
        ];
        let squares = [
            GraphPolynomial::edge(a.clone()).mul(&GraphPolynomial::edge(Label::starred("a"))).unwrap().centered(tr).unwrap(),
            GraphPolynomial::transpose(a.clone()).mul(&GraphPolynomial::transpose(a.clone())).unwrap().centered(tr).unwrap(),
            GraphPolynomial::degree(a.clone()).mul(&GraphPolynomial::degree(a.clone())).unwrap().centered(tr).unwrap(),
        ];
        for len in 2..=4 {
            for word in alternating_words(len) {
                for set in [&pieces, &squares] {
                    let mut p = GraphPolynomial::unit();
                    for &i in &word {
                        p = p.mul(&set[i]).unwrap();
                    }
                    let v = p.trace_with(tr).unwrap();
                    assert!(v.norm() < 1e-10, "{word:?}: {v}");
                }
            }
        }
    }
}

#[test]
fn gram_matrices_are_positive() {
    let s = CactusLimit::new(FreeGaussian::semicircle("s"));
    let monomials = graph_monomials(&[Label::new("s")], 2, 2);
    let g = gram_matrix(&monomials, &s).unwrap();
    assert!(min_eigenvalue(&g) >= -1e-8, "{}", min_eigenvalue(&g));
    let taus: FamilyFunctionals = [
        (0, Arc::new(CactusLimit::new(FreeGaussian::semicircle("s"))) as Arc<dyn TrafficFunctional>),
        (1, Arc::new(CactusLimit::new(HaarUnitaryLetter::new("u"))) as Arc<dyn TrafficFunctional>),
    ]
    .into_iter()
    .collect();
    let fp = FreeProduct::new(Coloring::from_pairs([("s", 0), ("u", 1)]), taus);
    let monomials = graph_monomials(&[Label::new("s"), Label::new("u"), Label::starred("u")], 2, 2);
    let g = gram_matrix(&monomials, &fp).unwrap();
    assert!(min_eigenvalue(&g) >= -1e-8, "{}", min_eigenvalue(&g));
}

#[test]
fn tau_phi_injective_is_invariant_under_relabeling() {
    let phi = FreeGaussian::new().with_circular("c");
    let t = TestGraph::new(3, vec![Edge::new(0, 1, "c"), Edge::new(1, 2, "c*"), Edge::new(2, 0, "c"), Edge::new(0, 0, "c*")], vec![]).unwrap();
    let base = tau_phi_injective(&t, &phi).unwrap();
    for perm in [[1, 2, 0], [2, 0, 1], [0, 2, 1]] {
        assert_eq!(tau_phi_injective(&t.relabel(&perm).unwrap(), &phi).unwrap(), base);
    }
}
