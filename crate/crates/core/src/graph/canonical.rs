//! Canonical labeling of small labeled multigraphs by color refinement and
//! individualization. The canonical form is the lexicographically smallest
//! certificate over all leaves of the search tree.

use super::label::Label;
use super::test_graph::TestGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize, Label)>,
    pub outputs: Vec<usize>,
}

pub fn canonical_form(t: &TestGraph) -> CanonicalForm {
    let n = t.num_vertices();
    let mut initial: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pos, &v) in t.outputs().iter().enumerate() {
        initial[v].push(pos);
    }
    let colors = rank(&initial);
    let mut best = None;
    search(t, colors, &mut best);
    best.expect("the search tree has at least one leaf")
}

/// Dense ranks of the keys, ordered by key value.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("key present")).collect()
}

fn count_colors(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

fn refine(t: &TestGraph, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let mut sigs: Vec<(usize, Vec<(u8, &Label, usize)>)> = colors.iter().map(|&c| (c, Vec::new())).collect();
        for e in t.edges() {
            sigs[e.source].1.push((0, &e.label, colors[e.target]));
            sigs[e.target].1.push((1, &e.label, colors[e.source]));
        }
        for s in &mut sigs {
            s.1.sort();
        }
        let next = rank(&sigs);
        if count_colors(&next) == count_colors(&colors) {
            return next;
        }
        colors = next;
    }
}

fn certificate(t: &TestGraph, pos: &[usize]) -> CanonicalForm {
    let mut edges: Vec<(usize, usize, Label)> = t.edges().iter().map(|e| (pos[e.source], pos[e.target], e.label.clone())).collect();
    edges.sort();
    CanonicalForm { num_vertices: t.num_vertices(), edges, outputs: t.outputs().iter().map(|&v| pos[v]).collect() }
}

fn search(t: &TestGraph, colors: Vec<usize>, best: &mut Option<CanonicalForm>) {
    let colors = refine(t, colors);
    let n = colors.len();
    if count_colors(&colors) == n {
        let cert = certificate(t, &colors);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let cell = (0..n).find(|&c| sizes[c] > 1).expect("a non-singleton cell exists");
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let split: Vec<usize> = colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(u != v)).collect();
        search(t, rank(&split), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn relabeled_graphs_share_a_form() {
        let t = TestGraph::new(
            4,
            vec![Edge::new(0, 1, "a"), Edge::new(1, 2, "a"), Edge::new(2, 3, "b"), Edge::new(3, 0, "a"), Edge::new(1, 1, "c")],
            vec![2],
        )
        .unwrap();
        let base = canonical_form(&t);
        for perm in crate::combinatorics::all_permutations(4) {
            assert_eq!(canonical_form(&t.relabel(perm.images()).unwrap()), base);
        }
    }

    #[test]
    fn distinguishes_orientation_labels_and_outputs() {
        let a = TestGraph::new(2, vec![Edge::new(0, 1, "a")], vec![0]).unwrap();
        let b = TestGraph::new(2, vec![Edge::new(1, 0, "a")], vec![0]).unwrap();
        let c = TestGraph::new(2, vec![Edge::new(0, 1, "a*")], vec![0]).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.with_outputs(vec![]).unwrap(), b.with_outputs(vec![]).unwrap());
        let c3 = TestGraph::word_cycle(&["x".into(), "x".into(), "x".into()]).unwrap();
        assert_eq!(c3, c3.involute().map_labels(|l| l.adjoint()));
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // refinement alone cannot split a directed cycle
        let hex = TestGraph::word_cycle(&vec![Label::new("x"); 6]).unwrap();
        let rotated = hex.relabel(&[3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(hex, rotated);
        let bowtie = TestGraph::new(
            5,
            vec![
                Edge::new(0, 1, "x"),
                Edge::new(1, 2, "x"),
                Edge::new(2, 0, "x"),
                Edge::new(0, 3, "x"),
                Edge::new(3, 4, "x"),
                Edge::new(4, 0, "x"),
            ],
            vec![],
        )
        .unwrap();
        assert_ne!(hex.num_vertices(), bowtie.num_vertices());
        assert_ne!(hex.canonical_form(), bowtie.canonical_form());
    }
}
