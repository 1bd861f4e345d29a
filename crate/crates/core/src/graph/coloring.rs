use std::collections::BTreeMap;

use super::test_graph::{Edge, TestGraph};
use crate::combinatorics::partition::UnionFind;
use crate::error::{Error, Result};

/// Assignment of letters to families. A starred label belongs to the family of
/// its letter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    families: BTreeMap<String, usize>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        Self { families: pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
    }

    pub fn insert(&mut self, letter: impl Into<String>, family: usize) {
        self.families.insert(letter.into(), family);
    }

    pub fn family(&self, letter: &str) -> Result<usize> {
        self.families.get(letter).copied().ok_or_else(|| Error::UnknownColor(letter.to_string()))
    }

    pub fn families(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.families.values().copied().collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.families.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Renames family indices through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        Self { families: self.families.iter().map(|(k, &v)| (k.clone(), map(v))).collect() }
    }
}

/// A simple undirected multigraph on `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.num_vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.into_partition().num_blocks() == 1
    }
}

/// Connected with exactly `|V| - 1` edges.
pub fn is_tree(g: &UndirectedGraph) -> bool {
    g.num_vertices >= 1 && g.edges.len() + 1 == g.num_vertices && g.is_connected()
}

/// A maximal connected monochromatic subgraph.
#[derive(Clone, Debug)]
pub struct Component {
    pub family: usize,
    /// The subgraph, with local vertex `i` standing for `vertices[i]`.
    pub graph: TestGraph,
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
}

/// Colored components of a test graph and the bipartite graph `T̄` joining
/// each component to the connectors (vertices shared by several components)
/// it contains. Skeleton vertices `0..components.len()` are components, the
/// rest are connectors in the order of `connectors`.
#[derive(Clone, Debug)]
pub struct ColoredComponents {
    pub components: Vec<Component>,
    pub connectors: Vec<usize>,
    pub skeleton: UndirectedGraph,
}

pub fn colored_components(t: &TestGraph, coloring: &Coloring) -> Result<ColoredComponents> {
    let colors: Vec<usize> = t.edges().iter().map(|e| coloring.family(&e.label.name)).collect::<Result<_>>()?;
    let m = t.num_edges();
    // edges of the same family sharing a vertex are in one component
    let mut uf = UnionFind::new(m);
    let mut first_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in t.edges().iter().enumerate() {
        for v in [e.source, e.target] {
            match first_at.get(&(v, colors[i])) {
                Some(&j) => uf.union(i, j),
                None => {
                    first_at.insert((v, colors[i]), i);
                }
            }
        }
    }
    let groups = uf.into_partition();
    let mut components = Vec::new();
    for edge_ids in groups.blocks() {
        let mut vertices: Vec<usize> = Vec::new();
        for &i in &edge_ids {
            let e = &t.edges()[i];
            for v in [e.source, e.target] {
                if !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
        let local = |v: usize| vertices.iter().position(|&w| w == v).expect("vertex collected");
        let edges = edge_ids
            .iter()
            .map(|&i| {
                let e = &t.edges()[i];
                Edge { source: local(e.source), target: local(e.target), label: e.label.clone() }
            })
            .collect();
        let graph = TestGraph::new(vertices.len(), edges, vec![])?;
        components.push(Component { family: colors[edge_ids[0]], graph, vertices, edge_ids });
    }
    let mut membership = vec![Vec::new(); t.num_vertices()];
    for (c, comp) in components.iter().enumerate() {
        for &v in &comp.vertices {
            membership[v].push(c);
        }
    }
    let connectors: Vec<usize> = (0..t.num_vertices()).filter(|&v| membership[v].len() >= 2).collect();
    let mut edges = Vec::new();
    for (k, &v) in connectors.iter().enumerate() {
        for &c in &membership[v] {
            edges.push((c, components.len() + k));
        }
    }
    let skeleton = UndirectedGraph { num_vertices: components.len() + connectors.len(), edges };
    Ok(ColoredComponents { components, connectors, skeleton })
}
