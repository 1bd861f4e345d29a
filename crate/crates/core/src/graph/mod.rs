//! Test graphs, graph operations, colored components and oriented cacti.

pub mod cactus;
pub mod canonical;
pub mod coloring;
pub mod label;
pub mod operation;
pub mod random;
pub mod test_graph;

pub use cactus::{is_oriented_cactus, kreweras_witness, oriented_cactus_decomposition, perm_to_partition};
pub use canonical::CanonicalForm;
pub use coloring::{colored_components, is_tree, ColoredComponents, Coloring, Component, UndirectedGraph};
pub use label::{format_word, parse_word, Label};
pub use operation::GraphOperation;
pub use test_graph::{Edge, TestGraph};
