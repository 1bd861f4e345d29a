pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod traffic;

pub use error::{Error, Result};
pub use graph::{GraphOperation, Label, TestGraph};
pub use matrix::{ComplexMatrix, Ensemble, Estimate, MatrixFamily};
pub use traffic::{MomentFunctional, TrafficFunctional};
