//! Matrix realizations: random ensembles, the action of graph operations,
//! exact and injective traces, Monte Carlo estimation and exact Haar
//! integration.

pub mod contract;
pub mod ensemble;
pub mod eval;
pub mod family;
pub mod haar;
pub mod montecarlo;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type ComplexMatrix = DMatrix<Complex64>;

pub use ensemble::{Deterministic, Ensemble, Family, Law};
pub use eval::{eval_graph_op, eval_graph_op_dim, eval_graph_op_naive, tau_exact, tau_injective_direct, tau_injective_exact, tau_naive};
pub use family::MatrixFamily;
pub use haar::haar_expectation_exact;
pub use montecarlo::{ks_two_sample, monte_carlo, monte_carlo_many, monte_carlo_tau, sample_values, Estimate};
