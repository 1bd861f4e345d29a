//! The abstract side: moment functionals and free cumulants, the limiting
//! distribution `τ_Φ` on oriented cacti, traffic free products, Gram
//! positivity and the Kronecker split over `Λ_T`.

pub mod cumulant;
pub mod functional;
pub mod gram;
pub mod kronecker;
pub mod moments;
pub mod polynomial;

pub use cumulant::{free_cumulant, free_cumulant_sn, Cumulants};
pub use functional::{
    free_product_injective, free_product_tau, sum_over_quotients, tau_phi, tau_phi_injective, CactusLimit, Empirical, FamilyFunctionals,
    FreeProduct, FunctionalKind, MatrixTraffic, TrafficFunctional,
};
pub use gram::{graph_monomials, gram_matrix, hermitian_defect, min_eigenvalue};
pub use kronecker::{kronecker_family, lambda_pairs, lambda_sum};
pub use moments::{word_adjoint, FreeGaussian, FreeProductMoments, HaarUnitaryLetter, MatrixMoments, MomentFunctional, MomentTable, WithUnit};
pub use polynomial::GraphPolynomial;
