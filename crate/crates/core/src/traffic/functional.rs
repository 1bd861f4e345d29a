//! Distributions of traffics: functionals on 0-graphs together with their
//! injective versions, linked by `τ[t] = Σ_π τ⁰[t^π]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use super::cumulant::cumulant_with;
use super::moments::MomentFunctional;
use crate::combinatorics::partition::Partitions;
use crate::error::{Error, Result};
use crate::graph::{colored_components, is_tree, oriented_cactus_decomposition, Coloring, Label, TestGraph};
use crate::matrix::{monte_carlo_tau, tau_exact, tau_injective_exact, Ensemble, Estimate, MatrixFamily};

/// Largest vertex count for sums over all quotients (Bell(10) = 115975).
pub const TAU_VERTEX_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalKind {
    Empirical,
    Matrices,
    CactusLimit,
    FreeProduct,
}

pub trait TrafficFunctional: Send + Sync {
    fn kind(&self) -> FunctionalKind;

    /// `τ⁰[t]` for a 0-graph `t`.
    fn tau_injective(&self, t: &TestGraph) -> Result<Complex64>;

    /// `τ[t] = Σ_π τ⁰[t^π]`.
    fn tau(&self, t: &TestGraph) -> Result<Complex64> {
        sum_over_quotients(t, |q| self.tau_injective(q))
    }
}

pub(crate) fn require_closed(t: &TestGraph) -> Result<()> {
    if t.outputs().is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("expected a 0-graph, found {} outputs", t.outputs().len())))
    }
}

/// `Σ_{π ∈ P(V)} f(t^π)`, for at most `TAU_VERTEX_CAP` vertices.
pub fn sum_over_quotients(t: &TestGraph, mut f: impl FnMut(&TestGraph) -> Result<Complex64>) -> Result<Complex64> {
    require_closed(t)?;
    if t.num_vertices() > TAU_VERTEX_CAP {
        return Err(Error::CapExceeded { size: t.num_vertices(), cap: TAU_VERTEX_CAP });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for pi in Partitions::new(t.num_vertices()) {
        total += f(&t.quotient(&pi)?)?;
    }
    Ok(total)
}

/// `τ_Φ`: the injective trace is the product of free cumulants over the
/// cycles of an oriented cactus, and vanishes on every other graph.
pub struct CactusLimit<F> {
    phi: F,
    memo: Mutex<HashMap<Vec<Label>, Complex64>>,
}

impl<F: MomentFunctional> CactusLimit<F> {
    pub fn new(phi: F) -> Self {
        Self { phi, memo: Mutex::new(HashMap::new()) }
    }

    pub fn phi(&self) -> &F {
        &self.phi
    }

    fn kappa(&self, word: &[Label]) -> Result<Complex64> {
        let mut memo = self.memo.lock().expect("cumulant cache");
        cumulant_with(&self.phi, &mut memo, word)
    }
}

impl<F: MomentFunctional> TrafficFunctional for CactusLimit<F> {
    fn kind(&self) -> FunctionalKind {
        FunctionalKind::CactusLimit
    }

    fn tau_injective(&self, t: &TestGraph) -> Result<Complex64> {
        require_closed(t)?;
        if let Some(e) = t.edges().iter().find(|e| !self.phi.is_letter(&e.label.name)) {
            return Err(Error::UnresolvedLabel(e.label.name.clone()));
        }
        let Some(cycles) = oriented_cactus_decomposition(t) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        let mut value = Complex64::new(1.0, 0.0);
        for cycle in cycles {
            // a cycle labeled a_1..a_n against its orientation has trace Φ(a_1⋯a_n)
            let word: Vec<Label> = cycle.iter().rev().map(|&e| t.edges()[e].label.clone()).collect();
            value *= self.kappa(&word)?;
            if value == Complex64::new(0.0, 0.0) {
                break;
            }
        }
        Ok(value)
    }
}

pub fn tau_phi_injective(t: &TestGraph, phi: &dyn MomentFunctional) -> Result<Complex64> {
    CactusLimit::new(phi).tau_injective(t)
}

pub fn tau_phi(t: &TestGraph, phi: &dyn MomentFunctional) -> Result<Complex64> {
    CactusLimit::new(phi).tau(t)
}

/// The exact traffic distribution of one deterministic matrix family.
#[derive(Clone, Debug)]
pub struct MatrixTraffic {
    family: MatrixFamily,
}

impl MatrixTraffic {
    pub fn new(family: MatrixFamily) -> Self {
        Self { family }
    }
}

impl TrafficFunctional for MatrixTraffic {
    fn kind(&self) -> FunctionalKind {
        FunctionalKind::Matrices
    }

    fn tau_injective(&self, t: &TestGraph) -> Result<Complex64> {
        tau_injective_exact(t, &self.family)
    }

    fn tau(&self, t: &TestGraph) -> Result<Complex64> {
        tau_exact(t, &self.family)
    }
}

/// Monte Carlo means over a random ensemble at fixed size, sample count and
/// seed, so repeated evaluations agree.
#[derive(Clone, Debug)]
pub struct Empirical {
    pub ensemble: Ensemble,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Empirical {
    pub fn estimate(&self, t: &TestGraph, injective: bool) -> Result<Estimate> {
        monte_carlo_tau(t, &self.ensemble, self.dim, self.samples, self.seed, injective)
    }
}

impl TrafficFunctional for Empirical {
    fn kind(&self) -> FunctionalKind {
        FunctionalKind::Empirical
    }

    fn tau_injective(&self, t: &TestGraph) -> Result<Complex64> {
        Ok(self.estimate(t, true)?.mean)
    }

    fn tau(&self, t: &TestGraph) -> Result<Complex64> {
        Ok(self.estimate(t, false)?.mean)
    }
}

pub type FamilyFunctionals = BTreeMap<usize, Arc<dyn TrafficFunctional>>;

/// Traffic free product: `τ⁰[t]` vanishes unless the graph of colored
/// components is a tree, and is then the product of the family injective
/// traces over the components.
pub fn free_product_injective(t: &TestGraph, coloring: &Coloring, taus: &FamilyFunctionals) -> Result<Complex64> {
    require_closed(t)?;
    if t.num_edges() == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let cc = colored_components(t, coloring)?;
    if let Some(c) = cc.components.iter().find(|c| !taus.contains_key(&c.family)) {
        return Err(Error::MissingFamily(c.family));
    }
    if !is_tree(&cc.skeleton) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut value = Complex64::new(1.0, 0.0);
    for c in &cc.components {
        value *= taus[&c.family].tau_injective(&c.graph)?;
        if value == Complex64::new(0.0, 0.0) {
            break;
        }
    }
    Ok(value)
}

pub fn free_product_tau(t: &TestGraph, coloring: &Coloring, taus: &FamilyFunctionals) -> Result<Complex64> {
    sum_over_quotients(t, |q| free_product_injective(q, coloring, taus))
}

pub struct FreeProduct {
    coloring: Coloring,
    parts: FamilyFunctionals,
}

impl FreeProduct {
    pub fn new(coloring: Coloring, parts: FamilyFunctionals) -> Self {
        Self { coloring, parts }
    }
}

impl TrafficFunctional for FreeProduct {
    fn kind(&self) -> FunctionalKind {
        FunctionalKind::FreeProduct
    }

    fn tau_injective(&self, t: &TestGraph) -> Result<Complex64> {
        free_product_injective(t, &self.coloring, &self.parts)
    }
}
