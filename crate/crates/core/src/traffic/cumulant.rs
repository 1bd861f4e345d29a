//! Free cumulants from moments, by Möbius inversion over noncrossing
//! partitions or, equivalently, as `φ ⋆ μ` at the long cycle of `S_n`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::moments::MomentFunctional;
use crate::combinatorics::sn::SN_CAP;
use crate::combinatorics::{geodesic_leq, nc_partitions, sn_convolve, sn_mobius, Permutation, SnFunction};
use crate::error::{Error, Result};
use crate::graph::Label;

fn check_degree(phi: &dyn MomentFunctional, word: &[Label]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::InvalidArgument("a cumulant needs at least one argument".into()));
    }
    match phi.degree_cap() {
        Some(cap) if word.len() > cap => Err(Error::CapExceeded { size: word.len(), cap }),
        _ => Ok(()),
    }
}

/// `κ(w) = Φ(w) - Σ_{π ∈ NC(n), π ≠ 1_n} Π_{B ∈ π} κ(w|B)`, reusing and
/// filling `memo`.
pub(crate) fn cumulant_with(phi: &dyn MomentFunctional, memo: &mut HashMap<Vec<Label>, Complex64>, word: &[Label]) -> Result<Complex64> {
    if let Some(&k) = memo.get(word) {
        return Ok(k);
    }
    check_degree(phi, word)?;
    let mut value = phi.moment(word)?;
    for pi in nc_partitions(word.len())? {
        if pi.num_blocks() == 1 {
            continue;
        }
        let mut term = Complex64::new(1.0, 0.0);
        for block in pi.blocks() {
            let sub: Vec<Label> = block.iter().map(|&i| word[i].clone()).collect();
            term *= cumulant_with(phi, memo, &sub)?;
        }
        value -= term;
    }
    memo.insert(word.to_vec(), value);
    Ok(value)
}

/// Memoized cumulants of one functional.
pub struct Cumulants<'a> {
    phi: &'a dyn MomentFunctional,
    memo: HashMap<Vec<Label>, Complex64>,
}

impl<'a> Cumulants<'a> {
    pub fn new(phi: &'a dyn MomentFunctional) -> Self {
        Self { phi, memo: HashMap::new() }
    }

    pub fn get(&mut self, word: &[Label]) -> Result<Complex64> {
        cumulant_with(self.phi, &mut self.memo, word)
    }
}

/// `κ_n(w_1, .., w_n)` by the noncrossing recursion.
pub fn free_cumulant(phi: &dyn MomentFunctional, word: &[Label]) -> Result<Complex64> {
    Cumulants::new(phi).get(word)
}

/// The same cumulant as `(φ ⋆ μ)(γ_n)`, where `φ(σ)` multiplies `Φ` over
/// the cycles of `σ` (read along `σ`) and `γ_n: i -> i+1` is the long cycle.
/// Only `σ ⪯ γ_n` contribute, so `φ` is left at 0 elsewhere.
pub fn free_cumulant_sn(phi: &dyn MomentFunctional, word: &[Label]) -> Result<Complex64> {
    check_degree(phi, word)?;
    let n = word.len();
    if n > SN_CAP {
        return Err(Error::CapExceeded { size: n, cap: SN_CAP });
    }
    let gamma = Permutation::full_cycle(n);
    let total: usize = (1..=n).product();
    let mut values = Vec::with_capacity(total);
    for r in 0..total {
        let sigma = Permutation::unrank(n, r);
        let mut v = Complex64::new(0.0, 0.0);
        if geodesic_leq(&sigma, &gamma)? {
            v = Complex64::new(1.0, 0.0);
            for cycle in sigma.cycles() {
                let sub: Vec<Label> = cycle.iter().map(|&i| word[i].clone()).collect();
                v *= phi.moment(&sub)?;
            }
        }
        values.push(v);
    }
    let f = SnFunction::from_values(n, values)?;
    Ok(sn_convolve(&f, &sn_mobius(n)?)?.get(&gamma))
}
