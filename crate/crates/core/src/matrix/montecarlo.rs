use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use rayon::ThreadPool;

use super::ensemble::Ensemble;
use super::eval::{tau_exact, tau_injective_exact};
use super::family::MatrixFamily;
use crate::error::{Error, Result};
use crate::graph::TestGraph;

/// Sample mean with its standard error `sd / √n`, `sd` using `n - 1`. A
/// spread below `1e-12 (1 + |mean|)` is rounding noise and is reported as 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn from_samples(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::InvalidArgument("at least two samples are needed".into()));
        }
        let mean = values.iter().sum::<Complex64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (n - 1) as f64;
        let sd = if var.sqrt() < 1e-12 * (1.0 + mean.norm()) { 0.0 } else { var.sqrt() };
        Ok(Self { mean, stderr: sd / (n as f64).sqrt(), samples: n })
    }

    /// `|mean - limit| / stderr`. With zero spread, 0 when the mean matches
    /// the limit to rounding and infinite otherwise.
    pub fn z_score(&self, limit: Complex64) -> f64 {
        let diff = (self.mean - limit).norm();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff <= 1e-9 * (1.0 + limit.norm()) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Worker pool sized by `TRAFFIC_THREADS` when set, else rayon's default.
pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("TRAFFIC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
            builder = builder.num_threads(n);
        }
        builder.build().expect("thread pool")
    })
}

/// Evaluates `f` on `samples` independent realizations, in parallel. Sample
/// `i` always uses stream `i` of `seed` and results come back in index
/// order, so the output does not depend on the number of workers.
pub fn sample_values<T, F>(ensemble: &Ensemble, dim: usize, samples: usize, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&MatrixFamily) -> Result<T> + Sync,
{
    pool().install(|| {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let family = ensemble.sample_indexed(dim, seed, i as u64)?;
                f(&family)
            })
            .collect()
    })
}

/// Estimates of several observables computed on the same realizations.
pub fn monte_carlo_many<F>(ensemble: &Ensemble, dim: usize, samples: usize, seed: u64, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(&MatrixFamily) -> Result<Vec<Complex64>> + Sync,
{
    if samples < 2 {
        return Err(Error::InvalidArgument("at least two samples are needed".into()));
    }
    let rows = sample_values(ensemble, dim, samples, seed, f)?;
    let width = rows.first().map_or(0, Vec::len);
    (0..width)
        .map(|j| {
            let column: Vec<Complex64> = rows.iter().map(|r| r[j]).collect();
            Estimate::from_samples(&column)
        })
        .collect()
}

pub fn monte_carlo<F>(ensemble: &Ensemble, dim: usize, samples: usize, seed: u64, f: F) -> Result<Estimate>
where
    F: Fn(&MatrixFamily) -> Result<Complex64> + Sync,
{
    Ok(monte_carlo_many(ensemble, dim, samples, seed, |m| Ok(vec![f(m)?]))?[0])
}

/// Mean and standard error of `τ[t]` (or `τ⁰[t]`) over realizations.
pub fn monte_carlo_tau(t: &TestGraph, ensemble: &Ensemble, dim: usize, samples: usize, seed: u64, injective: bool) -> Result<Estimate> {
    monte_carlo(ensemble, dim, samples, seed, |m| if injective { tau_injective_exact(t, m) } else { tau_exact(t, m) })
}

/// Two-sample Kolmogorov–Smirnov statistic and its asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let en = (n * m / (n + m)).sqrt();
    let lambda = (en + 0.12 + 0.11 / en) * d;
    if lambda < 0.3 {
        // the series converges slowly here and Q_KS(0.3) = 1 to 5 digits
        return (d, 1.0);
    }
    // Q_KS(λ) = 2 Σ (-1)^{k-1} exp(-2 k² λ²)
    let mut p = 0.0;
    for k in 1..=100 {
        let term = 2.0 * (-1f64).powi(k - 1) * (-2.0 * (k as f64 * lambda).powi(2)).exp();
        p += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    (d, p.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Label;

    #[test]
    fn estimate_basics() {
        let e = Estimate::from_samples(&[Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)]).unwrap();
        assert_eq!(e.mean, Complex64::new(2.0, 0.0));
        assert!((e.stderr - 1.0).abs() < 1e-15);
        assert!((e.z_score(Complex64::new(0.0, 0.0)) - 2.0).abs() < 1e-15);
        let flat = Estimate::from_samples(&[Complex64::new(1.0, 0.0); 3]).unwrap();
        assert_eq!(flat.z_score(Complex64::new(1.0, 0.0)), 0.0);
        assert_eq!(flat.z_score(Complex64::new(1.1, 0.0)), f64::INFINITY);
        assert!(Estimate::from_samples(&[Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn unitary_two_cycle_is_exactly_one() {
        let t = TestGraph::word_cycle(&[Label::new("u"), Label::starred("u")]).unwrap();
        let e = monte_carlo_tau(&t, &Ensemble::haar("u"), 20, 10, 3, false).unwrap();
        assert!((e.mean - 1.0).norm() < 1e-12);
        assert_eq!(e.stderr, 0.0);
        assert_eq!(e.z_score(Complex64::new(1.0, 0.0)), 0.0);
    }

    #[test]
    fn ks_detects_shift() {
        let a: Vec<f64> = (0..200).map(|i| i as f64 / 200.0).collect();
        let b: Vec<f64> = (0..200).map(|i| i as f64 / 200.0 + 0.5).collect();
        let (d, p) = ks_two_sample(&a, &b);
        assert!(d > 0.45 && p < 1e-6);
        let (d, p) = ks_two_sample(&a, &a);
        assert_eq!(d, 0.0);
        assert!(p > 0.99);
    }
}
