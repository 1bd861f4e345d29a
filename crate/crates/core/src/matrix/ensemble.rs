use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::family::MatrixFamily;
use super::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// Hermitian, off-diagonal entries complex Gaussian with `E|X_ij|² = 1/N`,
    /// real diagonal with variance `1/N`.
    Gue,
    /// All entries independent complex Gaussian with `E|X_ij|² = 1/N`.
    Ginibre,
    /// Haar-distributed unitary.
    HaarUnitary,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Deterministic {
    /// Diagonal matrix whose entries repeat the pattern cyclically up to `N`.
    Diagonal(Vec<Complex64>),
    /// An explicit matrix; its size must equal `N`.
    Matrix(ComplexMatrix),
}

impl Deterministic {
    pub fn realize(&self, dim: usize) -> Result<ComplexMatrix> {
        match self {
            Deterministic::Diagonal(pattern) => {
                if pattern.is_empty() {
                    return Err(Error::InvalidArgument("empty diagonal pattern".into()));
                }
                Ok(ComplexMatrix::from_fn(dim, dim, |i, j| if i == j { pattern[i % pattern.len()] } else { Complex64::new(0.0, 0.0) }))
            }
            Deterministic::Matrix(m) => {
                if m.nrows() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: m.nrows() });
                }
                Ok(m.clone())
            }
        }
    }
}

/// A jointly independent group of letters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Random { letter: String, law: Law },
    /// `U D_i U*` for every letter, with one Haar `U` shared by the group.
    Conjugated { matrices: Vec<(String, Deterministic)> },
}

/// Independent families of random matrices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ensemble {
    pub families: Vec<Family>,
}

impl Ensemble {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(letter: &str, law: Law) -> Self {
        Self { families: vec![Family::Random { letter: letter.to_string(), law }] }
    }

    pub fn gue(letter: &str) -> Self {
        Self::single(letter, Law::Gue)
    }

    pub fn haar(letter: &str) -> Self {
        Self::single(letter, Law::HaarUnitary)
    }

    pub fn conjugated(matrices: Vec<(String, Deterministic)>) -> Self {
        Self { families: vec![Family::Conjugated { matrices }] }
    }

    /// Both ensembles, independent of each other.
    pub fn and(mut self, other: Ensemble) -> Self {
        self.families.extend(other.families);
        self
    }

    pub fn letters(&self) -> Vec<String> {
        self.families
            .iter()
            .flat_map(|f| match f {
                Family::Random { letter, .. } => vec![letter.clone()],
                Family::Conjugated { matrices } => matrices.iter().map(|(l, _)| l.clone()).collect(),
            })
            .collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> Result<MatrixFamily> {
        if dim == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        let mut out = MatrixFamily::new();
        for family in &self.families {
            match family {
                Family::Random { letter, law } => {
                    let m = match law {
                        Law::Gue => gue(dim, rng),
                        Law::Ginibre => ginibre(dim, rng),
                        Law::HaarUnitary => haar_unitary(dim, rng),
                    };
                    out.insert(letter.clone(), m)?;
                }
                Family::Conjugated { matrices } => {
                    let u = haar_unitary(dim, rng);
                    for (letter, d) in matrices {
                        out.insert(letter.clone(), &u * d.realize(dim)? * u.adjoint())?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Realization number `index` of the stream keyed by `seed`.
    pub fn sample_indexed(&self, dim: usize, seed: u64, index: u64) -> Result<MatrixFamily> {
        self.sample(dim, &mut stream_rng(seed, index))
    }
}

/// Independent generator for sample `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

pub fn gue<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let var = 1.0 / dim as f64;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        m[(i, i)] = Complex64::new(d * var.sqrt(), 0.0);
        for j in i + 1..dim {
            let z = complex_gaussian(rng, var);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let var = 1.0 / dim as f64;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = complex_gaussian(rng, var);
        }
    }
    m
}

/// QR of a Ginibre matrix with the phases of `diag(R)` moved into `Q`,
/// which makes the law of `Q` exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let qr = ginibre(dim, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}
