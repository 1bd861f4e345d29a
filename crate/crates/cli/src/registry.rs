//! Ensemble specifications and the fixed registry of their limits: GUE letters
//! tend to free semicirculars, Haar letters to free Haar unitaries, and
//! jointly conjugated deterministic letters to a user moment table.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;
use traffic_core::graph::Coloring;
use traffic_core::matrix::family::{identity, ones};
use traffic_core::matrix::{Deterministic, Family, Law};
use traffic_core::traffic::{
    CactusLimit, FamilyFunctionals, FreeGaussian, FreeProduct, FreeProductMoments, HaarUnitaryLetter, MomentFunctional, MomentTable,
};
use traffic_core::{ComplexMatrix, Ensemble, TrafficFunctional};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterLaw {
    Gue,
    Haar,
    Conjugated,
}

fn parse_law(s: &str) -> CliResult<LetterLaw> {
    match s {
        "gue" => Ok(LetterLaw::Gue),
        "haar" | "haar_unitary" => Ok(LetterLaw::Haar),
        "conjugated" | "conjugated_deterministic" => Ok(LetterLaw::Conjugated),
        other => Err(CliError::usage("unknown_ensemble", format!("unknown ensemble `{other}` (expected gue, haar_unitary or conjugated_deterministic)"))),
    }
}

/// A law for every letter. Written either as one law for all letters
/// (`gue`) or per letter (`x=gue,u=haar_unitary`).
#[derive(Clone, Debug)]
pub struct EnsembleSpec {
    pub laws: BTreeMap<String, LetterLaw>,
}

impl EnsembleSpec {
    pub fn parse(spec: &str, letters: &BTreeSet<String>) -> CliResult<Self> {
        let spec = spec.trim();
        let mut laws = BTreeMap::new();
        if !spec.contains('=') {
            let law = parse_law(spec)?;
            for l in letters {
                laws.insert(l.clone(), law);
            }
            return Ok(Self { laws });
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (letter, law) =
                part.split_once('=').ok_or_else(|| CliError::usage("invalid_argument", format!("expected LETTER=LAW, found `{part}`")))?;
            if laws.insert(letter.trim().to_string(), parse_law(law.trim())?).is_some() {
                return Err(CliError::usage("invalid_argument", format!("letter `{}` assigned twice", letter.trim())));
            }
        }
        if let Some(l) = letters.iter().find(|l| !laws.contains_key(*l)) {
            return Err(traffic_core::Error::UnresolvedLabel(l.clone()).into());
        }
        Ok(Self { laws })
    }

    fn with_law(&self, law: LetterLaw) -> impl Iterator<Item = &String> {
        self.laws.iter().filter(move |(_, l)| **l == law).map(|(k, _)| k)
    }

    /// Random letters are independent; conjugated letters share one Haar
    /// unitary and need a deterministic matrix each.
    pub fn sampler(&self, fixed: &BTreeMap<String, Deterministic>) -> CliResult<Ensemble> {
        let mut families = Vec::new();
        for (letter, law) in &self.laws {
            match law {
                LetterLaw::Gue => families.push(Family::Random { letter: letter.clone(), law: Law::Gue }),
                LetterLaw::Haar => families.push(Family::Random { letter: letter.clone(), law: Law::HaarUnitary }),
                LetterLaw::Conjugated => {}
            }
        }
        let conjugated: Vec<(String, Deterministic)> = self
            .with_law(LetterLaw::Conjugated)
            .map(|l| {
                fixed
                    .get(l)
                    .cloned()
                    .map(|d| (l.clone(), d))
                    .ok_or_else(|| CliError::usage("missing_matrix", format!("conjugated letter `{l}` needs --matrix {l}=...")))
            })
            .collect::<CliResult<_>>()?;
        if !conjugated.is_empty() {
            families.push(Family::Conjugated { matrices: conjugated });
        }
        Ok(Ensemble { families })
    }

    /// Limiting moments of the letters accepted by `keep`.
    pub fn moments(&self, keep: impl Fn(&str) -> bool, table: Option<&MomentTable>) -> CliResult<Arc<dyn MomentFunctional>> {
        let mut parts: Vec<Arc<dyn MomentFunctional>> = Vec::new();
        let gue: Vec<&String> = self.with_law(LetterLaw::Gue).filter(|l| keep(l)).collect();
        if !gue.is_empty() {
            parts.push(Arc::new(gue.iter().fold(FreeGaussian::new(), |g, l| g.with_semicircle(l))));
        }
        for l in self.with_law(LetterLaw::Haar).filter(|l| keep(l)) {
            parts.push(Arc::new(HaarUnitaryLetter::new(l)));
        }
        let conjugated: Vec<&String> = self.with_law(LetterLaw::Conjugated).filter(|l| keep(l)).collect();
        if !conjugated.is_empty() {
            let table = table.ok_or_else(|| CliError::usage("missing_moments", "conjugated letters need a moment table (--moments)"))?;
            if let Some(l) = conjugated.iter().find(|l| !table.letters().contains(**l)) {
                return Err(CliError::usage("missing_moments", format!("the moment table has no letter `{l}`")));
            }
            parts.push(Arc::new(table.clone()));
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Arc::new(FreeProductMoments::new(parts)) })
    }

    /// `τ_Φ` of the limiting moments, or, given a coloring, the traffic free
    /// product of the per-family limits.
    pub fn limit(&self, table: Option<&MomentTable>, coloring: Option<&Coloring>) -> CliResult<Arc<dyn TrafficFunctional>> {
        let Some(coloring) = coloring else {
            return Ok(Arc::new(CactusLimit::new(self.moments(|_| true, table)?)));
        };
        let mut parts = FamilyFunctionals::new();
        for family in coloring.families() {
            let phi = self.moments(|l| coloring.family(l).is_ok_and(|f| f == family), table)?;
            parts.insert(family, Arc::new(CactusLimit::new(phi)));
        }
        Ok(Arc::new(FreeProduct::new(coloring.clone(), parts)))
    }
}

/// A matrix given on the command line as `LETTER=SOURCE`.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    /// `identity` (size from context) or `identity:N`.
    Identity(Option<usize>),
    Ones(usize),
    /// `diag:d1,d2,..`; the pattern repeats when a larger size is needed.
    Diag(Vec<Complex64>),
    /// A JSON file of rows of `[re, im]` pairs.
    Explicit(ComplexMatrix),
}

#[derive(Deserialize)]
#[serde(transparent)]
struct MatrixFile(Vec<Vec<[f64; 2]>>);

pub fn read_matrix(path: &str, text: &str) -> CliResult<ComplexMatrix> {
    let rows = serde_json::from_str::<MatrixFile>(text).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?.0;
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Io { path: path.into(), message: "empty matrix".into() });
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(traffic_core::Error::DimensionMismatch { expected: n, found: r.len() }.into());
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

fn size(s: &str, arg: &str) -> CliResult<usize> {
    s.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(|| CliError::usage("invalid_argument", format!("bad size in `{arg}`")))
}

pub fn parse_matrix_arg(arg: &str) -> CliResult<(String, Source)> {
    let (letter, source) = arg.split_once('=').ok_or_else(|| CliError::usage("invalid_argument", format!("expected LETTER=SOURCE, found `{arg}`")))?;
    let letter = letter.trim();
    if letter.parse::<traffic_core::Label>().map_or(true, |l| l.star) {
        return Err(CliError::usage("invalid_label", format!("invalid letter `{letter}`")));
    }
    let source = match source.split_once(':') {
        None if source == "identity" => Source::Identity(None),
        Some(("identity", n)) => Source::Identity(Some(size(n, arg)?)),
        Some(("ones", n)) => Source::Ones(size(n, arg)?),
        Some(("diag", values)) => {
            let d: Vec<Complex64> = values
                .split(',')
                .map(|v| v.trim().parse::<f64>().map(|x| Complex64::new(x, 0.0)))
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage("invalid_argument", format!("bad diagonal in `{arg}`")))?;
            Source::Diag(d)
        }
        _ => {
            let text = std::fs::read_to_string(source).map_err(|e| CliError::Io { path: source.into(), message: e.to_string() })?;
            Source::Explicit(read_matrix(source, &text)?)
        }
    };
    Ok((letter.to_string(), source))
}

impl Source {
    pub fn size(&self) -> Option<usize> {
        match self {
            Source::Identity(n) => *n,
            Source::Ones(n) => Some(*n),
            Source::Diag(d) => Some(d.len()),
            Source::Explicit(m) => Some(m.nrows()),
        }
    }

    pub fn matrix(&self, dim: usize) -> CliResult<ComplexMatrix> {
        if let Some(n) = self.size() {
            if n != dim {
                return Err(traffic_core::Error::DimensionMismatch { expected: dim, found: n }.into());
            }
        }
        Ok(match self {
            Source::Identity(_) => identity(dim),
            Source::Ones(n) => ones(*n),
            Source::Diag(d) => Deterministic::Diagonal(d.clone()).realize(dim)?,
            Source::Explicit(m) => m.clone(),
        })
    }

    /// Size-free sources (`identity`, `diag:..`) adapt to every `N`.
    pub fn deterministic(&self) -> Deterministic {
        match self {
            Source::Identity(_) => Deterministic::Diagonal(vec![Complex64::new(1.0, 0.0)]),
            Source::Diag(d) => Deterministic::Diagonal(d.clone()),
            Source::Ones(n) => Deterministic::Matrix(ones(*n)),
            Source::Explicit(m) => Deterministic::Matrix(m.clone()),
        }
    }
}
