//! Tracial moment functionals `Φ` on words in starred letters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;

use super::cumulant::Cumulants;
use crate::combinatorics::nc_partitions;
use crate::error::{Error, Result};
use crate::graph::{format_word, Label};
use crate::matrix::{ComplexMatrix, MatrixFamily};

pub const DEFAULT_DEGREE: usize = 8;

/// A tracial state on the algebra generated by some letters, evaluated on
/// words: `moment(w) = Φ(w_1 w_2 ⋯ w_n)`, with `Φ(empty) = 1`.
pub trait MomentFunctional: Send + Sync {
    fn moment(&self, word: &[Label]) -> Result<Complex64>;

    fn is_letter(&self, name: &str) -> bool;

    /// Longest word the functional can evaluate, if bounded.
    fn degree_cap(&self) -> Option<usize> {
        None
    }
}

impl<F: MomentFunctional + ?Sized> MomentFunctional for Arc<F> {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        (**self).moment(word)
    }
    fn is_letter(&self, name: &str) -> bool {
        (**self).is_letter(name)
    }
    fn degree_cap(&self) -> Option<usize> {
        (**self).degree_cap()
    }
}

impl<F: MomentFunctional + ?Sized> MomentFunctional for &F {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        (**self).moment(word)
    }
    fn is_letter(&self, name: &str) -> bool {
        (**self).is_letter(name)
    }
    fn degree_cap(&self) -> Option<usize> {
        (**self).degree_cap()
    }
}

/// `w*`: reversed, every star toggled.
pub fn word_adjoint(word: &[Label]) -> Vec<Label> {
    word.iter().rev().map(Label::adjoint).collect()
}

fn check_letters(phi: &(impl MomentFunctional + ?Sized), word: &[Label]) -> Result<()> {
    match word.iter().find(|l| !phi.is_letter(&l.name)) {
        Some(l) => Err(Error::UnresolvedLabel(l.name.clone())),
        None => Ok(()),
    }
}

/// Finite table of moments up to a degree cap, stored once per rotation
/// class. Self-adjoint letters lose their stars.
#[derive(Clone, Debug)]
pub struct MomentTable {
    letters: BTreeSet<String>,
    selfadjoint: BTreeSet<String>,
    degree: usize,
    moments: HashMap<Vec<Label>, Complex64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SelfAdjointSpec {
    Map(BTreeMap<String, bool>),
    List(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDocument {
    letters: Vec<String>,
    #[serde(default)]
    selfadjoint: Option<SelfAdjointSpec>,
    #[serde(default)]
    degree: Option<usize>,
    moments: BTreeMap<String, [f64; 2]>,
}

const TABLE_TOLERANCE: f64 = 1e-12;

impl MomentTable {
    pub fn new(letters: impl IntoIterator<Item = impl Into<String>>, selfadjoint: impl IntoIterator<Item = impl Into<String>>, degree: usize) -> Result<Self> {
        let letters: BTreeSet<String> = letters.into_iter().map(Into::into).collect();
        let selfadjoint: BTreeSet<String> = selfadjoint.into_iter().map(Into::into).collect();
        if let Some(s) = selfadjoint.iter().find(|s| !letters.contains(*s)) {
            return Err(Error::UnresolvedLabel(s.clone()));
        }
        for l in &letters {
            l.parse::<Label>().map_err(|_| Error::InvalidArgument(format!("invalid letter `{l}`")))?;
        }
        Ok(Self { letters, selfadjoint, degree, moments: HashMap::new() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDocument = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("moment table: {e}")))?;
        let selfadjoint: Vec<String> = match doc.selfadjoint {
            None => Vec::new(),
            Some(SelfAdjointSpec::List(v)) => v,
            Some(SelfAdjointSpec::Map(m)) => m.into_iter().filter(|(_, b)| *b).map(|(k, _)| k).collect(),
        };
        let mut table = Self::new(doc.letters, selfadjoint, doc.degree.unwrap_or(DEFAULT_DEGREE))?;
        for (word, [re, im]) in doc.moments {
            let w = table.parse_word(&word)?;
            table.insert(&w, Complex64::new(re, im))?;
        }
        Ok(table)
    }

    /// Tabulates `phi` on every word of length `1..=degree` in `letters`.
    pub fn from_functional(phi: &dyn MomentFunctional, letters: &[Label], selfadjoint: &[&str], degree: usize) -> Result<Self> {
        let names: BTreeSet<String> = letters.iter().map(|l| l.name.clone()).collect();
        let mut table = Self::new(names, selfadjoint.iter().copied(), degree)?;
        let mut words: Vec<Vec<Label>> = vec![vec![]];
        for _ in 0..degree {
            words = words.iter().flat_map(|w| letters.iter().map(move |l| [w.as_slice(), std::slice::from_ref(l)].concat())).collect();
            for w in &words {
                if !table.moments.contains_key(&table.canonical(w)) {
                    table.insert(w, phi.moment(w)?)?;
                }
            }
        }
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &BTreeSet<String> {
        &self.letters
    }

    pub fn is_selfadjoint(&self, letter: &str) -> bool {
        self.selfadjoint.contains(letter)
    }

    /// Splits concatenated tokens, longest declared letter first, each
    /// optionally followed by `*`. Whitespace separates nothing.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Label>> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut word = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let best = self
                .letters
                .iter()
                .filter(|l| {
                    let lc: Vec<char> = l.chars().collect();
                    chars[i..].starts_with(&lc)
                })
                .max_by_key(|l| l.chars().count())
                .ok_or_else(|| Error::UnresolvedLabel(chars[i..].iter().collect()))?;
            i += best.chars().count();
            let star = chars.get(i) == Some(&'*');
            if star {
                i += 1;
            }
            word.push(Label { name: best.clone(), star });
        }
        Ok(word)
    }

    fn normalize(&self, word: &[Label]) -> Vec<Label> {
        word.iter().map(|l| if self.selfadjoint.contains(&l.name) { Label::new(l.name.clone()) } else { l.clone() }).collect()
    }

    /// Lexicographically least rotation of the normalized word.
    fn canonical(&self, word: &[Label]) -> Vec<Label> {
        let w = self.normalize(word);
        if w.is_empty() {
            return w;
        }
        (0..w.len()).map(|r| [&w[r..], &w[..r]].concat()).min().expect("nonempty")
    }

    /// Records `Φ(word)` and, by conjugate symmetry, `Φ(word*)`. Rotations of
    /// a recorded word must carry the same value.
    pub fn insert(&mut self, word: &[Label], value: Complex64) -> Result<()> {
        check_letters(self, word)?;
        if word.len() > self.degree {
            return Err(Error::CapExceeded { size: word.len(), cap: self.degree });
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::InvalidArgument(format!("moment of `{}` is not finite", format_word(word))));
        }
        if word.is_empty() {
            if (value - 1.0).norm() > TABLE_TOLERANCE {
                return Err(Error::InvalidArgument("the empty word must have moment 1".into()));
            }
            return Ok(());
        }
        let close = |a: Complex64, b: Complex64| (a - b).norm() <= TABLE_TOLERANCE * (1.0 + a.norm().max(b.norm()));
        let key = self.canonical(word);
        if let Some(&old) = self.moments.get(&key) {
            if !close(old, value) {
                return Err(Error::NotTracial(format_word(word), format_word(&key)));
            }
        }
        let adj_key = self.canonical(&word_adjoint(word));
        if let Some(&old) = self.moments.get(&adj_key) {
            if !close(old, value.conj()) {
                return Err(Error::InvalidArgument(format!(
                    "moments of `{}` and its adjoint `{}` are not conjugate",
                    format_word(word),
                    format_word(&adj_key)
                )));
            }
        }
        self.moments.insert(key, value);
        self.moments.entry(adj_key).or_insert(value.conj());
        Ok(())
    }

    /// Entries as `(word, value)`, one per rotation class, sorted.
    pub fn entries(&self) -> Vec<(Vec<Label>, Complex64)> {
        let mut v: Vec<_> = self.moments.iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        v
    }
}

impl MomentFunctional for MomentTable {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        check_letters(self, word)?;
        if word.is_empty() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if word.len() > self.degree {
            return Err(Error::CapExceeded { size: word.len(), cap: self.degree });
        }
        self.moments.get(&self.canonical(word)).copied().ok_or_else(|| Error::MissingMoment(format_word(word)))
    }

    fn is_letter(&self, name: &str) -> bool {
        self.letters.contains(name)
    }

    fn degree_cap(&self) -> Option<usize> {
        Some(self.degree)
    }
}

/// Free semicircular and circular elements, described by the covariance
/// `κ₂`; every higher cumulant vanishes.
#[derive(Clone, Debug, Default)]
pub struct FreeGaussian {
    selfadjoint: BTreeSet<String>,
    letters: BTreeSet<String>,
    covariance: BTreeMap<(Label, Label), Complex64>,
}

impl FreeGaussian {
    pub fn new() -> Self {
        Self::default()
    }

    /// The standard semicircle: self-adjoint, `κ₂(s, s) = 1`.
    pub fn semicircle(name: &str) -> Self {
        Self::new().with_semicircle(name)
    }

    pub fn with_semicircle(mut self, name: &str) -> Self {
        self.letters.insert(name.into());
        self.selfadjoint.insert(name.into());
        self.covariance.insert((Label::new(name), Label::new(name)), Complex64::new(1.0, 0.0));
        self
    }

    /// Circular element: `κ₂(c, c*) = κ₂(c*, c) = 1`, other pairings vanish.
    pub fn with_circular(mut self, name: &str) -> Self {
        self.letters.insert(name.into());
        self.covariance.insert((Label::new(name), Label::starred(name)), Complex64::new(1.0, 0.0));
        self.covariance.insert((Label::starred(name), Label::new(name)), Complex64::new(1.0, 0.0));
        self
    }

    /// Sets `κ₂(a, b) = κ₂(b, a) = value` for letters already declared.
    pub fn with_covariance(mut self, a: Label, b: Label, value: Complex64) -> Result<Self> {
        for l in [&a, &b] {
            if !self.letters.contains(&l.name) {
                return Err(Error::UnresolvedLabel(l.name.clone()));
            }
        }
        let (a, b) = (self.normalize(&a), self.normalize(&b));
        self.covariance.insert((a.clone(), b.clone()), value);
        self.covariance.insert((b, a), value);
        Ok(self)
    }

    fn normalize(&self, l: &Label) -> Label {
        if self.selfadjoint.contains(&l.name) {
            Label::new(l.name.clone())
        } else {
            l.clone()
        }
    }

    pub fn kappa2(&self, a: &Label, b: &Label) -> Complex64 {
        self.covariance.get(&(self.normalize(a), self.normalize(b))).copied().unwrap_or_default()
    }

    fn pairings(&self, word: &[Label]) -> Complex64 {
        if word.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        if word.len() % 2 == 1 {
            return Complex64::new(0.0, 0.0);
        }
        // first letter paired with an odd position keeps the pairing noncrossing
        (1..word.len())
            .step_by(2)
            .map(|k| {
                let c = self.kappa2(&word[0], &word[k]);
                if c == Complex64::new(0.0, 0.0) {
                    c
                } else {
                    c * self.pairings(&word[1..k]) * self.pairings(&word[k + 1..])
                }
            })
            .sum()
    }
}

impl MomentFunctional for FreeGaussian {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        check_letters(self, word)?;
        Ok(self.pairings(word))
    }

    fn is_letter(&self, name: &str) -> bool {
        self.letters.contains(name)
    }
}

/// A Haar unitary `u`: `Φ(w) = 1` when `w` has as many `u` as `u*`, else 0.
#[derive(Clone, Debug)]
pub struct HaarUnitaryLetter {
    name: String,
}

impl HaarUnitaryLetter {
    pub fn new(name: &str) -> Self {
        Self { name: name.into() }
    }
}

impl MomentFunctional for HaarUnitaryLetter {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        check_letters(self, word)?;
        let stars = word.iter().filter(|l| l.star).count();
        Ok(Complex64::new(if 2 * stars == word.len() { 1.0 } else { 0.0 }, 0.0))
    }

    fn is_letter(&self, name: &str) -> bool {
        name == self.name
    }
}

/// Adds a letter standing for the unit `1_A` to another functional.
pub struct WithUnit<F> {
    inner: F,
    unit: String,
}

impl<F: MomentFunctional> WithUnit<F> {
    pub fn new(inner: F, unit: &str) -> Self {
        Self { inner, unit: unit.into() }
    }
}

impl<F: MomentFunctional> MomentFunctional for WithUnit<F> {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        check_letters(self, word)?;
        let rest: Vec<Label> = word.iter().filter(|l| l.name != self.unit).cloned().collect();
        self.inner.moment(&rest)
    }

    fn is_letter(&self, name: &str) -> bool {
        name == self.unit || self.inner.is_letter(name)
    }

    fn degree_cap(&self) -> Option<usize> {
        self.inner.degree_cap()
    }
}

/// Free product of functionals on disjoint letter sets: mixed free cumulants
/// vanish, so `Φ(w) = Σ_{π ∈ NC(n)} Π_B κ(w|B)` with only monochromatic
/// blocks contributing.
pub struct FreeProductMoments {
    parts: Vec<Arc<dyn MomentFunctional>>,
}

impl FreeProductMoments {
    pub fn new(parts: Vec<Arc<dyn MomentFunctional>>) -> Self {
        Self { parts }
    }

    fn part_of(&self, name: &str) -> Result<usize> {
        self.parts.iter().position(|p| p.is_letter(name)).ok_or_else(|| Error::UnresolvedLabel(name.into()))
    }
}

impl MomentFunctional for FreeProductMoments {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        let owner: Vec<usize> = word.iter().map(|l| self.part_of(&l.name)).collect::<Result<_>>()?;
        if word.is_empty() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let mut caches: Vec<Cumulants> = self.parts.iter().map(|p| Cumulants::new(p.as_ref())).collect();
        let mut total = Complex64::new(0.0, 0.0);
        'partitions: for pi in nc_partitions(word.len())? {
            let mut term = Complex64::new(1.0, 0.0);
            for block in pi.blocks() {
                let part = owner[block[0]];
                if block.iter().any(|&i| owner[i] != part) {
                    continue 'partitions;
                }
                let sub: Vec<Label> = block.iter().map(|&i| word[i].clone()).collect();
                term *= caches[part].get(&sub)?;
                if term == Complex64::new(0.0, 0.0) {
                    continue 'partitions;
                }
            }
            total += term;
        }
        Ok(total)
    }

    fn is_letter(&self, name: &str) -> bool {
        self.parts.iter().any(|p| p.is_letter(name))
    }

    fn degree_cap(&self) -> Option<usize> {
        self.parts.iter().filter_map(|p| p.degree_cap()).min()
    }
}

/// Normalized trace `Tr(A_{w_1} ⋯ A_{w_n}) / N` of a matrix family.
#[derive(Clone, Debug)]
pub struct MatrixMoments {
    family: MatrixFamily,
}

impl MatrixMoments {
    pub fn new(family: MatrixFamily) -> Result<Self> {
        if family.dim().is_none() {
            return Err(Error::InvalidArgument("empty matrix family".into()));
        }
        Ok(Self { family })
    }
}

impl MomentFunctional for MatrixMoments {
    fn moment(&self, word: &[Label]) -> Result<Complex64> {
        let n = self.family.dim().expect("nonempty family");
        let mut prod = ComplexMatrix::identity(n, n);
        for l in word {
            prod *= self.family.resolve(l)?;
        }
        Ok(prod.trace() / n as f64)
    }

    fn is_letter(&self, name: &str) -> bool {
        self.family.get(name).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_word;

    fn w(s: &str) -> Vec<Label> {
        parse_word(s).unwrap()
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let s = FreeGaussian::semicircle("s");
        let expected = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0];
        for (n, &m) in expected.iter().enumerate() {
            assert_eq!(s.moment(&vec![Label::new("s"); n]).unwrap(), Complex64::new(m, 0.0));
        }
        assert_eq!(s.moment(&w("ss*")).unwrap(), Complex64::new(1.0, 0.0));
        assert!(s.moment(&w("sx")).is_err());
    }

    #[test]
    fn circular_moments() {
        let c = FreeGaussian::new().with_circular("c");
        assert_eq!(c.moment(&w("cc")).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(c.moment(&w("cc*")).unwrap(), Complex64::new(1.0, 0.0));
        // Φ((cc*)²) = 2, Φ(c c c* c*) = 1
        assert_eq!(c.moment(&w("cc*cc*")).unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(c.moment(&w("ccc*c*")).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn haar_letter() {
        let u = HaarUnitaryLetter::new("u");
        assert_eq!(u.moment(&w("uu*")).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(u.moment(&w("uu")).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(u.moment(&[]).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn table_ingest_and_validation() {
        let json = r#"{"letters": ["a", "b"], "selfadjoint": {"a": true, "b": false},
            "moments": {"a": [0.5, 0], "ab": [1, 2], "aa": [3, 0]}}"#;
        let t = MomentTable::from_json(json).unwrap();
        assert_eq!(t.moment(&w("ba")).unwrap(), Complex64::new(1.0, 2.0));
        // conjugate filled: (ab)* = b* a
        assert_eq!(t.moment(&w("b*a")).unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(t.moment(&w("a*")).unwrap(), Complex64::new(0.5, 0.0));
        assert!(matches!(t.moment(&w("bb")), Err(Error::MissingMoment(_))));
        let bad = r#"{"letters": ["a", "b"], "moments": {"ab": [1, 0], "ba": [2, 0]}}"#;
        assert!(matches!(MomentTable::from_json(bad), Err(Error::NotTracial(_, _))));
        let long = r#"{"letters": ["a"], "degree": 2, "moments": {"aaa": [1, 0]}}"#;
        assert!(matches!(MomentTable::from_json(long), Err(Error::CapExceeded { .. })));
        let multi = MomentTable::new(["x", "xy"], Vec::<String>::new(), 4).unwrap();
        assert_eq!(multi.parse_word("xyx*").unwrap(), vec![Label::new("xy"), Label::starred("x")]);
    }

    #[test]
    fn tabulated_functional_round_trips() {
        let s = FreeGaussian::semicircle("s");
        let t = MomentTable::from_functional(&s, &[Label::new("s")], &["s"], 8).unwrap();
        assert_eq!(t.moment(&vec![Label::new("s"); 8]).unwrap(), Complex64::new(14.0, 0.0));
        assert!(t.moment(&vec![Label::new("s"); 9]).is_err());
    }

    #[test]
    fn free_product_of_semicircles() {
        let fp = FreeProductMoments::new(vec![Arc::new(FreeGaussian::semicircle("a")), Arc::new(FreeGaussian::semicircle("b"))]);
        // a, b free semicircles: Φ(abab) = 0, Φ(aabb) = 1, Φ((a+b)^4) = 8
        assert_eq!(fp.moment(&w("abab")).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(fp.moment(&w("aabb")).unwrap(), Complex64::new(1.0, 0.0));
        let both = FreeGaussian::new().with_semicircle("a").with_semicircle("b");
        for word in ["abab", "aabb", "abba", "aaaabb", "abaabb"] {
            assert!((fp.moment(&w(word)).unwrap() - both.moment(&w(word)).unwrap()).norm() < 1e-12, "{word}");
        }
    }

    #[test]
    fn unit_letter_is_transparent() {
        let s = WithUnit::new(FreeGaussian::semicircle("s"), "e");
        assert_eq!(s.moment(&w("ses")).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(s.moment(&w("ee")).unwrap(), Complex64::new(1.0, 0.0));
    }
}
