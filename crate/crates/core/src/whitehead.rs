//! Constructive factorisations into elementary letters.
//!
//! Each function returns a [`Certificate`]: a claimed matrix together with a word whose
//! product is computed exactly and compared against the claim.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::{same_ring, ElementaryGenerator, GradedMatrix, ShiftFamily};
use crate::ring::{GradedRing, HomogeneousElement, RingKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    /// `e` (`inverse = false`) or `e⁻¹`.
    Elementary { generator: ElementaryGenerator, inverse: bool },
    /// `S · e · S⁻¹`.
    Conjugated { by: ElementaryWord, generator: ElementaryGenerator },
}

impl Letter {
    fn generator(&self) -> &ElementaryGenerator {
        match self {
            Letter::Elementary { generator, .. } | Letter::Conjugated { generator, .. } => generator,
        }
    }

    pub fn evaluate(&self) -> Result<GradedMatrix> {
        match self {
            Letter::Elementary { generator, inverse: false } => Ok(generator.matrix()),
            Letter::Elementary { generator, inverse: true } => Ok(generator.inverse().matrix()),
            Letter::Conjugated { by, generator } => {
                by.evaluate()?.mul(&generator.matrix())?.mul(&by.inverse().evaluate()?)
            }
        }
    }

    fn inverse(&self) -> Letter {
        match self {
            Letter::Elementary { generator, inverse } => {
                Letter::Elementary { generator: generator.clone(), inverse: !inverse }
            }
            Letter::Conjugated { by, generator } => {
                Letter::Conjugated { by: by.clone(), generator: generator.inverse() }
            }
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Elementary { generator, inverse: false } => write!(f, "{generator}"),
            Letter::Elementary { generator, inverse: true } => write!(f, "{generator}^-1"),
            Letter::Conjugated { by, generator } => write!(f, "[{by}] {generator} [{by}]^-1"),
        }
    }
}

/// A word in elementary letters over one ring and shift family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryWord {
    ring: Arc<GradedRing>,
    family: ShiftFamily,
    letters: Vec<Letter>,
}

impl ElementaryWord {
    pub fn new(ring: &Arc<GradedRing>, family: &ShiftFamily) -> Self {
        ElementaryWord { ring: ring.clone(), family: family.clone(), letters: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        let g = letter.generator();
        if g.family() != &self.family {
            return Err(Error::FamilyMismatch);
        }
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if let Letter::Conjugated { by, .. } = &letter {
            if by.family != self.family {
                return Err(Error::FamilyMismatch);
            }
        }
        self.letters.push(letter);
        Ok(())
    }

    pub fn push_generator(&mut self, generator: ElementaryGenerator) -> Result<()> {
        self.push(Letter::Elementary { generator, inverse: false })
    }

    /// Appends `e_{i,j}(r)` unless `r = 0`.
    pub fn push_entry(&mut self, i: usize, j: usize, r: HomogeneousElement) -> Result<()> {
        if self.ring.is_zero(&r) {
            return Ok(());
        }
        let g = ElementaryGenerator::new(&self.ring, &self.family, i, j, r)?;
        self.push_generator(g)
    }

    /// Appends the four letters of `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn push_commutator(&mut self, a: &ElementaryGenerator, b: &ElementaryGenerator) -> Result<()> {
        self.push(Letter::Elementary { generator: a.clone(), inverse: false })?;
        self.push(Letter::Elementary { generator: b.clone(), inverse: false })?;
        self.push(Letter::Elementary { generator: a.clone(), inverse: true })?;
        self.push(Letter::Elementary { generator: b.clone(), inverse: true })
    }

    pub fn extend(&mut self, other: &ElementaryWord) -> Result<()> {
        for l in &other.letters {
            self.push(l.clone())?;
        }
        Ok(())
    }

    pub fn inverse(&self) -> ElementaryWord {
        ElementaryWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
            ..self.clone()
        }
    }

    pub fn evaluate(&self) -> Result<GradedMatrix> {
        let mut acc = GradedMatrix::identity(&self.ring, &self.family);
        for l in &self.letters {
            acc = acc.mul(&l.evaluate()?)?;
        }
        Ok(acc)
    }

    /// Upper-right block unipotent `(I M; 0 I)`: letters `e_{i, n+j}(M_ij)`.
    fn push_upper<F>(&mut self, n: usize, mut m: F) -> Result<()>
    where
        F: FnMut(usize, usize) -> Result<HomogeneousElement>,
    {
        for i in 0..n {
            for j in 0..n {
                self.push_entry(i, n + j, m(i, j)?)?;
            }
        }
        Ok(())
    }

    /// Lower-left block unipotent `(I 0; M I)`: letters `e_{n+i, j}(M_ij)`.
    fn push_lower<F>(&mut self, n: usize, mut m: F) -> Result<()>
    where
        F: FnMut(usize, usize) -> Result<HomogeneousElement>,
    {
        for i in 0..n {
            for j in 0..n {
                self.push_entry(n + i, j, m(i, j)?)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ElementaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    claim: GradedMatrix,
    word: ElementaryWord,
    verified: bool,
}

impl Certificate {
    /// Multiplies out `word` and compares with `claim`.
    pub fn check(claim: GradedMatrix, word: ElementaryWord) -> Result<Self> {
        let verified = word.evaluate()? == claim;
        Ok(Certificate { claim, word, verified })
    }

    pub fn claim(&self) -> &GradedMatrix {
        &self.claim
    }

    pub fn word(&self) -> &ElementaryWord {
        &self.word
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    /// Recomputes the product from scratch.
    pub fn reverify(&self) -> Result<bool> {
        Ok(self.word.evaluate()? == self.claim)
    }

    /// One line per letter.
    pub fn describe(&self) -> Vec<String> {
        self.word.letters.iter().map(|l| format!("{l}")).collect()
    }
}

fn require_degree_zero(m: &GradedMatrix) -> Result<()> {
    if m.degree().is_zero() {
        Ok(())
    } else {
        Err(Error::Unsupported("factorisations need degree-0 matrices".into()))
    }
}

/// `diag(h, h⁻¹) = (I h; 0 I)(I 0; −h⁻¹ I)(I h; 0 I)(0 −I; I 0)` over `(α, α)`.
pub fn hyperbolic_factorization(h: &GradedMatrix) -> Result<Certificate> {
    require_degree_zero(h)?;
    let hinv = h.invert()?;
    let ring = h.ring();
    let family = h.family().concat(h.family())?;
    let mut w = ElementaryWord::new(ring, &family);
    push_hyperbolic(&mut w, h, &hinv)?;
    Certificate::check(h.block_diag(&hinv)?, w)
}

fn push_hyperbolic(w: &mut ElementaryWord, h: &GradedMatrix, hinv: &GradedMatrix) -> Result<()> {
    let ring = h.ring().clone();
    let n = h.n();
    w.push_upper(n, |i, j| Ok(h.entry(i, j).clone()))?;
    w.push_lower(n, |i, j| Ok(ring.neg(hinv.entry(i, j))))?;
    w.push_upper(n, |i, j| Ok(h.entry(i, j).clone()))?;
    let one = ring.one();
    let unit = |i: usize, j: usize, v: HomogeneousElement| {
        if i == j {
            Ok(v)
        } else {
            Ok(ring.zero(&h.family().difference(i, j)))
        }
    };
    // (0 −I; I 0) = (I −I; 0 I)(I 0; I I)(I −I; 0 I)
    w.push_upper(n, |i, j| unit(i, j, ring.neg(&one)))?;
    w.push_lower(n, |i, j| unit(i, j, one.clone()))?;
    w.push_upper(n, |i, j| unit(i, j, ring.neg(&one)))
}

/// `diag([g, h], I) = diag(gh, (gh)⁻¹) · diag(g⁻¹, g) · diag(h⁻¹, h)`.
pub fn commutator_embedding(g: &GradedMatrix, h: &GradedMatrix) -> Result<Certificate> {
    require_degree_zero(g)?;
    require_degree_zero(h)?;
    if g.family() != h.family() {
        return Err(Error::FamilyMismatch);
    }
    let ginv = g.invert()?;
    let hinv = h.invert()?;
    let gh = g.mul(h)?;
    let ghinv = hinv.mul(&ginv)?;
    let family = g.family().concat(g.family())?;
    let mut w = ElementaryWord::new(g.ring(), &family);
    push_hyperbolic(&mut w, &gh, &ghinv)?;
    push_hyperbolic(&mut w, &ginv, g)?;
    push_hyperbolic(&mut w, &hinv, h)?;
    let comm = gh.mul(&ginv)?.mul(&hinv)?;
    let claim = comm.block_diag(&GradedMatrix::identity(g.ring(), g.family()))?;
    Certificate::check(claim, w)
}

/// `e_{i,j}(r) = [e_{i,n+j}(r), e_{n+j,j}(1)]` after doubling the family.
pub fn stable_perfectness_witness(gen: &ElementaryGenerator) -> Result<Certificate> {
    let ring = gen.ring();
    let n = gen.family().len();
    let family = gen.family().repeated(2)?;
    let (i, j) = (gen.row(), gen.col());
    let mut w = ElementaryWord::new(ring, &family);
    if !ring.is_zero(gen.entry()) {
        let a = ElementaryGenerator::new(ring, &family, i, n + j, gen.entry().clone())?;
        let b = ElementaryGenerator::new(ring, &family, n + j, j, ring.one())?;
        w.push_commutator(&a, &b)?;
    }
    Certificate::check(gen.matrix().stabilize(2)?, w)
}

/// `e_{i,j}(r) = Π_l [e_{i,k}(r·s_l), e_{k,j}(t_l)]` from a strong-grading witness
/// `Σ s_l t_l = 1` in degree `α_k − α_j`. Without an explicit `k` the smallest index
/// other than `i` and `j` is used.
pub fn strongly_graded_perfectness_witness(
    gen: &ElementaryGenerator,
    k: Option<usize>,
) -> Result<Certificate> {
    let ring = gen.ring();
    let family = gen.family();
    let (i, j) = (gen.row(), gen.col());
    if family.len() < 3 {
        return Err(Error::InvalidParameter("family needs at least three shifts".into()));
    }
    let k = match k {
        Some(k) if k == i || k == j || k >= family.len() => return Err(Error::InvalidIndex(i, k)),
        Some(k) => k,
        None => (0..family.len()).find(|&k| k != i && k != j).expect("n >= 3"),
    };
    let mut w = ElementaryWord::new(ring, family);
    if !ring.is_zero(gen.entry()) {
        let witness = ring.strong_grading_witness(&family.difference(k, j))?;
        for (s, t) in witness {
            let a = ElementaryGenerator::new(ring, family, i, k, ring.mul(gen.entry(), &s)?)?;
            let b = ElementaryGenerator::new(ring, family, k, j, t)?;
            w.push_commutator(&a, &b)?;
        }
    }
    Certificate::check(gen.matrix(), w)
}

fn unit_inverse(ring: &GradedRing, r: &HomogeneousElement) -> Result<HomogeneousElement> {
    ring.unit_inverse(r).ok_or(Error::NotAUnit)
}

/// `(0 −r⁻¹I; rI 0) = (I −r⁻¹I; 0 I)(I 0; rI I)(I −r⁻¹I; 0 I)` over `(α, λ+α)`, `λ = deg r`.
pub fn rotation_factorization(
    ring: &Arc<GradedRing>,
    r: &HomogeneousElement,
    family: &ShiftFamily,
) -> Result<Certificate> {
    ring.validate(r)?;
    let rinv = unit_inverse(ring, r)?;
    let combined = family.concat(&family.shifted(r.degree())?)?;
    let n = family.len();
    let mut w = ElementaryWord::new(ring, &combined);
    push_rotation(&mut w, ring, r, &rinv, n)?;
    let zero_deg = crate::grading::GradeElement::zero(ring.grading());
    let claim = GradedMatrix::from_fn(ring, &combined, &zero_deg, |i, j, deg| {
        Ok(if j >= n && j - n == i {
            ring.neg(&rinv)
        } else if i >= n && i - n == j {
            r.clone()
        } else {
            ring.zero(deg)
        })
    })?;
    Certificate::check(claim, w)
}

fn push_rotation(
    w: &mut ElementaryWord,
    ring: &Arc<GradedRing>,
    r: &HomogeneousElement,
    rinv: &HomogeneousElement,
    n: usize,
) -> Result<()> {
    let family = w.family().clone();
    let diag = |i: usize, j: usize, v: &HomogeneousElement, upper: bool| {
        if i == j {
            Ok(v.clone())
        } else if upper {
            Ok(ring.zero(&family.difference(i, n + j)))
        } else {
            Ok(ring.zero(&family.difference(n + i, j)))
        }
    };
    let neg_rinv = ring.neg(rinv);
    w.push_upper(n, |i, j| diag(i, j, &neg_rinv, true))?;
    w.push_lower(n, |i, j| diag(i, j, r, false))?;
    w.push_upper(n, |i, j| diag(i, j, &neg_rinv, true))
}

/// `diag(h, r h⁻¹ r⁻¹) = (I hr⁻¹; 0 I)(I 0; −rh⁻¹ I)(I hr⁻¹; 0 I) · (0 −r⁻¹I; rI 0)`.
pub fn conjugate_block_factorization(h: &GradedMatrix, r: &HomogeneousElement) -> Result<Certificate> {
    require_degree_zero(h)?;
    let ring = h.ring();
    ring.validate(r)?;
    let rinv = unit_inverse(ring, r)?;
    let hinv = h.invert()?;
    let n = h.n();
    let shifted = h.family().shifted(r.degree())?;
    let combined = h.family().concat(&shifted)?;
    let mut w = ElementaryWord::new(ring, &combined);
    w.push_upper(n, |i, j| ring.mul(h.entry(i, j), &rinv))?;
    w.push_lower(n, |i, j| Ok(ring.neg(&ring.mul(r, hinv.entry(i, j))?)))?;
    w.push_upper(n, |i, j| ring.mul(h.entry(i, j), &rinv))?;
    push_rotation(&mut w, ring, r, &rinv, n)?;
    let conj = GradedMatrix::from_fn(ring, &shifted, h.degree(), |i, j, _| {
        ring.mul(&ring.mul(r, hinv.entry(i, j))?, &rinv)
    })?;
    Certificate::check(h.block_diag(&conj)?, w)
}

/// Rewrites `(1, g) = Π e_{i_k,j_k}(a_k, b_k)` over the double as
/// `g = Π_k P_k T_k P_k⁻¹` with `P_k = S_1⋯S_k`, `S_k = e(a_k)`, `T_k = e(b_k − a_k)`.
pub fn relative_rewrite(word: &ElementaryWord, g: &GradedMatrix) -> Result<Certificate> {
    let double = word.ring();
    let (base, ideal) = match double.kind() {
        RingKind::Double { base, ideal } => (base, ideal),
        _ => return Err(Error::Unsupported("relative rewrite needs a word over a double".into())),
    };
    if !same_ring(base, g.ring()) {
        return Err(Error::RingMismatch);
    }
    if word.family() != g.family() {
        return Err(Error::FamilyMismatch);
    }
    let family = g.family();
    let mut s_letters = Vec::with_capacity(word.len());
    let mut t_letters = Vec::with_capacity(word.len());
    for l in word.letters() {
        let gen = match l {
            Letter::Elementary { generator, inverse: false } => generator.clone(),
            Letter::Elementary { generator, inverse: true } => generator.inverse(),
            Letter::Conjugated { .. } => {
                return Err(Error::Unsupported("relative rewrite takes plain elementary letters".into()))
            }
        };
        let a = double.project(gen.entry(), true)?;
        let b = double.project(gen.entry(), false)?;
        let diff = base.sub(&b, &a)?;
        if !ideal.contains(&diff) {
            return Err(Error::Precondition("letter entries differ outside the ideal".into()));
        }
        s_letters.push(ElementaryGenerator::new(base, family, gen.row(), gen.col(), a)?);
        t_letters.push(ElementaryGenerator::new(base, family, gen.row(), gen.col(), diff)?);
    }
    let mut first = ElementaryWord::new(base, family);
    let mut second = ElementaryWord::new(base, family);
    for (s, t) in s_letters.iter().zip(&t_letters) {
        first.push_generator(s.clone())?;
        second.push_generator(s.clone())?;
        second.push_generator(t.clone())?;
    }
    if !first.evaluate()?.is_identity() {
        return Err(Error::Precondition("first projection of the word is not the identity".into()));
    }
    if second.evaluate()? != *g {
        return Err(Error::Precondition("second projection of the word is not g".into()));
    }
    let mut out = ElementaryWord::new(base, family);
    let mut prefix = ElementaryWord::new(base, family);
    for (s, t) in s_letters.into_iter().zip(t_letters) {
        prefix.push_generator(s)?;
        if !base.is_zero(t.entry()) {
            out.push(Letter::Conjugated { by: prefix.clone(), generator: t })?;
        }
    }
    Certificate::check(g.clone(), out)
}
