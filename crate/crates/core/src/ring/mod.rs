//! Graded rings `A = ⊕ A_λ` and their homogeneous elements.
//!
//! A [`GradedRing`] is an immutable descriptor; arithmetic is done through its methods
//! (`ring.add(&x, &y)`), elements carry only their degree and an exact payload. Every
//! homogeneous component of every supported kind is finite, which is what lets the
//! engine enumerate matrix groups.

mod ideal;

pub use ideal::GradedIdeal;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::arith::{add_mod, inv_mod, is_prime, mul_mod, neg_mod};
use crate::error::{Error, Result};
use crate::grading::{GradeElement, GradeGroup};

/// Largest homogeneous component the library will enumerate.
pub const MAX_COMPONENT_SIZE: u64 = 1 << 16;

/// Exact data of a homogeneous element; its meaning depends on the ring kind.
///
/// * `Residue` – a residue mod m (trivial and pair rings), or the coefficient `c` of a
///   Laurent monomial `c·x^k` whose exponent is the degree.
/// * `Coeffs` – group-ring coefficients indexed by the group elements of the degree's fibre.
/// * `Pair` – an element `(x, y)` of a double.
///
/// Quotient rings reuse the payload of their base ring, always the least coset member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Payload {
    Residue(u64),
    Coeffs(Vec<u64>),
    Pair(Box<Payload>, Box<Payload>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomogeneousElement {
    degree: GradeElement,
    payload: Payload,
}

impl HomogeneousElement {
    /// Unvalidated constructor; use [`GradedRing::element`] to check membership.
    pub fn from_parts(degree: GradeElement, payload: Payload) -> Self {
        HomogeneousElement { degree, payload }
    }

    pub fn degree(&self) -> &GradeElement {
        &self.degree
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn into_parts(self) -> (GradeElement, Payload) {
        (self.degree, self.payload)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    /// `Z/m` concentrated in degree 0.
    Trivial { modulus: u64 },
    /// `F_p[x, x⁻¹]` graded by `Z` with `deg x = 1`.
    Laurent { prime: u64 },
    /// `Z/m[G]` for a finite abelian `G`, graded by `G` (a crossed product) or trivially.
    GroupRing { modulus: u64, group: Arc<GradeGroup>, graded: bool },
    /// `(R, I)` with `R = Z/m`, `I = dZ/m`, graded by `Z/3` as `(R,0) ⊕ (0,I) ⊕ 0`.
    PairRing { modulus: u64, ideal: u64 },
    Quotient { base: Arc<GradedRing>, ideal: GradedIdeal },
    /// `D(A, I) = {(x, y) | x − y ∈ I}`.
    Double { base: Arc<GradedRing>, ideal: GradedIdeal },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing {
    grading: Arc<GradeGroup>,
    kind: RingKind,
}

impl GradedRing {
    pub fn trivial(modulus: u64, grading: Arc<GradeGroup>) -> Result<Arc<Self>> {
        if modulus == 0 || modulus > MAX_COMPONENT_SIZE {
            return Err(Error::InvalidParameter(format!("modulus {modulus} out of range")));
        }
        Ok(Arc::new(GradedRing { grading, kind: RingKind::Trivial { modulus } }))
    }

    pub fn laurent(prime: u64) -> Result<Arc<Self>> {
        if !is_prime(prime) || prime > MAX_COMPONENT_SIZE {
            return Err(Error::InvalidParameter(format!(
                "Laurent coefficients must be a prime field, got order {prime}"
            )));
        }
        Ok(Arc::new(GradedRing { grading: GradeGroup::integers(), kind: RingKind::Laurent { prime } }))
    }

    pub fn group_ring(modulus: u64, group: Arc<GradeGroup>, graded: bool) -> Result<Arc<Self>> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let order = group.order().ok_or_else(|| {
            Error::InvalidParameter("group ring needs a finite group".into())
        })?;
        let fibre = if graded { 1 } else { order };
        let size = u32::try_from(fibre).ok().and_then(|f| (modulus as u128).checked_pow(f));
        if size.is_none_or(|s| s > MAX_COMPONENT_SIZE as u128) {
            return Err(Error::InvalidParameter("group ring components too large".into()));
        }
        let grading = if graded { group.clone() } else { GradeGroup::trivial() };
        Ok(Arc::new(GradedRing { grading, kind: RingKind::GroupRing { modulus, group, graded } }))
    }

    pub fn pair_ring(modulus: u64, ideal: u64) -> Result<Arc<Self>> {
        if modulus == 0 || modulus > MAX_COMPONENT_SIZE || ideal == 0 || !modulus.is_multiple_of(ideal) {
            return Err(Error::InvalidParameter(format!(
                "pair ring needs I = dZ/m with d | m, got m = {modulus}, d = {ideal}"
            )));
        }
        Ok(Arc::new(GradedRing {
            grading: GradeGroup::cyclic(3)?,
            kind: RingKind::PairRing { modulus, ideal },
        }))
    }

    pub fn quotient(ideal: &GradedIdeal) -> Arc<Self> {
        let base = ideal.ring().clone();
        Arc::new(GradedRing {
            grading: base.grading.clone(),
            kind: RingKind::Quotient { base, ideal: ideal.clone() },
        })
    }

    pub fn double(ideal: &GradedIdeal) -> Arc<Self> {
        let base = ideal.ring().clone();
        Arc::new(GradedRing {
            grading: base.grading.clone(),
            kind: RingKind::Double { base, ideal: ideal.clone() },
        })
    }

    pub fn grading(&self) -> &Arc<GradeGroup> {
        &self.grading
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RingKind::Trivial { .. } => "trivial",
            RingKind::Laurent { .. } => "laurent",
            RingKind::GroupRing { .. } => "group-ring",
            RingKind::PairRing { .. } => "pair",
            RingKind::Quotient { .. } => "quotient",
            RingKind::Double { .. } => "double",
        }
    }

    /// Every supported kind has finite homogeneous components.
    pub fn component_is_finite(&self) -> bool {
        true
    }

    /// Degrees outside this list have zero component; `None` when the support is infinite.
    pub fn support(&self) -> Option<Vec<GradeElement>> {
        match &self.kind {
            RingKind::Trivial { .. } => Some(vec![GradeElement::zero(&self.grading)]),
            RingKind::Laurent { .. } => None,
            RingKind::GroupRing { graded, .. } => {
                if *graded {
                    self.grading.elements()
                } else {
                    Some(vec![GradeElement::zero(&self.grading)])
                }
            }
            RingKind::PairRing { .. } => Some(vec![self.deg(0), self.deg(1)]),
            RingKind::Quotient { base, .. } | RingKind::Double { base, .. } => base.support(),
        }
    }

    fn deg(&self, k: i64) -> GradeElement {
        GradeElement::new(&self.grading, &[k]).expect("rank-one grading")
    }

    fn check_degree(&self, d: &GradeElement) -> Result<()> {
        if **d.group() == *self.grading {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Group elements of the group ring lying over a degree.
    fn fibre(&self, d: &GradeElement) -> Vec<GradeElement> {
        match &self.kind {
            RingKind::GroupRing { group, graded, .. } => {
                if *graded {
                    vec![d.clone()]
                } else if d.is_zero() {
                    group.elements().unwrap_or_default()
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        }
    }

    pub fn zero(&self, degree: &GradeElement) -> HomogeneousElement {
        HomogeneousElement { degree: degree.clone(), payload: self.zero_payload(degree) }
    }

    fn zero_payload(&self, degree: &GradeElement) -> Payload {
        match &self.kind {
            RingKind::Trivial { .. } | RingKind::Laurent { .. } | RingKind::PairRing { .. } => {
                Payload::Residue(0)
            }
            RingKind::GroupRing { .. } => Payload::Coeffs(vec![0; self.fibre(degree).len()]),
            RingKind::Quotient { base, .. } => base.zero_payload(degree),
            RingKind::Double { base, .. } => {
                let z = base.zero_payload(degree);
                Payload::Pair(Box::new(z.clone()), Box::new(z))
            }
        }
    }

    pub fn one(&self) -> HomogeneousElement {
        let degree = GradeElement::zero(&self.grading);
        let payload = match &self.kind {
            RingKind::Trivial { modulus } | RingKind::PairRing { modulus, .. } => {
                Payload::Residue(1 % modulus)
            }
            RingKind::Laurent { .. } => Payload::Residue(1),
            RingKind::GroupRing { modulus, .. } => {
                let mut c = vec![0; self.fibre(&degree).len()];
                // the identity of G is first in either fibre of degree 0
                c[0] = 1 % modulus;
                Payload::Coeffs(c)
            }
            RingKind::Quotient { base, ideal } => ideal.canonical(&base.one()).payload,
            RingKind::Double { base, .. } => {
                let one = base.one().payload;
                Payload::Pair(Box::new(one.clone()), Box::new(one))
            }
        };
        HomogeneousElement { degree, payload }
    }

    /// Validated constructor.
    pub fn element(&self, degree: GradeElement, payload: Payload) -> Result<HomogeneousElement> {
        let x = HomogeneousElement { degree, payload };
        self.validate(&x)?;
        Ok(x)
    }

    pub fn contains(&self, x: &HomogeneousElement) -> bool {
        self.validate(x).is_ok()
    }

    pub fn validate(&self, x: &HomogeneousElement) -> Result<()> {
        self.check_degree(&x.degree)?;
        let bad = |why: String| Err(Error::NotInRing(why));
        match (&self.kind, &x.payload) {
            (RingKind::Trivial { modulus }, Payload::Residue(v)) => {
                if v >= modulus {
                    return bad(format!("residue {v} not reduced mod {modulus}"));
                }
                if *v != 0 && !x.degree.is_zero() {
                    return bad(format!("trivially graded ring has no degree {}", x.degree));
                }
                Ok(())
            }
            (RingKind::Laurent { prime }, Payload::Residue(c)) => {
                if c >= prime {
                    return bad(format!("coefficient {c} not reduced mod {prime}"));
                }
                Ok(())
            }
            (RingKind::GroupRing { modulus, .. }, Payload::Coeffs(c)) => {
                if c.len() != self.fibre(&x.degree).len() {
                    return bad(format!("wrong number of group-ring coefficients in degree {}", x.degree));
                }
                if c.iter().any(|v| v >= modulus) {
                    return bad(format!("coefficients not reduced mod {modulus}"));
                }
                Ok(())
            }
            (RingKind::PairRing { modulus, ideal }, Payload::Residue(v)) => {
                if v >= modulus {
                    return bad(format!("residue {v} not reduced mod {modulus}"));
                }
                match x.degree.coords()[0] {
                    0 => Ok(()),
                    1 if v % ideal == 0 => Ok(()),
                    1 => bad(format!("{v} is not in the ideal {ideal}Z/{modulus}")),
                    _ if *v == 0 => Ok(()),
                    _ => bad("degree 2 component is zero".into()),
                }
            }
            (RingKind::Quotient { base, ideal }, _) => {
                base.validate(x)?;
                if ideal.canonical(x) != *x {
                    return bad("quotient element is not the canonical coset representative".into());
                }
                Ok(())
            }
            (RingKind::Double { base, ideal }, Payload::Pair(a, b)) => {
                let a = HomogeneousElement { degree: x.degree.clone(), payload: (**a).clone() };
                let b = HomogeneousElement { degree: x.degree.clone(), payload: (**b).clone() };
                base.validate(&a)?;
                base.validate(&b)?;
                if !ideal.contains(&base.sub(&a, &b)?) {
                    return bad("pair components do not agree modulo the ideal".into());
                }
                Ok(())
            }
            _ => bad("payload shape does not match ring kind".into()),
        }
    }

    pub fn is_zero(&self, x: &HomogeneousElement) -> bool {
        x.payload == self.zero_payload(&x.degree)
    }

    pub fn is_one(&self, x: &HomogeneousElement) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &HomogeneousElement, y: &HomogeneousElement) -> Result<HomogeneousElement> {
        if x.degree != y.degree {
            if x.degree.group() != y.degree.group() {
                return Err(Error::GroupMismatch);
            }
            return Err(Error::DegreeMismatch { expected: x.degree.clone(), actual: y.degree.clone() });
        }
        self.check_degree(&x.degree)?;
        let payload = self.add_payload(&x.degree, &x.payload, &y.payload)?;
        Ok(HomogeneousElement { degree: x.degree.clone(), payload })
    }

    fn add_payload(&self, d: &GradeElement, a: &Payload, b: &Payload) -> Result<Payload> {
        Ok(match (&self.kind, a, b) {
            (
                RingKind::Trivial { modulus: m }
                | RingKind::Laurent { prime: m }
                | RingKind::PairRing { modulus: m, .. },
                Payload::Residue(a),
                Payload::Residue(b),
            ) => Payload::Residue(add_mod(*a, *b, *m)),
            (RingKind::GroupRing { modulus, .. }, Payload::Coeffs(a), Payload::Coeffs(b))
                if a.len() == b.len() =>
            {
                Payload::Coeffs(a.iter().zip(b).map(|(x, y)| add_mod(*x, *y, *modulus)).collect())
            }
            (RingKind::Quotient { base, ideal }, a, b) => {
                let s = base.add_payload(d, a, b)?;
                ideal.canonical(&HomogeneousElement { degree: d.clone(), payload: s }).payload
            }
            (RingKind::Double { base, .. }, Payload::Pair(a1, a2), Payload::Pair(b1, b2)) => {
                Payload::Pair(
                    Box::new(base.add_payload(d, a1, b1)?),
                    Box::new(base.add_payload(d, a2, b2)?),
                )
            }
            _ => return Err(Error::NotInRing("payload shape does not match ring kind".into())),
        })
    }

    pub fn neg(&self, x: &HomogeneousElement) -> HomogeneousElement {
        HomogeneousElement { degree: x.degree.clone(), payload: self.neg_payload(&x.degree, &x.payload) }
    }

    fn neg_payload(&self, d: &GradeElement, a: &Payload) -> Payload {
        match (&self.kind, a) {
            (
                RingKind::Trivial { modulus: m }
                | RingKind::Laurent { prime: m }
                | RingKind::PairRing { modulus: m, .. },
                Payload::Residue(a),
            ) => Payload::Residue(neg_mod(*a, *m)),
            (RingKind::GroupRing { modulus, .. }, Payload::Coeffs(a)) => {
                Payload::Coeffs(a.iter().map(|x| neg_mod(*x, *modulus)).collect())
            }
            (RingKind::Quotient { base, ideal }, a) => {
                let n = base.neg_payload(d, a);
                ideal.canonical(&HomogeneousElement { degree: d.clone(), payload: n }).payload
            }
            (RingKind::Double { base, .. }, Payload::Pair(a1, a2)) => Payload::Pair(
                Box::new(base.neg_payload(d, a1)),
                Box::new(base.neg_payload(d, a2)),
            ),
            (_, other) => other.clone(),
        }
    }

    pub fn sub(&self, x: &HomogeneousElement, y: &HomogeneousElement) -> Result<HomogeneousElement> {
        self.add(x, &self.neg(y))
    }

    /// Product of homogeneous elements; the degree of the result is `deg x + deg y`.
    pub fn mul(&self, x: &HomogeneousElement, y: &HomogeneousElement) -> Result<HomogeneousElement> {
        self.check_degree(&x.degree)?;
        self.check_degree(&y.degree)?;
        let degree = &x.degree + &y.degree;
        let payload = self.mul_payload(&x.degree, &x.payload, &y.degree, &y.payload, &degree)?;
        Ok(HomogeneousElement { degree, payload })
    }

    fn mul_payload(
        &self,
        dx: &GradeElement,
        a: &Payload,
        dy: &GradeElement,
        b: &Payload,
        d: &GradeElement,
    ) -> Result<Payload> {
        Ok(match (&self.kind, a, b) {
            (
                RingKind::Trivial { modulus: m } | RingKind::Laurent { prime: m },
                Payload::Residue(a),
                Payload::Residue(b),
            ) => Payload::Residue(mul_mod(*a, *b, *m)),
            (RingKind::PairRing { modulus: m, .. }, Payload::Residue(a), Payload::Residue(b)) => {
                // (r₁,a₁)(r₂,a₂) = (r₁r₂, r₁a₂ + r₂a₁)
                let split = |deg: &GradeElement, v: u64| match deg.coords()[0] {
                    0 => (v, 0),
                    1 => (0, v),
                    _ => (0, 0),
                };
                let (r1, a1) = split(dx, *a);
                let (r2, a2) = split(dy, *b);
                let r = mul_mod(r1, r2, *m);
                let i = add_mod(mul_mod(r1, a2, *m), mul_mod(r2, a1, *m), *m);
                match d.coords()[0] {
                    0 => Payload::Residue(r),
                    1 => Payload::Residue(i),
                    _ => Payload::Residue(0),
                }
            }
            (RingKind::GroupRing { modulus, group, graded }, Payload::Coeffs(a), Payload::Coeffs(b)) => {
                let fx = self.fibre(dx);
                let fy = self.fibre(dy);
                let fd = self.fibre(d);
                let mut out = vec![0u64; fd.len()];
                for (g, ca) in fx.iter().zip(a) {
                    if *ca == 0 {
                        continue;
                    }
                    for (h, cb) in fy.iter().zip(b) {
                        if *cb == 0 {
                            continue;
                        }
                        let gh = g + h;
                        let idx = if *graded { 0 } else { group.element_index(&gh).unwrap_or(0) };
                        out[idx] = add_mod(out[idx], mul_mod(*ca, *cb, *modulus), *modulus);
                    }
                }
                Payload::Coeffs(out)
            }
            (RingKind::Quotient { base, ideal }, a, b) => {
                let p = base.mul_payload(dx, a, dy, b, d)?;
                ideal.canonical(&HomogeneousElement { degree: d.clone(), payload: p }).payload
            }
            (RingKind::Double { base, .. }, Payload::Pair(a1, a2), Payload::Pair(b1, b2)) => Payload::Pair(
                Box::new(base.mul_payload(dx, a1, dy, b1, d)?),
                Box::new(base.mul_payload(dx, a2, dy, b2, d)?),
            ),
            _ => return Err(Error::NotInRing("payload shape does not match ring kind".into())),
        })
    }

    /// Exhaustive, duplicate-free list of `A_γ` (zero first).
    pub fn component(&self, degree: &GradeElement) -> Result<Vec<HomogeneousElement>> {
        self.check_degree(degree)?;
        let wrap = |payloads: Vec<Payload>| {
            payloads
                .into_iter()
                .map(|payload| HomogeneousElement { degree: degree.clone(), payload })
                .collect::<Vec<_>>()
        };
        let residues = |range: core::iter::StepBy<core::ops::Range<u64>>| {
            wrap(range.map(Payload::Residue).collect())
        };
        Ok(match &self.kind {
            RingKind::Trivial { modulus } => {
                if degree.is_zero() {
                    residues((0..*modulus).step_by(1))
                } else {
                    residues((0..1).step_by(1))
                }
            }
            RingKind::Laurent { prime } => residues((0..*prime).step_by(1)),
            RingKind::PairRing { modulus, ideal } => match degree.coords()[0] {
                0 => residues((0..*modulus).step_by(1)),
                1 => residues((0..*modulus).step_by(*ideal as usize)),
                _ => residues((0..1).step_by(1)),
            },
            RingKind::GroupRing { modulus, .. } => {
                let len = self.fibre(degree).len();
                let total = (*modulus as u128).pow(len as u32);
                if total > MAX_COMPONENT_SIZE as u128 {
                    return Err(Error::Unsupported("component too large to enumerate".into()));
                }
                let mut out = Vec::with_capacity(total as usize);
                let mut c = vec![0u64; len];
                'outer: loop {
                    out.push(Payload::Coeffs(c.clone()));
                    for pos in (0..len).rev() {
                        c[pos] += 1;
                        if c[pos] < *modulus {
                            continue 'outer;
                        }
                        c[pos] = 0;
                    }
                    break;
                }
                wrap(out)
            }
            RingKind::Quotient { base, ideal } => {
                let mut reps: Vec<HomogeneousElement> = base
                    .component(degree)?
                    .into_iter()
                    .filter(|x| ideal.canonical(x) == *x)
                    .collect();
                reps.sort();
                reps
            }
            RingKind::Double { base, ideal } => {
                let comp = base.component(degree)?;
                let mut out = Vec::new();
                for x in &comp {
                    for y in &comp {
                        if ideal.contains(&base.sub(x, y)?) {
                            out.push(Payload::Pair(
                                Box::new(x.payload.clone()),
                                Box::new(y.payload.clone()),
                            ));
                        }
                    }
                }
                wrap(out)
            }
        })
    }

    /// Uniformly random element of `A_γ`.
    pub fn sample<R: rand::Rng + ?Sized>(
        &self,
        degree: &GradeElement,
        rng: &mut R,
    ) -> Result<HomogeneousElement> {
        if let RingKind::Laurent { prime } = self.kind {
            self.check_degree(degree)?;
            let c = rng.random_range(0..prime);
            return Ok(HomogeneousElement { degree: degree.clone(), payload: Payload::Residue(c) });
        }
        let mut comp = self.component(degree)?;
        let k = rng.random_range(0..comp.len());
        Ok(comp.swap_remove(k))
    }

    /// Two-sided inverse of a homogeneous element, if one exists.
    pub fn unit_inverse(&self, x: &HomogeneousElement) -> Option<HomogeneousElement> {
        self.check_degree(&x.degree).ok()?;
        let neg = x.degree.neg();
        match (&self.kind, &x.payload) {
            (RingKind::Trivial { modulus }, Payload::Residue(v)) if x.degree.is_zero() => {
                inv_mod(*v, *modulus).map(|i| HomogeneousElement { degree: neg, payload: Payload::Residue(i) })
            }
            (RingKind::Laurent { prime }, Payload::Residue(c)) => {
                if *c == 0 {
                    return None;
                }
                inv_mod(*c, *prime).map(|i| HomogeneousElement { degree: neg, payload: Payload::Residue(i) })
            }
            (RingKind::Double { base, .. }, Payload::Pair(a, b)) => {
                let a = base.unit_inverse(&HomogeneousElement { degree: x.degree.clone(), payload: (**a).clone() })?;
                let b = base.unit_inverse(&HomogeneousElement { degree: x.degree.clone(), payload: (**b).clone() })?;
                Some(HomogeneousElement { degree: neg, payload: Payload::Pair(Box::new(a.payload), Box::new(b.payload)) })
            }
            _ => {
                let one = self.one();
                self.component(&neg).ok()?.into_iter().find(|y| {
                    matches!(self.mul(x, y), Ok(p) if p == one) && matches!(self.mul(y, x), Ok(p) if p == one)
                })
            }
        }
    }

    /// The first invertible element of `A_γ`, in enumeration order.
    pub fn find_unit(&self, degree: &GradeElement) -> Option<HomogeneousElement> {
        if let RingKind::Laurent { .. } = self.kind {
            return Some(HomogeneousElement { degree: degree.clone(), payload: Payload::Residue(1) });
        }
        self.component(degree).ok()?.into_iter().find(|u| self.unit_inverse(u).is_some())
    }

    /// Pairs `(sᵢ, tᵢ)` with `sᵢ ∈ A_{−γ}`, `tᵢ ∈ A_γ` and `Σ sᵢtᵢ = 1`.
    ///
    /// A homogeneous unit `u` of degree γ gives the one-term witness `(u⁻¹, u)`; otherwise
    /// sums of at most two products are searched.
    pub fn strong_grading_witness(
        &self,
        degree: &GradeElement,
    ) -> Result<Vec<(HomogeneousElement, HomogeneousElement)>> {
        self.check_degree(degree)?;
        let one = self.one();
        let witness = if degree.is_zero() {
            Some(vec![(one.clone(), one.clone())])
        } else if let Some(u) = self.find_unit(degree) {
            let inv = self.unit_inverse(&u).expect("find_unit returns units");
            Some(vec![(inv, u)])
        } else {
            self.search_two_term_witness(degree)?
        };
        let witness = witness.ok_or_else(|| Error::WitnessUnavailable(degree.clone()))?;
        let mut sum = self.zero(&GradeElement::zero(&self.grading));
        for (s, t) in &witness {
            sum = self.add(&sum, &self.mul(s, t)?)?;
        }
        if sum != one {
            return Err(Error::WitnessUnavailable(degree.clone()));
        }
        Ok(witness)
    }

    fn search_two_term_witness(
        &self,
        degree: &GradeElement,
    ) -> Result<Option<Vec<(HomogeneousElement, HomogeneousElement)>>> {
        let ss = self.component(&degree.neg())?;
        let ts = self.component(degree)?;
        let one = self.one();
        let mut products = Vec::with_capacity(ss.len() * ts.len());
        for s in &ss {
            for t in &ts {
                let p = self.mul(s, t)?;
                if p == one {
                    return Ok(Some(vec![(s.clone(), t.clone())]));
                }
                products.push((s, t, p));
            }
        }
        if products.len() > 4096 {
            return Ok(None);
        }
        for (i, (s1, t1, p1)) in products.iter().enumerate() {
            for (s2, t2, p2) in &products[i..] {
                if self.add(p1, p2)? == one {
                    return Ok(Some(vec![
                        ((*s1).clone(), (*t1).clone()),
                        ((*s2).clone(), (*t2).clone()),
                    ]));
                }
            }
        }
        Ok(None)
    }

    /// Canonical graded surjection `A → A/I`; `self` must be the quotient ring.
    pub fn reduce(&self, x: &HomogeneousElement) -> Result<HomogeneousElement> {
        match &self.kind {
            RingKind::Quotient { base, ideal } => {
                base.validate(x)?;
                Ok(ideal.canonical(x))
            }
            _ => Err(Error::Unsupported("reduce needs a quotient ring".into())),
        }
    }

    /// Projection `p₁` (`first = true`) or `p₂` of a double onto its base ring.
    pub fn project(&self, x: &HomogeneousElement, first: bool) -> Result<HomogeneousElement> {
        match (&self.kind, &x.payload) {
            (RingKind::Double { .. }, Payload::Pair(a, b)) => Ok(HomogeneousElement {
                degree: x.degree.clone(),
                payload: if first { (**a).clone() } else { (**b).clone() },
            }),
            _ => Err(Error::Unsupported("projection needs an element of a double".into())),
        }
    }

    /// `(x, y)` as an element of the double; fails unless `x − y ∈ I`.
    pub fn pair(&self, x: &HomogeneousElement, y: &HomogeneousElement) -> Result<HomogeneousElement> {
        match &self.kind {
            RingKind::Double { .. } => {
                if x.degree != y.degree {
                    return Err(Error::DegreeMismatch { expected: x.degree.clone(), actual: y.degree.clone() });
                }
                self.element(
                    x.degree.clone(),
                    Payload::Pair(Box::new(x.payload.clone()), Box::new(y.payload.clone())),
                )
            }
            _ => Err(Error::Unsupported("pair needs a double ring".into())),
        }
    }

    /// Base ring of a quotient or double.
    pub fn base(&self) -> Option<&Arc<GradedRing>> {
        match &self.kind {
            RingKind::Quotient { base, .. } | RingKind::Double { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Ideal of a quotient or double.
    pub fn defining_ideal(&self) -> Option<&GradedIdeal> {
        match &self.kind {
            RingKind::Quotient { ideal, .. } | RingKind::Double { ideal, .. } => Some(ideal),
            _ => None,
        }
    }

    /// The degree-zero component `A₀` as a trivially graded ring, where it has a direct model.
    pub fn degree_zero_ring(&self) -> Result<Arc<GradedRing>> {
        match &self.kind {
            RingKind::Trivial { modulus } | RingKind::PairRing { modulus, .. } => {
                GradedRing::trivial(*modulus, GradeGroup::trivial())
            }
            RingKind::Laurent { prime } => GradedRing::trivial(*prime, GradeGroup::trivial()),
            RingKind::GroupRing { modulus, graded: true, .. } => {
                GradedRing::trivial(*modulus, GradeGroup::trivial())
            }
            _ => Err(Error::Unsupported(format!(
                "no model of the degree-zero component for a {} ring",
                self.kind_name()
            ))),
        }
    }

    pub fn format(&self, x: &HomogeneousElement) -> String {
        let mut s = String::new();
        self.write_payload(&mut s, &x.degree, &x.payload);
        s
    }

    fn write_payload(&self, s: &mut String, d: &GradeElement, p: &Payload) {
        match (&self.kind, p) {
            (RingKind::Trivial { .. }, Payload::Residue(v)) => {
                let _ = write!(s, "{v}");
            }
            (RingKind::Laurent { .. }, Payload::Residue(c)) => {
                let k = d.coords()[0];
                match (c, k) {
                    (0, _) => s.push('0'),
                    (c, 0) => {
                        let _ = write!(s, "{c}");
                    }
                    (1, k) => {
                        let _ = write!(s, "x^{k}");
                    }
                    (c, k) => {
                        let _ = write!(s, "{c}*x^{k}");
                    }
                }
            }
            (RingKind::PairRing { .. }, Payload::Residue(v)) => {
                let _ = match d.coords()[0] {
                    0 => write!(s, "({v},0)"),
                    1 => write!(s, "(0,{v})"),
                    _ => write!(s, "(0,0)"),
                };
            }
            (RingKind::GroupRing { .. }, Payload::Coeffs(c)) => {
                let mut first = true;
                for (g, v) in self.fibre(d).iter().zip(c) {
                    if *v == 0 {
                        continue;
                    }
                    if !first {
                        s.push('+');
                    }
                    first = false;
                    let _ = write!(s, "{v}*g{g}");
                }
                if first {
                    s.push('0');
                }
            }
            (RingKind::Quotient { base, .. }, p) => {
                s.push('[');
                base.write_payload(s, d, p);
                s.push(']');
            }
            (RingKind::Double { base, .. }, Payload::Pair(a, b)) => {
                s.push('<');
                base.write_payload(s, d, a);
                s.push('|');
                base.write_payload(s, d, b);
                s.push('>');
            }
            _ => s.push('?'),
        }
    }
}

#[cfg(test)]
mod tests;
