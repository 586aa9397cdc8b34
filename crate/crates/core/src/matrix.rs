//! Matrices over a graded ring whose entry degrees obey the shift-family law
//! `deg a_ij = δ + αᵢ − αⱼ`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::grading::{GradeElement, GradeGroup};
use crate::ring::{GradedIdeal, GradedRing, HomogeneousElement};

/// Ordered multiset `(α₁, …, α_n)` of shifts; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftFamily {
    grading: Arc<GradeGroup>,
    shifts: Vec<GradeElement>,
}

impl ShiftFamily {
    pub fn new(grading: &Arc<GradeGroup>, shifts: Vec<GradeElement>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if shifts.iter().any(|s| **s.group() != **grading) {
            return Err(Error::GroupMismatch);
        }
        Ok(ShiftFamily { grading: grading.clone(), shifts })
    }

    /// Family from integer shifts over a rank-one grading group.
    pub fn from_ints(grading: &Arc<GradeGroup>, shifts: &[i64]) -> Result<Self> {
        let shifts = shifts
            .iter()
            .map(|&k| GradeElement::new(grading, &[k]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(grading, shifts)
    }

    /// `n` copies of the zero shift.
    pub fn zeros(grading: &Arc<GradeGroup>, n: usize) -> Result<Self> {
        Self::new(grading, vec![GradeElement::zero(grading); n])
    }

    pub fn grading(&self) -> &Arc<GradeGroup> {
        &self.grading
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    /// Always false; families are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self) -> &[GradeElement] {
        &self.shifts
    }

    pub fn shift(&self, i: usize) -> &GradeElement {
        &self.shifts[i]
    }

    /// `αᵢ − αⱼ`, the degree of position `(i, j)` in a degree-0 matrix.
    pub fn difference(&self, i: usize, j: usize) -> GradeElement {
        &self.shifts[i] - &self.shifts[j]
    }

    /// `(α₁ + λ, …, α_n + λ)`.
    pub fn shifted(&self, lambda: &GradeElement) -> Result<Self> {
        let shifts = self.shifts.iter().map(|s| s.try_add(lambda)).collect::<Result<Vec<_>>>()?;
        Ok(ShiftFamily { grading: self.grading.clone(), shifts })
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.grading != other.grading {
            return Err(Error::GroupMismatch);
        }
        let mut shifts = self.shifts.clone();
        shifts.extend(other.shifts.iter().cloned());
        Ok(ShiftFamily { grading: self.grading.clone(), shifts })
    }

    /// The family repeated `copies` times, as used by the stabilisation embedding.
    pub fn repeated(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidParameter("copies must be at least 1".into()));
        }
        let mut shifts = Vec::with_capacity(self.len() * copies);
        for _ in 0..copies {
            shifts.extend(self.shifts.iter().cloned());
        }
        Ok(ShiftFamily { grading: self.grading.clone(), shifts })
    }

    /// Positions in `target` receiving the shifts of `self`, matched greedily left to right.
    pub fn embedding_into(&self, target: &Self) -> Result<Vec<usize>> {
        if self.grading != target.grading {
            return Err(Error::GroupMismatch);
        }
        let mut used = vec![false; target.len()];
        let mut positions = Vec::with_capacity(self.len());
        for s in &self.shifts {
            let k = (0..target.len())
                .find(|&k| !used[k] && target.shifts[k] == *s)
                .ok_or(Error::NotContained)?;
            used[k] = true;
            positions.push(k);
        }
        Ok(positions)
    }
}

impl fmt::Display for ShiftFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.shifts.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn same_ring(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An `n×n` matrix in `M_n(A)(α₁,…,α_n)_δ`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Arc<GradedRing>,
    family: ShiftFamily,
    degree: GradeElement,
    entries: Vec<HomogeneousElement>,
}

impl GradedMatrix {
    /// Validates ring membership and the degree law of every entry.
    pub fn from_entries(
        ring: &Arc<GradedRing>,
        family: &ShiftFamily,
        degree: &GradeElement,
        rows: Vec<Vec<HomogeneousElement>>,
    ) -> Result<Self> {
        let n = family.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(format!("expected a {n}x{n} entry array")));
        }
        Self::from_flat(ring, family, degree, rows.into_iter().flatten().collect())
    }

    pub fn from_flat(
        ring: &Arc<GradedRing>,
        family: &ShiftFamily,
        degree: &GradeElement,
        entries: Vec<HomogeneousElement>,
    ) -> Result<Self> {
        let n = family.len();
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!("expected {} entries", n * n)));
        }
        if family.grading() != ring.grading() || **degree.group() != **ring.grading() {
            return Err(Error::GroupMismatch);
        }
        let m = GradedMatrix { ring: ring.clone(), family: family.clone(), degree: degree.clone(), entries };
        for i in 0..n {
            for j in 0..n {
                let e = m.entry(i, j);
                let expected = m.expected_degree(i, j);
                if *e.degree() != expected {
                    return Err(Error::DegreeLaw { row: i, col: j, expected, actual: e.degree().clone() });
                }
                ring.validate(e)?;
            }
        }
        Ok(m)
    }

    /// Builds a matrix entry by entry; `f(i, j, deg)` receives the required degree.
    pub fn from_fn<F>(ring: &Arc<GradedRing>, family: &ShiftFamily, degree: &GradeElement, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, &GradeElement) -> Result<HomogeneousElement>,
    {
        let n = family.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let deg = &(degree + family.shift(i)) - family.shift(j);
                entries.push(f(i, j, &deg)?);
            }
        }
        Self::from_flat(ring, family, degree, entries)
    }

    pub(crate) fn from_parts_unchecked(
        ring: Arc<GradedRing>,
        family: ShiftFamily,
        degree: GradeElement,
        entries: Vec<HomogeneousElement>,
    ) -> Self {
        GradedMatrix { ring, family, degree, entries }
    }

    pub fn identity(ring: &Arc<GradedRing>, family: &ShiftFamily) -> Self {
        Self::scalar(ring, family, &ring.one())
    }

    /// `c·I` for a degree-0 scalar `c`.
    pub(crate) fn scalar(ring: &Arc<GradedRing>, family: &ShiftFamily, c: &HomogeneousElement) -> Self {
        let n = family.len();
        let degree = GradeElement::zero(ring.grading());
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if i == j { c.clone() } else { ring.zero(&family.difference(i, j)) });
            }
        }
        GradedMatrix { ring: ring.clone(), family: family.clone(), degree, entries }
    }

    pub fn zero(ring: &Arc<GradedRing>, family: &ShiftFamily, degree: &GradeElement) -> Self {
        let n = family.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(ring.zero(&(degree + &family.difference(i, j))));
            }
        }
        GradedMatrix { ring: ring.clone(), family: family.clone(), degree: degree.clone(), entries }
    }

    pub fn n(&self) -> usize {
        self.family.len()
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn degree(&self) -> &GradeElement {
        &self.degree
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomogeneousElement {
        &self.entries[i * self.n() + j]
    }

    pub fn entries(&self) -> &[HomogeneousElement] {
        &self.entries
    }

    pub fn expected_degree(&self, i: usize, j: usize) -> GradeElement {
        &self.degree + &self.family.difference(i, j)
    }

    pub fn is_identity(&self) -> bool {
        self.degree.is_zero() && *self == Self::identity(&self.ring, &self.family)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.family != other.family {
            return Err(Error::FamilyMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n();
        let degree = &self.degree + &other.degree;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.ring.zero(&(&degree + &self.family.difference(i, j)));
                for k in 0..n {
                    let p = self.ring.mul(self.entry(i, k), other.entry(k, j))?;
                    acc = self.ring.add(&acc, &p)?;
                }
                entries.push(acc);
            }
        }
        Ok(GradedMatrix { ring: self.ring.clone(), family: self.family.clone(), degree, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree.clone(), actual: other.degree.clone() });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMatrix { entries, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        GradedMatrix { entries, ..self.clone() }
    }

    /// `c·M`; the degree of the result is `deg c + δ`.
    pub fn scale(&self, c: &HomogeneousElement) -> Result<Self> {
        let entries = self.entries.iter().map(|a| self.ring.mul(c, a)).collect::<Result<Vec<_>>>()?;
        Ok(GradedMatrix { entries, degree: c.degree() + &self.degree, ..self.clone() })
    }

    /// Coefficients `[1, c₁, …, c_n]` of `det(tI − M)`, highest power first.
    ///
    /// Division free, so it works over every commutative coefficient ring. All
    /// coefficients of a degree-0 matrix are homogeneous of degree 0.
    pub fn char_poly(&self) -> Result<Vec<HomogeneousElement>> {
        if !self.degree.is_zero() {
            return Err(Error::Unsupported("characteristic polynomial needs a degree-0 matrix".into()));
        }
        let r = &*self.ring;
        let zero = GradeElement::zero(r.grading());
        let mut v = vec![r.one()];
        for k in 0..self.n() {
            // Toeplitz column: 1, −a_kk, −R·C, −R·A·C, …
            let mut t = Vec::with_capacity(k + 2);
            t.push(r.one());
            t.push(r.neg(self.entry(k, k)));
            let mut w: Vec<HomogeneousElement> = (0..k).map(|i| self.entry(i, k).clone()).collect();
            for step in 0..k {
                let mut acc = r.zero(&zero);
                for (i, wi) in w.iter().enumerate() {
                    acc = r.add(&acc, &r.mul(self.entry(k, i), wi)?)?;
                }
                t.push(r.neg(&acc));
                if step + 1 < k {
                    let mut next = Vec::with_capacity(k);
                    for i in 0..k {
                        let mut acc = r.zero(w[i].degree());
                        for (l, wl) in w.iter().enumerate() {
                            acc = r.add(&acc, &r.mul(self.entry(i, l), wl)?)?;
                        }
                        next.push(acc);
                    }
                    w = next;
                }
            }
            let mut next = Vec::with_capacity(k + 2);
            for p in 0..k + 2 {
                let mut acc = r.zero(&zero);
                for (q, vq) in v.iter().enumerate().take(p + 1) {
                    acc = r.add(&acc, &r.mul(&t[p - q], vq)?)?;
                }
                next.push(acc);
            }
            v = next;
        }
        Ok(v)
    }

    pub fn determinant(&self) -> Result<HomogeneousElement> {
        let c = self.char_poly()?;
        let c0 = c[self.n()].clone();
        Ok(if self.n() % 2 == 1 { self.ring.neg(&c0) } else { c0 })
    }

    /// Two-sided inverse of a degree-0 matrix (Cayley–Hamilton); the result is checked.
    pub fn invert(&self) -> Result<Self> {
        if !self.degree.is_zero() {
            return Err(Error::Unsupported("only degree-0 matrices are inverted".into()));
        }
        let c = self.char_poly()?;
        let n = self.n();
        let c0_inv = self.ring.unit_inverse(&c[n]).ok_or(Error::NotInvertible)?;
        let mut b = Self::identity(&self.ring, &self.family);
        for ck in &c[1..n] {
            b = b.mul(self)?.add(&Self::scalar(&self.ring, &self.family, ck))?;
        }
        let inv = b.scale(&self.ring.neg(&c0_inv))?;
        if inv.mul(self)?.is_identity() && self.mul(&inv)?.is_identity() {
            Ok(inv)
        } else {
            Err(Error::NotInvertible)
        }
    }

    /// `φ_m(M) = diag(M, I, …, I)` over the family repeated `copies` times.
    pub fn stabilize(&self, copies: usize) -> Result<Self> {
        if !self.degree.is_zero() {
            return Err(Error::Unsupported("stabilisation needs a degree-0 matrix".into()));
        }
        let family = self.family.repeated(copies)?;
        let positions: Vec<usize> = (0..self.n()).collect();
        self.embed(&family, &positions)
    }

    /// Places `self` on the rows and columns `positions` of a degree-0 identity over `target`.
    pub fn embed(&self, target: &ShiftFamily, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.n() {
            return Err(Error::FamilyMismatch);
        }
        let mut slot = vec![None; target.len()];
        for (k, &p) in positions.iter().enumerate() {
            if p >= target.len() || slot[p].is_some() || *target.shift(p) != *self.family.shift(k) {
                return Err(Error::NotContained);
            }
            slot[p] = Some(k);
        }
        Self::from_fn(&self.ring, target, &self.degree, |i, j, deg| {
            Ok(match (slot[i], slot[j]) {
                (Some(a), Some(b)) => self.entry(a, b).clone(),
                _ if i == j => self.ring.one(),
                _ => self.ring.zero(deg),
            })
        })
    }

    /// Same entries over `(α₁ + λ, …, α_n + λ)`.
    pub fn suspend(&self, lambda: &GradeElement) -> Result<Self> {
        Ok(GradedMatrix { family: self.family.shifted(lambda)?, ..self.clone() })
    }

    /// Entrywise image in the quotient ring `quotient = A/I`.
    pub fn reduce_into(&self, quotient: &Arc<GradedRing>) -> Result<Self> {
        match quotient.base() {
            Some(base) if same_ring(base, &self.ring) && quotient.defining_ideal().is_some() => {}
            _ => return Err(Error::RingMismatch),
        }
        self.map_into(quotient, |x| quotient.reduce(x))
    }

    /// Entrywise image in `A/I`, building the quotient ring.
    pub fn reduce_mod_ideal(&self, ideal: &GradedIdeal) -> Result<Self> {
        if !same_ring(ideal.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        self.reduce_into(&GradedRing::quotient(ideal))
    }

    /// Applies a degree-preserving map entrywise into another ring over the same grading.
    pub fn map_into<F>(&self, target: &Arc<GradedRing>, mut f: F) -> Result<Self>
    where
        F: FnMut(&HomogeneousElement) -> Result<HomogeneousElement>,
    {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Self::from_flat(target, &self.family, &self.degree, entries)
    }

    /// `diag(self, other)` over the concatenated family.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree.clone(), actual: other.degree.clone() });
        }
        let n = self.n();
        let family = self.family.concat(&other.family)?;
        Self::from_fn(&self.ring, &family, &self.degree, |i, j, deg| {
            Ok(match (i < n, j < n) {
                (true, true) => self.entry(i, j).clone(),
                (false, false) => other.entry(i - n, j - n).clone(),
                _ => self.ring.zero(deg),
            })
        })
    }

    /// Top-left `k×k` block with the first `k` shifts.
    pub fn leading_block(&self, k: usize) -> Result<Self> {
        self.block(0, k)
    }

    /// Square block on indices `start..start + k`.
    pub fn block(&self, start: usize, k: usize) -> Result<Self> {
        if k == 0 || start + k > self.n() {
            return Err(Error::InvalidParameter("block out of range".into()));
        }
        let family = ShiftFamily::new(
            self.family.grading(),
            self.family.shifts()[start..start + k].to_vec(),
        )?;
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(self.entry(start + i, start + j).clone());
            }
        }
        Ok(GradedMatrix { ring: self.ring.clone(), family, degree: self.degree.clone(), entries })
    }

    pub fn format(&self) -> String {
        let n = self.n();
        let mut s = String::from("[");
        for i in 0..n {
            if i > 0 {
                s.push_str("; ");
            }
            for j in 0..n {
                if j > 0 {
                    s.push_str(", ");
                }
                s.push_str(&self.ring.format(self.entry(i, j)));
            }
        }
        s.push(']');
        s
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// `e_{i,j}(r)` with `deg r = αᵢ − αⱼ`; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryGenerator {
    ring: Arc<GradedRing>,
    family: ShiftFamily,
    i: usize,
    j: usize,
    r: HomogeneousElement,
}

impl ElementaryGenerator {
    pub fn new(
        ring: &Arc<GradedRing>,
        family: &ShiftFamily,
        i: usize,
        j: usize,
        r: HomogeneousElement,
    ) -> Result<Self> {
        if i == j || i >= family.len() || j >= family.len() {
            return Err(Error::InvalidIndex(i, j));
        }
        let expected = family.difference(i, j);
        if *r.degree() != expected {
            return Err(Error::DegreeLaw { row: i, col: j, expected, actual: r.degree().clone() });
        }
        ring.validate(&r)?;
        Ok(ElementaryGenerator { ring: ring.clone(), family: family.clone(), i, j, r })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn row(&self) -> usize {
        self.i
    }

    pub fn col(&self) -> usize {
        self.j
    }

    pub fn entry(&self) -> &HomogeneousElement {
        &self.r
    }

    /// `e_{i,j}(−r)`.
    pub fn inverse(&self) -> Self {
        ElementaryGenerator { r: self.ring.neg(&self.r), ..self.clone() }
    }

    pub fn matrix(&self) -> GradedMatrix {
        let mut m = GradedMatrix::identity(&self.ring, &self.family);
        let n = self.family.len();
        m.entries[self.i * n + self.j] = self.r.clone();
        m
    }
}

impl fmt::Display for ElementaryGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{{{},{}}}({})", self.i + 1, self.j + 1, self.ring.format(&self.r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Payload;

    fn laurent() -> (Arc<GradedRing>, ShiftFamily) {
        let r = GradedRing::laurent(2).unwrap();
        let fam = ShiftFamily::from_ints(r.grading(), &[0, 1]).unwrap();
        (r, fam)
    }

    fn mono(r: &GradedRing, k: i64, c: u64) -> HomogeneousElement {
        r.element(GradeElement::new(r.grading(), &[k]).unwrap(), Payload::Residue(c)).unwrap()
    }

    fn trivial(m: u64, n: usize) -> (Arc<GradedRing>, ShiftFamily) {
        let r = GradedRing::trivial(m, GradeGroup::trivial()).unwrap();
        let fam = ShiftFamily::zeros(r.grading(), n).unwrap();
        (r, fam)
    }

    fn resid(r: &GradedRing, v: &[u64]) -> Vec<HomogeneousElement> {
        v.iter().map(|&x| mono_trivial(r, x)).collect()
    }

    fn mono_trivial(r: &GradedRing, v: u64) -> HomogeneousElement {
        r.element(GradeElement::zero(r.grading()), Payload::Residue(v)).unwrap()
    }

    fn zero_deg(r: &GradedRing) -> GradeElement {
        GradeElement::zero(r.grading())
    }

    #[test]
    fn degree_law_enforced() {
        let (r, fam) = laurent();
        let ok = vec![vec![mono(&r, 0, 1), mono(&r, -1, 1)], vec![mono(&r, 1, 1), mono(&r, 0, 1)]];
        assert!(GradedMatrix::from_entries(&r, &fam, &zero_deg(&r), ok).is_ok());
        let bad = vec![vec![mono(&r, 0, 1), mono(&r, 1, 1)], vec![mono(&r, 1, 1), mono(&r, 0, 1)]];
        let err = GradedMatrix::from_entries(&r, &fam, &zero_deg(&r), bad).unwrap_err();
        assert!(matches!(err, Error::DegreeLaw { row: 0, col: 1, .. }));
    }

    #[test]
    fn pair_ring_degree_two_position_is_zero() {
        let r = GradedRing::pair_ring(4, 2).unwrap();
        let fam = ShiftFamily::from_ints(r.grading(), &[0, 1, 2]).unwrap();
        let m = GradedMatrix::identity(&r, &fam);
        assert_eq!(m.expected_degree(0, 1).coords(), &[2]);
        assert_eq!(r.component(&m.expected_degree(0, 1)).unwrap().len(), 1);
    }

    #[test]
    fn identity_and_elementary_products() {
        let (r, fam) = laurent();
        let e = ElementaryGenerator::new(&r, &fam, 0, 1, mono(&r, -1, 1)).unwrap();
        let m = e.matrix();
        let id = GradedMatrix::identity(&r, &fam);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert!(id.mul(&id).unwrap().is_identity());
        assert!(m.mul(&e.inverse().matrix()).unwrap().is_identity());
        assert_eq!(m.format(), "[1, x^-1; 0, 1]");
        let p = m.mul(&m).unwrap();
        assert_eq!(p.entry(1, 0).degree().coords(), &[1]);
        assert_eq!(p.entry(0, 1).degree().coords(), &[-1]);
        assert!(ElementaryGenerator::new(&r, &fam, 0, 1, mono(&r, 1, 1)).is_err());
        assert!(ElementaryGenerator::new(&r, &fam, 1, 1, mono(&r, 0, 1)).is_err());
    }

    #[test]
    fn elementary_sum_rule() {
        let (r, fam) = trivial(4, 2);
        let e = |v| ElementaryGenerator::new(&r, &fam, 0, 1, mono_trivial(&r, v)).unwrap().matrix();
        assert_eq!(e(1).mul(&e(2)).unwrap(), e(3));
        assert!(e(0).is_identity());
    }

    #[test]
    fn inverse_over_f3() {
        let (r, fam) = trivial(3, 2);
        let m = GradedMatrix::from_flat(&r, &fam, &zero_deg(&r), resid(&r, &[1, 1, 0, 1])).unwrap();
        let expect = GradedMatrix::from_flat(&r, &fam, &zero_deg(&r), resid(&r, &[1, 2, 0, 1])).unwrap();
        assert_eq!(m.invert().unwrap(), expect);
        assert!(GradedMatrix::identity(&r, &fam).invert().unwrap().is_identity());
    }

    #[test]
    fn zero_divisor_not_invertible() {
        let (r, fam) = trivial(4, 1);
        let m = GradedMatrix::from_flat(&r, &fam, &zero_deg(&r), resid(&r, &[2])).unwrap();
        assert_eq!(m.invert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let (r, fam) = trivial(7, 3);
        let v = [2, 5, 1, 3, 0, 6, 4, 4, 1];
        let m = GradedMatrix::from_flat(&r, &fam, &zero_deg(&r), resid(&r, &v)).unwrap();
        let det = |a: &[i64]| {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        };
        let a: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        let expect = det(&a).rem_euclid(7) as u64;
        assert_eq!(m.determinant().unwrap().payload(), &Payload::Residue(expect));
    }

    #[test]
    fn laurent_inverse() {
        let (r, fam) = laurent();
        let m = GradedMatrix::from_entries(
            &r,
            &fam,
            &zero_deg(&r),
            vec![vec![mono(&r, 0, 1), mono(&r, -1, 1)], vec![mono(&r, 1, 1), mono(&r, 0, 0)]],
        )
        .unwrap();
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn stabilise_and_suspend() {
        let (r, fam) = laurent();
        let e = ElementaryGenerator::new(&r, &fam, 0, 1, mono(&r, -1, 1)).unwrap();
        let s = e.matrix().stabilize(2).unwrap();
        assert_eq!(s.family().len(), 4);
        let big = ElementaryGenerator::new(&r, s.family(), 0, 1, mono(&r, -1, 1)).unwrap();
        assert_eq!(s, big.matrix());
        assert!(GradedMatrix::identity(&r, &fam).stabilize(2).unwrap().is_identity());
        assert!(e.matrix().stabilize(0).is_err());

        let lam = GradeElement::new(r.grading(), &[3]).unwrap();
        let up = e.matrix().suspend(&lam).unwrap();
        assert_eq!(up.family(), &ShiftFamily::from_ints(r.grading(), &[3, 4]).unwrap());
        assert_eq!(up.suspend(&lam.neg()).unwrap(), e.matrix());
        assert!(ElementaryGenerator::new(&r, up.family(), 0, 1, mono(&r, -1, 1)).is_ok());
    }

    #[test]
    fn reduction_and_embedding() {
        let (r, fam) = trivial(4, 1);
        let two = GradedIdeal::new(&r, vec![mono_trivial(&r, 2)]).unwrap();
        let m = GradedMatrix::from_flat(&r, &fam, &zero_deg(&r), resid(&r, &[3])).unwrap();
        assert!(m.reduce_mod_ideal(&two).unwrap().is_identity());

        let g = GradedRing::group_ring(3, GradeGroup::cyclic(2).unwrap(), true).unwrap();
        let s = ShiftFamily::from_ints(g.grading(), &[0]).unwrap();
        let t = ShiftFamily::from_ints(g.grading(), &[0, 1]).unwrap();
        let two = g.element(GradeElement::zero(g.grading()), Payload::Coeffs(vec![2])).unwrap();
        let h = GradedMatrix::from_flat(&g, &s, &GradeElement::zero(g.grading()), vec![two.clone()]).unwrap();
        let pos = s.embedding_into(&t).unwrap();
        let big = h.embed(&t, &pos).unwrap();
        assert_eq!(big.entry(0, 0), &two);
        assert_eq!(big.entry(1, 1), &g.one());
        let u = ShiftFamily::from_ints(g.grading(), &[1]).unwrap();
        assert_eq!(u.embedding_into(&s).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn empty_family_rejected() {
        assert_eq!(ShiftFamily::new(&GradeGroup::integers(), Vec::new()).unwrap_err(), Error::EmptyFamily);
    }
}
