use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::grading::GradeElement;
use crate::matrix::{same_ring, ElementaryGenerator, GradedMatrix, ShiftFamily};
use crate::ring::{GradedIdeal, GradedRing, HomogeneousElement, Payload};

/// Row-major matrix of component indices; index 0 is always the zero of its component.
pub type Packed = Box<[u16]>;

/// Largest component the packed engine accepts.
const MAX_PACKED_COMPONENT: usize = 4096;

/// A group element together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub m: Packed,
    pub inv: Packed,
}

struct MulTable {
    right: usize,
    table: Vec<u16>,
}

/// Degree-0 matrices over one ring and one full shift family, packed into `u16`
/// component indices with precomputed addition and multiplication tables.
pub struct MatrixSpace {
    ring: Arc<GradedRing>,
    base: ShiftFamily,
    level: usize,
    family: ShiftFamily,
    n: usize,
    degrees: Vec<GradeElement>,
    pos: Vec<usize>,
    comps: Vec<Vec<HomogeneousElement>>,
    lookup: Vec<HashMap<Payload, u16>>,
    add: Vec<Vec<u16>>,
    neg: Vec<Vec<u16>>,
    // mul tables for the triple (i, k, j), shared by degree pair
    triple: Vec<usize>,
    tables: Vec<MulTable>,
    d0: usize,
    one: u16,
    inv0: Vec<Option<u16>>,
}

impl core::fmt::Debug for MatrixSpace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MatrixSpace")
            .field("ring", &self.ring.kind_name())
            .field("family", &self.family)
            .finish()
    }
}

impl MatrixSpace {
    /// Space of `GL` at stabilisation `level` over `base` (the family repeated `level` times).
    pub fn new(ring: &Arc<GradedRing>, base: &ShiftFamily, level: usize) -> Result<Arc<Self>> {
        if base.grading() != ring.grading() {
            return Err(Error::GroupMismatch);
        }
        let family = base.repeated(level)?;
        let n = family.len();
        let mut degrees: Vec<GradeElement> = Vec::new();
        let mut pos = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d = family.difference(i, j);
                let k = match degrees.iter().position(|x| *x == d) {
                    Some(k) => k,
                    None => {
                        degrees.push(d);
                        degrees.len() - 1
                    }
                };
                pos.push(k);
            }
        }
        let d0 = pos[0];
        let mut comps = Vec::with_capacity(degrees.len());
        let mut lookup = Vec::with_capacity(degrees.len());
        for d in &degrees {
            let comp = ring.component(d)?;
            if comp.len() > MAX_PACKED_COMPONENT {
                return Err(Error::Unsupported(format!(
                    "component of degree {d} has {} elements, too many to tabulate",
                    comp.len()
                )));
            }
            if !ring.is_zero(&comp[0]) {
                return Err(Error::Unsupported("component enumeration must start with zero".into()));
            }
            let map = comp
                .iter()
                .enumerate()
                .map(|(k, x)| (x.payload().clone(), k as u16))
                .collect();
            comps.push(comp);
            lookup.push(map);
        }
        let mut space = MatrixSpace {
            ring: ring.clone(),
            base: base.clone(),
            level,
            family,
            n,
            degrees,
            pos,
            comps,
            lookup,
            add: Vec::new(),
            neg: Vec::new(),
            triple: Vec::new(),
            tables: Vec::new(),
            d0,
            one: 0,
            inv0: Vec::new(),
        };
        space.build_tables()?;
        Ok(Arc::new(space))
    }

    fn index_of(&self, d: usize, x: &HomogeneousElement) -> Result<u16> {
        self.lookup[d]
            .get(x.payload())
            .copied()
            .ok_or_else(|| Error::NotInRing("element outside its tabulated component".into()))
    }

    fn build_tables(&mut self) -> Result<()> {
        let r = self.ring.clone();
        for (d, comp) in self.comps.iter().enumerate() {
            let s = comp.len();
            let mut add = vec![0u16; s * s];
            let mut neg = vec![0u16; s];
            for (a, x) in comp.iter().enumerate() {
                neg[a] = self.index_of(d, &r.neg(x))?;
                for (b, y) in comp.iter().enumerate() {
                    add[a * s + b] = self.index_of(d, &r.add(x, y)?)?;
                }
            }
            self.add.push(add);
            self.neg.push(neg);
        }
        let nd = self.degrees.len();
        let mut by_pair: Vec<Option<usize>> = vec![None; nd * nd];
        let n = self.n;
        self.triple = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    let (d1, d2, d3) = (self.pos[i * n + k], self.pos[k * n + j], self.pos[i * n + j]);
                    let slot = match by_pair[d1 * nd + d2] {
                        Some(t) => t,
                        None => {
                            let (s1, s2) = (self.comps[d1].len(), self.comps[d2].len());
                            let mut table = vec![0u16; s1 * s2];
                            for (a, x) in self.comps[d1].iter().enumerate() {
                                for (b, y) in self.comps[d2].iter().enumerate() {
                                    table[a * s2 + b] = self.index_of(d3, &r.mul(x, y)?)?;
                                }
                            }
                            self.tables.push(MulTable { right: s2, table });
                            by_pair[d1 * nd + d2] = Some(self.tables.len() - 1);
                            self.tables.len() - 1
                        }
                    };
                    self.triple.push(slot);
                }
            }
        }
        self.one = self.index_of(self.d0, &r.one())?;
        let comp0 = &self.comps[self.d0];
        self.inv0 = comp0
            .iter()
            .map(|x| r.unit_inverse(x).map(|y| self.index_of(self.d0, &y)).transpose())
            .collect::<Result<Vec<_>>>()?;
        Ok(())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    /// The family before stabilisation.
    pub fn base(&self) -> &ShiftFamily {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The full family, `base` repeated `level` times.
    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of candidates an exhaustive scan of all degree-0 matrices visits.
    pub fn candidate_count(&self) -> u128 {
        self.pos.iter().fold(1u128, |acc, &d| acc.saturating_mul(self.comps[d].len() as u128))
    }

    pub(crate) fn component_size(&self, i: usize, j: usize) -> usize {
        self.comps[self.pos[i * self.n + j]].len()
    }

    pub(crate) fn component(&self, i: usize, j: usize) -> &[HomogeneousElement] {
        &self.comps[self.pos[i * self.n + j]]
    }

    pub(crate) fn index_at(&self, i: usize, j: usize, x: &HomogeneousElement) -> Result<u16> {
        self.index_of(self.pos[i * self.n + j], x)
    }

    #[inline]
    fn add_at(&self, i: usize, j: usize, a: u16, b: u16) -> u16 {
        let d = self.pos[i * self.n + j];
        self.add[d][a as usize * self.comps[d].len() + b as usize]
    }

    #[inline]
    fn mul_at(&self, i: usize, k: usize, j: usize, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables[self.triple[(i * self.n + k) * self.n + j]];
        t.table[a as usize * t.right + b as usize]
    }

    pub fn identity(&self) -> Packed {
        let n = self.n;
        let mut m = vec![0u16; n * n];
        for i in 0..n {
            m[i * n + i] = self.one;
        }
        m.into_boxed_slice()
    }

    pub fn is_identity(&self, m: &[u16]) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| m[i * n + j] == if i == j { self.one } else { 0 }))
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Packed {
        let n = self.n;
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = self.mul_at(i, k, j, x, b[k * n + j]);
                    if p != 0 {
                        out[i * n + j] = self.add_at(i, j, out[i * n + j], p);
                    }
                }
            }
        }
        out.into_boxed_slice()
    }

    pub fn mul_elements(&self, a: &Element, b: &Element) -> Element {
        Element { m: self.mul(&a.m, &b.m), inv: self.mul(&b.inv, &a.inv) }
    }

    /// `a b a⁻¹`.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Element {
        self.mul_elements(&self.mul_elements(a, b), &self.invert_element(a))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.mul_elements(a, b);
        let ba = self.mul_elements(b, a);
        self.mul_elements(&ab, &self.invert_element(&ba))
    }

    pub fn invert_element(&self, a: &Element) -> Element {
        Element { m: a.inv.clone(), inv: a.m.clone() }
    }

    pub fn identity_element(&self) -> Element {
        Element { m: self.identity(), inv: self.identity() }
    }

    /// `g · e_k`, the `k`-th column.
    pub fn column(&self, m: &[u16], k: usize) -> Packed {
        (0..self.n).map(|i| m[i * self.n + k]).collect()
    }

    /// `g · v` for a vector `v` shaped like column `k`.
    pub fn apply(&self, m: &[u16], v: &[u16], k: usize) -> Packed {
        let n = self.n;
        let mut out = vec![0u16; n];
        for i in 0..n {
            let mut acc = 0u16;
            for l in 0..n {
                let p = self.mul_at(i, l, k, m[i * n + l], v[l]);
                if p != 0 {
                    acc = self.add_at(i, k, acc, p);
                }
            }
            out[i] = acc;
        }
        out.into_boxed_slice()
    }

    /// Coefficients of `det(tI − m)`, highest power first, as degree-0 indices.
    fn char_poly(&self, m: &[u16]) -> Vec<u16> {
        let n = self.n;
        let d0 = self.d0;
        let s0 = self.comps[d0].len();
        let add0 = |a: u16, b: u16| self.add[d0][a as usize * s0 + b as usize];
        let neg0 = |a: u16| self.neg[d0][a as usize];
        // products of degree-0 scalars use the (0, 0, 0) table
        let mul0 = |a: u16, b: u16| self.mul_at(0, 0, 0, a, b);
        let mut v = vec![self.one];
        for k in 0..n {
            let mut t = Vec::with_capacity(k + 2);
            t.push(self.one);
            t.push(neg0(m[k * n + k]));
            let mut w: Vec<u16> = (0..k).map(|i| m[i * n + k]).collect();
            for step in 0..k {
                let mut acc = 0u16;
                for (i, &wi) in w.iter().enumerate() {
                    acc = add0(acc, self.mul_at(k, i, k, m[k * n + i], wi));
                }
                t.push(neg0(acc));
                if step + 1 < k {
                    let next: Vec<u16> = (0..k)
                        .map(|i| {
                            let mut acc = 0u16;
                            for (l, &wl) in w.iter().enumerate() {
                                let p = self.mul_at(i, l, k, m[i * n + l], wl);
                                if p != 0 {
                                    acc = self.add_at(i, k, acc, p);
                                }
                            }
                            acc
                        })
                        .collect();
                    w = next;
                }
            }
            let mut next = Vec::with_capacity(k + 2);
            for p in 0..k + 2 {
                let mut acc = 0u16;
                for (q, &vq) in v.iter().enumerate().take(p + 1) {
                    acc = add0(acc, mul0(t[p - q], vq));
                }
                next.push(acc);
            }
            v = next;
        }
        v
    }

    /// Whether `m` is invertible; the coefficient rings are commutative, so this is
    /// "the determinant is a unit".
    pub fn is_invertible(&self, m: &[u16]) -> bool {
        let c = self.char_poly(m);
        self.inv0[c[self.n] as usize].is_some()
    }

    pub fn invert(&self, m: &[u16]) -> Option<Packed> {
        let c = self.char_poly(m);
        let n = self.n;
        let c0_inv = self.inv0[c[n] as usize]?;
        let mut b = self.identity();
        for &ck in &c[1..n] {
            let mut next = self.mul(&b, m);
            for i in 0..n {
                next[i * n + i] = self.add_at(i, i, next[i * n + i], ck);
            }
            b = next;
        }
        let s = self.neg[self.d0][c0_inv as usize];
        let inv: Packed = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                self.mul_at(i, i, j, s, b[idx])
            })
            .collect();
        debug_assert!(self.is_identity(&self.mul(&inv, m)));
        Some(inv)
    }

    pub fn element(&self, m: Packed) -> Option<Element> {
        let inv = self.invert(&m)?;
        Some(Element { m, inv })
    }

    pub fn pack(&self, g: &GradedMatrix) -> Result<Packed> {
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if g.family() != &self.family {
            return Err(Error::FamilyMismatch);
        }
        if !g.degree().is_zero() {
            return Err(Error::Unsupported("only degree-0 matrices are packed".into()));
        }
        let n = self.n;
        (0..n * n)
            .map(|idx| self.index_of(self.pos[idx], &g.entries()[idx]))
            .collect::<Result<Vec<_>>>()
            .map(Vec::into_boxed_slice)
    }

    pub fn unpack(&self, m: &[u16]) -> GradedMatrix {
        let entries = m
            .iter()
            .enumerate()
            .map(|(idx, &k)| self.comps[self.pos[idx]][k as usize].clone())
            .collect();
        GradedMatrix::from_parts_unchecked(
            self.ring.clone(),
            self.family.clone(),
            GradeElement::zero(self.ring.grading()),
            entries,
        )
    }

    pub fn pack_element(&self, g: &GradedMatrix) -> Result<Element> {
        let m = self.pack(g)?;
        self.element(m).ok_or(Error::NotInvertible)
    }

    /// Nonzero elements generating `subset ∩ A_{αᵢ−αⱼ}` additively, smallest first.
    fn additive_generators(&self, i: usize, j: usize, subset: &[u16]) -> Vec<u16> {
        let d = self.pos[i * self.n + j];
        let s = self.comps[d].len();
        let mut span = vec![false; s];
        span[0] = true;
        let mut members = vec![0u16];
        let mut gens = Vec::new();
        for &x in subset {
            if span[x as usize] {
                continue;
            }
            gens.push(x);
            let mut k = 0;
            while k < members.len() {
                for &g in &gens {
                    let y = self.add[d][members[k] as usize * s + g as usize];
                    if !span[y as usize] {
                        span[y as usize] = true;
                        members.push(y);
                    }
                }
                k += 1;
            }
        }
        gens
    }

    /// `e_{i,j}(r)` in packed form.
    pub fn elementary(&self, i: usize, j: usize, r: u16) -> Element {
        let n = self.n;
        let mut m = self.identity().into_vec();
        let mut inv = m.clone();
        m[i * n + j] = r;
        inv[i * n + j] = self.neg[self.pos[i * n + j]][r as usize];
        Element { m: m.into_boxed_slice(), inv: inv.into_boxed_slice() }
    }

    /// Generators `e_{i,j}(r)` of `E`, with `r` running over additive generators of
    /// each component (or of each `I`-component when an ideal is given).
    pub fn elementary_generators(&self, ideal: Option<&GradedIdeal>) -> Result<Vec<(Element, ElementaryGenerator)>> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let subset: Vec<u16> = match ideal {
                    None => (1..self.component_size(i, j) as u16).collect(),
                    Some(ideal) => {
                        let mut v = ideal
                            .component(&self.family.difference(i, j))?
                            .iter()
                            .map(|x| self.index_at(i, j, x))
                            .collect::<Result<Vec<_>>>()?;
                        v.sort_unstable();
                        v
                    }
                };
                for r in self.additive_generators(i, j, &subset) {
                    let label = ElementaryGenerator::new(
                        &self.ring,
                        &self.family,
                        i,
                        j,
                        self.component(i, j)[r as usize].clone(),
                    )?;
                    out.push((self.elementary(i, j, r), label));
                }
            }
        }
        Ok(out)
    }

    /// `diag(1, …, u, …, 1)` for every degree-0 unit `u ≠ 1` (or `u ≡ 1 mod I`) and position.
    pub fn diagonal_units(&self, ideal: Option<&GradedIdeal>) -> Vec<Element> {
        let n = self.n;
        let mut out = Vec::new();
        for (u, inv) in self.inv0.iter().enumerate() {
            let Some(inv) = *inv else { continue };
            let u = u as u16;
            if u == self.one {
                continue;
            }
            if let Some(ideal) = ideal {
                let x = &self.comps[self.d0][u as usize];
                match self.ring.sub(x, &self.ring.one()) {
                    Ok(diff) if ideal.contains(&diff) => {}
                    _ => continue,
                }
            }
            for i in 0..n {
                let mut m = self.identity().into_vec();
                let mut mi = m.clone();
                m[i * n + i] = u;
                mi[i * n + i] = inv;
                out.push(Element { m: m.into_boxed_slice(), inv: mi.into_boxed_slice() });
            }
        }
        out
    }

    /// The matrix whose entries are the `k`-th elements of the mixed-radix expansion of `idx`.
    pub(crate) fn candidate(&self, mut idx: u128, allowed: &[Vec<u16>]) -> Packed {
        let mut m = vec![0u16; self.n * self.n];
        for p in (0..self.n * self.n).rev() {
            let s = allowed[p].len() as u128;
            m[p] = allowed[p][(idx % s) as usize];
            idx /= s;
        }
        m.into_boxed_slice()
    }

    /// Per-position candidate entries: all of `A_d`, or `δ_ij + I_d`.
    pub(crate) fn allowed_entries(&self, ideal: Option<&GradedIdeal>) -> Result<Vec<Vec<u16>>> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let all: Vec<u16> = (0..self.component_size(i, j) as u16).collect();
                let v = match ideal {
                    None => all,
                    Some(ideal) => {
                        let d = self.family.difference(i, j);
                        let members = ideal.component(&d)?;
                        let mut v = Vec::with_capacity(members.len());
                        for x in &members {
                            let y = if i == j { self.ring.add(&self.ring.one(), x)? } else { x.clone() };
                            v.push(self.index_at(i, j, &y)?);
                        }
                        v.sort_unstable();
                        v
                    }
                };
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Embeds `m` from `from` (a leading sub-family of `self`) with identity padding.
    pub(crate) fn embed_leading(&self, from: &MatrixSpace, m: &[u16]) -> Result<Packed> {
        let (k, n) = (from.n, self.n);
        if k > n || from.family.shifts() != &self.family.shifts()[..k] || !same_ring(&from.ring, &self.ring) {
            return Err(Error::NotContained);
        }
        let mut out = self.identity().into_vec();
        for i in 0..k {
            for j in 0..k {
                out[i * n + j] = m[i * k + j];
            }
        }
        Ok(out.into_boxed_slice())
    }

    /// Entrywise translation from another space via a ring map (same grading and family shape).
    pub(crate) fn translate<F>(&self, from: &MatrixSpace, m: &[u16], mut f: F) -> Result<Packed>
    where
        F: FnMut(&HomogeneousElement) -> Result<HomogeneousElement>,
    {
        if from.n != self.n {
            return Err(Error::FamilyMismatch);
        }
        (0..self.n * self.n)
            .map(|idx| {
                let x = &from.comps[from.pos[idx]][m[idx] as usize];
                self.index_of(self.pos[idx], &f(x)?)
            })
            .collect::<Result<Vec<_>>>()
            .map(Vec::into_boxed_slice)
    }

    /// A uniformly random degree-0 matrix (not necessarily invertible).
    pub(crate) fn random<R: rand::Rng + ?Sized>(&self, allowed: &[Vec<u16>], rng: &mut R) -> Packed {
        allowed.iter().map(|v| v[rng.random_range(0..v.len())]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradeGroup;

    fn space(m: u64, n: usize) -> Arc<MatrixSpace> {
        let r = GradedRing::trivial(m, GradeGroup::trivial()).unwrap();
        let fam = ShiftFamily::zeros(r.grading(), n).unwrap();
        MatrixSpace::new(&r, &fam, 1).unwrap()
    }

    #[test]
    fn packed_matches_generic_arithmetic() {
        let s = space(4, 3);
        let allowed = s.allowed_entries(None).unwrap();
        for idx in [5u128, 777, 12345, 200_000] {
            let a = s.candidate(idx, &allowed);
            let b = s.candidate(idx * 7 % 262_144, &allowed);
            let generic = s.unpack(&a).mul(&s.unpack(&b)).unwrap();
            assert_eq!(s.pack(&generic).unwrap(), s.mul(&a, &b));
            let det_generic = s.unpack(&a).invert().is_ok();
            assert_eq!(s.is_invertible(&a), det_generic);
            if let Some(inv) = s.invert(&a) {
                assert!(s.is_identity(&s.mul(&a, &inv)));
            }
        }
    }

    #[test]
    fn graded_space_tables() {
        let r = GradedRing::pair_ring(4, 2).unwrap();
        let fam = ShiftFamily::from_ints(r.grading(), &[0, 1, 2]).unwrap();
        let s = MatrixSpace::new(&r, &fam, 1).unwrap();
        assert_eq!(s.candidate_count(), 512);
        let gens = s.elementary_generators(None).unwrap();
        assert_eq!(gens.len(), 3);
        for (e, label) in &gens {
            assert_eq!(s.unpack(&e.m), label.matrix());
            assert!(s.is_identity(&s.mul(&e.m, &e.inv)));
        }
    }

    #[test]
    fn columns_and_actions() {
        let s = space(3, 2);
        let allowed = s.allowed_entries(None).unwrap();
        let a = s.candidate(40, &allowed);
        let b = s.candidate(17, &allowed);
        let ab = s.mul(&a, &b);
        assert_eq!(s.apply(&a, &s.column(&b, 1), 1), s.column(&ab, 1));
    }
}
