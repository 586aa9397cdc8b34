//! Finitely generated abelian grading groups `Γ = Z^r × Z/n₁ × … × Z/n_k`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// The group `Z^free_rank × Z/torsion[0] × …`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradeGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl GradeGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Arc<Self>> {
        if let Some(&bad) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidParameter(alloc::format!(
                "torsion order {bad} must be at least 2"
            )));
        }
        Ok(Arc::new(GradeGroup { free_rank, torsion }))
    }

    pub fn trivial() -> Arc<Self> {
        Arc::new(GradeGroup { free_rank: 0, torsion: Vec::new() })
    }

    pub fn integers() -> Arc<Self> {
        Arc::new(GradeGroup { free_rank: 1, torsion: Vec::new() })
    }

    pub fn cyclic(n: u64) -> Result<Arc<Self>> {
        Self::new(0, alloc::vec![n])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of stored coordinates of an element.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    /// All elements in lexicographic order of their torsion coordinates.
    pub fn elements(self: &Arc<Self>) -> Option<Vec<GradeElement>> {
        let order = self.order()?;
        let mut out = Vec::with_capacity(order as usize);
        let mut coords = alloc::vec![0i64; self.torsion.len()];
        loop {
            out.push(GradeElement { group: self.clone(), coords: coords.clone() });
            let mut pos = coords.len();
            loop {
                if pos == 0 {
                    return Some(out);
                }
                pos -= 1;
                coords[pos] += 1;
                if (coords[pos] as u64) < self.torsion[pos] {
                    break;
                }
                coords[pos] = 0;
            }
        }
    }

    /// Index of `g` in [`GradeGroup::elements`].
    pub fn element_index(&self, g: &GradeElement) -> Option<usize> {
        if !self.is_finite() || *g.group != *self {
            return None;
        }
        let mut idx = 0usize;
        for (c, &n) in g.coords.iter().zip(&self.torsion) {
            idx = idx * n as usize + *c as usize;
        }
        Some(idx)
    }
}

impl fmt::Display for GradeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        for _ in 0..self.free_rank {
            if !first {
                f.write_str(" x ")?;
            }
            f.write_str("Z")?;
            first = false;
        }
        for n in &self.torsion {
            if !first {
                f.write_str(" x ")?;
            }
            write!(f, "Z/{n}")?;
            first = false;
        }
        Ok(())
    }
}

/// An element of a [`GradeGroup`]; torsion coordinates are always reduced into `[0, nᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradeElement {
    group: Arc<GradeGroup>,
    coords: Vec<i64>,
}

impl GradeElement {
    /// Builds an element from `[free…, torsion…]` coordinates, reducing the torsion part.
    pub fn new(group: &Arc<GradeGroup>, coords: &[i64]) -> Result<Self> {
        if coords.len() != group.rank() {
            return Err(Error::InvalidParameter(alloc::format!(
                "grade element of {} needs {} coordinates, got {}",
                group,
                group.rank(),
                coords.len()
            )));
        }
        let mut coords = coords.to_vec();
        group.reduce(&mut coords);
        Ok(GradeElement { group: group.clone(), coords })
    }

    pub fn zero(group: &Arc<GradeGroup>) -> Self {
        GradeElement { group: group.clone(), coords: alloc::vec![0; group.rank()] }
    }

    pub fn group(&self) -> &Arc<GradeGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut coords: Vec<i64> =
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.reduce(&mut coords);
        Ok(GradeElement { group: self.group.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut coords: Vec<i64> = self.coords.iter().map(|c| -c).collect();
        self.group.reduce(&mut coords);
        GradeElement { group: self.group.clone(), coords }
    }

    /// `k · self`.
    pub fn scale(&self, k: i64) -> Self {
        let mut coords: Vec<i64> = self.coords.iter().map(|c| c * k).collect();
        self.group.reduce(&mut coords);
        GradeElement { group: self.group.clone(), coords }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

impl GradeGroup {
    fn reduce(&self, coords: &mut [i64]) {
        for (c, &n) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(n as i64);
        }
    }
}

/// Panics on mismatched groups; use [`GradeElement::try_add`] for a checked sum.
impl Add for &GradeElement {
    type Output = GradeElement;
    fn add(self, rhs: &GradeElement) -> GradeElement {
        self.try_add(rhs).expect("grade elements from different groups")
    }
}

impl Sub for &GradeElement {
    type Output = GradeElement;
    fn sub(self, rhs: &GradeElement) -> GradeElement {
        self.try_sub(rhs).expect("grade elements from different groups")
    }
}

impl Neg for &GradeElement {
    type Output = GradeElement;
    fn neg(self) -> GradeElement {
        GradeElement::neg(self)
    }
}

impl fmt::Display for GradeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
