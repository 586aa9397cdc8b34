use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{GradedRing, HomogeneousElement, Payload, RingKind};
use crate::error::{Error, Result};
use crate::grading::GradeElement;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Members {
    /// `I_γ` for every degree in the ring's finite support.
    Components(BTreeMap<GradeElement, BTreeSet<Payload>>),
    Whole,
    Zero,
}

/// A two-sided ideal generated by homogeneous elements, hence graded: `I = ⊕ (I ∩ A_λ)`.
///
/// On rings with finite support every component `I_λ` is materialised by exhaustive
/// two-sided closure of the generators. On Laurent rings every nonzero homogeneous
/// element is a unit, so an ideal is either zero or the whole ring.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    ring: Arc<GradedRing>,
    generators: Vec<HomogeneousElement>,
    members: Members,
}

impl PartialEq for GradedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for GradedIdeal {}

impl GradedIdeal {
    pub fn new(ring: &Arc<GradedRing>, generators: Vec<HomogeneousElement>) -> Result<Self> {
        for g in &generators {
            ring.validate(g)?;
        }
        let members = match ring.support() {
            None => {
                if generators.iter().all(|g| ring.is_zero(g)) {
                    Members::Zero
                } else if matches!(ring.kind(), RingKind::Laurent { .. }) {
                    Members::Whole
                } else {
                    return Err(Error::Unsupported("ideals of rings with infinite support".into()));
                }
            }
            Some(support) => Members::Components(closure(ring, &support, &generators)?),
        };
        Ok(GradedIdeal { ring: ring.clone(), generators, members })
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Self::new(ring, Vec::new()).expect("zero ideal")
    }

    pub fn unit(ring: &Arc<GradedRing>) -> Self {
        Self::new(ring, alloc::vec![ring.one()]).expect("unit ideal")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[HomogeneousElement] {
        &self.generators
    }

    pub fn contains(&self, x: &HomogeneousElement) -> bool {
        match &self.members {
            Members::Whole => true,
            Members::Zero => self.ring.is_zero(x),
            Members::Components(map) => match map.get(x.degree()) {
                Some(set) => set.contains(x.payload()),
                None => self.ring.is_zero(x),
            },
        }
    }

    /// `I_γ`, zero first.
    pub fn component(&self, degree: &GradeElement) -> Result<Vec<HomogeneousElement>> {
        match &self.members {
            Members::Whole => self.ring.component(degree),
            Members::Zero => Ok(alloc::vec![self.ring.zero(degree)]),
            Members::Components(map) => Ok(match map.get(degree) {
                Some(set) => set
                    .iter()
                    .map(|p| HomogeneousElement::from_parts(degree.clone(), p.clone()))
                    .collect(),
                None => alloc::vec![self.ring.zero(degree)],
            }),
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        match &self.members {
            Members::Zero => true,
            Members::Whole => false,
            Members::Components(map) => map.values().all(|s| s.len() <= 1),
        }
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(&self.ring.one())
    }

    /// Whether `Iᵏ = 0` for some `k`, decided on homogeneous products.
    pub fn is_nilpotent(&self) -> bool {
        let map = match &self.members {
            Members::Zero => return true,
            Members::Whole => return self.ring.is_zero(&self.ring.one()),
            Members::Components(map) => map,
        };
        let elements: Vec<HomogeneousElement> = map
            .iter()
            .flat_map(|(d, s)| s.iter().map(|p| HomogeneousElement::from_parts(d.clone(), p.clone())))
            .filter(|x| !self.ring.is_zero(x))
            .collect();
        // homogeneous products of length k; I^k = 0 iff all of them vanish
        let mut current = elements.clone();
        for _ in 0..=elements.len() {
            if current.is_empty() {
                return true;
            }
            let mut next = BTreeSet::new();
            for x in &current {
                for y in &elements {
                    if let Ok(p) = self.ring.mul(x, y) {
                        if !self.ring.is_zero(&p) {
                            next.insert(p);
                        }
                    }
                }
            }
            current = next.into_iter().collect();
        }
        false
    }

    /// Least member of the coset `x + I_γ`.
    pub(crate) fn canonical(&self, x: &HomogeneousElement) -> HomogeneousElement {
        match &self.members {
            Members::Zero => x.clone(),
            Members::Whole => self.ring.zero(x.degree()),
            Members::Components(map) => match map.get(x.degree()) {
                None => x.clone(),
                Some(set) => set
                    .iter()
                    .filter_map(|p| {
                        let i = HomogeneousElement::from_parts(x.degree().clone(), p.clone());
                        self.ring.add(x, &i).ok()
                    })
                    .min()
                    .unwrap_or_else(|| x.clone()),
            },
        }
    }
}

fn closure(
    ring: &GradedRing,
    support: &[GradeElement],
    generators: &[HomogeneousElement],
) -> Result<BTreeMap<GradeElement, BTreeSet<Payload>>> {
    let mut map = BTreeMap::new();
    for gamma in support {
        let mut seeds = BTreeSet::new();
        for g in generators {
            for left_deg in support {
                let right_deg = &(gamma - left_deg) - g.degree();
                let right = ring.component(&right_deg)?;
                for a in ring.component(left_deg)? {
                    let ag = ring.mul(&a, g)?;
                    if ring.is_zero(&ag) {
                        continue;
                    }
                    for b in &right {
                        let p = ring.mul(&ag, b)?;
                        if !ring.is_zero(&p) {
                            seeds.insert(p);
                        }
                    }
                }
            }
        }
        // additive closure of the products
        let zero = ring.zero(gamma);
        let mut members: BTreeSet<HomogeneousElement> = BTreeSet::new();
        members.insert(zero.clone());
        let mut frontier = alloc::vec![zero];
        let seeds: Vec<_> = seeds.into_iter().collect();
        while let Some(x) = frontier.pop() {
            for s in &seeds {
                let y = ring.add(&x, s)?;
                if members.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        map.insert(gamma.clone(), members.into_iter().map(|x| x.into_parts().1).collect());
    }
    Ok(map)
}
