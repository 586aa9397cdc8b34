//! Literal syntax for grade elements, ring elements and matrices in job files.
//!
//! * grade elements: an integer array, or a bare integer for groups with one coordinate
//!   (and `0` for the trivial group);
//! * ring elements: a bare integer `c` means `c` placed in the degree the context requires
//!   (degree 0 for ideal generators, the degree law for matrix entries); `[c, d]` is the
//!   coefficient `c` in degree `d` (a Laurent monomial `c·x^d`, or a pair-ring element);
//!   a table `{ degree, value }` or `{ degree, terms = { "g" = c } }` spells everything out,
//!   group-ring terms being keyed by the group element's coordinates joined with commas.

use std::collections::BTreeMap;
use std::sync::Arc;

use graded_k1_core::{
    ElementaryGenerator, Error, GradeElement, GradedIdeal, GradedMatrix, GradedRing, GradeGroup, HomogeneousElement,
    Payload, RingKind, ShiftFamily,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradeLiteral {
    Scalar(i64),
    Coords(Vec<i64>),
}

impl GradeLiteral {
    pub fn resolve(&self, group: &Arc<GradeGroup>) -> Result<GradeElement, Error> {
        match self {
            GradeLiteral::Coords(c) => GradeElement::new(group, c),
            GradeLiteral::Scalar(k) if group.rank() == 1 => GradeElement::new(group, &[*k]),
            GradeLiteral::Scalar(0) if group.rank() == 0 => Ok(GradeElement::zero(group)),
            GradeLiteral::Scalar(k) => Err(Error::InvalidParameter(format!(
                "bare integer {k} is not a grade element of {group}; write a coordinate array"
            ))),
        }
    }

    pub fn from_element(x: &GradeElement) -> Self {
        match x.coords() {
            [k] => GradeLiteral::Scalar(*k),
            c => GradeLiteral::Coords(c.to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementLiteral {
    Scalar(i64),
    Pair([i64; 2]),
    Table(ElementTable),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<GradeLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<BTreeMap<String, i64>>,
}

fn residue(c: i64, modulus: u64) -> u64 {
    c.rem_euclid(modulus as i64) as u64
}

fn group_key(group: &Arc<GradeGroup>, key: &str) -> Result<GradeElement, Error> {
    let coords = key
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidParameter(format!("group-ring term key {key:?} is not a list of integers")))?;
    if coords == [0] && group.rank() == 0 {
        return Ok(GradeElement::zero(group));
    }
    GradeElement::new(group, &coords)
}

fn base_modulus(ring: &GradedRing) -> Result<u64, Error> {
    match ring.kind() {
        RingKind::Trivial { modulus } | RingKind::PairRing { modulus, .. } | RingKind::GroupRing { modulus, .. } => {
            Ok(*modulus)
        }
        RingKind::Laurent { prime } => Ok(*prime),
        _ => Err(Error::Unsupported(format!("element literals over {} rings", ring.kind_name()))),
    }
}

/// Resolves a ring-element literal; `context` is the degree assumed when the literal omits it.
pub fn element(ring: &GradedRing, lit: &ElementLiteral, context: &GradeElement) -> Result<HomogeneousElement, Error> {
    let grading = ring.grading();
    let (degree, value, terms) = match lit {
        ElementLiteral::Scalar(c) => (context.clone(), Some(*c), None),
        ElementLiteral::Pair([c, d]) => (GradeLiteral::Scalar(*d).resolve(grading)?, Some(*c), None),
        ElementLiteral::Table(t) => {
            let degree = match &t.degree {
                Some(d) => d.resolve(grading)?,
                None => context.clone(),
            };
            if t.value.is_some() == t.terms.is_some() {
                return Err(Error::InvalidParameter("element table needs exactly one of `value` and `terms`".into()));
            }
            (degree, t.value, t.terms.clone())
        }
    };
    let modulus = base_modulus(ring)?;
    let payload = match (ring.kind(), value, terms) {
        (RingKind::GroupRing { group, graded, .. }, Some(c), None) => {
            if *graded {
                Payload::Coeffs(vec![residue(c, modulus)])
            } else {
                let mut v = vec![0; group.order().unwrap_or(1) as usize];
                let e = group.element_index(&GradeElement::zero(group)).unwrap_or(0);
                v[e] = residue(c, modulus);
                Payload::Coeffs(v)
            }
        }
        (RingKind::GroupRing { group, graded, .. }, None, Some(terms)) => {
            if *graded {
                let mut coeff = 0;
                for (key, c) in &terms {
                    if group_key(group, key)? != degree {
                        return Err(Error::InvalidParameter(format!(
                            "term {key:?} is not in degree {degree}; graded group-ring elements have one term"
                        )));
                    }
                    coeff = residue(*c, modulus);
                }
                Payload::Coeffs(vec![coeff])
            } else {
                let mut v = vec![0; group.order().unwrap_or(1) as usize];
                for (key, c) in &terms {
                    let g = group_key(group, key)?;
                    let k = group
                        .element_index(&g)
                        .ok_or_else(|| Error::InvalidParameter(format!("{key:?} is not a group element")))?;
                    v[k] = residue(*c, modulus);
                }
                Payload::Coeffs(v)
            }
        }
        (_, Some(c), None) => Payload::Residue(residue(c, modulus)),
        _ => return Err(Error::InvalidParameter("`terms` is only meaningful for group rings".into())),
    };
    ring.element(degree, payload)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<GradeLiteral>,
    pub rows: Vec<Vec<ElementLiteral>>,
}

impl MatrixLiteral {
    pub fn resolve(&self, ring: &Arc<GradedRing>, family: &ShiftFamily) -> Result<GradedMatrix, Error> {
        let degree = match &self.degree {
            Some(d) => d.resolve(ring.grading())?,
            None => GradeElement::zero(ring.grading()),
        };
        let n = family.len();
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(format!("matrix must be {n} × {n} to match the family")));
        }
        GradedMatrix::from_fn(ring, family, &degree, |i, j, d| {
            let x = element(ring, &self.rows[i][j], d)?;
            if x.degree() != d {
                return Err(Error::DegreeLaw { row: i + 1, col: j + 1, expected: d.clone(), actual: x.degree().clone() });
            }
            Ok(x)
        })
    }
}

/// `e_{i,j}(entry)` with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementaryLiteral {
    pub i: usize,
    pub j: usize,
    pub entry: ElementLiteral,
}

impl ElementaryLiteral {
    pub fn resolve(&self, ring: &Arc<GradedRing>, family: &ShiftFamily) -> Result<ElementaryGenerator, Error> {
        let n = family.len();
        if self.i == 0 || self.j == 0 || self.i > n || self.j > n || self.i == self.j {
            return Err(Error::InvalidIndex(self.i, self.j));
        }
        let (i, j) = (self.i - 1, self.j - 1);
        let r = element(ring, &self.entry, &family.difference(i, j))?;
        ElementaryGenerator::new(ring, family, i, j, r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealName {
    Zero,
    Unit,
    /// Kernel of the augmentation `Σ c_g g ↦ Σ c_g` of an ungraded group ring.
    Augmentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    Named(IdealName),
    Generated {
        generators: Vec<ElementLiteral>,
    },
}

impl IdealSpec {
    pub fn resolve(&self, ring: &Arc<GradedRing>) -> Result<GradedIdeal, Error> {
        let zero = GradeElement::zero(ring.grading());
        match self {
            IdealSpec::Named(IdealName::Zero) => Ok(GradedIdeal::zero(ring)),
            IdealSpec::Named(IdealName::Unit) => Ok(GradedIdeal::unit(ring)),
            IdealSpec::Named(IdealName::Augmentation) => match ring.kind() {
                RingKind::GroupRing { modulus, group, graded: false } => {
                    let identity = GradeElement::zero(group);
                    let e = group.element_index(&identity).expect("identity is a group element");
                    let order = group.order().unwrap_or(1) as usize;
                    let gens = (0..order)
                        .filter(|&k| k != e)
                        .map(|k| {
                            let mut v = vec![0; order];
                            v[k] = 1;
                            v[e] = modulus - 1;
                            ring.element(zero.clone(), Payload::Coeffs(v))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    GradedIdeal::new(ring, gens)
                }
                _ => Err(Error::Unsupported(
                    "the augmentation ideal is only homogeneous for an ungraded group ring".into(),
                )),
            },
            IdealSpec::Generated { generators } => {
                let gens = generators.iter().map(|g| element(ring, g, &zero)).collect::<Result<Vec<_>, _>>()?;
                GradedIdeal::new(ring, gens)
            }
        }
    }
}
