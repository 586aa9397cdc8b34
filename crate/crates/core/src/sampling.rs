//! Random well-typed instances for fuzzing identities.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grading::GradeElement;
use crate::matrix::{ElementaryGenerator, GradedMatrix, ShiftFamily};
use crate::ring::{GradedRing, HomogeneousElement};
use crate::whitehead::{
    commutator_embedding, conjugate_block_factorization, hyperbolic_factorization, rotation_factorization,
    stable_perfectness_witness, Certificate,
};

/// A random grade element; free coordinates are drawn from `-spread..=spread`.
pub fn random_grade<R: Rng + ?Sized>(ring: &GradedRing, spread: i64, rng: &mut R) -> Result<GradeElement> {
    let g = ring.grading();
    let mut coords: Vec<i64> = (0..g.free_rank()).map(|_| rng.random_range(-spread..=spread)).collect();
    coords.extend(g.torsion().iter().map(|&n| rng.random_range(0..n as i64)));
    GradeElement::new(g, &coords)
}

/// A degree that has a homogeneous unit, drawn from the ring's support (any degree for Laurent rings).
pub fn random_unit_degree<R: Rng + ?Sized>(ring: &GradedRing, rng: &mut R) -> Result<GradeElement> {
    match ring.support() {
        None => random_grade(ring, 3, rng),
        Some(support) => {
            let with_units: Vec<GradeElement> =
                support.into_iter().filter(|d| ring.find_unit(d).is_some()).collect();
            Ok(with_units[rng.random_range(0..with_units.len())].clone())
        }
    }
}

/// A random family of `n` shifts.
pub fn random_family<R: Rng + ?Sized>(ring: &GradedRing, n: usize, rng: &mut R) -> Result<ShiftFamily> {
    let shifts = (0..n).map(|_| random_grade(ring, 2, rng)).collect::<Result<Vec<_>>>()?;
    ShiftFamily::new(ring.grading(), shifts)
}

/// A random homogeneous unit of `degree`; errors when the component has none.
pub fn random_unit<R: Rng + ?Sized>(
    ring: &GradedRing,
    degree: &GradeElement,
    rng: &mut R,
) -> Result<HomogeneousElement> {
    for _ in 0..64 {
        let x = ring.sample(degree, rng)?;
        if ring.unit_inverse(&x).is_some() {
            return Ok(x);
        }
    }
    ring.find_unit(degree).ok_or_else(|| Error::NotCrossedProduct(degree.clone()))
}

/// A matrix of the given degree with uniformly random entries.
pub fn random_matrix<R: Rng + ?Sized>(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    degree: &GradeElement,
    rng: &mut R,
) -> Result<GradedMatrix> {
    GradedMatrix::from_fn(ring, family, degree, |_, _, d| ring.sample(d, rng))
}

pub fn random_elementary<R: Rng + ?Sized>(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    rng: &mut R,
) -> Result<ElementaryGenerator> {
    let n = family.len();
    if n < 2 {
        return Err(Error::InvalidParameter("elementary generators need two shifts".into()));
    }
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    let r = ring.sample(&family.difference(i, j), rng)?;
    ElementaryGenerator::new(ring, family, i, j, r)
}

/// A random invertible degree-0 matrix: a diagonal of degree-0 units times `len` elementary factors.
pub fn random_invertible<R: Rng + ?Sized>(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    len: usize,
    rng: &mut R,
) -> Result<GradedMatrix> {
    let zero = GradeElement::zero(ring.grading());
    let mut m = GradedMatrix::from_fn(ring, family, &zero, |i, j, d| {
        if i == j {
            random_unit(ring, &zero, rng)
        } else {
            Ok(ring.zero(d))
        }
    })?;
    if family.len() >= 2 {
        for _ in 0..len {
            m = m.mul(&random_elementary(ring, family, rng)?.matrix())?;
        }
    }
    Ok(m)
}

/// Outcome of one identity over a batch of random instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub identity: String,
    pub checked: usize,
    pub failures: usize,
}

/// Runs each factorisation identity on `samples` random instances over `family`.
pub fn fuzz_identities<R: Rng + ?Sized>(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<IdentityTally>> {
    type Check<R> = fn(&Arc<GradedRing>, &ShiftFamily, &mut R) -> Result<Certificate>;
    let checks: [(&str, Check<R>); 5] = [
        ("hyperbolic", |r, f, rng| hyperbolic_factorization(&random_invertible(r, f, 3, rng)?)),
        ("commutator", |r, f, rng| {
            let g = random_invertible(r, f, 3, rng)?;
            commutator_embedding(&g, &random_invertible(r, f, 3, rng)?)
        }),
        ("stable-perfectness", |r, f, rng| {
            let f2 = if f.len() < 2 { f.repeated(2)? } else { f.clone() };
            stable_perfectness_witness(&random_elementary(r, &f2, rng)?)
        }),
        ("rotation", |r, f, rng| {
            let lambda = random_unit_degree(r, rng)?;
            rotation_factorization(r, &random_unit(r, &lambda, rng)?, f)
        }),
        ("conjugate-block", |r, f, rng| {
            let lambda = random_unit_degree(r, rng)?;
            let unit = random_unit(r, &lambda, rng)?;
            conjugate_block_factorization(&random_invertible(r, f, 3, rng)?, &unit)
        }),
    ];
    let mut out = Vec::new();
    for (name, check) in checks {
        let mut failures = 0;
        for _ in 0..samples {
            if !check(ring, family, rng)?.verified() {
                failures += 1;
            }
        }
        out.push(IdentityTally { identity: name.into(), checked: samples, failures });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradeGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identities_hold_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rings = [
            GradedRing::pair_ring(4, 2).unwrap(),
            GradedRing::laurent(3).unwrap(),
            GradedRing::group_ring(2, GradeGroup::cyclic(2).unwrap(), true).unwrap(),
        ];
        for ring in &rings {
            let fam = random_family(ring, 2, &mut rng).unwrap();
            for t in fuzz_identities(ring, &fam, 5, &mut rng).unwrap() {
                assert_eq!(t.failures, 0, "{} over {}", t.identity, ring.kind_name());
            }
        }
    }

    #[test]
    fn random_invertibles_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ring = GradedRing::laurent(2).unwrap();
        let fam = random_family(&ring, 3, &mut rng).unwrap();
        let m = random_invertible(&ring, &fam, 5, &mut rng).unwrap();
        assert!(m.mul(&m.invert().unwrap()).unwrap().is_identity());
    }
}
