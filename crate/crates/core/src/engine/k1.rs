use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::closure::GroupSnapshot;
use super::group::{self, EngineConfig, MatrixGroup, Method};
use super::quotient::CosetSpace;
use super::space::{Element, MatrixSpace};
use crate::error::{Error, Result};
use crate::grading::GradeElement;
use crate::matrix::{same_ring, ElementaryGenerator, GradedMatrix, ShiftFamily};
use crate::ring::{GradedIdeal, GradedRing, HomogeneousElement};
use crate::whitehead::{conjugate_block_factorization, Certificate};

/// Closure of explicit generators, each invertible and of degree 0 over the space's family.
pub fn generate_group(space: &Arc<MatrixSpace>, gens: &[GradedMatrix], cap: usize) -> Result<GroupSnapshot> {
    let elements = gens.iter().map(|g| space.pack_element(g)).collect::<Result<Vec<_>>>()?;
    Ok(GroupSnapshot::generate(space, elements, cap))
}

pub fn elementary_group(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    group::elementary(&MatrixSpace::new(ring, family, level)?, cfg)
}

pub fn gl_group(ring: &Arc<GradedRing>, family: &ShiftFamily, level: usize, cfg: &EngineConfig) -> Result<MatrixGroup> {
    let space = MatrixSpace::new(ring, family, level)?;
    let e = group::elementary(&space, cfg)?;
    group::general_linear(&space, &e, cfg)
}

pub fn congruence_subgroup(
    ring: &Arc<GradedRing>,
    ideal: &GradedIdeal,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    let space = MatrixSpace::new(ring, family, level)?;
    let e = group::elementary(&space, cfg)?;
    let rel = group::relative_elementary(&space, ideal, &e, cfg)?;
    group::congruence(&space, ideal, &rel, cfg)
}

pub fn relative_elementary_group(
    ring: &Arc<GradedRing>,
    ideal: &GradedIdeal,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    let space = MatrixSpace::new(ring, family, level)?;
    let e = group::elementary(&space, cfg)?;
    group::relative_elementary(&space, ideal, &e, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub order: u128,
    pub commutator_order: u128,
    pub perfect: bool,
    /// A generator of `E` outside `[E, E]`.
    pub witness: Option<ElementaryGenerator>,
    pub witness_matrix: Option<GradedMatrix>,
}

/// Decides `[E, E] = E`; `E` is perfect exactly when every generator is a product of commutators.
pub fn perfectness_check(e: &MatrixGroup, cfg: &EngineConfig) -> Result<PerfectnessReport> {
    let c = group::commutator_subgroup(e, cfg)?;
    let space = e.space();
    let outside = e.generators().iter().position(|g| !c.contains(&g.m));
    Ok(PerfectnessReport {
        order: e.order(),
        commutator_order: c.order(),
        perfect: outside.is_none(),
        witness: outside.and_then(|k| e.label(k).cloned()),
        witness_matrix: outside.map(|k| space.unpack(&e.generators()[k].m)),
    })
}

/// `GL/E` (or `GL(A, I)/E(A, I)`) at one family and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Report {
    pub family: ShiftFamily,
    pub level: usize,
    pub gl_order: u128,
    pub e_order: u128,
    pub gl_method: Method,
    pub e_method: Method,
    pub normal: bool,
    /// `None` when `E` is not normal.
    pub abelian: Option<bool>,
    /// Invariant factors of the quotient when it is an abelian group.
    pub invariants: Option<Vec<u64>>,
    pub quotient_order: u128,
    pub representatives: Vec<GradedMatrix>,
}

impl K1Report {
    /// Whether the quotient is known to be an abelian group.
    pub fn is_settled(&self) -> bool {
        self.invariants.is_some()
    }
}

/// The groups behind a [`K1Report`], kept for class lookups.
#[derive(Debug, Clone)]
pub struct LocalK1 {
    space: Arc<MatrixSpace>,
    gl: MatrixGroup,
    e: MatrixGroup,
    cosets: CosetSpace,
}

impl LocalK1 {
    pub fn absolute(ring: &Arc<GradedRing>, family: &ShiftFamily, level: usize, cfg: &EngineConfig) -> Result<Self> {
        let space = MatrixSpace::new(ring, family, level)?;
        let e = group::elementary(&space, cfg)?;
        let gl = group::general_linear(&space, &e, cfg)?;
        Self::from_groups(space, gl, e)
    }

    pub fn relative(
        ring: &Arc<GradedRing>,
        ideal: &GradedIdeal,
        family: &ShiftFamily,
        level: usize,
        cfg: &EngineConfig,
    ) -> Result<Self> {
        if !same_ring(ideal.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        let space = MatrixSpace::new(ring, family, level)?;
        let e = group::elementary(&space, cfg)?;
        let rel = group::relative_elementary(&space, ideal, &e, cfg)?;
        let gl = group::congruence(&space, ideal, &rel, cfg)?;
        Self::from_groups(space, gl, rel)
    }

    fn from_groups(space: Arc<MatrixSpace>, gl: MatrixGroup, e: MatrixGroup) -> Result<Self> {
        let cosets = CosetSpace::new(&gl, &e)?;
        Ok(LocalK1 { space, gl, e, cosets })
    }

    pub fn space(&self) -> &Arc<MatrixSpace> {
        &self.space
    }

    pub fn gl(&self) -> &MatrixGroup {
        &self.gl
    }

    pub fn e(&self) -> &MatrixGroup {
        &self.e
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn class_count(&self) -> usize {
        self.cosets.representatives().len()
    }

    /// Coset of `m`; `None` when `m` is not in the ambient group.
    pub fn class_of(&self, m: &[u16]) -> Option<usize> {
        if !self.gl.contains(m) {
            return None;
        }
        self.cosets.class_of(&self.e, m)
    }

    pub fn class_of_matrix(&self, g: &GradedMatrix) -> Result<usize> {
        self.class_of(&self.space.pack(g)?).ok_or(Error::NotContained)
    }

    pub fn representative(&self, k: usize) -> GradedMatrix {
        self.space.unpack(&self.cosets.representatives()[k].m)
    }

    pub fn report(&self) -> K1Report {
        K1Report {
            family: self.space.base().clone(),
            level: self.space.level(),
            gl_order: self.gl.order(),
            e_order: self.e.order(),
            gl_method: self.gl.method(),
            e_method: self.e.method(),
            normal: self.cosets.is_normal(),
            abelian: self.cosets.is_abelian(),
            invariants: self.cosets.invariants().map(<[u64]>::to_vec),
            quotient_order: self.cosets.index(),
            representatives: (0..self.class_count()).map(|k| self.representative(k)).collect(),
        }
    }
}

pub fn k1_local(ring: &Arc<GradedRing>, family: &ShiftFamily, level: usize, cfg: &EngineConfig) -> Result<K1Report> {
    Ok(LocalK1::absolute(ring, family, level, cfg)?.report())
}

pub fn k1_relative_local(
    ring: &Arc<GradedRing>,
    ideal: &GradedIdeal,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<K1Report> {
    Ok(LocalK1::relative(ring, ideal, family, level, cfg)?.report())
}

/// Image of every coset representative of `from` under a packed map, as classes of `to`.
///
/// Also checks the map is well defined on cosets: generators of `from`'s subgroup must
/// land in `to`'s subgroup.
fn class_map<F>(from: &LocalK1, to: &LocalK1, mut f: F) -> Result<(Vec<usize>, bool)>
where
    F: FnMut(&[u16]) -> Result<crate::engine::Packed>,
{
    let mut well_defined = true;
    for g in from.e.generators() {
        if !to.e.contains(&f(&g.m)?) {
            well_defined = false;
        }
    }
    let mut classes = Vec::with_capacity(from.class_count());
    for r in from.cosets.representatives() {
        match to.class_of(&f(&r.m)?) {
            Some(c) => classes.push(c),
            None => {
                return Err(Error::Precondition("map leaves the target group".into()));
            }
        }
    }
    Ok((classes, well_defined))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub relative: K1Report,
    pub absolute: K1Report,
    pub quotient: K1Report,
    /// `(p₂)_*` on relative classes, as absolute class indices.
    pub inclusion: Vec<usize>,
    /// `q_*` on absolute classes, as quotient class indices.
    pub reduction: Vec<usize>,
    pub image: Vec<usize>,
    pub kernel: Vec<usize>,
    pub well_defined: bool,
    pub exact: bool,
}

/// Checks `K₁(A, I) → K₁(A) → K₁(A/I)` is exact in the middle, class by class.
pub fn check_exactness(
    ring: &Arc<GradedRing>,
    ideal: &GradedIdeal,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<ExactnessReport> {
    let rel = LocalK1::relative(ring, ideal, family, level, cfg)?;
    let abs = LocalK1::absolute(ring, family, level, cfg)?;
    let quotient_ring = GradedRing::quotient(ideal);
    let quo = LocalK1::absolute(&quotient_ring, family, level, cfg)?;

    let (inclusion, wd1) = class_map(&rel, &abs, |m| Ok(m.into()))?;
    let (reduction, wd2) = class_map(&abs, &quo, |m| {
        quo.space.translate(&abs.space, m, |x| quotient_ring.reduce(x))
    })?;
    let image: BTreeSet<usize> = inclusion.iter().copied().collect();
    let identity_class = quo.class_of(&quo.space.identity()).ok_or(Error::NotContained)?;
    let kernel: BTreeSet<usize> = (0..reduction.len()).filter(|&k| reduction[k] == identity_class).collect();
    Ok(ExactnessReport {
        exact: image == kernel,
        relative: rel.report(),
        absolute: abs.report(),
        quotient: quo.report(),
        inclusion,
        reduction,
        image: image.into_iter().collect(),
        kernel: kernel.into_iter().collect(),
        well_defined: wd1 && wd2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleReport {
    pub double: K1Report,
    /// Classes of `K₁(D)` killed by the first projection.
    pub kernel: Vec<usize>,
    pub well_defined: bool,
}

/// `ker((p₁)_*: K₁(D) → K₁(A))` for the double `D = A ×_{A/I} A`.
pub fn double_kernel(
    ring: &Arc<GradedRing>,
    ideal: &GradedIdeal,
    family: &ShiftFamily,
    level: usize,
    cfg: &EngineConfig,
) -> Result<DoubleReport> {
    if !same_ring(ideal.ring(), ring) {
        return Err(Error::RingMismatch);
    }
    let double = GradedRing::double(ideal);
    let d = LocalK1::absolute(&double, family, level, cfg)?;
    let a = LocalK1::absolute(ring, family, level, cfg)?;
    let (p1, well_defined) = class_map(&d, &a, |m| a.space.translate(&d.space, m, |x| double.project(x, true)))?;
    let identity_class = a.class_of(&a.space.identity()).ok_or(Error::NotContained)?;
    Ok(DoubleReport {
        double: d.report(),
        kernel: (0..p1.len()).filter(|&k| p1[k] == identity_class).collect(),
        well_defined,
    })
}

/// An element of `K₁(A)(α)` at a given level, through its representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Class {
    representative: GradedMatrix,
    family: ShiftFamily,
    level: usize,
}

impl K1Class {
    /// `representative` is indexed by `family` repeated `level` times.
    pub fn new(representative: GradedMatrix, family: &ShiftFamily, level: usize) -> Result<Self> {
        if representative.family() != &family.repeated(level)? {
            return Err(Error::FamilyMismatch);
        }
        if !representative.degree().is_zero() {
            return Err(Error::DegreeMismatch {
                expected: GradeElement::zero(family.grading()),
                actual: representative.degree().clone(),
            });
        }
        representative.invert()?;
        Ok(K1Class { representative, family: family.clone(), level })
    }

    pub fn representative(&self) -> &GradedMatrix {
        &self.representative
    }

    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

/// The class under `S ⊆ T`: block embedding, identity on the remaining positions.
pub fn inclusion_map(class: &K1Class, target: &ShiftFamily) -> Result<K1Class> {
    let source = class.representative.family();
    let positions = source.embedding_into(target)?;
    let rep = class.representative.embed(target, &positions)?;
    K1Class::new(rep, target, 1)
}

/// `λ · [h]`: same entries over the family shifted by `λ`.
pub fn gamma_action(class: &K1Class, lambda: &GradeElement) -> Result<K1Class> {
    let rep = class.representative.suspend(lambda)?;
    K1Class::new(rep, &class.family.shifted(lambda)?, class.level)
}

/// Certificate that `diag(h, r h⁻¹ r⁻¹)` is elementary over `(α, λ + α)` for a unit `r` of
/// degree `λ`, so `[h]` and its shift by `λ` agree stably.
pub fn crossed_product_triviality_check(
    ring: &Arc<GradedRing>,
    lambda: &GradeElement,
    h: &GradedMatrix,
) -> Result<Certificate> {
    if !same_ring(ring, h.ring()) {
        return Err(Error::RingMismatch);
    }
    let r = crossed_unit(ring, lambda)?;
    conjugate_block_factorization(h, &r)
}

fn crossed_unit(ring: &Arc<GradedRing>, lambda: &GradeElement) -> Result<HomogeneousElement> {
    if lambda.is_zero() {
        return Ok(ring.one());
    }
    ring.find_unit(lambda).ok_or_else(|| Error::NotCrossedProduct(lambda.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCheck {
    pub class: usize,
    pub lambda: GradeElement,
    pub unit: HomogeneousElement,
    pub moved: K1Class,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaActionReport {
    pub report: K1Report,
    pub checks: Vec<GammaCheck>,
    /// Every class is fixed by every tested shift.
    pub trivial: bool,
}

/// Certifies that each shift in `lambdas` fixes every class of `K₁(A)(α)` at `level`.
pub fn gamma_action_check(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    level: usize,
    lambdas: &[GradeElement],
    cfg: &EngineConfig,
) -> Result<GammaActionReport> {
    let local = LocalK1::absolute(ring, family, level, cfg)?;
    let mut checks = Vec::new();
    for lambda in lambdas {
        let unit = crossed_unit(ring, lambda)?;
        for class in 0..local.class_count() {
            let original = K1Class::new(local.representative(class), family, level)?;
            let moved = gamma_action(&original, lambda)?;
            let certificate = conjugate_block_factorization(original.representative(), &unit)?;
            checks.push(GammaCheck { class, lambda: lambda.clone(), unit: unit.clone(), moved, certificate });
        }
    }
    let trivial = checks.iter().all(|c| c.certificate.verified());
    Ok(GammaActionReport { report: local.report(), checks, trivial })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub reports: Vec<K1Report>,
    /// `maps[k]`: classes of level `k` sent to classes of level `k + 1` under `φ`.
    pub maps: Vec<Vec<usize>>,
    pub bijective: Vec<bool>,
    /// First listed level from which invariants agree and every later map is bijective.
    pub stable_from: Option<usize>,
}

/// `k1_local` at each level with the maps induced by `M ↦ diag(M, I)`.
pub fn stabilization_check(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    levels: &[usize],
    cfg: &EngineConfig,
) -> Result<StabilizationReport> {
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted[0] == 0 {
        return Err(Error::InvalidParameter("levels must be a nonempty list of positive integers".into()));
    }
    let locals = sorted
        .iter()
        .map(|&l| LocalK1::absolute(ring, family, l, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    let mut bijective = Vec::new();
    for w in locals.windows(2) {
        let (from, to) = (&w[0], &w[1]);
        let (map, well_defined) = class_map(from, to, |m| to.space.embed_leading(&from.space, m))?;
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        bijective.push(well_defined && distinct.len() == map.len() && map.len() == to.class_count());
        maps.push(map);
    }
    let reports: Vec<K1Report> = locals.iter().map(LocalK1::report).collect();
    let stable_from = (0..reports.len())
        .find(|&k| {
            reports[k].invariants.is_some()
                && reports[k..].iter().all(|r| r.invariants == reports[k].invariants)
                && bijective[k..].iter().all(|&b| b)
        })
        .map(|k| sorted[k]);
    Ok(StabilizationReport { reports, maps, bijective, stable_from })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionReport {
    pub lambda: GradeElement,
    pub original: K1Report,
    pub suspended: K1Report,
    /// Classes of the original sent to classes of the suspension.
    pub map: Vec<usize>,
    pub bijective: bool,
}

/// Compares `K₁` at `α` and at `α + λ` through the entrywise identity on representatives.
pub fn suspension_check(
    ring: &Arc<GradedRing>,
    family: &ShiftFamily,
    level: usize,
    lambda: &GradeElement,
    cfg: &EngineConfig,
) -> Result<SuspensionReport> {
    let original = LocalK1::absolute(ring, family, level, cfg)?;
    let suspended = LocalK1::absolute(ring, &family.shifted(lambda)?, level, cfg)?;
    let (map, well_defined) = class_map(&original, &suspended, |m| {
        suspended.space.pack(&original.space.unpack(m).suspend(lambda)?)
    })?;
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    let bijective = well_defined && distinct.len() == map.len() && map.len() == suspended.class_count();
    Ok(SuspensionReport {
        lambda: lambda.clone(),
        original: original.report(),
        suspended: suspended.report(),
        map,
        bijective,
    })
}

/// Whether every commutator of `GL` generators, stabilised to twice the level, is elementary there.
pub fn whitehead_check(ring: &Arc<GradedRing>, family: &ShiftFamily, level: usize, cfg: &EngineConfig) -> Result<bool> {
    let local = LocalK1::absolute(ring, family, level, cfg)?;
    let doubled = MatrixSpace::new(ring, family, 2 * level)?;
    let e2 = group::elementary(&doubled, cfg)?;
    let gens: &[Element] = local.gl.generators();
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a + 1..] {
            let c = local.space.commutator(x, y);
            if !e2.contains(&doubled.embed_leading(&local.space, &c.m)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `ring` has an invertible homogeneous element in every degree of `degrees`.
pub fn is_crossed_product_on(ring: &GradedRing, degrees: &[GradeElement]) -> bool {
    degrees.iter().all(|d| d.is_zero() || ring.find_unit(d).is_some())
}

#[cfg(test)]
mod tests;
