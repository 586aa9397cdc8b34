use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::StabilizerChain;
use super::closure::GroupSnapshot;
use super::space::{Element, MatrixSpace, Packed};
use crate::error::{Error, Result};
use crate::matrix::{ElementaryGenerator, GradedMatrix};
use crate::ring::GradedIdeal;
use crate::whitehead::{ElementaryWord, Letter};

/// How finite groups are materialised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Explicit element sets; groups defined by a property are enumerated candidate by candidate.
    Exhaustive,
    /// Stabiliser chains; groups defined by a property are generated (see [`Method::Generated`]).
    StabilizerChain,
    /// Exhaustive when the candidate count fits under the cap, chains otherwise.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest element set or candidate scan allowed before reporting truncation.
    pub cap: usize,
    pub strategy: Strategy,
    /// Seed for the random invertible samples used by generated chains.
    pub seed: u64,
    pub samples: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { cap: 1_000_000, strategy: Strategy::Exhaustive, seed: 0, samples: 8 }
    }
}

impl EngineConfig {
    fn use_chain(&self, space: &MatrixSpace) -> bool {
        match self.strategy {
            Strategy::Exhaustive => false,
            Strategy::StabilizerChain => true,
            Strategy::Auto => space.candidate_count() > self.cap as u128,
        }
    }
}

/// Provenance of a materialised group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Every candidate matrix was tested.
    Enumerated,
    /// Closure of explicit generators.
    Closure,
    /// Stabiliser chain of explicit generators.
    Chain,
    /// Stabiliser chain of elementary and diagonal generators plus random samples of a
    /// group defined by a property. Exact for the subgroup generated, not a proof that
    /// the whole group was reached.
    Generated,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Enumerated => "enumerated",
            Method::Closure => "closure",
            Method::Chain => "chain",
            Method::Generated => "generated",
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Snapshot(GroupSnapshot),
    Chain(StabilizerChain),
}

/// A finite group of degree-0 matrices in one [`MatrixSpace`].
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    repr: Repr,
    method: Method,
    /// elementary labels of the leading generators, when they are elementary
    labels: Vec<ElementaryGenerator>,
}

impl MatrixGroup {
    pub fn space(&self) -> &Arc<MatrixSpace> {
        match &self.repr {
            Repr::Snapshot(s) => s.space(),
            Repr::Chain(c) => c.space(),
        }
    }

    pub fn order(&self) -> u128 {
        match &self.repr {
            Repr::Snapshot(s) => s.order() as u128,
            Repr::Chain(c) => c.order(),
        }
    }

    pub fn contains(&self, m: &[u16]) -> bool {
        match &self.repr {
            Repr::Snapshot(s) => s.contains(m),
            Repr::Chain(c) => c.contains(m),
        }
    }

    pub fn generators(&self) -> &[Element] {
        match &self.repr {
            Repr::Snapshot(s) => s.generators(),
            Repr::Chain(c) => c.generators(),
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn snapshot(&self) -> Option<&GroupSnapshot> {
        match &self.repr {
            Repr::Snapshot(s) => Some(s),
            Repr::Chain(_) => None,
        }
    }

    pub fn chain(&self) -> Option<&StabilizerChain> {
        match &self.repr {
            Repr::Chain(c) => Some(c),
            Repr::Snapshot(_) => None,
        }
    }

    /// Elementary label of generator `k`, if it is one.
    pub fn label(&self, k: usize) -> Option<&ElementaryGenerator> {
        self.labels.get(k)
    }

    pub fn contains_matrix(&self, g: &GradedMatrix) -> Result<bool> {
        Ok(self.contains(&self.space().pack(g)?))
    }

    /// Word in elementary letters for `m`, available for closures of elementary generators.
    pub fn word(&self, m: &[u16]) -> Option<ElementaryWord> {
        let snap = self.snapshot()?;
        let letters = snap.word(m)?;
        let space = self.space();
        let mut w = ElementaryWord::new(space.ring(), space.family());
        for (k, inverse) in letters {
            let generator = self.labels.get(k)?.clone();
            w.push(Letter::Elementary { generator, inverse }).ok()?;
        }
        Some(w)
    }
}

enum Builder {
    Snapshot(GroupSnapshot, usize),
    Chain(StabilizerChain),
}

impl Builder {
    fn new(space: &Arc<MatrixSpace>, cfg: &EngineConfig) -> Self {
        if cfg.use_chain(space) {
            Builder::Chain(StabilizerChain::new(space, Vec::new()))
        } else {
            Builder::Snapshot(GroupSnapshot::trivial(space), cfg.cap)
        }
    }

    fn contains(&self, m: &[u16]) -> bool {
        match self {
            Builder::Snapshot(s, _) => s.contains(m),
            Builder::Chain(c) => c.contains(m),
        }
    }

    /// Adds `g` if it is not already a member; reports whether it was added.
    fn add(&mut self, g: &Element) -> Result<bool> {
        if self.contains(&g.m) {
            return Ok(false);
        }
        match self {
            Builder::Snapshot(s, cap) => {
                s.extend(alloc::vec![g.clone()], *cap);
                if s.truncated() {
                    return Err(Error::Truncated { cap: *cap });
                }
            }
            Builder::Chain(c) => c.add_generators(alloc::vec![g.clone()]),
        }
        Ok(true)
    }

    fn finish(self, labels: Vec<ElementaryGenerator>) -> MatrixGroup {
        match self {
            Builder::Snapshot(s, _) => MatrixGroup { repr: Repr::Snapshot(s), method: Method::Closure, labels },
            Builder::Chain(c) => MatrixGroup { repr: Repr::Chain(c), method: Method::Chain, labels },
        }
    }
}

/// Closure of `gens` under multiplication; errors on truncation.
///
/// Closures keep every generator given, so generator indices line up with `labels`.
pub fn subgroup(
    space: &Arc<MatrixSpace>,
    gens: Vec<Element>,
    labels: Vec<ElementaryGenerator>,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    if cfg.use_chain(space) {
        let chain = StabilizerChain::new(space, gens);
        return Ok(MatrixGroup { repr: Repr::Chain(chain), method: Method::Chain, labels });
    }
    let snap = GroupSnapshot::generate(space, gens, cfg.cap);
    if snap.truncated() {
        return Err(Error::Truncated { cap: cfg.cap });
    }
    Ok(MatrixGroup { repr: Repr::Snapshot(snap), method: Method::Closure, labels })
}

/// `E_n(A)(α)` at the space's level.
pub fn elementary(space: &Arc<MatrixSpace>, cfg: &EngineConfig) -> Result<MatrixGroup> {
    let (gens, labels): (Vec<_>, Vec<_>) = space.elementary_generators(None)?.into_iter().unzip();
    subgroup(space, gens, labels, cfg)
}

/// Smallest subgroup containing `seeds` and normalised by `conj_by`.
pub fn normal_closure(
    space: &Arc<MatrixSpace>,
    seeds: &[Element],
    conj_by: &[Element],
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    let mut b = Builder::new(space, cfg);
    let mut gens: Vec<Element> = Vec::new();
    for s in seeds {
        if b.add(s)? {
            gens.push(s.clone());
        }
    }
    let mut k = 0;
    while k < gens.len() {
        for s in conj_by {
            let x = space.conjugate(s, &gens[k]);
            if b.add(&x)? {
                gens.push(x);
            }
        }
        k += 1;
    }
    Ok(b.finish(Vec::new()))
}

/// `E_n(A, I)(α)`: the normal closure in `E` of the elementary generators with entries in `I`.
pub fn relative_elementary(
    space: &Arc<MatrixSpace>,
    ideal: &GradedIdeal,
    e: &MatrixGroup,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    let seeds: Vec<Element> = space.elementary_generators(Some(ideal))?.into_iter().map(|g| g.0).collect();
    normal_closure(space, &seeds, e.generators(), cfg)
}

/// `[G, G]`: normal closure of the commutators of generators.
pub fn commutator_subgroup(g: &MatrixGroup, cfg: &EngineConfig) -> Result<MatrixGroup> {
    let space = g.space();
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a + 1..] {
            let c = space.commutator(x, y);
            if !space.is_identity(&c.m) {
                seeds.push(c);
            }
        }
    }
    normal_closure(space, &seeds, gens, cfg)
}

/// All degree-0 matrices with entries from `allowed` (per position) that are invertible.
fn scan(space: &Arc<MatrixSpace>, allowed: &[Vec<u16>], total: u128) -> Vec<Packed> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..total as u64)
            .into_par_iter()
            .filter_map(|idx| {
                let m = space.candidate(idx as u128, allowed);
                space.is_invertible(&m).then_some(m)
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total)
            .filter_map(|idx| {
                let m = space.candidate(idx, allowed);
                space.is_invertible(&m).then_some(m)
            })
            .collect()
    }
}

/// A group defined by "invertible with entries in `allowed`", containing `inside`.
fn defined_group(
    space: &Arc<MatrixSpace>,
    ideal: Option<&GradedIdeal>,
    inside: &MatrixGroup,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    let allowed = space.allowed_entries(ideal)?;
    let total = allowed.iter().fold(1u128, |acc, v| acc.saturating_mul(v.len() as u128));
    let chain = match cfg.strategy {
        Strategy::Exhaustive => false,
        Strategy::StabilizerChain => true,
        Strategy::Auto => total > cfg.cap as u128,
    };
    if !chain {
        if total > cfg.cap as u128 {
            return Err(Error::Truncated { cap: cfg.cap });
        }
        let elements = scan(space, &allowed, total);
        // generators: those of `inside`, then every element not yet reached
        let mut closure = GroupSnapshot::generate(space, inside.generators().to_vec(), usize::MAX);
        for m in &elements {
            if !closure.contains(m) {
                let e = space.element(m.clone()).ok_or(Error::NotInvertible)?;
                closure.extend(alloc::vec![e], usize::MAX);
            }
        }
        if closure.order() != elements.len() {
            return Err(Error::Precondition("enumerated set is not closed under multiplication".into()));
        }
        let snap = GroupSnapshot::enumerated(space, elements, closure.generators().to_vec());
        return Ok(MatrixGroup { repr: Repr::Snapshot(snap), method: Method::Enumerated, labels: Vec::new() });
    }
    let mut gens = inside.generators().to_vec();
    gens.extend(space.diagonal_units(ideal));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found = 0;
    let mut tries = 0;
    while found < cfg.samples && tries < 64 * cfg.samples.max(1) {
        tries += 1;
        let m = space.random(&allowed, &mut rng);
        if let Some(e) = space.element(m) {
            gens.push(e);
            found += 1;
        }
    }
    let chain = StabilizerChain::new(space, gens);
    Ok(MatrixGroup { repr: Repr::Chain(chain), method: Method::Generated, labels: Vec::new() })
}

/// `GL_n(A)(α)` at the space's level; `e` supplies generators it must contain.
pub fn general_linear(space: &Arc<MatrixSpace>, e: &MatrixGroup, cfg: &EngineConfig) -> Result<MatrixGroup> {
    defined_group(space, None, e, cfg)
}

/// `GL_n(A, I)(α)`, the kernel of reduction modulo `I`; `inside` supplies generators.
pub fn congruence(
    space: &Arc<MatrixSpace>,
    ideal: &GradedIdeal,
    inside: &MatrixGroup,
    cfg: &EngineConfig,
) -> Result<MatrixGroup> {
    defined_group(space, Some(ideal), inside, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{GradeElement, GradeGroup};
    use crate::matrix::ShiftFamily;
    use crate::ring::{GradedRing, Payload};

    fn space(m: u64, n: usize) -> Arc<MatrixSpace> {
        let r = GradedRing::trivial(m, GradeGroup::trivial()).unwrap();
        MatrixSpace::new(&r, &ShiftFamily::zeros(r.grading(), n).unwrap(), 1).unwrap()
    }

    #[test]
    fn classical_orders() {
        let cfg = EngineConfig::default();
        // |SL_2(F_2)| = 6, |SL_2(F_3)| = 24, |GL_2(F_3)| = 48
        let s2 = space(2, 2);
        assert_eq!(elementary(&s2, &cfg).unwrap().order(), 6);
        let s3 = space(3, 2);
        let e = elementary(&s3, &cfg).unwrap();
        assert_eq!(e.order(), 24);
        let gl = general_linear(&s3, &e, &cfg).unwrap();
        assert_eq!(gl.order(), 48);
        assert_eq!(gl.method(), Method::Enumerated);
        let chain_cfg = EngineConfig { strategy: Strategy::StabilizerChain, ..cfg.clone() };
        let glc = general_linear(&s3, &e, &chain_cfg).unwrap();
        assert_eq!(glc.order(), 48);
        assert_eq!(glc.method(), Method::Generated);
    }

    #[test]
    fn truncation_is_reported() {
        let cfg = EngineConfig { cap: 10, ..EngineConfig::default() };
        let s3 = space(3, 2);
        assert_eq!(elementary(&s3, &cfg).unwrap_err(), Error::Truncated { cap: 10 });
    }

    #[test]
    fn relative_and_congruence_subgroups() {
        let cfg = EngineConfig::default();
        let s = space(4, 1);
        let r = s.ring().clone();
        let two = GradedIdeal::new(&r, alloc::vec![r.element(GradeElement::zero(r.grading()), Payload::Residue(2)).unwrap()]).unwrap();
        let e = elementary(&s, &cfg).unwrap();
        assert_eq!(e.order(), 1);
        let c = congruence(&s, &two, &relative_elementary(&s, &two, &e, &cfg).unwrap(), &cfg).unwrap();
        assert_eq!(c.order(), 2);

        let s2 = space(4, 2);
        let e2 = elementary(&s2, &cfg).unwrap();
        let rel = relative_elementary(&s2, &two, &e2, &cfg).unwrap();
        let cong = congruence(&s2, &two, &rel, &cfg).unwrap();
        for g in rel.generators() {
            assert!(cong.contains(&g.m) && e2.contains(&g.m));
        }
        assert_eq!(cong.order() % rel.order(), 0);
        let zero = GradedIdeal::zero(&r);
        assert_eq!(relative_elementary(&s2, &zero, &e2, &cfg).unwrap().order(), 1);
        let unit = GradedIdeal::unit(&r);
        assert_eq!(relative_elementary(&s2, &unit, &e2, &cfg).unwrap().order(), e2.order());
    }

    #[test]
    fn words_multiply_out() {
        let cfg = EngineConfig::default();
        let s = space(3, 2);
        let e = elementary(&s, &cfg).unwrap();
        for m in e.snapshot().unwrap().elements() {
            let w = e.word(m).unwrap();
            assert_eq!(s.pack(&w.evaluate().unwrap()).unwrap(), *m);
        }
    }

    #[test]
    fn pair_ring_elementary_group_is_abelian() {
        let cfg = EngineConfig::default();
        let r = GradedRing::pair_ring(4, 2).unwrap();
        let fam = ShiftFamily::from_ints(r.grading(), &[0, 1, 2]).unwrap();
        let s = MatrixSpace::new(&r, &fam, 1).unwrap();
        let e = elementary(&s, &cfg).unwrap();
        assert_eq!(e.order(), 8);
        let c = commutator_subgroup(&e, &cfg).unwrap();
        assert_eq!(c.order(), 1);
        let gl = general_linear(&s, &e, &cfg).unwrap();
        assert_eq!(gl.order(), 64);
    }
}
