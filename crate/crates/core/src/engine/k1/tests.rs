use super::*;
use crate::engine::group::Strategy;
use crate::grading::GradeGroup;
use crate::ring::Payload;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn auto() -> EngineConfig {
    EngineConfig { strategy: Strategy::Auto, ..EngineConfig::default() }
}

fn trivial(m: u64) -> Arc<GradedRing> {
    GradedRing::trivial(m, GradeGroup::trivial()).unwrap()
}

fn zeros(r: &GradedRing, n: usize) -> ShiftFamily {
    ShiftFamily::zeros(r.grading(), n).unwrap()
}

fn fam(r: &GradedRing, shifts: &[i64]) -> ShiftFamily {
    ShiftFamily::from_ints(r.grading(), shifts).unwrap()
}

fn deg(r: &GradedRing, k: i64) -> GradeElement {
    GradeElement::new(r.grading(), &[k]).unwrap()
}

fn residue(r: &GradedRing, v: u64) -> HomogeneousElement {
    r.element(GradeElement::zero(r.grading()), Payload::Residue(v)).unwrap()
}

fn ideal(r: &Arc<GradedRing>, v: u64) -> GradedIdeal {
    GradedIdeal::new(r, alloc::vec![residue(r, v)]).unwrap()
}

fn f3g() -> Arc<GradedRing> {
    GradedRing::group_ring(3, GradeGroup::cyclic(2).unwrap(), true).unwrap()
}

fn invariants(r: &Arc<GradedRing>, f: &ShiftFamily, level: usize) -> Vec<u64> {
    k1_local(r, f, level, &auto()).unwrap().invariants.unwrap()
}

#[test]
fn generated_groups() {
    let r = trivial(2);
    let s = MatrixSpace::new(&r, &zeros(&r, 2), 1).unwrap();
    assert_eq!(generate_group(&s, &[], 100).unwrap().order(), 1);
    let gens: Vec<GradedMatrix> = [(0, 1), (1, 0)]
        .iter()
        .map(|&(i, j)| ElementaryGenerator::new(&r, &zeros(&r, 2), i, j, residue(&r, 1)).unwrap().matrix())
        .collect();
    let g = generate_group(&s, &gens, 100).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.truncated());
    assert!(generate_group(&s, &gens, 3).unwrap().truncated());
    let singular = GradedMatrix::zero(&r, &zeros(&r, 2), &GradeElement::zero(r.grading()));
    assert!(generate_group(&s, &[singular], 100).is_err());
}

#[test]
fn general_linear_orders() {
    let f2 = trivial(2);
    assert_eq!(gl_group(&f2, &zeros(&f2, 1), 1, &cfg()).unwrap().order(), 1);
    let f3 = trivial(3);
    assert_eq!(gl_group(&f3, &zeros(&f3, 2), 1, &cfg()).unwrap().order(), 48);
    assert_eq!(elementary_group(&f3, &zeros(&f3, 1), 1, &cfg()).unwrap().order(), 1);
    // |GL_3(F_2)| = 168, reached through level 3 of the family (0)
    assert_eq!(gl_group(&f2, &zeros(&f2, 1), 3, &cfg()).unwrap().order(), 168);
}

#[test]
fn congruence_subgroups() {
    let z4 = trivial(4);
    let f = zeros(&z4, 1);
    assert_eq!(congruence_subgroup(&z4, &ideal(&z4, 2), &f, 1, &cfg()).unwrap().order(), 2);
    assert_eq!(congruence_subgroup(&z4, &GradedIdeal::zero(&z4), &f, 2, &cfg()).unwrap().order(), 1);
    let whole = congruence_subgroup(&z4, &GradedIdeal::unit(&z4), &f, 2, &cfg()).unwrap();
    assert_eq!(whole.order(), gl_group(&z4, &f, 2, &cfg()).unwrap().order());
    let rel = relative_elementary_group(&z4, &ideal(&z4, 2), &f, 2, &cfg()).unwrap();
    let e = elementary_group(&z4, &f, 2, &cfg()).unwrap();
    let cong = congruence_subgroup(&z4, &ideal(&z4, 2), &f, 2, &cfg()).unwrap();
    for g in rel.snapshot().unwrap().elements() {
        assert!(e.contains(g) && cong.contains(g));
    }
}

#[test]
fn perfectness() {
    let pair = GradedRing::pair_ring(4, 2).unwrap();
    let e = elementary_group(&pair, &fam(&pair, &[0, 1, 2]), 1, &cfg()).unwrap();
    let p = perfectness_check(&e, &cfg()).unwrap();
    assert!(!p.perfect);
    assert_eq!((p.order, p.commutator_order), (8, 1));
    let w = p.witness_matrix.unwrap();
    assert!(e.contains_matrix(&w).unwrap());
    assert_eq!(p.witness.unwrap().matrix(), w);

    let r = f3g();
    let e = elementary_group(&r, &fam(&r, &[0, 1, 0]), 1, &cfg()).unwrap();
    let p = perfectness_check(&e, &cfg()).unwrap();
    assert!(p.perfect && p.witness.is_none());
    assert_eq!(p.order, p.commutator_order);

    let t = elementary_group(&r, &fam(&r, &[1]), 1, &cfg()).unwrap();
    assert!(perfectness_check(&t, &cfg()).unwrap().perfect);
}

#[test]
fn local_k1_values() {
    let f3 = trivial(3);
    assert_eq!(invariants(&f3, &zeros(&f3, 1), 3), [2]);
    let f2 = trivial(2);
    assert!(invariants(&f2, &zeros(&f2, 1), 3).is_empty());
    let z4 = trivial(4);
    assert_eq!(invariants(&z4, &zeros(&z4, 1), 2), [2]);

    let report = k1_local(&f3, &zeros(&f3, 2), 1, &cfg()).unwrap();
    assert!(report.normal);
    assert_eq!(report.e_order * report.quotient_order, report.gl_order);
    assert_eq!(report.representatives.len(), 2);
    assert!(report.representatives[0].is_identity());
}

#[test]
fn relative_k1_values() {
    let z4 = trivial(4);
    let f = zeros(&z4, 1);
    let zero = k1_relative_local(&z4, &GradedIdeal::zero(&z4), &f, 2, &cfg()).unwrap();
    assert_eq!(zero.invariants.unwrap(), Vec::<u64>::new());
    let whole = k1_relative_local(&z4, &GradedIdeal::unit(&z4), &f, 2, &cfg()).unwrap();
    assert_eq!(whole.invariants, k1_local(&z4, &f, 2, &cfg()).unwrap().invariants);

    // GL_2(Z/4, 2) has order 2^4; E_2(Z/4, 2) has index 2 in it
    let two = k1_relative_local(&z4, &ideal(&z4, 2), &f, 2, &cfg()).unwrap();
    assert_eq!(two.gl_order, 16);
    assert_eq!(two.e_order, 8);
    assert_eq!(two.invariants.unwrap(), [2]);

    // the double gives the same kernel
    let d = double_kernel(&z4, &ideal(&z4, 2), &f, 2, &cfg()).unwrap();
    assert!(d.well_defined);
    assert_eq!(d.kernel.len() as u128, two.quotient_order);
}

#[test]
fn exact_sequences() {
    let z4 = trivial(4);
    let f = zeros(&z4, 1);
    let x = check_exactness(&z4, &ideal(&z4, 2), &f, 3, &cfg()).unwrap();
    assert!(x.exact && x.well_defined);
    assert_eq!(x.absolute.invariants.as_deref(), Some(&[2u64][..]));
    assert_eq!(x.quotient.invariants.as_deref(), Some(&[][..]));
    assert_eq!(x.image, [0, 1]);

    for i in [GradedIdeal::zero(&z4), GradedIdeal::unit(&z4)] {
        let x = check_exactness(&z4, &i, &f, 2, &cfg()).unwrap();
        assert!(x.exact && x.well_defined);
    }
}

#[test]
fn inclusions_compose() {
    let r = f3g();
    let two = r.element(deg(&r, 0), Payload::Coeffs(alloc::vec![2])).unwrap();
    let s = fam(&r, &[0]);
    let h = GradedMatrix::from_flat(&r, &s, &deg(&r, 0), alloc::vec![two.clone()]).unwrap();
    let class = K1Class::new(h.clone(), &s, 1).unwrap();
    assert_eq!(inclusion_map(&class, &s).unwrap(), class);
    let t = fam(&r, &[0, 1]);
    let up = inclusion_map(&class, &t).unwrap();
    assert_eq!(up.representative().entry(0, 0), &two);
    assert!(r.is_one(up.representative().entry(1, 1)));
    let u = fam(&r, &[1, 0, 1]);
    let direct = inclusion_map(&class, &u).unwrap();
    assert_eq!(inclusion_map(&up, &u).unwrap(), direct);
    assert_eq!(direct.representative().entry(1, 1), &two);
    assert_eq!(inclusion_map(&up, &s).unwrap_err(), Error::NotContained);
}

#[test]
fn gamma_actions() {
    let r = f3g();
    let two = r.element(deg(&r, 0), Payload::Coeffs(alloc::vec![2])).unwrap();
    let s = fam(&r, &[0]);
    let h = GradedMatrix::from_flat(&r, &s, &deg(&r, 0), alloc::vec![two]).unwrap();
    let class = K1Class::new(h.clone(), &s, 1).unwrap();
    assert_eq!(gamma_action(&class, &deg(&r, 0)).unwrap(), class);
    let moved = gamma_action(&class, &deg(&r, 1)).unwrap();
    assert_eq!(moved.family(), &fam(&r, &[1]));
    assert_eq!(gamma_action(&moved, &deg(&r, -1)).unwrap(), class);

    let c = crossed_product_triviality_check(&r, &deg(&r, 1), &h).unwrap();
    assert!(c.verified());
    assert_eq!(c.claim().family(), &fam(&r, &[0, 1]));
    let c0 = crossed_product_triviality_check(&r, &deg(&r, 0), &h).unwrap();
    assert_eq!(c0.claim(), &h.block_diag(&h.invert().unwrap()).unwrap());

    let l = GradedRing::laurent(2).unwrap();
    let xi = l.element(deg(&l, -1), Payload::Residue(1)).unwrap();
    let e = ElementaryGenerator::new(&l, &fam(&l, &[0, 1]), 0, 1, xi).unwrap().matrix();
    let c = crossed_product_triviality_check(&l, &deg(&l, 1), &e).unwrap();
    assert!(c.verified());
    assert_eq!(c.claim().family(), &fam(&l, &[0, 1, 1, 2]));

    let pair = GradedRing::pair_ring(4, 2).unwrap();
    let id = GradedMatrix::identity(&pair, &fam(&pair, &[0]));
    let err = crossed_product_triviality_check(&pair, &deg(&pair, 1), &id).unwrap_err();
    assert_eq!(err.code(), "not-a-crossed-product");

    let report = gamma_action_check(&r, &fam(&r, &[0, 1]), 1, &[deg(&r, 0), deg(&r, 1)], &cfg()).unwrap();
    assert!(report.trivial);
    assert_eq!(report.checks.len(), 2 * report.report.representatives.len());
}

#[test]
fn stabilization() {
    let f3 = trivial(3);
    let s = stabilization_check(&f3, &zeros(&f3, 1), &[1, 2, 3], &auto()).unwrap();
    assert!(s.reports.iter().all(|r| r.invariants.as_deref() == Some(&[2u64][..])));
    assert_eq!(s.bijective, [true, true]);
    assert_eq!(s.stable_from, Some(1));

    let z4 = trivial(4);
    let s = stabilization_check(&z4, &zeros(&z4, 1), &[1, 2, 3], &auto()).unwrap();
    assert_eq!(s.reports.last().unwrap().invariants.as_deref(), Some(&[2u64][..]));
    assert!(s.stable_from.is_some());

    let f2 = trivial(2);
    let s = stabilization_check(&f2, &zeros(&f2, 1), &[3, 1, 2], &auto()).unwrap();
    assert!(s.reports.iter().all(|r| r.invariants.as_deref() == Some(&[][..])));
    assert!(stabilization_check(&f2, &zeros(&f2, 1), &[], &auto()).is_err());
}

#[test]
fn suspension() {
    let r = f3g();
    let s = suspension_check(&r, &fam(&r, &[0, 1]), 1, &deg(&r, 1), &cfg()).unwrap();
    assert!(s.bijective);
    assert_eq!(s.original.invariants, s.suspended.invariants);
    let pair = GradedRing::pair_ring(4, 2).unwrap();
    let s = suspension_check(&pair, &fam(&pair, &[0, 1]), 1, &deg(&pair, 2), &cfg()).unwrap();
    assert!(s.bijective);
    assert_eq!(s.original.gl_order, s.suspended.gl_order);
}

#[test]
fn commutators_become_elementary_after_doubling() {
    let f2 = trivial(2);
    assert!(whitehead_check(&f2, &zeros(&f2, 2), 1, &auto()).unwrap());
    let z4 = trivial(4);
    assert!(whitehead_check(&z4, &zeros(&z4, 1), 1, &auto()).unwrap());
}

#[test]
fn crossed_products_match_degree_zero_ring() {
    for m in [2u64, 3] {
        let r = GradedRing::group_ring(m, GradeGroup::cyclic(2).unwrap(), true).unwrap();
        let a0 = r.degree_zero_ring().unwrap();
        let expected = invariants(&a0, &zeros(&a0, 1), 2);
        for shifts in [[0i64, 1], [1, 1]] {
            assert_eq!(invariants(&r, &fam(&r, &shifts), 1), expected, "m = {m}, family {shifts:?}");
        }
    }
}
