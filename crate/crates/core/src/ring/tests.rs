use super::*;
use crate::grading::GradeGroup;
use proptest::prelude::*;

fn d(ring: &GradedRing, k: i64) -> GradeElement {
    GradeElement::new(ring.grading(), &[k]).unwrap()
}

fn d0(ring: &GradedRing) -> GradeElement {
    GradeElement::zero(ring.grading())
}

fn res(ring: &GradedRing, deg: GradeElement, v: u64) -> HomogeneousElement {
    ring.element(deg, Payload::Residue(v)).unwrap()
}

fn z4() -> Arc<GradedRing> {
    GradedRing::trivial(4, GradeGroup::trivial()).unwrap()
}

fn pair() -> Arc<GradedRing> {
    GradedRing::pair_ring(4, 2).unwrap()
}

fn f3g() -> Arc<GradedRing> {
    GradedRing::group_ring(3, GradeGroup::cyclic(2).unwrap(), true).unwrap()
}

#[test]
fn trivial_addition_wraps() {
    let r = z4();
    let x = res(&r, d0(&r), 3);
    assert_eq!(r.add(&x, &x).unwrap(), res(&r, d0(&r), 2));
    assert_eq!(r.add(&x, &r.zero(&d0(&r))).unwrap(), x);
}

#[test]
fn pair_ring_arithmetic() {
    let r = pair();
    let a = res(&r, d(&r, 1), 2);
    assert_eq!(r.add(&a, &a).unwrap(), r.zero(&d(&r, 1)));
    let three = res(&r, d(&r, 0), 3);
    assert_eq!(r.mul(&three, &a).unwrap(), a);
    let sq = r.mul(&a, &a).unwrap();
    assert_eq!(sq.degree(), &d(&r, 2));
    assert!(r.is_zero(&sq));
    assert_eq!(r.format(&a), "(0,2)");
}

#[test]
fn pair_ring_components() {
    let r = pair();
    assert_eq!(r.component(&d(&r, 0)).unwrap().len(), 4);
    let one = r.component(&d(&r, 1)).unwrap();
    assert_eq!(one.iter().map(|x| r.format(x)).collect::<Vec<_>>(), ["(0,0)", "(0,2)"]);
    assert_eq!(r.component(&d(&r, 2)).unwrap().len(), 1);
    assert!(r.element(d(&r, 1), Payload::Residue(1)).is_err());
    assert!(r.element(d(&r, 2), Payload::Residue(2)).is_err());
}

#[test]
fn laurent_monomials() {
    let r = GradedRing::laurent(2).unwrap();
    let x = res(&r, d(&r, 1), 1);
    let xi = res(&r, d(&r, -1), 1);
    assert_eq!(r.mul(&x, &xi).unwrap(), r.one());
    assert_eq!(r.format(&xi), "x^-1");
    assert_eq!(r.unit_inverse(&x).unwrap(), xi);
    assert!(r.unit_inverse(&r.zero(&d(&r, 1))).is_none());
    assert!(GradedRing::laurent(4).is_err());
}

#[test]
fn component_sizes() {
    assert_eq!(z4().component(&d0(&z4())).unwrap().len(), 4);
    let g = GradedRing::group_ring(2, GradeGroup::cyclic(2).unwrap(), false).unwrap();
    assert_eq!(g.component(&d0(&g)).unwrap().len(), 4);
    let r = f3g();
    assert_eq!(r.component(&d(&r, 1)).unwrap().len(), 3);
}

#[test]
fn witnesses() {
    let r = f3g();
    let w = r.strong_grading_witness(&d(&r, 1)).unwrap();
    assert_eq!(w.len(), 1);
    let g = r.element(d(&r, 1), Payload::Coeffs(vec![1])).unwrap();
    assert_eq!(w[0], (g.clone(), g));

    let l = GradedRing::laurent(2).unwrap();
    let w = l.strong_grading_witness(&d(&l, 1)).unwrap();
    assert_eq!(w, vec![(res(&l, d(&l, -1), 1), res(&l, d(&l, 1), 1))]);

    let w = pair().strong_grading_witness(&d0(&pair())).unwrap();
    assert_eq!(w, vec![(pair().one(), pair().one())]);
    assert_eq!(
        pair().strong_grading_witness(&d(&pair(), 1)).unwrap_err().code(),
        "witness-unavailable"
    );
}

#[test]
fn quotient_rings() {
    let r = z4();
    let two = GradedIdeal::new(&r, vec![res(&r, d0(&r), 2)]).unwrap();
    let q = GradedRing::quotient(&two);
    assert_eq!(q.component(&d0(&q)).unwrap().len(), 2);
    let three = res(&r, d0(&r), 3);
    assert_eq!(q.reduce(&three).unwrap(), q.one());

    let zero = GradedRing::quotient(&GradedIdeal::zero(&r));
    assert_eq!(zero.component(&d0(&zero)).unwrap().len(), 4);
    let unit = GradedRing::quotient(&GradedIdeal::unit(&r));
    assert_eq!(unit.component(&d0(&unit)).unwrap().len(), 1);
    assert!(unit.is_zero(&unit.one()));
}

#[test]
fn doubles() {
    let r = z4();
    let two = GradedIdeal::new(&r, vec![res(&r, d0(&r), 2)]).unwrap();
    let dbl = GradedRing::double(&two);
    assert_eq!(dbl.component(&d0(&dbl)).unwrap().len(), 8);
    let x = |v| res(&r, d0(&r), v);
    assert!(dbl.pair(&x(1), &x(3)).is_ok());
    assert!(dbl.pair(&x(1), &x(2)).is_err());
    for v in 0..4 {
        assert!(dbl.pair(&x(v), &x(v)).is_ok());
    }
    let p = dbl.pair(&x(1), &x(3)).unwrap();
    let q = dbl.pair(&x(2), &x(0)).unwrap();
    let pq = dbl.mul(&p, &q).unwrap();
    for first in [true, false] {
        assert_eq!(
            dbl.project(&pq, first).unwrap(),
            r.mul(&dbl.project(&p, first).unwrap(), &dbl.project(&q, first).unwrap()).unwrap()
        );
    }
}

#[test]
fn ideal_closure_is_graded() {
    let r = pair();
    let i = GradedIdeal::new(&r, vec![res(&r, d(&r, 1), 2)]).unwrap();
    assert_eq!(i.component(&d(&r, 0)).unwrap().len(), 1);
    assert_eq!(i.component(&d(&r, 1)).unwrap().len(), 2);
    assert!(i.is_nilpotent());

    let g = GradedRing::group_ring(2, GradeGroup::cyclic(2).unwrap(), false).unwrap();
    let aug = GradedIdeal::new(&g, vec![g.element(d0(&g), Payload::Coeffs(vec![1, 1])).unwrap()]).unwrap();
    assert_eq!(aug.component(&d0(&g)).unwrap().len(), 2);
    assert!(aug.is_nilpotent());
    assert!(!aug.is_unit_ideal());
}

#[test]
fn mismatches_rejected() {
    let r = pair();
    let a = r.one();
    let b = res(&r, d(&r, 1), 2);
    assert_eq!(r.add(&a, &b).unwrap_err().code(), "degree-mismatch");
    let other = GradeElement::zero(&GradeGroup::integers());
    assert_eq!(r.zero(&d0(&r)).degree().group().rank(), 1);
    assert!(r.element(other, Payload::Residue(0)).is_err());
}

fn finite_rings() -> Vec<Arc<GradedRing>> {
    let z4 = z4();
    let two = GradedIdeal::new(&z4, vec![res(&z4, d0(&z4), 2)]).unwrap();
    vec![
        z4.clone(),
        pair(),
        GradedRing::pair_ring(9, 3).unwrap(),
        f3g(),
        GradedRing::group_ring(2, GradeGroup::cyclic(2).unwrap(), false).unwrap(),
        GradedRing::quotient(&two),
        GradedRing::double(&two),
    ]
}

#[test]
fn axioms_exhaustive_on_small_rings() {
    for r in finite_rings() {
        let support = r.support().unwrap();
        let all: Vec<_> = support.iter().flat_map(|g| r.component(g).unwrap()).collect();
        for x in &all {
            for y in &all {
                let xy = r.mul(x, y).unwrap();
                assert_eq!(xy.degree(), &(x.degree() + y.degree()));
                assert!(r.contains(&xy), "{} product escapes", r.kind_name());
                for z in &all {
                    assert_eq!(
                        r.mul(&xy, z).unwrap(),
                        r.mul(x, &r.mul(y, z).unwrap()).unwrap()
                    );
                    if y.degree() == z.degree() {
                        let lhs = r.mul(x, &r.add(y, z).unwrap()).unwrap();
                        let rhs = r.add(&xy, &r.mul(x, z).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            assert_eq!(r.mul(&r.one(), x).unwrap(), *x);
        }
    }
}

#[test]
fn unit_inverses_are_two_sided() {
    for r in finite_rings() {
        for g in r.support().unwrap() {
            for x in r.component(&g).unwrap() {
                if let Some(y) = r.unit_inverse(&x) {
                    assert_eq!(r.mul(&x, &y).unwrap(), r.one());
                    assert_eq!(r.mul(&y, &x).unwrap(), r.one());
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn laurent_degrees_add(p in prop::sample::select(vec![2u64, 3, 5]), a in -20i64..20, b in -20i64..20, c1 in 0u64..5, c2 in 0u64..5) {
        let r = GradedRing::laurent(p).unwrap();
        let x = res(&r, d(&r, a), c1 % p);
        let y = res(&r, d(&r, b), c2 % p);
        let xy = r.mul(&x, &y).unwrap();
        prop_assert_eq!(xy.degree(), &d(&r, a + b));
        prop_assert_eq!(xy, r.mul(&y, &x).unwrap());
    }
}
