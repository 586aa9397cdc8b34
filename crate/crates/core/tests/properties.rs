use std::sync::Arc;

use graded_k1_core::sampling::{random_family, random_grade, random_invertible, random_matrix, random_unit_degree};
use graded_k1_core::{GradeElement, GradeGroup, GradedIdeal, GradedRing, Payload};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn residue_ideal(r: &Arc<GradedRing>, v: u64) -> GradedIdeal {
    let x = r.element(GradeElement::zero(r.grading()), Payload::Residue(v)).unwrap();
    GradedIdeal::new(r, vec![x]).unwrap()
}

fn rings() -> Vec<Arc<GradedRing>> {
    let z4 = GradedRing::trivial(4, GradeGroup::trivial()).unwrap();
    vec![
        z4.clone(),
        GradedRing::trivial(6, GradeGroup::cyclic(3).unwrap()).unwrap(),
        GradedRing::laurent(3).unwrap(),
        GradedRing::group_ring(3, GradeGroup::cyclic(2).unwrap(), true).unwrap(),
        GradedRing::group_ring(2, GradeGroup::new(0, vec![2, 2]).unwrap(), true).unwrap(),
        GradedRing::pair_ring(4, 2).unwrap(),
        GradedRing::double(&residue_ideal(&z4, 2)),
    ]
}

fn ring() -> impl Strategy<Value = Arc<GradedRing>> {
    (0..rings().len()).prop_map(|k| rings().swap_remove(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneous_products_add_degrees(r in ring(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d1, d2) = (random_grade(&r, 3, &mut rng).unwrap(), random_grade(&r, 3, &mut rng).unwrap());
        let x = r.sample(&d1, &mut rng).unwrap();
        let y = r.sample(&d2, &mut rng).unwrap();
        let xy = r.mul(&x, &y).unwrap();
        prop_assert_eq!(xy.degree(), &d1.try_add(&d2).unwrap());
        prop_assert_eq!(xy, r.mul(&y, &x).unwrap());
    }

    #[test]
    fn matrix_products_add_degrees(r in ring(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_family(&r, n, &mut rng).unwrap();
        let (d1, d2) = (random_grade(&r, 2, &mut rng).unwrap(), random_grade(&r, 2, &mut rng).unwrap());
        let a = random_matrix(&r, &f, &d1, &mut rng).unwrap();
        let b = random_matrix(&r, &f, &d2, &mut rng).unwrap();
        let c = random_matrix(&r, &f, &d2, &mut rng).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.degree(), &d1.try_add(&d2).unwrap());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(ab.entry(i, j).degree(), &ab.expected_degree(i, j));
            }
        }
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), ab.add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inversion_is_an_involution(r in ring(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_family(&r, n, &mut rng).unwrap();
        let g = random_invertible(&r, &f, 4, &mut rng).unwrap();
        let inv = g.invert().unwrap();
        prop_assert!(g.mul(&inv).unwrap().is_identity());
        prop_assert_eq!(inv.invert().unwrap(), g);
    }

    #[test]
    fn suspension_is_a_homomorphism(r in ring(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_family(&r, n, &mut rng).unwrap();
        let lambda = random_unit_degree(&r, &mut rng).unwrap();
        let g = random_invertible(&r, &f, 3, &mut rng).unwrap();
        let h = random_invertible(&r, &f, 3, &mut rng).unwrap();
        let (sg, sh) = (g.suspend(&lambda).unwrap(), h.suspend(&lambda).unwrap());
        prop_assert_eq!(sg.family(), &f.shifted(&lambda).unwrap());
        prop_assert_eq!(g.mul(&h).unwrap().suspend(&lambda).unwrap(), sg.mul(&sh).unwrap());
        prop_assert_eq!(g.invert().unwrap().suspend(&lambda).unwrap(), sg.invert().unwrap());
    }

    #[test]
    fn reduction_respects_products(m in prop_oneof![Just((4u64, 2u64)), Just((9, 3)), Just((8, 4))], n in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = GradedRing::trivial(m.0, GradeGroup::trivial()).unwrap();
        let ideal = residue_ideal(&r, m.1);
        let f = random_family(&r, n, &mut rng).unwrap();
        let zero = GradeElement::zero(r.grading());
        let a = random_matrix(&r, &f, &zero, &mut rng).unwrap();
        let b = random_matrix(&r, &f, &zero, &mut rng).unwrap();
        prop_assert_eq!(
            a.mul(&b).unwrap().reduce_mod_ideal(&ideal).unwrap(),
            a.reduce_mod_ideal(&ideal).unwrap().mul(&b.reduce_mod_ideal(&ideal).unwrap()).unwrap()
        );
    }
}
