use proptest::prelude::*;
use rand::Rng;
use sgq_core::flag_quotient::{cosets_equal, n_member, normal_form, standard_parabolic_member};
use sgq_core::grassmannian::{orbit_map, points_equal};
use sgq_core::json::{self, RingCache};
use sgq_core::sample::{self, trial_rng, Bounds};
use sgq_core::scalar;
use sgq_core::smoothness::{is_smooth_at, rank_at_point, Presentation, RationalPoint};
use sgq_core::{BlockProfile, Parity, SuperElement, SuperHom, SuperMatrix, SuperRingSpec, Variable};

const B: Bounds = Bounds { coeff: 3, terms: 3, degree: 2 };

fn profile(k: usize) -> BlockProfile {
    let (m, n, r, s) = [(1, 1, 1, 0), (2, 1, 1, 1), (2, 2, 1, 1), (3, 2, 2, 1), (1, 2, 0, 1)][k];
    BlockProfile::new(m, n, r, s).unwrap()
}

fn parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_is_a_morphism(seed in any::<u64>(), pa in any::<bool>(), pb in any::<bool>()) {
        let mut rng = trial_rng(seed, 0, 0);
        let source = SuperRingSpec::new(["x"], ["a", "b"]).unwrap();
        let target = SuperRingSpec::grassmann(4).unwrap();
        let hom = SuperHom::new(
            &source,
            &target,
            vec![sample::element(&mut rng, &target, Parity::Even, &B)],
            (0..2).map(|_| sample::soul(&mut rng, &target, Parity::Odd, &B)).collect(),
        )
        .unwrap();
        let a = sample::element(&mut rng, &source, parity(pa), &B);
        let c = sample::element(&mut rng, &source, parity(pb), &B);
        let image = |e: &SuperElement| hom.apply(e).unwrap();
        prop_assert_eq!(image(&(&a * &c)), &image(&a) * &image(&c));
        prop_assert_eq!(image(&(&a + &c)), &image(&a) + &image(&c));
        prop_assert!(image(&SuperElement::one(&source)).is_one());
    }

    #[test]
    fn odd_derivative_squares_to_zero(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = trial_rng(seed, 1, 0);
        let r = SuperRingSpec::new(["x", "y"], ["t1", "t2", "t3", "t4"]).unwrap();
        let a = sample::element(&mut rng, &r, parity(odd), &B);
        let v = Variable::Odd(rng.gen_range(0..4));
        prop_assert!(a.derivative(v).derivative(v).is_zero());
        let w = Variable::Odd(rng.gen_range(0..4));
        prop_assert_eq!(a.derivative(v).derivative(w), -&a.derivative(w).derivative(v));
    }

    #[test]
    fn body_is_multiplicative(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 2, 0);
        let r = SuperRingSpec::new(["x"], ["t1", "t2", "t3"]).unwrap();
        let a = &sample::element(&mut rng, &r, Parity::Even, &B) + &sample::element(&mut rng, &r, Parity::Odd, &B);
        let c = &sample::element(&mut rng, &r, Parity::Even, &B) + &sample::element(&mut rng, &r, Parity::Odd, &B);
        prop_assert_eq!((&a * &c).body(), &a.body() * &c.body());
        prop_assert_eq!(&a.body() + &a.soul(), a);
    }

    #[test]
    fn inverse_and_berezinian_of_inverse(seed in any::<u64>(), m in 0usize..3, n in 0usize..3) {
        prop_assume!(m + n > 0);
        let mut rng = trial_rng(seed, 3, 0);
        let ring = SuperRingSpec::grassmann(4).unwrap();
        let x = sample::invertible(&mut rng, &ring, m, n, &B);
        let inv = x.inverse().unwrap();
        prop_assert!(x.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&x).unwrap().is_identity());
        prop_assert!((&x.berezinian().unwrap() * &inv.berezinian().unwrap()).is_one());
    }

    #[test]
    fn parabolic_meets_unipotent_only_in_identity(seed in any::<u64>(), k in 0usize..5) {
        let bp = profile(k);
        let mut rng = trial_rng(seed, 4, 0);
        let ring = SuperRingSpec::grassmann(4).unwrap();
        let c = sample::ncoordinates(&mut rng, &ring, &bp, &B);
        let n = c.assemble();
        prop_assert!(n_member(&n, &bp).unwrap());
        prop_assert_eq!(standard_parabolic_member(&n, &bp).unwrap(), c.is_zero());
        let (again, p) = normal_form(&n, &bp).unwrap();
        prop_assert_eq!(again, c);
        prop_assert!(p.is_identity());
    }

    #[test]
    fn normal_form_is_idempotent_and_right_invariant(seed in any::<u64>(), k in 0usize..5) {
        let bp = profile(k);
        let mut rng = trial_rng(seed, 5, 0);
        let ring = SuperRingSpec::grassmann(4).unwrap();
        let g = sample::big_cell(&mut rng, &ring, &bp, &B);
        let (c, p) = normal_form(&g, &bp).unwrap();
        let (c2, p2) = normal_form(&c.assemble(), &bp).unwrap();
        prop_assert_eq!(&c2, &c);
        prop_assert!(p2.is_identity());
        prop_assert!(cosets_equal(&g, &c.assemble(), &bp).unwrap());
        let q = sample::parabolic(&mut rng, &ring, &bp, &B);
        let gq = g.mul(&q).unwrap();
        prop_assert!(points_equal(&orbit_map(&gq, &bp).unwrap(), &orbit_map(&g, &bp).unwrap()).unwrap());
        prop_assert_eq!(normal_form(&gq, &bp).unwrap().1, p.mul(&q).unwrap());
    }

    #[test]
    fn matrix_json_roundtrip(seed in any::<u64>(), m in 0usize..3, n in 0usize..3) {
        let mut rng = trial_rng(seed, 6, 0);
        let ring = SuperRingSpec::new(["x"], ["t1", "t2", "t3"]).unwrap();
        let x = sample::supermatrix(&mut rng, &ring, sgq_core::SuperShape::square(m, n), &B);
        let text = json::to_string(&json::encode_matrix(&x));
        let back = json::decode_matrix(&json::from_str(&text).unwrap(), &mut RingCache::default()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rank_is_invariant_under_row_operations(seed in any::<u64>(), c in -3i64..=3) {
        let mut rng = trial_rng(seed, 7, 0);
        let r = SuperRingSpec::new(["x", "y"], ["a", "b"]).unwrap();
        // Relations through the origin.
        let through_origin = |e: SuperElement| {
            let shifted = &e - &SuperElement::constant(&r, e.constant_term());
            if shifted.is_zero() { SuperElement::var(&r, "x").unwrap() } else { shifted }
        };
        let f1 = through_origin(sample::element(&mut rng, &r, Parity::Even, &B));
        let f2 = through_origin(sample::element(&mut rng, &r, Parity::Even, &B));
        let mixed = &f2 + &f1.scale(&scalar::from_int(c));
        prop_assume!(!mixed.is_zero());
        let origin = RationalPoint::new([("x", scalar::zero()), ("y", scalar::zero())]);
        let before = Presentation::absolute(&r, vec![f1.clone(), f2], vec![]).unwrap();
        let after = Presentation::absolute(&r, vec![f1, mixed], vec![]).unwrap();
        prop_assert_eq!(rank_at_point(&before, &origin).unwrap(), rank_at_point(&after, &origin).unwrap());
    }
}

#[test]
fn free_extension_adds_to_relative_dimension() {
    let r = SuperRingSpec::new(["x"], ["a"]).unwrap();
    let f = &SuperElement::var(&r, "x").unwrap().pow(3) - &SuperElement::from_int(&r, 8);
    let pres = Presentation::absolute(&r, vec![f], vec![]).unwrap();
    let at = RationalPoint::new([("x", scalar::from_int(2))]);
    assert_eq!(is_smooth_at(&pres, &at).unwrap().relative_dimension, Some((0, 1)));
    let ext = pres.free_extension(&["y", "z"], &["b"]).unwrap();
    assert_eq!(is_smooth_at(&ext, &at).unwrap().relative_dimension, Some((2, 2)));
}

#[test]
fn berezinian_of_an_even_swap_is_minus_one() {
    let ring = SuperRingSpec::grassmann(2).unwrap();
    let one = SuperElement::one(&ring);
    let zero = SuperElement::zero(&ring);
    let x = SuperMatrix::validate(
        sgq_core::SuperShape::square(2, 1),
        &ring,
        vec![vec![zero.clone(), one.clone(), zero.clone()], vec![one.clone(), zero.clone(), zero.clone()], vec![zero.clone(), zero, one]],
    )
    .unwrap();
    assert_eq!(x.berezinian().unwrap(), -&SuperElement::one(&ring));
}
