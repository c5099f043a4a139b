use std::sync::Arc;

use ncgeo_core::fuzzy::FuzzyGeometry;
use ncgeo_core::parser::parse_element;
use ncgeo_core::suites::{random_element, random_raw};
use ncgeo_core::{AlgebraElement, Derivation, PolyRep, Presentation, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn presentations() -> [Arc<Presentation>; 3] {
    [Presentation::fuzzy(), Presentation::weyl_uv(), Presentation::weyl_lambda()]
}

fn element(which: usize, seed: u64) -> AlgebraElement {
    let p = presentations()[which % 3].clone();
    random_element(&p, &mut ChaCha8Rng::seed_from_u64(seed), 5, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(which in 0usize..3, seed in any::<u64>()) {
        let x = element(which, seed);
        let back = parse_element(&x.to_text(), x.presentation()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn poly_rep_is_a_homomorphism(uv in any::<bool>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = element(if uv { 1 } else { 2 }, s1);
        let y = element(if uv { 1 } else { 2 }, s2);
        let rep = PolyRep::new(x.presentation(), 10).unwrap();
        let f = vec![Scalar::one(), Scalar::from_int(2), Scalar::zero(), Scalar::i()];
        prop_assert_eq!(rep.apply(&(&x * &y), &f), rep.apply(&x, &rep.apply(&y, &f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_order_does_not_matter(which in 0usize..3, seed in any::<u64>(), order in any::<u64>()) {
        let p = presentations()[which].clone();
        let raw = random_raw(&p, &mut ChaCha8Rng::seed_from_u64(seed), 4, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(order);
        prop_assert_eq!(p.reduce_randomized(raw.clone(), &mut rng), p.reduce(raw));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent(which in 0usize..3, seed in any::<u64>()) {
        let x = element(which, seed);
        let again = AlgebraElement::from_terms(x.presentation(), x.terms().iter().map(|(w, c)| (w.clone(), c.clone())));
        prop_assert_eq!(&again, &x);
        prop_assert!(x.terms().keys().all(|w| x.presentation().is_normal(w)));
    }

    #[test]
    fn involution_laws(which in 0usize..3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = element(which, s1);
        let y = element(which, s2);
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        let c = Scalar::from_ratio(3, 2) * Scalar::i();
        prop_assert_eq!(x.scale(&c).star(), x.star().scale(&c.conj()));
    }

    #[test]
    fn derivations_obey_leibniz(which in 0usize..3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = element(which, s1);
        let y = element(which, s2);
        for d in Derivation::all(x.presentation()) {
            prop_assert_eq!(d.apply(&(&x * &y)), &d.apply(&x) * &y + &x * &d.apply(&y));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn curvature_is_right_linear(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, k in 0usize..3) {
        let g = FuzzyGeometry::symbolic().unwrap();
        let conn = g.projected_connection(0).unwrap();
        let x = random_element(g.x[0].presentation(), &mut ChaCha8Rng::seed_from_u64(seed), 3, 2);
        let zero = AlgebraElement::zero(g.x[0].presentation());
        let mut m = vec![zero.clone(); 3];
        m[k] = AlgebraElement::one(g.x[0].presentation());
        let mx: Vec<AlgebraElement> = m.iter().map(|e| e * &x).collect();
        let lhs = conn.curvature_on(&g.lie, a, b, &mx);
        let rhs: Vec<AlgebraElement> = conn.curvature_on(&g.lie, a, b, &m).iter().map(|e| e * &x).collect();
        prop_assert_eq!(lhs, rhs);
    }
}
