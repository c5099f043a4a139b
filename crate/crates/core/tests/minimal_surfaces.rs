use ncgeo_core::minimal::{enneper_metric_display, exact_suite, integrate, weierstrass_from_f, NumericConfig};
use ncgeo_core::parser::parse_element;
use ncgeo_core::{AlgebraElement, GaussRat, InverseRegistry, Presentation, RationalExpr, Word};
use proptest::prelude::*;

fn poly_in_lambda(coeffs: &[(i64, i64)]) -> AlgebraElement {
    let p = Presentation::weyl_lambda();
    let l = p.generator_index("L").unwrap();
    AlgebraElement::from_terms(
        &p,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| (Word(vec![l; k]), ncgeo_core::Scalar::from_gauss(GaussRat::from_parts(a, b)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_weierstrass_data_is_minimal(coeffs in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=5)) {
        let f = poly_in_lambda(&coeffs);
        prop_assume!(!f.is_zero());
        let (_, checks) = exact_suite(&f).unwrap();
        for c in checks {
            prop_assert!(c.pass, "{}: {:?}", c.check_id, c.witness);
        }
    }
}

#[test]
fn enneper_surface_matches_displays() {
    let p = Presentation::weyl_lambda();
    let w = weierstrass_from_f(&AlgebraElement::one(&p)).unwrap();
    let m = integrate(&w).unwrap();
    let (s, t) = enneper_metric_display(&p).unwrap();
    assert_eq!(m.s, s);
    assert_eq!(m.t, t);
    let x2 = parse_element("i*(L + L^3/3 - Ls - Ls^3/3)", &p).unwrap();
    assert_eq!(m.x[1], x2);
    assert_eq!(m.x[2], parse_element("L^2 + Ls^2", &p).unwrap());
    let diff = &m.s - &m.t;
    assert!(!diff.is_zero());
    assert_eq!(diff, parse_element("-8*hbar + 16*hbar^2 - 16*hbar * L*Ls", &p).unwrap());
}

#[test]
fn lambda_surface_passes_numeric_suite_at_small_dimension() {
    let p = Presentation::weyl_lambda();
    let (m, _) = exact_suite(&parse_element("L", &p).unwrap()).unwrap();
    let zero = RationalExpr::zero(&p);
    let mc = m.lc_connection(&zero, &zero, &InverseRegistry::default()).unwrap();
    let cfg = NumericConfig { hbars: vec![0.25, 2.0], dim: 48, tolerance: 1e-8 };
    for v in mc.numeric_checks(&cfg).unwrap() {
        assert!(v.pass, "{v:?}");
    }
}

#[test]
fn zero_f_is_rejected() {
    let p = Presentation::weyl_lambda();
    assert!(weierstrass_from_f(&AlgebraElement::zero(&p)).is_err());
}
