use ncgeo_core::fuzzy::ConnectionChoice;
use ncgeo_core::suites::{self, KernelCases};
use num_rational::BigRational;

#[test]
fn fuzzy_connections_separately() {
    for c in [ConnectionChoice::Zero, ConnectionChoice::Epsilon] {
        let r = suites::fuzzy_symbolic(Some(c)).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}

#[test]
fn monopole_rejects_small_t_and_accepts_three_halves() {
    assert!(suites::monopole(&BigRational::from_integer(1.into())).is_err());
    let r = suites::monopole(&BigRational::new(3.into(), 2.into())).unwrap();
    assert!(r.all_pass(), "{}", r.to_text());
}

#[test]
fn spin_parsing() {
    assert_eq!(suites::parse_spin("3/2").unwrap(), 3);
    assert_eq!(suites::parse_spin("6").unwrap(), 12);
    assert!(suites::parse_spin("1/3").is_err());
    assert!(suites::parse_spin("0").is_err());
}

#[test]
fn small_kernel_run_is_deterministic() {
    let cases = KernelCases { idempotence: 20, confluence: 50, involution: 20, leibniz: 5, poly_rep: 20 };
    let a = suites::kernel_properties(3, &cases);
    let b = suites::kernel_properties(3, &cases);
    assert!(a.all_pass(), "{}", a.to_text());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn minimal_report_carries_surface_data() {
    let cfg = ncgeo_core::minimal::NumericConfig { dim: 16, ..Default::default() };
    let r = suites::minimal("L", Some("L + Ls"), None, &cfg).unwrap();
    assert!(r.all_pass(), "{}", r.to_text());
    assert!(r.data.contains_key("S") && r.data.contains_key("T"));
    let r = suites::minimal("1 + L^2", None, None, &cfg).unwrap();
    assert!(r.all_pass());
    assert!(r.data["numeric"].starts_with("skipped"));
}
