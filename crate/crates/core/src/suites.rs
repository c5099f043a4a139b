//! Verification suites shared by the command-line tool and the acceptance harness.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Derivation, Presentation, Word};
use crate::check::{CheckResult, Report};
use crate::connection::{gamma_dof, GammaTensor};
use crate::error::{Error, Result};
use crate::fuzzy::{
    build_monopole, inv_hbar_sq, levi_civita_checks, random_symmetric_gamma, spin_relation_check,
    tangent_embedding_checks, ConnectionChoice, FuzzyGeometry,
};
use crate::localization::{InverseRegistry, RationalExpr};
use crate::minimal::{enneper_display_check, exact_suite, NumericConfig};
use crate::numeric::PolyRep;
use crate::parser::{parse_element, parse_rational_expr};
use crate::scalar::{GaussRat, Scalar};

/// Spins `2j` covered by the matrix cross-validation.
pub const SPIN_SUITE: [u32; 6] = [1, 2, 3, 4, 6, 12];

/// Weierstrass functions covered by the minimal-surface exact suite.
pub const MINIMAL_EXACT_F: [&str; 3] = ["1", "L", "1 + L^2"];

/// Weierstrass functions covered by the minimal-surface numeric suite.
pub const MINIMAL_NUMERIC_F: [&str; 2] = ["1", "L"];

/// Fuzzy-sphere identities with formal ℏ.
pub fn fuzzy_symbolic(connection: Option<ConnectionChoice>) -> Result<Report> {
    let g = FuzzyGeometry::symbolic()?;
    let mut r = Report::new("fuzzy");
    r.insert_data("mode", "symbolic");
    r.extend(g.full_suite(connection)?);
    Ok(r)
}

/// The same identities in spin representations, plus the defining relations.
pub fn fuzzy_spin(twice_js: &[u32], connection: Option<ConnectionChoice>) -> Result<Report> {
    let per_spin: Vec<Vec<CheckResult>> = twice_js
        .par_iter()
        .map(|&tj| {
            let (g, rep) = FuzzyGeometry::spin(tj)?;
            let mut out = vec![spin_relation_check(&rep)];
            for mut c in g.full_suite(connection)? {
                c.check_id = format!("{}@j={}", c.check_id, spin_label(tj));
                out.push(c);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut r = Report::new("fuzzy");
    r.insert_data("mode", "matrix");
    r.insert_data("spins", twice_js.iter().map(|&tj| spin_label(tj)).collect::<Vec<_>>().join(","));
    r.extend(per_spin.into_iter().flatten());
    Ok(r)
}

pub fn spin_label(twice_j: u32) -> String {
    if twice_j % 2 == 0 {
        (twice_j / 2).to_string()
    } else {
        format!("{twice_j}/2")
    }
}

/// Parses a spin `j` given as `n` or `n/2`.
pub fn parse_spin(text: &str) -> Result<u32> {
    let r = crate::fuzzy::parse_rational(text)?;
    let twice = &r * BigRational::from_integer(2.into());
    let bad = || Error::InvalidParameter(format!("spin must be a positive half-integer, got {text}"));
    if !twice.is_integer() {
        return Err(bad());
    }
    let n: u32 = twice.to_integer().try_into().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(n)
}

/// Monopole projection, connection and curvature tables at `t > 1`.
pub fn monopole(t: &BigRational) -> Result<Report> {
    let m = build_monopole(t)?;
    let mut r = Report::new(m.presentation.id());
    r.insert_data("t", t.to_string());
    r.insert_data("hbar", m.hbar.to_string());
    r.extend(m.checks()?);
    Ok(r)
}

/// The doubled-module embedding of the fuzzy tangent module.
pub fn embedding() -> Result<Report> {
    let g = FuzzyGeometry::symbolic()?;
    let mut r = Report::new("fuzzy");
    r.extend(tangent_embedding_checks(&g)?);
    Ok(r)
}

/// Levi-Civita connections on the embedded fuzzy sphere for `count` random
/// fully symmetric hermitian `γ`, plus the parameter count formula.
pub fn levi_civita_property(seed: u64, count: usize) -> Result<Report> {
    let g = FuzzyGeometry::symbolic()?;
    let p = g.x[0].presentation().clone();
    let ih = inv_hbar_sq(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gammas = vec![GammaTensor::zero(3, 3, &g.x[0])];
    gammas.extend((0..count).map(|_| random_symmetric_gamma(&p, &mut rng)));
    let results: Vec<Vec<CheckResult>> = gammas
        .par_iter()
        .enumerate()
        .map(|(k, gam)| levi_civita_checks(&format!("levi-civita/gamma-{k}"), &g, &ih, gam))
        .collect::<Result<_>>()?;
    let mut r = Report::new("fuzzy");
    r.insert_data("seed", seed.to_string());
    r.insert_data("random-gammas", count.to_string());
    r.extend(results.into_iter().flatten());
    let dof = [(3, 10), (2, 4), (1, 1)];
    let wrong: Vec<String> =
        dof.iter().filter(|(m, n)| gamma_dof(*m) != *n).map(|(m, n)| format!("m={m}: {} ≠ {n}", gamma_dof(*m))).collect();
    r.push(CheckResult::exact(
        "levi-civita/dof",
        "fully symmetric γ has (m+2)(m+1)m/6 free hermitian entries: 10, 4, 1 for m = 3, 2, 1",
        wrong.is_empty(),
        (!wrong.is_empty()).then(|| wrong.join("; ")),
    ));
    Ok(r)
}

fn tag_checks(f: &str, checks: Vec<CheckResult>) -> impl Iterator<Item = CheckResult> + '_ {
    checks.into_iter().map(move |mut c| {
        c.check_id = format!("{}[F={}]", c.check_id, f.replace(' ', ""));
        c
    })
}

/// Exact minimal-surface checks for each `F`, plus the Enneper displays for `F = 𝟙`.
pub fn minimal_exact(fs: &[&str]) -> Result<Report> {
    let p = Presentation::weyl_lambda();
    let mut r = Report::new(p.id());
    for f in fs {
        let fe = parse_element(f, &p)?;
        let (m, checks) = exact_suite(&fe)?;
        r.extend(tag_checks(f, checks));
        if fe == AlgebraElement::one(&p) {
            r.push(enneper_display_check(&m)?);
        }
    }
    Ok(r)
}

/// Numeric checks of the `γ̃ = 0` connection for each `F`.
pub fn minimal_numeric(fs: &[&str], cfg: &NumericConfig) -> Result<Report> {
    let p = Presentation::weyl_lambda();
    let zero = RationalExpr::zero(&p);
    let mut r = Report::new(p.id());
    r.insert_data("fock-dims", format!("{},{}", cfg.dim, 2 * cfg.dim));
    for f in fs {
        let (m, _) = exact_suite(&parse_element(f, &p)?)?;
        let mc = m.lc_connection(&zero, &zero, &InverseRegistry::default())?;
        for mut v in mc.numeric_checks(cfg)? {
            v.check_id = format!("{}[F={}]", v.check_id, f.replace(' ', ""));
            r.push(v);
        }
    }
    Ok(r)
}

/// Full pipeline for one `F` with optional `γ̃` parameters.
pub fn minimal(f: &str, gamma1: Option<&str>, gamma2: Option<&str>, cfg: &NumericConfig) -> Result<Report> {
    let p = Presentation::weyl_lambda();
    let fe = parse_element(f, &p)?;
    let (m, checks) = exact_suite(&fe)?;
    let mut r = Report::new(p.id());
    r.insert_data("F", fe.to_text());
    for (k, v) in m.summary() {
        r.insert_data(k, v);
    }
    r.extend(checks);
    if fe == AlgebraElement::one(&p) {
        r.push(enneper_display_check(&m)?);
    }
    let parse_gamma = |g: Option<&str>| g.map_or(Ok(RationalExpr::zero(&p)), |t| parse_rational_expr(t, &p));
    let g1 = parse_gamma(gamma1)?;
    let g2 = parse_gamma(gamma2)?;
    r.insert_data("gamma1", g1.to_text());
    r.insert_data("gamma2", g2.to_text());
    let registry = InverseRegistry::default();
    let mc = m.lc_connection(&g1, &g2, &registry)?;
    r.push(mc.table_check()?);
    r.push(mc.torsion_check()?);
    for (a, just) in registry.entries() {
        r.insert_data(format!("inverse: {a}"), just);
    }
    if !(g1.is_zero() && g2.is_zero()) {
        r.insert_data("curvature", "closed form applies to γ̃ = 0 only; not compared");
    }
    if m.fock_diagonal() {
        r.insert_data("fock-dims", format!("{},{}", cfg.dim, 2 * cfg.dim));
        r.extend(mc.numeric_checks(cfg)?);
    } else {
        r.insert_data("numeric", "skipped: S and T are not diagonal in the Fock basis");
    }
    Ok(r)
}

/// Random element with up to `terms` words of length ≤ `len` and small
/// Gaussian-integer coefficients times `ℏ^k`, `k ≤ 1`.
pub fn random_element<R: Rng + ?Sized>(p: &Arc<Presentation>, rng: &mut R, terms: usize, len: usize) -> AlgebraElement {
    AlgebraElement::from_terms(p, random_raw(p, rng, terms, len))
}

/// Unreduced random terms with the same distribution as `random_element`.
pub fn random_raw<R: Rng + ?Sized>(p: &Arc<Presentation>, rng: &mut R, terms: usize, len: usize) -> Vec<(Word, Scalar)> {
    let g = p.num_generators() as u8;
    (0..rng.random_range(1..=terms))
        .map(|_| {
            let w = Word((0..rng.random_range(0..=len)).map(|_| rng.random_range(0..g)).collect());
            let mut c = Scalar::from_gauss(GaussRat::from_parts(rng.random_range(-3..=3), rng.random_range(-3..=3)));
            if rng.random_bool(0.3) {
                c = &c * &Scalar::hbar();
            }
            (w, c)
        })
        .collect()
}

/// Counts for [`kernel_properties`].
#[derive(Clone, Debug)]
pub struct KernelCases {
    pub idempotence: usize,
    pub confluence: usize,
    pub involution: usize,
    pub leibniz: usize,
    pub poly_rep: usize,
}

impl Default for KernelCases {
    fn default() -> Self {
        KernelCases { idempotence: 300, confluence: 1000, involution: 300, leibniz: 100, poly_rep: 500 }
    }
}

fn first_failure<T: Send>(cases: Vec<T>, f: impl Fn(T) -> Option<String> + Sync + Send) -> Option<String> {
    cases.into_par_iter().find_map_first(f)
}

fn property(id: &str, statement: &str, n: usize, failure: Option<String>) -> CheckResult {
    CheckResult::exact(id, format!("{statement} ({n} cases)"), failure.is_none(), failure)
}

/// Seeded randomized checks of the rewriting kernel.
pub fn kernel_properties(seed: u64, cases: &KernelCases) -> Report {
    let pres = [Presentation::fuzzy(), Presentation::weyl_uv(), Presentation::weyl_lambda()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| pres[rng.random_range(0..pres.len())].clone();
    let mut r = Report::new("kernel");
    r.insert_data("seed", seed.to_string());

    let idem: Vec<_> = (0..cases.idempotence)
        .map(|_| {
            let p = pick(&mut rng);
            let raw = random_raw(&p, &mut rng, 5, 6);
            (p, raw)
        })
        .collect();
    r.push(property(
        "kernel/idempotence",
        "normal forms are fixed by reduction and consist of normal words",
        cases.idempotence,
        first_failure(idem, |(p, raw)| {
            let x = AlgebraElement::from_terms(&p, raw);
            let again = AlgebraElement::from_terms(&p, x.terms().iter().map(|(w, c)| (w.clone(), c.clone())));
            (again != x || !x.terms().keys().all(|w| p.is_normal(w))).then(|| x.to_text())
        }),
    ));

    let conf: Vec<_> = (0..cases.confluence)
        .map(|k| {
            let p = pick(&mut rng);
            (p.clone(), random_raw(&p, &mut rng, 4, 7), seed.wrapping_add(k as u64))
        })
        .collect();
    r.push(property(
        "kernel/confluence",
        "reduction in random rule and position order reaches the same normal form",
        cases.confluence,
        first_failure(conf, |(p, raw, s)| {
            let mut local = ChaCha8Rng::seed_from_u64(s);
            let a = p.reduce(raw.clone());
            let b = p.reduce_randomized(raw, &mut local);
            (a != b).then(|| format!("{} vs {}", AlgebraElement::from_terms(&p, a), AlgebraElement::from_terms(&p, b)))
        }),
    ));

    let inv: Vec<_> = (0..cases.involution)
        .map(|_| {
            let p = pick(&mut rng);
            let c = Scalar::from_gauss(GaussRat::from_parts(rng.random_range(-3..=3), rng.random_range(-3..=3)));
            (random_element(&p, &mut rng, 4, 4), random_element(&p, &mut rng, 4, 4), c)
        })
        .collect();
    r.push(property(
        "kernel/involution",
        "(x*)* = x, (xy)* = y*x*, (cx)* = c̄x*",
        cases.involution,
        first_failure(inv, |(x, y, c)| {
            let ok = x.star().star() == x && (&x * &y).star() == &y.star() * &x.star() && x.scale(&c).star() == x.star().scale(&c.conj());
            (!ok).then(|| format!("x = {x}, y = {y}"))
        }),
    ));

    let mut leib = Vec::new();
    for p in &pres {
        for d in Derivation::all(p) {
            for _ in 0..cases.leibniz {
                leib.push((d.clone(), random_element(p, &mut rng, 3, 4), random_element(p, &mut rng, 3, 4)));
            }
        }
    }
    let n = leib.len();
    r.push(property(
        "kernel/leibniz",
        "δ(xy) = δ(x)y + xδ(y) for every registered derivation",
        n,
        first_failure(leib, |(d, x, y)| {
            let lhs = d.apply(&(&x * &y));
            let rhs = &d.apply(&x) * &y + &x * &d.apply(&y);
            (lhs != rhs).then(|| format!("{}: x = {x}, y = {y}", d.name))
        }),
    ));

    let weyl = [Presentation::weyl_uv(), Presentation::weyl_lambda()];
    let pairs: Vec<_> = (0..cases.poly_rep)
        .map(|k| {
            let p = weyl[k % 2].clone();
            let x = random_element(&p, &mut rng, 3, 4);
            let y = random_element(&p, &mut rng, 3, 4);
            (p, x, y)
        })
        .collect();
    r.push(property(
        "kernel/poly-rep",
        "the polynomial representation multiplies like the kernel and separates distinct elements",
        cases.poly_rep,
        first_failure(pairs, |(p, x, y)| {
            let rep = PolyRep::new(&p, 8).expect("weyl");
            let xy = &x * &y;
            for k in 0..=4 {
                let mut mono = vec![Scalar::zero(); k];
                mono.push(Scalar::one());
                if rep.apply(&xy, &mono) != rep.apply(&x, &rep.apply(&y, &mono)) {
                    return Some(format!("homomorphism fails on t^{k}: x = {x}, y = {y}"));
                }
            }
            (rep.agree(&x, &y) != (x == y)).then(|| format!("separation fails: x = {x}, y = {y}"))
        }),
    ));
    r
}

/// Every acceptance suite in one report.
pub fn full(cfg: &NumericConfig, seed: u64) -> Result<Report> {
    let t2 = BigRational::from_integer(2.into());
    let parts = [
        ("fuzzy-symbolic", fuzzy_symbolic(None)?),
        ("monopole", monopole(&t2)?),
        ("fuzzy-matrix", fuzzy_spin(&SPIN_SUITE, None)?),
        ("embedding", embedding()?),
        ("levi-civita", levi_civita_property(seed, 20)?),
        ("minimal-exact", minimal_exact(&MINIMAL_EXACT_F)?),
        ("minimal-numeric", minimal_numeric(&MINIMAL_NUMERIC_F, cfg)?),
        ("kernel", kernel_properties(seed, &KernelCases::default())),
    ];
    let mut r = Report::new("all");
    for (name, part) in parts {
        for (k, v) in part.data {
            r.insert_data(format!("{name}:{k}"), v);
        }
        r.extend(part.checks);
    }
    Ok(r)
}
