use std::time::{Duration, Instant};

use ncgeo_core::check::Entry;
use ncgeo_core::minimal::NumericConfig;
use ncgeo_core::suites::{self, KernelCases};
use ncgeo_core::{Report, Result};
use num_rational::BigRational;

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn all_pass(r: &Report) -> Outcome {
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass()).map(Entry::id).collect();
    let detail = if failed.is_empty() {
        format!("{} checks", r.summary.total)
    } else {
        format!("{} of {} failed, first: {}", failed.len(), r.summary.total, failed[0])
    };
    Outcome { pass: failed.is_empty() && r.summary.total > 0, detail }
}

fn all_exact(r: &Report) -> Outcome {
    let mut o = all_pass(r);
    let inexact = r.checks.iter().filter(|c| matches!(c, Entry::Check(x) if x.mode != "exact")).count();
    if inexact > 0 {
        o.pass = false;
        o.detail.push_str(&format!(", {inexact} not exact"));
    }
    o
}

fn matrix_residuals(r: &Report) -> Outcome {
    let mut o = all_pass(r);
    let (mut identities, mut relations) = (0.0f64, 0.0f64);
    for c in &r.checks {
        if let Entry::Check(x) = c {
            let v = x.max_residual.unwrap_or(f64::INFINITY);
            if x.check_id.starts_with("fuzzy/relations/") {
                relations = relations.max(v);
            } else {
                identities = identities.max(v);
            }
        }
    }
    o.pass &= identities < 1e-10 && relations < 1e-12;
    o.detail.push_str(&format!(", max identity residual {identities:.2e}, max relation residual {relations:.2e}"));
    o
}

fn numeric_stable(r: &Report, tol: f64) -> Outcome {
    let mut o = all_pass(r);
    let mut worst = 0.0f64;
    let mut dims_ok = true;
    for c in &r.checks {
        if let Entry::Verdict(v) = c {
            worst = v.residuals.iter().cloned().fold(worst, f64::max);
            dims_ok &= v.dims == [64, 128] && v.stable;
        }
    }
    o.pass &= worst < tol && dims_ok;
    o.detail.push_str(&format!(", max residual {worst:.2e} at N = 64, 128"));
    o
}

fn run(index: usize, name: &str, limit: Duration, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(o) => (o.pass && elapsed <= limit, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let timing = if elapsed <= limit { "" } else { " OVER TIME LIMIT" };
    println!(
        "{} [{index}] {name}: {detail} ({:.2} s, limit {} s){timing}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "fuzzy sphere symbolic suite", secs(30), || Ok(all_exact(&suites::fuzzy_symbolic(None)?))),
        run(2, "monopole suite at t = 2", secs(10), || {
            Ok(all_exact(&suites::monopole(&BigRational::from_integer(2.into()))?))
        }),
        run(3, "spin-representation cross-validation", secs(10), || {
            Ok(matrix_residuals(&suites::fuzzy_spin(&suites::SPIN_SUITE, None)?))
        }),
        run(4, "doubled-module embedding of the tangent module", secs(10), || Ok(all_exact(&suites::embedding()?))),
        run(5, "Levi-Civita property suite", secs(60), || Ok(all_exact(&suites::levi_civita_property(SEED, 20)?))),
        run(6, "minimal-surface exact suite", secs(10), || {
            Ok(all_exact(&suites::minimal_exact(&suites::MINIMAL_EXACT_F)?))
        }),
        run(7, "minimal-surface numeric suite", secs(30), || {
            let cfg = NumericConfig::default();
            Ok(numeric_stable(&suites::minimal_numeric(&suites::MINIMAL_NUMERIC_F, &cfg)?, cfg.tolerance))
        }),
        run(8, "kernel property tests", secs(60), || {
            Ok(all_exact(&suites::kernel_properties(SEED, &KernelCases::default())))
        }),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
