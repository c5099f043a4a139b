//! Verification results and reports.

use serde::{Deserialize, Serialize};

use crate::ring::StarElement;

/// Version of the JSON report schema.
pub const SCHEMA_VERSION: &str = "1";

/// Outcome of an exact check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "check-id")]
    pub check_id: String,
    pub statement: String,
    pub mode: String,
    pub pass: bool,
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "max-residual")]
    pub max_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl CheckResult {
    pub fn exact(id: impl Into<String>, statement: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        CheckResult {
            check_id: id.into(),
            statement: statement.into(),
            mode: "exact".into(),
            pass,
            witness,
            max_residual: None,
            flags: Vec::new(),
        }
    }

    /// Check evaluated in `mode`; non-exact modes record the largest residual.
    pub fn from_outcome(id: impl Into<String>, statement: impl Into<String>, mode: &str, o: Outcome) -> Self {
        let mut r = CheckResult::exact(id, statement, o.pass, o.witness);
        if mode != "exact" {
            r.mode = mode.into();
            r.max_residual = Some(o.max_residual);
        }
        r
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    /// Builds a check from labelled discrepancies: passes iff every one is exactly zero.
    pub fn from_residuals<E: StarElement>(
        id: impl Into<String>,
        statement: impl Into<String>,
        items: impl IntoIterator<Item = (String, E)>,
    ) -> Self {
        let o = Outcome::collect(items, 0.0);
        CheckResult::exact(id, statement, o.pass, o.witness)
    }
}

/// Verdict on an identity that involves formal inverses or numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvedEqual,
    ProvedUnequal,
    NumericEqual,
    Inconclusive,
}

impl Verdict {
    pub fn is_equal(self) -> bool {
        matches!(self, Verdict::ProvedEqual | Verdict::NumericEqual)
    }
}

/// Outcome of a numeric (or strategy-based) comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    #[serde(rename = "check-id")]
    pub check_id: String,
    pub statement: String,
    pub mode: String,
    pub verdict: Verdict,
    pub dims: Vec<usize>,
    pub residuals: Vec<f64>,
    pub stable: bool,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictReport {
    pub fn symbolic(id: impl Into<String>, statement: impl Into<String>, verdict: Verdict, note: Option<String>) -> Self {
        VerdictReport {
            check_id: id.into(),
            statement: statement.into(),
            mode: "exact".into(),
            verdict,
            dims: Vec::new(),
            residuals: Vec::new(),
            stable: true,
            pass: verdict.is_equal(),
            note,
        }
    }

    pub fn relabel(mut self, id: impl Into<String>, statement: impl Into<String>) -> Self {
        self.check_id = id.into();
        self.statement = statement.into();
        self
    }
}

/// Pass/fail with the worst discrepancy, for batches of generic identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub max_residual: f64,
    pub witness: Option<String>,
}

impl Outcome {
    /// Collects labelled discrepancies; each passes if its residual is at most
    /// `tol` or the backend tolerance.
    pub fn collect<E: StarElement>(items: impl IntoIterator<Item = (String, E)>, tol: f64) -> Self {
        let mut max_residual: f64 = 0.0;
        let mut witness = None;
        for (label, e) in items {
            let r = e.residual();
            if r > tol.max(e.tolerance()) && witness.is_none() {
                let text = e.describe();
                let text = if text.chars().count() > 400 {
                    format!("{}…", text.chars().take(400).collect::<String>())
                } else {
                    text
                };
                witness = Some(format!("{label}: {text}"));
            }
            if r > max_residual || r.is_nan() {
                max_residual = if r.is_nan() { f64::INFINITY } else { r };
            }
        }
        Outcome { pass: witness.is_none(), max_residual, witness }
    }

    pub fn merge(mut self, o: Outcome) -> Outcome {
        self.pass &= o.pass;
        self.max_residual = self.max_residual.max(o.max_residual);
        if self.witness.is_none() {
            self.witness = o.witness;
        }
        self
    }

    pub fn ok() -> Outcome {
        Outcome { pass: true, max_residual: 0.0, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Outcome {
        Outcome { pass: false, max_residual: f64::INFINITY, witness: Some(witness.into()) }
    }
}

/// One entry of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Verdict(VerdictReport),
    Check(CheckResult),
}

impl Entry {
    pub fn pass(&self) -> bool {
        match self {
            Entry::Check(c) => c.pass,
            Entry::Verdict(v) => v.pass,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Entry::Check(c) => &c.check_id,
            Entry::Verdict(v) => &v.check_id,
        }
    }
}

impl From<CheckResult> for Entry {
    fn from(c: CheckResult) -> Self {
        Entry::Check(c)
    }
}

impl From<VerdictReport> for Entry {
    fn from(v: VerdictReport) -> Self {
        Entry::Verdict(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A report over a batch of checks, serialized deterministically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub presentation: String,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub data: std::collections::BTreeMap<String, String>,
    pub checks: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(presentation: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION.into(),
            tool: "ncgeo".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            presentation: presentation.into(),
            data: Default::default(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, e: impl Into<Entry>) {
        let e = e.into();
        self.summary.total += 1;
        if e.pass() {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(e);
    }

    pub fn extend<I: IntoIterator<Item = E>, E: Into<Entry>>(&mut self, it: I) {
        for e in it {
            self.push(e);
        }
    }

    pub fn insert_data(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut out = format!("ncgeo {} [{}]\n", self.version, self.presentation);
        for (k, v) in &self.data {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        let width = self.checks.iter().map(|c| c.id().len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass() { "PASS" } else { "FAIL" };
            let detail = match c {
                Entry::Check(r) => match &r.witness {
                    Some(w) if !r.pass => format!("  witness: {w}"),
                    _ => String::new(),
                },
                Entry::Verdict(v) => {
                    let res = v.residuals.iter().map(|r| format!("{r:.2e}")).collect::<Vec<_>>().join(", ");
                    format!("  {:?} dims={:?} residuals=[{}]", v.verdict, v.dims, res)
                }
            };
            out.push_str(&format!("{status}  {:width$}{detail}\n", c.id()));
        }
        out.push_str(&format!(
            "{} checks: {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}
