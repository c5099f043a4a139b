//! Matrix and polynomial representations used to cross-validate symbolic results.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::{AlgebraElement, Presentation, Word};
use crate::check::{Verdict, VerdictReport};
use crate::error::{Error, Result};
use crate::localization::RationalExpr;
use crate::ring::{DerivationOp, StarElement};
use crate::scalar::{GaussRat, Scalar};

/// Tolerance for identity checks.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for defining relations.
pub const RELATION_TOL: f64 = 1e-12;
/// Largest accepted condition number for numeric inverses.
pub const MAX_CONDITION: f64 = 1e8;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense complex matrix as a ring element.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat(pub DMatrix<Complex64>);

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        CMat(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn scale_complex(&self, z: Complex64) -> Self {
        CMat(&self.0 * z)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| i == j || self.0[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Inverse with a conditioning check.
    pub fn inverse(&self) -> Result<CMat> {
        let n = self.dim();
        if self.is_diagonal() {
            let d: Vec<f64> = (0..n).map(|k| self.0[(k, k)].norm()).collect();
            let (lo, hi) = d.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
            if lo == 0.0 || hi / lo > MAX_CONDITION {
                return Err(Error::IllConditioned(if lo == 0.0 { f64::INFINITY } else { hi / lo }));
            }
            let mut m = DMatrix::zeros(n, n);
            for k in 0..n {
                m[(k, k)] = Complex64::new(1.0, 0.0) / self.0[(k, k)];
            }
            return Ok(CMat(m));
        }
        let sv = self.0.clone().singular_values();
        let hi = sv.iter().cloned().fold(0.0, f64::max);
        let lo = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if lo == 0.0 || hi / lo > MAX_CONDITION {
            return Err(Error::IllConditioned(if lo == 0.0 { f64::INFINITY } else { hi / lo }));
        }
        self.0
            .clone()
            .lu()
            .try_inverse()
            .map(CMat)
            .ok_or(Error::IllConditioned(f64::INFINITY))
    }
}

impl StarElement for CMat {
    fn zero_like(&self) -> Self {
        CMat::zeros(self.dim())
    }
    fn one_like(&self) -> Self {
        CMat::identity(self.dim())
    }
    fn plus(&self, o: &Self) -> Self {
        CMat(&self.0 + &o.0)
    }
    fn times(&self, o: &Self) -> Self {
        CMat(&self.0 * &o.0)
    }
    fn negate(&self) -> Self {
        CMat(-&self.0)
    }
    fn adjoint(&self) -> Self {
        CMat(self.0.adjoint())
    }
    fn scale_by(&self, z: &GaussRat) -> Self {
        self.scale_complex(z.to_complex())
    }
    fn residual(&self) -> f64 {
        self.max_abs()
    }
    fn scalar_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn describe(&self) -> String {
        format!("matrix residual {:.3e}", self.max_abs())
    }
    fn tolerance(&self) -> f64 {
        IDENTITY_TOL
    }
}

/// Inner derivation `M ↦ c·[G, M]` on matrices.
#[derive(Clone, Debug)]
pub struct MatrixDerivation {
    pub name: String,
    pub generator: CMat,
    pub prefactor: Complex64,
}

impl DerivationOp<CMat> for MatrixDerivation {
    fn apply(&self, x: &CMat) -> CMat {
        self.generator.commutator(x).scale_complex(self.prefactor)
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepKind {
    /// Spin-j representation, `twice_j = 2j`.
    Spin { twice_j: u32 },
    /// Truncated ladder representation with levels `n + offset`, `n = 0..N−1`.
    Fock { offset: f64 },
}

/// Sparse generator image: `(row, col, value)` triplets.
type Sparse = Vec<(usize, usize, Complex64)>;

/// Finite-dimensional representation of a presentation.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub presentation_id: String,
    pub kind: RepKind,
    pub dim: usize,
    pub hbar: f64,
    pub images: Vec<CMat>,
    sparse: Vec<Sparse>,
    /// Per generator: how far it moves a basis index up / down.
    raising: Vec<usize>,
    lowering: Vec<usize>,
    chart: Option<FockChart>,
}

/// Generator layout of a Weyl presentation.
#[derive(Clone, Copy, Debug, PartialEq)]
enum FockChart {
    Lambda,
    UV,
}

fn to_sparse(m: &CMat) -> Sparse {
    let n = m.dim();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let z = m.0[(i, j)];
            if z != Complex64::new(0.0, 0.0) {
                out.push((i, j, z));
            }
        }
    }
    out
}

/// Spin-j representation of the fuzzy sphere: `X_i = J_i/√(j(j+1))`, `ℏ = 1/√(j(j+1))`.
pub fn spin_rep(twice_j: u32) -> Result<MatrixRep> {
    if twice_j == 0 {
        return Err(Error::InvalidParameter("spin j must be positive".into()));
    }
    let j = twice_j as f64 / 2.0;
    let n = twice_j as usize + 1;
    let norm = (j * (j + 1.0)).sqrt();
    // basis m = j, j−1, …, −j
    let m_of = |k: usize| j - k as f64;
    let mut jx = DMatrix::<Complex64>::zeros(n, n);
    let mut jy = DMatrix::<Complex64>::zeros(n, n);
    let mut jz = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n {
        jz[(k, k)] = c(m_of(k));
        if k + 1 < n {
            // J₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩, from basis index k+1 to k
            let m = m_of(k + 1);
            let a = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            jx[(k, k + 1)] = c(a / 2.0);
            jx[(k + 1, k)] = c(a / 2.0);
            jy[(k, k + 1)] = Complex64::new(0.0, -a / 2.0);
            jy[(k + 1, k)] = Complex64::new(0.0, a / 2.0);
        }
    }
    let images: Vec<CMat> = [jx, jy, jz].into_iter().map(|m| CMat(m / c(norm))).collect();
    Ok(MatrixRep {
        presentation_id: "fuzzy".into(),
        kind: RepKind::Spin { twice_j },
        dim: n,
        hbar: 1.0 / norm,
        sparse: images.iter().map(to_sparse).collect(),
        images,
        raising: vec![0; 3],
        lowering: vec![0; 3],
        chart: None,
    })
}

/// Truncated Fock representation `Λ|n⟩ = √(2ℏ(n+ν))|n−1⟩`, `Λ*|n⟩ = √(2ℏ(n+1+ν))|n+1⟩`
/// of a Weyl presentation (either chart). `ν = 0` is the standard representation;
/// `ν > 0` removes the kernel of `Λ` at the price of a defect at the lowest level.
pub fn fock_rep_shifted(p: &Presentation, hbar: f64, n: usize, offset: f64) -> Result<MatrixRep> {
    if n < 4 || !(hbar > 0.0) || !(offset >= 0.0) {
        return Err(Error::InvalidParameter(format!("fock_rep needs N ≥ 4, ℏ > 0 (got N = {n}, ℏ = {hbar})")));
    }
    let chart = match p.names().iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["L", "Ls"] => FockChart::Lambda,
        ["U", "V"] => FockChart::UV,
        _ => return Err(Error::Unsupported(format!("no Fock representation for {}", p.id()))),
    };
    Ok(fock_images(p.id(), chart, hbar, n, offset))
}

fn fock_images(id: &str, chart: FockChart, hbar: f64, n: usize, offset: f64) -> MatrixRep {
    let mut lam = DMatrix::<Complex64>::zeros(n, n);
    for k in 1..n {
        lam[(k - 1, k)] = c((2.0 * hbar * (k as f64 + offset)).sqrt());
    }
    let lam_s = lam.adjoint();
    let (images, raising, lowering) = match chart {
        FockChart::Lambda => (vec![CMat(lam), CMat(lam_s)], vec![0, 1], vec![1, 0]),
        FockChart::UV => {
            let u = (&lam + &lam_s) * c(0.5);
            let v = (&lam - &lam_s) * Complex64::new(0.0, -0.5);
            (vec![CMat(u), CMat(v)], vec![1, 1], vec![1, 1])
        }
    };
    MatrixRep {
        presentation_id: id.to_string(),
        kind: RepKind::Fock { offset },
        dim: n,
        hbar,
        sparse: images.iter().map(to_sparse).collect(),
        images,
        raising,
        lowering,
        chart: Some(chart),
    }
}

/// Standard truncated Fock representation at a positive rational ℏ.
pub fn fock_rep(p: &Presentation, hbar: &BigRational, n: usize) -> Result<MatrixRep> {
    let h = hbar.to_f64().ok_or_else(|| Error::InvalidParameter("ℏ not representable".into()))?;
    fock_rep_shifted(p, h, n, 0.0)
}

impl MatrixRep {
    fn hbar_c(&self) -> Complex64 {
        c(self.hbar)
    }

    fn is_fock(&self) -> bool {
        matches!(self.kind, RepKind::Fock { .. })
    }

    /// Evaluates a word applied to `m` from the left.
    fn apply_word(&self, w: &Word, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut cur = m.clone();
        for &g in w.0.iter().rev() {
            let mut next = DMatrix::<Complex64>::zeros(self.dim, cur.ncols());
            for &(r, col, v) in &self.sparse[g as usize] {
                for j in 0..cur.ncols() {
                    next[(r, j)] += v * cur[(col, j)];
                }
            }
            cur = next;
        }
        cur
    }

    pub fn scalar_value(&self, s: &Scalar) -> Complex64 {
        s.eval(self.hbar_c())
    }

    /// Image of an algebra element, with ℏ substituted by the representation's value.
    pub fn evaluate(&self, x: &AlgebraElement) -> CMat {
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        let mut acc = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for (w, s) in x.terms() {
            let z = self.scalar_value(s);
            if w.is_unit() {
                acc += &id * z;
            } else {
                acc += self.apply_word(w, &id) * z;
            }
        }
        CMat(acc)
    }

    /// Image of `x` computed in a Fock truncation large enough that no word
    /// leaves it, cropped back to this dimension.
    pub fn evaluate_padded(&self, x: &AlgebraElement) -> CMat {
        let (up, _) = self.element_shift(x);
        match (&self.kind, self.chart) {
            (RepKind::Fock { offset }, Some(chart)) if up > 0 => {
                let big = fock_images(&self.presentation_id, chart, self.hbar, self.dim + up, *offset);
                CMat(big.evaluate(x).0.view((0, 0), (self.dim, self.dim)).into_owned())
            }
            _ => self.evaluate(x),
        }
    }

    /// Image of a rational expression; inverses are evaluated by a conditioned solve.
    pub fn evaluate_expr(&self, e: &RationalExpr) -> Result<CMat> {
        let mut cache: HashMap<AlgebraElement, CMat> = HashMap::new();
        let mut acc = CMat::zeros(self.dim);
        for m in e.monomials() {
            let mut prod = self.evaluate(&m.segments[0]);
            for (k, d) in m.inverses.iter().enumerate() {
                let inv = match cache.get(d) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.evaluate_padded(d).inverse()?;
                        cache.insert(d.clone(), v.clone());
                        v
                    }
                };
                prod = prod.times(&inv);
                let seg = &m.segments[k + 1];
                if seg.as_scalar().is_none_or(|s| !s.is_one()) {
                    prod = prod.times(&self.evaluate(seg));
                }
            }
            acc = acc.plus(&prod);
        }
        Ok(acc)
    }

    fn element_shift(&self, x: &AlgebraElement) -> (usize, usize) {
        x.terms().keys().fold((0, 0), |(r, l), w| {
            let up: usize = w.0.iter().map(|&g| self.raising[g as usize]).sum();
            let down: usize = w.0.iter().map(|&g| self.lowering[g as usize]).sum();
            (r.max(up), l.max(down))
        })
    }

    /// Total index displacement (up, down) an expression can cause.
    pub fn expr_shift(&self, e: &RationalExpr) -> (usize, usize) {
        e.monomials().iter().fold((0, 0), |(r, l), m| {
            let (mut up, mut down) = (0, 0);
            for a in m.segments.iter().chain(m.inverses.iter()) {
                let (u, d) = self.element_shift(a);
                up += u;
                down += d;
            }
            (r.max(up), l.max(down))
        })
    }

    /// Columns on which an expression with the given displacement is exact.
    pub fn safe_columns(&self, up: usize, down: usize) -> std::ops::Range<usize> {
        match self.kind {
            RepKind::Spin { .. } => 0..self.dim,
            RepKind::Fock { offset } => {
                let lo = if offset == 0.0 { 0 } else { down };
                let hi = self.dim.saturating_sub(up);
                lo..hi.max(lo)
            }
        }
    }

    /// Residual of `lhs − rhs` on the safe window, relative to `max(1, largest entry)`.
    pub fn compare(&self, lhs: &RationalExpr, rhs: &RationalExpr) -> Result<f64> {
        let (u1, d1) = self.expr_shift(lhs);
        let (u2, d2) = self.expr_shift(rhs);
        let cols = self.safe_columns(u1.max(u2), d1.max(d2));
        if cols.is_empty() {
            return Err(Error::InvalidParameter("empty safe window".into()));
        }
        let a = self.evaluate_expr(lhs)?;
        let b = self.evaluate_expr(rhs)?;
        Ok(window_residual(&a, &b, cols))
    }

    /// Frobenius residuals of the defining relations (all columns for spin,
    /// the safe window for Fock).
    pub fn relation_residuals(&self, p: &Arc<Presentation>) -> Vec<(String, f64)> {
        p.rules()
            .iter()
            .map(|r| {
                let raw_lhs = self.apply_word(&r.lhs, &DMatrix::identity(self.dim, self.dim));
                let rhs = AlgebraElement::from_terms(p, r.rhs.iter().cloned());
                let diff = raw_lhs - self.evaluate(&rhs).0;
                let up = r.lhs.0.iter().map(|&g| self.raising[g as usize]).sum();
                let down = r.lhs.0.iter().map(|&g| self.lowering[g as usize]).sum();
                let cols = if self.is_fock() { self.safe_columns(up, down) } else { 0..self.dim };
                let mut f = 0.0;
                for j in cols {
                    for i in 0..self.dim {
                        f += diff[(i, j)].norm_sqr();
                    }
                }
                (p.word_text(&r.lhs), f.sqrt())
            })
            .collect()
    }
}

fn window_residual(a: &CMat, b: &CMat, cols: std::ops::Range<usize>) -> f64 {
    let n = a.dim();
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for j in cols {
        for i in 0..n {
            diff = diff.max((a.0[(i, j)] - b.0[(i, j)]).norm());
            scale = scale.max(a.0[(i, j)].norm()).max(b.0[(i, j)].norm());
        }
    }
    diff / scale
}

/// Numeric comparison in Fock representations at a dimension and its double.
#[derive(Clone, Debug)]
pub struct FockCheck {
    pub presentation: Arc<Presentation>,
    pub hbar: f64,
    pub dims: Vec<usize>,
    pub offset: f64,
    pub tolerance: f64,
}

impl FockCheck {
    /// Dimensions `N` and `2N`.
    pub fn new(p: &Arc<Presentation>, hbar: f64, n: usize, tolerance: f64) -> Self {
        FockCheck { presentation: p.clone(), hbar, dims: vec![n, 2 * n], offset: 0.0, tolerance }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn reps(&self) -> Result<Vec<MatrixRep>> {
        self.dims
            .iter()
            .map(|&n| fock_rep_shifted(&self.presentation, self.hbar, n, self.offset))
            .collect()
    }

    /// Numeric verdict on `lhs = rhs`: residual below tolerance at every
    /// dimension, and stable between consecutive dimensions.
    pub fn check(&self, id: &str, statement: &str, lhs: &RationalExpr, rhs: &RationalExpr) -> VerdictReport {
        let reps = match self.reps() {
            Ok(r) => r,
            Err(e) => return inconclusive(id, statement, &self.dims, e.to_string()),
        };
        check_identity_numeric(id, statement, lhs, rhs, &reps, self.tolerance)
    }
}

fn inconclusive(id: &str, statement: &str, dims: &[usize], note: String) -> VerdictReport {
    VerdictReport {
        check_id: id.into(),
        statement: statement.into(),
        mode: "numeric".into(),
        verdict: Verdict::Inconclusive,
        dims: dims.to_vec(),
        residuals: Vec::new(),
        stable: false,
        pass: false,
        note: Some(note),
    }
}

/// Compares both sides in every representation; numeric-equal iff all
/// residuals are below `tol` and consecutive residuals differ by less than `tol`.
pub fn check_identity_numeric(
    id: &str,
    statement: &str,
    lhs: &RationalExpr,
    rhs: &RationalExpr,
    reps: &[MatrixRep],
    tol: f64,
) -> VerdictReport {
    let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
    let mut residuals = Vec::with_capacity(reps.len());
    for r in reps {
        match r.compare(lhs, rhs) {
            Ok(x) => residuals.push(x),
            Err(e) => return inconclusive(id, statement, &dims, e.to_string()),
        }
    }
    let small = residuals.iter().all(|&x| x < tol);
    let stable = residuals.windows(2).all(|w| (w[1] - w[0]).abs() < tol);
    let verdict = if small && stable { Verdict::NumericEqual } else { Verdict::Inconclusive };
    VerdictReport {
        check_id: id.into(),
        statement: statement.into(),
        mode: "numeric".into(),
        verdict,
        dims,
        residuals,
        stable,
        pass: verdict == Verdict::NumericEqual,
        note: None,
    }
}

/// Exact action of the Weyl algebra on polynomials in `t` with coefficients in ℚ(i)(ℏ):
/// `U = t·`, `V = −iℏ d/dt` (hence `Λ = t + ℏ d/dt`, `Λ* = t − ℏ d/dt`).
#[derive(Clone, Debug)]
pub struct PolyRep {
    pub degree: usize,
    presentation: Arc<Presentation>,
}

/// Polynomial in `t`, ascending coefficients.
pub type TPoly = Vec<Scalar>;

impl PolyRep {
    pub fn new(p: &Arc<Presentation>, degree: usize) -> Result<Self> {
        match p.names().iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
            ["L", "Ls"] | ["U", "V"] => Ok(PolyRep { degree, presentation: p.clone() }),
            _ => Err(Error::Unsupported(format!("no polynomial representation for {}", p.id()))),
        }
    }

    fn times_t(f: &TPoly) -> TPoly {
        let mut out = vec![Scalar::zero()];
        out.extend(f.iter().cloned());
        out
    }

    fn deriv(f: &TPoly) -> TPoly {
        f.iter().enumerate().skip(1).map(|(k, a)| a.scale(&GaussRat::from_int(k as i64))).collect()
    }

    fn add(a: &TPoly, b: &TPoly, cb: &Scalar) -> TPoly {
        let n = a.len().max(b.len());
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_default();
                let y = b.get(k).map(|y| y * cb).unwrap_or_default();
                &x + &y
            })
            .collect()
    }

    fn apply_generator(&self, g: u8, f: &TPoly) -> TPoly {
        let h = self.presentation.hbar();
        let name = &self.presentation.names()[g as usize];
        let t = PolyRep::times_t(f);
        let d = PolyRep::deriv(f);
        match name.as_str() {
            "U" => t,
            "V" => PolyRep::add(&Vec::new(), &d, &-&(&Scalar::i() * h)),
            "L" => PolyRep::add(&t, &d, h),
            "Ls" => PolyRep::add(&t, &d, &-h),
            _ => unreachable!("checked at construction"),
        }
    }

    /// Image of `x` applied to `f`.
    pub fn apply(&self, x: &AlgebraElement, f: &TPoly) -> TPoly {
        let mut acc: TPoly = Vec::new();
        for (w, s) in x.terms() {
            let mut cur = f.clone();
            for &g in w.0.iter().rev() {
                cur = self.apply_generator(g, &cur);
            }
            acc = PolyRep::add(&acc, &cur, s);
        }
        while acc.last().is_some_and(Scalar::is_zero) {
            acc.pop();
        }
        acc
    }

    /// True iff `x` and `y` act identically on `t^k` for every `k ≤ degree`.
    pub fn agree(&self, x: &AlgebraElement, y: &AlgebraElement) -> bool {
        let diff = x - y;
        (0..=self.degree).all(|k| {
            let mut mono = vec![Scalar::zero(); k];
            mono.push(Scalar::one());
            self.apply(&diff, &mono).is_empty()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fuzzy_relations_hold(twice_j: u32) {
        let rep = spin_rep(twice_j).unwrap();
        let p = Presentation::fuzzy();
        for (name, r) in rep.relation_residuals(&p) {
            assert!(r < RELATION_TOL, "j={}/2 {name}: {r}", twice_j);
        }
        let x = &rep.images;
        let cas = x[0].times(&x[0]).plus(&x[1].times(&x[1])).plus(&x[2].times(&x[2]));
        assert!(cas.minus(&CMat::identity(rep.dim)).frobenius() < RELATION_TOL);
    }

    #[test]
    fn spin_examples() {
        let half = spin_rep(1).unwrap();
        assert_eq!(half.dim, 2);
        assert!((half.hbar - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        let sx = half.images[0].scale_complex(c(3f64.sqrt()));
        assert!((sx.0[(0, 1)] - c(1.0)).norm() < 1e-15);
        let one = spin_rep(2).unwrap();
        assert_eq!(one.dim, 3);
        assert!((one.hbar - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(spin_rep(0).is_err());
        for tj in 1..=12 {
            fuzzy_relations_hold(tj);
        }
    }

    #[test]
    fn fock_examples() {
        let p = Presentation::weyl_lambda();
        let rep = fock_rep(&p, &BigRational::new(1.into(), 2.into()), 4).unwrap();
        let l = &rep.images[0];
        for k in 1..4 {
            assert!((l.0[(k - 1, k)] - c((k as f64).sqrt())).norm() < 1e-15);
        }
        let comm = l.commutator(&rep.images[1]);
        assert!((comm.0[(0, 0)] - c(1.0)).norm() < 1e-15);
        assert!((comm.0[(3, 3)] - c(1.0)).norm() > 0.5);
        let res = rep.relation_residuals(&p);
        assert!(res.iter().all(|(_, r)| *r < RELATION_TOL));
        assert!(fock_rep(&p, &BigRational::new(1.into(), 2.into()), 3).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let f = Presentation::fuzzy();
        let rep = spin_rep(3).unwrap();
        let x = |n: &str| AlgebraElement::generator(&f, n).unwrap();
        let cas = &(&(&(&x("X") * &x("X")) + &(&x("Y") * &x("Y"))) + &(&x("Z") * &x("Z"))) - &AlgebraElement::one(&f);
        let raw = rep.images[0].times(&rep.images[0]).plus(&rep.images[1].times(&rep.images[1]));
        let raw = raw.plus(&rep.images[2].times(&rep.images[2])).minus(&CMat::identity(4));
        assert!(raw.max_abs() < RELATION_TOL);
        assert!(rep.evaluate(&cas).max_abs() < RELATION_TOL);
        assert_eq!(rep.evaluate(&AlgebraElement::one(&f)), CMat::identity(4));

        let w = Presentation::weyl_lambda();
        let hb = 0.5;
        let rep = fock_rep_shifted(&w, hb, 16, 0.0).unwrap();
        let l = AlgebraElement::generator(&w, "L").unwrap();
        let ls = AlgebraElement::generator(&w, "Ls").unwrap();
        let one = AlgebraElement::one(&w);
        let s = (&(&one + &(&(&ls * &ls) * &(&l * &l))) + &(&ls * &l).scale(&Scalar::from_int(2))).scale(&Scalar::from_int(2));
        let m = rep.evaluate(&s);
        for n in 0..14 {
            let nf = n as f64;
            let expect = 2.0 * (1.0 + 4.0 * hb * hb * nf * (nf - 1.0) + 4.0 * hb * nf);
            assert!((m.0[(n, n)] - c(expect)).norm() < 1e-10);
        }
    }

    #[test]
    fn poly_rep_commutator() {
        let p = Presentation::weyl_uv();
        let rep = PolyRep::new(&p, 6).unwrap();
        let u = AlgebraElement::generator(&p, "U").unwrap();
        let v = AlgebraElement::generator(&p, "V").unwrap();
        let ih = AlgebraElement::scalar(&p, &Scalar::i() * &Scalar::hbar());
        assert!(rep.agree(&u.commutator(&v), &ih));
        assert!(!rep.agree(&(&u * &v), &(&v * &u)));
        let w = Presentation::weyl_lambda();
        let rep = PolyRep::new(&w, 6).unwrap();
        let l = AlgebraElement::generator(&w, "L").unwrap();
        let ls = AlgebraElement::generator(&w, "Ls").unwrap();
        let two_h = AlgebraElement::scalar(&w, &Scalar::from_int(2) * &Scalar::hbar());
        // raw (unreduced) product check: apply Ls then L versus the normal form
        let f = vec![Scalar::zero(), Scalar::one()];
        let a = rep.apply(&l, &rep.apply(&ls, &f));
        let b = rep.apply(&(&(&ls * &l) + &two_h), &f);
        assert_eq!(a, b);
    }

    #[test]
    fn fock_numeric_check() {
        let w = Presentation::weyl_lambda();
        let l = AlgebraElement::generator(&w, "L").unwrap();
        let ls = AlgebraElement::generator(&w, "Ls").unwrap();
        let lhs: RationalExpr = l.commutator(&ls).into();
        let rhs: RationalExpr = AlgebraElement::scalar(&w, &Scalar::from_int(2) * w.hbar()).into();
        let r = FockCheck::new(&w, 0.5, 32, IDENTITY_TOL).check("comm", "[L, Ls] = 2hbar", &lhs, &rhs);
        assert_eq!(r.verdict, Verdict::NumericEqual, "{r:?}");
        let z = RationalExpr::zero(&w);
        let r = FockCheck::new(&w, 0.5, 32, IDENTITY_TOL).check("zero", "0 = 0", &z, &z);
        assert_eq!(r.residuals, vec![0.0, 0.0]);
    }
}
