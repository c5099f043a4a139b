//! Free right modules Aⁿ: vectors, duals, hermitian forms, module maps,
//! orthogonal projections, pseudo-inverse regularity and the doubling embedding.

use crate::check::{CheckResult, Outcome};
use crate::error::{Error, Result};
use crate::ring::{matrix_inverse, StarElement};
use crate::scalar::GaussRat;

/// Square or rectangular matrix of ring elements, row-major.
pub type Mat<E> = Vec<Vec<E>>;

pub fn mat_identity<E: StarElement>(n: usize, t: &E) -> Mat<E> {
    (0..n).map(|i| (0..n).map(|j| if i == j { t.one_like() } else { t.zero_like() }).collect()).collect()
}

pub fn mat_zero<E: StarElement>(rows: usize, cols: usize, t: &E) -> Mat<E> {
    vec![vec![t.zero_like(); cols]; rows]
}

pub fn mat_mul<E: StarElement>(a: &Mat<E>, b: &Mat<E>) -> Mat<E> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for k in 0..inner {
                        if row[k].is_exact_zero() || b[k][j].is_exact_zero() {
                            continue;
                        }
                        acc = acc.plus(&row[k].times(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_add<E: StarElement>(a: &Mat<E>, b: &Mat<E>) -> Mat<E> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.plus(y)).collect()).collect()
}

pub fn mat_sub<E: StarElement>(a: &Mat<E>, b: &Mat<E>) -> Mat<E> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.minus(y)).collect()).collect()
}

pub fn mat_scale<E: StarElement>(a: &Mat<E>, c: &GaussRat) -> Mat<E> {
    a.iter().map(|r| r.iter().map(|x| x.scale_by(c)).collect()).collect()
}

/// Conjugate transpose with the involution applied entrywise.
pub fn mat_adjoint<E: StarElement>(a: &Mat<E>) -> Mat<E> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].adjoint()).collect()).collect()
}

/// Block matrix `[[a, b], [c, d]]`.
pub fn mat_blocks<E: StarElement>(a: &Mat<E>, b: &Mat<E>, c: &Mat<E>, d: &Mat<E>) -> Mat<E> {
    let top = a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect());
    let bottom = c.iter().zip(d).map(|(x, y)| x.iter().chain(y).cloned().collect());
    top.chain(bottom).collect()
}

/// Entrywise discrepancies `a − b`, labelled `name[i][j]`.
pub fn mat_diff<E: StarElement>(name: &str, a: &Mat<E>, b: &Mat<E>) -> Vec<(String, E)> {
    let mut out = Vec::new();
    for (i, (r, s)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in r.iter().zip(s).enumerate() {
            out.push((format!("{name}[{i}][{j}]"), x.minus(y)));
        }
    }
    out
}

/// Element `Σ ê_i U^i` of Aⁿ.
#[derive(Clone, Debug)]
pub struct ModuleVector<E>(pub Vec<E>);

/// Element of (Aⁿ)*, `ω(ê_i U^i) = ω_i U^i`.
#[derive(Clone, Debug)]
pub struct DualVector<E>(pub Vec<E>);

impl<E: StarElement> ModuleVector<E> {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn zero(n: usize, t: &E) -> Self {
        ModuleVector(vec![t.zero_like(); n])
    }

    /// Basis vector `ê_i`.
    pub fn basis(n: usize, i: usize, t: &E) -> Self {
        ModuleVector((0..n).map(|k| if k == i { t.one_like() } else { t.zero_like() }).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        ModuleVector(self.0.iter().zip(&o.0).map(|(a, b)| a.plus(b)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ModuleVector(self.0.iter().zip(&o.0).map(|(a, b)| a.minus(b)).collect())
    }

    pub fn neg(&self) -> Self {
        ModuleVector(self.0.iter().map(StarElement::negate).collect())
    }

    /// Right action `m·a`.
    pub fn right_mul(&self, a: &E) -> Self {
        ModuleVector(self.0.iter().map(|x| x.times(a)).collect())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        ModuleVector(self.0.iter().map(|x| x.scale_by(c)).collect())
    }

    /// Componentwise discrepancy against `o`.
    pub fn diff(&self, label: &str, o: &Self) -> Vec<(String, E)> {
        self.0.iter().zip(&o.0).enumerate().map(|(i, (a, b))| (format!("{label}^{i}"), a.minus(b))).collect()
    }

    pub fn as_column(&self) -> Mat<E> {
        self.0.iter().map(|x| vec![x.clone()]).collect()
    }
}

impl<E: StarElement> DualVector<E> {
    pub fn apply(&self, m: &ModuleVector<E>) -> E {
        let mut acc = self.0[0].zero_like();
        for (w, u) in self.0.iter().zip(&m.0) {
            acc = acc.plus(&w.times(u));
        }
        acc
    }

    /// Right action on duals, `(ω·a)(m) = a*·ω(m)`.
    pub fn right_mul(&self, a: &E) -> Self {
        let s = a.adjoint();
        DualVector(self.0.iter().map(|w| s.times(w)).collect())
    }
}

/// Hermitian form on Aⁿ, `h(U, V) = Σ (U^i)* h_ij V^j`.
#[derive(Clone, Debug)]
pub struct HermitianForm<E> {
    pub matrix: Mat<E>,
}

impl<E: StarElement> HermitianForm<E> {
    pub fn new(matrix: Mat<E>) -> Self {
        HermitianForm { matrix }
    }

    /// The standard form `h⁰(U, V) = Σ (U^i)* V^i`.
    pub fn standard(n: usize, t: &E) -> Self {
        HermitianForm { matrix: mat_identity(n, t) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, m1: &ModuleVector<E>, m2: &ModuleVector<E>) -> Result<E> {
        let n = self.dim();
        for m in [m1, m2] {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
            }
        }
        Ok(self.hat(m1).apply(m2))
    }

    /// `ĥ(m)`: the dual vector `(ĥ(m))_j = Σ_i (m^i)* h_ij`.
    pub fn hat(&self, m: &ModuleVector<E>) -> DualVector<E> {
        let n = self.dim();
        let stars: Vec<E> = m.0.iter().map(StarElement::adjoint).collect();
        DualVector(
            (0..n)
                .map(|j| {
                    let mut acc = stars[0].zero_like();
                    for i in 0..n {
                        if stars[i].is_exact_zero() || self.matrix[i][j].is_exact_zero() {
                            continue;
                        }
                        acc = acc.plus(&stars[i].times(&self.matrix[i][j]));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `h_ij* = h_ji`.
    pub fn check_hermitian(&self) -> Outcome {
        let adj = mat_adjoint(&self.matrix);
        Outcome::collect(mat_diff("h", &adj, &self.matrix), 0.0)
    }
}

/// Module endomorphism `p(ê_j U^j) = ê_i P^i_j U^j`.
#[derive(Clone, Debug)]
pub struct ModuleMap<E> {
    pub matrix: Mat<E>,
}

impl<E: StarElement> ModuleMap<E> {
    pub fn new(matrix: Mat<E>) -> Self {
        ModuleMap { matrix }
    }

    pub fn identity(n: usize, t: &E) -> Self {
        ModuleMap { matrix: mat_identity(n, t) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, m: &ModuleVector<E>) -> ModuleVector<E> {
        ModuleVector(mat_mul(&self.matrix, &m.as_column()).into_iter().map(|mut r| r.remove(0)).collect())
    }

    pub fn compose(&self, o: &Self) -> Self {
        ModuleMap { matrix: mat_mul(&self.matrix, &o.matrix) }
    }

    /// Columns `ê_i P^i_j` as module vectors.
    pub fn columns(&self) -> Vec<ModuleVector<E>> {
        let n = self.dim();
        (0..self.matrix[0].len()).map(|j| ModuleVector((0..n).map(|i| self.matrix[i][j].clone()).collect())).collect()
    }

    pub fn trace(&self) -> E {
        let mut acc = self.matrix[0][0].zero_like();
        for i in 0..self.dim() {
            acc = acc.plus(&self.matrix[i][i]);
        }
        acc
    }
}

/// `P² = P` and `P†h = hP`, with per-entry discrepancies.
pub fn projection_outcomes<E: StarElement>(p: &ModuleMap<E>, h: &HermitianForm<E>) -> (Outcome, Outcome) {
    let p2 = mat_mul(&p.matrix, &p.matrix);
    let idem = Outcome::collect(mat_diff("P^2-P", &p2, &p.matrix), 0.0);
    let lhs = mat_mul(&mat_adjoint(&p.matrix), &h.matrix);
    let rhs = mat_mul(&h.matrix, &p.matrix);
    let orth = Outcome::collect(mat_diff("P*h-hP", &lhs, &rhs), 0.0);
    (idem, orth)
}

/// Checks that `p` is an orthogonal projection with respect to `h`.
pub fn is_orthogonal_projection<E: StarElement>(id: &str, p: &ModuleMap<E>, h: &HermitianForm<E>) -> CheckResult {
    let (idem, orth) = projection_outcomes(p, h);
    let o = idem.merge(orth);
    CheckResult::exact(id, "p∘p = p and h(p(U), V) = h(U, p(V))", o.pass, o.witness)
}

/// Generators `e_a` of a submodule of Aⁿ, with an optional candidate pseudo-inverse `h^{ab}`.
#[derive(Clone, Debug)]
pub struct GeneratorSet<E> {
    pub generators: Vec<ModuleVector<E>>,
    pub pseudo_inverse: Option<Mat<E>>,
}

impl<E: StarElement> GeneratorSet<E> {
    pub fn new(generators: Vec<ModuleVector<E>>, pseudo_inverse: Option<Mat<E>>) -> Self {
        GeneratorSet { generators, pseudo_inverse }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Gram matrix `h_ab = h(e_a, e_b)`.
    pub fn gram(&self, h: &HermitianForm<E>) -> Result<Mat<E>> {
        self.generators
            .iter()
            .map(|a| self.generators.iter().map(|b| h.eval(a, b)).collect())
            .collect()
    }

    /// Ambient coordinates of `Σ_a e_a c^a`.
    pub fn combine(&self, coeffs: &[E]) -> ModuleVector<E> {
        let n = self.generators[0].dim();
        let t = &self.generators[0].0[0];
        let mut acc = ModuleVector::zero(n, t);
        for (e, c) in self.generators.iter().zip(coeffs) {
            if c.is_exact_zero() {
                continue;
            }
            acc = acc.add(&e.right_mul(c));
        }
        acc
    }
}

/// Verifies `(h^{ab})* = h^{ba}` and `e_a h^{ab} h_bc = e_c`; flags `basis`
/// when moreover `h^{ap} h_pc = δ^a_c`.
pub fn check_pseudo_inverse<E: StarElement>(id: &str, g: &GeneratorSet<E>, h: &HermitianForm<E>) -> Result<CheckResult> {
    let inv = g
        .pseudo_inverse
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("generator set carries no candidate pseudo-inverse".into()))?;
    let gram = g.gram(h)?;
    let herm = Outcome::collect(mat_diff("hinv", &mat_adjoint(inv), inv), 0.0);
    let prod = mat_mul(inv, &gram);
    let m = g.len();
    let mut items = Vec::new();
    for c in 0..m {
        let col: Vec<E> = (0..m).map(|a| prod[a][c].clone()).collect();
        items.extend(g.combine(&col).diff(&format!("e_a h^ab h_b{c} - e_{c}"), &g.generators[c]));
    }
    let recon = Outcome::collect(items, 0.0);
    let o = herm.merge(recon);
    let mut r = CheckResult::exact(id, "(h^ab)* = h^ba and e_a h^ab h_bc = e_c", o.pass, o.witness);
    let t = &gram[0][0];
    if o.pass && Outcome::collect(mat_diff("basis", &prod, &mat_identity(m, t)), 0.0).pass {
        r = r.with_flag("basis");
    }
    Ok(r)
}

/// `p^i_j = Σ e_a^i h^{ab} h⁰(e_b, ê_j)` together with the verification of
/// `p² = p`, orthogonality and `p(e_a) = e_a`.
pub fn projection_from_generators<E: StarElement>(
    id: &str,
    g: &GeneratorSet<E>,
    h0: &HermitianForm<E>,
) -> Result<(ModuleMap<E>, CheckResult)> {
    let reg = check_pseudo_inverse(&format!("{id}/regularity"), g, h0)?;
    if !reg.pass {
        return Err(Error::CheckFailed(format!("regularity: {}", reg.witness.unwrap_or_default())));
    }
    let inv = g.pseudo_inverse.as_ref().expect("checked above");
    let n = h0.dim();
    let m = g.len();
    // E[i][a] = e_a^i, D[b][j] = ĥ⁰(e_b)_j
    let e_mat: Mat<E> = (0..n).map(|i| (0..m).map(|a| g.generators[a].0[i].clone()).collect()).collect();
    let d_mat: Mat<E> = g.generators.iter().map(|e| h0.hat(e).0).collect();
    let p = ModuleMap::new(mat_mul(&mat_mul(&e_mat, inv), &d_mat));
    let (idem, orth) = projection_outcomes(&p, h0);
    let mut fixes = Vec::new();
    for (a, e) in g.generators.iter().enumerate() {
        fixes.extend(p.apply(e).diff(&format!("p(e_{a}) - e_{a}"), e));
    }
    let o = idem.merge(orth).merge(Outcome::collect(fixes, 0.0));
    let r = CheckResult::exact(id, "p = e_a h^ab h0(e_b, .) is an orthogonal projection fixing every e_a", o.pass, o.witness);
    Ok((p, r))
}

/// Data of the doubled-module embedding in coordinates `(U, ω†)` of `A^{2n}`,
/// where `b` has matrix `[[0, 𝟙], [𝟙, 0]]`.
#[derive(Clone, Debug)]
pub struct Embedding<E> {
    pub b: HermitianForm<E>,
    pub p_hat: ModuleMap<E>,
    /// `Φ'(U) = (U, ĥ(U))` as a `2n × n` matrix.
    pub phi: Mat<E>,
    pub checks: Vec<CheckResult>,
}

/// Builds `b`, `p̂ = ½[[P, H⁻¹P†], [HP, P†]]` and verifies `p̂² = p̂`,
/// `b`-orthogonality, `p̂ Φ'(P) = Φ'(P)`, surjectivity `Φ'[P | H⁻¹P†] = 2p̂`,
/// and the isometry `(Φ'P)† (½b) (Φ'P) = P† H P`.
pub fn embed_regular_module<E: StarElement>(id: &str, p: &ModuleMap<E>, h: &HermitianForm<E>) -> Result<Embedding<E>> {
    let n = h.dim();
    let t = h.matrix[0][0].clone();
    let hm = &h.matrix;
    let h_inv = matrix_inverse(hm).ok_or_else(|| Error::Unsupported("h has no matrix inverse over the algebra".into()))?;
    let id_n = mat_identity(n, &t);
    let two_sided = Outcome::collect(mat_diff("H Hinv", &mat_mul(hm, &h_inv), &id_n), 0.0)
        .merge(Outcome::collect(mat_diff("Hinv H", &mat_mul(&h_inv, hm), &id_n), 0.0));
    if !two_sided.pass {
        return Err(Error::Unsupported("h has no two-sided matrix inverse over the algebra".into()));
    }
    let pm = &p.matrix;
    let p_dag = mat_adjoint(pm);
    let zero_n = mat_zero(n, n, &t);
    let half = GaussRat::from_ratio(1, 2);
    let b = HermitianForm::new(mat_blocks(&zero_n, &id_n, &id_n, &zero_n));
    let hinv_pdag = mat_mul(&h_inv, &p_dag);
    let hp = mat_mul(hm, pm);
    let p_hat = ModuleMap::new(mat_scale(&mat_blocks(pm, &hinv_pdag, &hp, &p_dag), &half));
    let phi: Mat<E> = id_n.iter().cloned().chain(hm.iter().cloned()).collect();

    let mut checks = Vec::new();
    let (idem, orth) = projection_outcomes(&p_hat, &b);
    checks.push(CheckResult::exact(format!("{id}/idempotent"), "p̂∘p̂ = p̂", idem.pass, idem.witness));
    checks.push(CheckResult::exact(format!("{id}/b-orthogonal"), "b(p̂(U,ω),(V,η)) = b((U,ω),p̂(V,η))", orth.pass, orth.witness));

    let phi_p = mat_mul(&phi, pm);
    let fixed = Outcome::collect(mat_diff("p̂Φ'P - Φ'P", &mat_mul(&p_hat.matrix, &phi_p), &phi_p), 0.0);
    let onto = Outcome::collect(
        mat_diff(
            "Φ'[P|Hinv P†] - 2p̂",
            &mat_mul(&phi, &pm.iter().zip(&hinv_pdag).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect()),
            &mat_scale(&p_hat.matrix, &GaussRat::from_int(2)),
        ),
        0.0,
    );
    let o = fixed.merge(onto);
    checks.push(CheckResult::exact(format!("{id}/image"), "Φ' maps p(Aⁿ) onto p̂(A²ⁿ)", o.pass, o.witness));

    let b_half = mat_scale(&b.matrix, &half);
    let lhs = mat_mul(&mat_mul(&mat_adjoint(&phi_p), &b_half), &phi_p);
    let rhs = mat_mul(&mat_mul(&p_dag, hm), pm);
    let iso = Outcome::collect(mat_diff("isometry", &lhs, &rhs), 0.0);
    checks.push(CheckResult::exact(
        format!("{id}/isometry"),
        "½·b(Φ'(U), Φ'(V)) = h(U, V) on p(Aⁿ)",
        iso.pass,
        iso.witness,
    ));
    Ok(Embedding { b, p_hat, phi, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraElement, Presentation};

    fn xyz() -> (std::sync::Arc<Presentation>, Vec<AlgebraElement>) {
        let p = Presentation::fuzzy();
        let v = ["X", "Y", "Z"].iter().map(|n| AlgebraElement::generator(&p, n).unwrap()).collect();
        (p, v)
    }

    #[test]
    fn standard_form_on_xi() {
        let (p, x) = xyz();
        let xi = ModuleVector(x.clone());
        let h0 = HermitianForm::standard(3, &x[0]);
        assert_eq!(h0.eval(&xi, &xi).unwrap(), AlgebraElement::one(&p));
        let zero = ModuleVector::zero(3, &x[0]);
        assert!(h0.eval(&zero, &xi).unwrap().is_zero());
        assert_eq!(h0.hat(&xi).0, x);
        let e1 = ModuleVector::basis(3, 0, &x[0]);
        let hat = h0.hat(&e1.right_mul(&x[1].times_i()));
        assert_eq!(hat.0[0], x[1].times_i().adjoint());
        assert!(h0.eval(&e1, &ModuleVector(vec![x[0].clone()])).is_err());
    }

    #[test]
    fn pi_and_identity_are_projections() {
        let (_, x) = xyz();
        let h0 = HermitianForm::standard(3, &x[0]);
        let pi = ModuleMap::new((0..3).map(|i| (0..3).map(|j| &x[i] * &x[j]).collect()).collect());
        assert!(is_orthogonal_projection("pi", &pi, &h0).pass);
        assert!(is_orthogonal_projection("id", &ModuleMap::identity(3, &x[0]), &h0).pass);
        let bad = ModuleMap::new((0..3).map(|i| (0..3).map(|j| &x[j] * &x[i]).collect()).collect());
        let r = is_orthogonal_projection("bad", &bad, &h0);
        assert!(!r.pass && r.witness.is_some());
    }

    #[test]
    fn single_generator_projection_is_pi() {
        let (p, x) = xyz();
        let h0 = HermitianForm::standard(3, &x[0]);
        let g = GeneratorSet::new(vec![ModuleVector(x.clone())], Some(vec![vec![AlgebraElement::one(&p)]]));
        let r = check_pseudo_inverse("xi", &g, &h0).unwrap();
        assert!(r.pass && r.flags.contains(&"basis".to_string()));
        let (pi, r) = projection_from_generators("xi", &g, &h0).unwrap();
        assert!(r.pass);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pi.matrix[i][j], &x[i] * &x[j]);
            }
        }
    }

    #[test]
    fn standard_basis_gives_identity() {
        let (_, x) = xyz();
        let h0 = HermitianForm::standard(3, &x[0]);
        let g = GeneratorSet::new((0..3).map(|i| ModuleVector::basis(3, i, &x[0])).collect(), Some(mat_identity(3, &x[0])));
        let (p, r) = projection_from_generators("basis", &g, &h0).unwrap();
        assert!(r.pass);
        assert_eq!(p.matrix, mat_identity(3, &x[0]));
        let missing = GeneratorSet::new(g.generators.clone(), None);
        assert!(check_pseudo_inverse("missing", &missing, &h0).is_err());
    }

    #[test]
    fn identity_embedding() {
        let (_, x) = xyz();
        let h0 = HermitianForm::standard(3, &x[0]);
        let e = embed_regular_module("id", &ModuleMap::identity(3, &x[0]), &h0).unwrap();
        assert!(e.checks.iter().all(|c| c.pass), "{:?}", e.checks);
        assert!(e.b.check_hermitian().pass);
    }
}
