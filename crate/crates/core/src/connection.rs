//! Connections over Lie pairs stored as Christoffel tables on a fixed list of generators.

use rayon::prelude::*;

use crate::check::{CheckResult, Outcome};
use crate::error::{Error, Result};
use crate::module::{mat_adjoint, mat_add, mat_diff, mat_identity, mat_mul, GeneratorSet, HermitianForm, Mat, ModuleMap, ModuleVector};
use crate::ring::{DerivationRef, StarElement};
use crate::scalar::GaussRat;

/// A Lie algebra of derivations with structure constants `[δ_a, δ_b] = f_ab^c δ_c`
/// and the index map `a ↦ a*` with `δ_a* = δ_{a*}`.
#[derive(Clone)]
pub struct LiePair<E> {
    pub label: String,
    pub derivations: Vec<DerivationRef<E>>,
    pub structure: Vec<Vec<Vec<GaussRat>>>,
    pub adjoint: Vec<usize>,
}

impl<E: StarElement> LiePair<E> {
    pub fn new(label: impl Into<String>, derivations: Vec<DerivationRef<E>>, structure: Vec<Vec<Vec<GaussRat>>>) -> Self {
        let m = derivations.len();
        LiePair { label: label.into(), derivations, structure, adjoint: (0..m).collect() }
    }

    /// Abelian pair with zero structure constants.
    pub fn abelian(label: impl Into<String>, derivations: Vec<DerivationRef<E>>) -> Self {
        let m = derivations.len();
        let zero = vec![vec![vec![GaussRat::zero(); m]; m]; m];
        LiePair::new(label, derivations, zero)
    }

    pub fn with_adjoint(mut self, adjoint: Vec<usize>) -> Self {
        self.adjoint = adjoint;
        self
    }

    pub fn dim(&self) -> usize {
        self.derivations.len()
    }

    pub fn apply(&self, a: usize, x: &E) -> E {
        self.derivations[a].apply(x)
    }

    pub fn apply_vector(&self, a: usize, v: &ModuleVector<E>) -> ModuleVector<E> {
        ModuleVector(v.0.iter().map(|x| self.apply(a, x)).collect())
    }

    pub fn apply_mat(&self, a: usize, m: &Mat<E>) -> Mat<E> {
        m.iter().map(|r| r.iter().map(|x| self.apply(a, x)).collect()).collect()
    }

    /// Verifies the bracket relations and `δ_a(x*)* = δ_{a*}(x)` on the given elements.
    pub fn check(&self, id: &str, elements: &[E]) -> CheckResult {
        let m = self.dim();
        let mut items = Vec::new();
        for (k, x) in elements.iter().enumerate() {
            for a in 0..m {
                let lhs = self.apply(a, &x.adjoint()).adjoint();
                items.push((format!("adjoint δ_{a}(x{k})"), lhs.minus(&self.apply(self.adjoint[a], x))));
                for b in 0..m {
                    let mut r = self.apply(a, &self.apply(b, x)).minus(&self.apply(b, &self.apply(a, x)));
                    for c in 0..m {
                        let f = &self.structure[a][b][c];
                        if !f.is_zero() {
                            r = r.minus(&self.apply(c, x).scale_by(f));
                        }
                    }
                    items.push((format!("[δ_{a},δ_{b}](x{k})"), r));
                }
            }
        }
        let o = Outcome::collect(items, 0.0);
        CheckResult::exact(id, "[δ_a, δ_b] = f_ab^c δ_c and δ_a* = δ_{a*} on generators", o.pass, o.witness)
    }
}

/// Hermitian parameters `γ_{a,ij}`.
#[derive(Clone, Debug)]
pub struct GammaTensor<E>(pub Vec<Mat<E>>);

impl<E: StarElement> GammaTensor<E> {
    pub fn zero(m: usize, n: usize, t: &E) -> Self {
        GammaTensor(vec![vec![vec![t.zero_like(); n]; n]; m])
    }

    /// `γ_{a,ij}* = γ_{a,ji}`.
    pub fn check_hermitian(&self) -> Outcome {
        let mut o = Outcome::ok();
        for (a, g) in self.0.iter().enumerate() {
            o = o.merge(Outcome::collect(mat_diff(&format!("gamma_{a}"), &mat_adjoint(g), g), 0.0));
        }
        o
    }

    /// `γ_{a,bc}* = γ_{a*,cb}` for the index map `a ↦ a*`.
    pub fn check_hermitian_paired(&self, adjoint: &[usize]) -> Outcome {
        let mut o = Outcome::ok();
        for (a, g) in self.0.iter().enumerate() {
            o = o.merge(Outcome::collect(mat_diff(&format!("gamma_{a}"), &mat_adjoint(g), &self.0[adjoint[a]]), 0.0));
        }
        o
    }

    /// `γ_{a,bc} = γ_{c,ba}` (requires derivation and module indices to range alike).
    pub fn check_symmetric(&self) -> Outcome {
        let m = self.0.len();
        let mut items = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    items.push((format!("gamma_{a},{b}{c} - gamma_{c},{b}{a}"), self.0[a][b][c].minus(&self.0[c][b][a])));
                }
            }
        }
        Outcome::collect(items, 0.0)
    }
}

/// Number of hermitian elements fixing a fully symmetric `γ_{a,bc}`: `(m+2)!/(3!(m−1)!)`.
pub fn gamma_dof(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    (m + 2) * (m + 1) * m / 6
}

/// Connection with `∇_a g_j = Σ_i g_i Γ[a][i][j]` on generators `g_j`.
#[derive(Clone, Debug)]
pub struct Connection<E> {
    pub generators: Vec<ModuleVector<E>>,
    pub gamma: Vec<Mat<E>>,
}

impl<E: StarElement> Connection<E> {
    pub fn new(generators: Vec<ModuleVector<E>>, gamma: Vec<Mat<E>>) -> Self {
        Connection { generators, gamma }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Ambient coordinates of `Σ_j g_j m^j`.
    pub fn ambient(&self, coeffs: &[E]) -> ModuleVector<E> {
        GeneratorSet::new(self.generators.clone(), None).combine(coeffs)
    }

    /// Generator coefficients of `∇_a g_j`.
    pub fn column(&self, a: usize, j: usize) -> Vec<E> {
        self.gamma[a].iter().map(|r| r[j].clone()).collect()
    }

    /// `∇_a(g_b m^b)` in generator coefficients: `Γ^b_{ac} m^c + δ_a(m^b)`.
    pub fn apply(&self, lp: &LiePair<E>, a: usize, m: &[E]) -> Vec<E> {
        let g = &self.gamma[a];
        (0..self.num_generators())
            .map(|b| {
                let mut acc = lp.apply(a, &m[b]);
                for (c, mc) in m.iter().enumerate() {
                    if g[b][c].is_exact_zero() || mc.is_exact_zero() {
                        continue;
                    }
                    acc = acc.plus(&g[b][c].times(mc));
                }
                acc
            })
            .collect()
    }

    /// `R(δ_a, δ_b) m = ∇_a∇_b m − ∇_b∇_a m − f_ab^c ∇_c m` in generator coefficients.
    pub fn curvature_on(&self, lp: &LiePair<E>, a: usize, b: usize, m: &[E]) -> Vec<E> {
        let ab = self.apply(lp, a, &self.apply(lp, b, m));
        let ba = self.apply(lp, b, &self.apply(lp, a, m));
        let mut out: Vec<E> = ab.iter().zip(&ba).map(|(x, y)| x.minus(y)).collect();
        for c in 0..lp.dim() {
            let f = &lp.structure[a][b][c];
            if f.is_zero() {
                continue;
            }
            let nc = self.apply(lp, c, m);
            for (o, x) in out.iter_mut().zip(&nc) {
                *o = o.minus(&x.scale_by(f));
            }
        }
        out
    }

    /// `R(δ_a, δ_b) g_k` in generator coefficients.
    pub fn curvature(&self, lp: &LiePair<E>, a: usize, b: usize, k: usize) -> Vec<E> {
        let t = &self.generators[0].0[0];
        let unit: Vec<E> = (0..self.num_generators()).map(|j| if j == k { t.one_like() } else { t.zero_like() }).collect();
        self.curvature_on(lp, a, b, &unit)
    }

    /// Ambient images `R(δ_a, δ_b) g_k` for all `a < b` and `k`, computed in parallel.
    pub fn curvature_table(&self, lp: &LiePair<E>) -> Vec<((usize, usize, usize), ModuleVector<E>)> {
        let m = lp.dim();
        let triples: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|a| (a + 1..m).flat_map(move |b| (0..self.num_generators()).map(move |k| (a, b, k))))
            .collect();
        triples.into_par_iter().map(|(a, b, k)| ((a, b, k), self.ambient(&self.curvature(lp, a, b, k)))).collect()
    }

    /// Expresses the connection on new generators `g'_i = g_j B_ji`, given `g_i = g'_j A_ji`.
    pub fn reexpress(&self, lp: &LiePair<E>, new_generators: Vec<ModuleVector<E>>, b: &Mat<E>, a: &Mat<E>) -> Self {
        let gamma = (0..lp.dim())
            .map(|d| mat_mul(a, &mat_add(&mat_mul(&self.gamma[d], b), &lp.apply_mat(d, b))))
            .collect();
        Connection { generators: new_generators, gamma }
    }

    /// Adds `c` to the entry `Γ[a][i][j]`.
    pub fn perturbed(&self, a: usize, i: usize, j: usize, c: &E) -> Self {
        let mut out = self.clone();
        out.gamma[a][i][j] = out.gamma[a][i][j].plus(c);
        out
    }
}

/// `Γ_a = ½h⁻¹δ_a(h) + i h⁻¹γ_a` on the standard basis of Aⁿ.
pub fn free_hermitian_connection<E: StarElement>(
    lp: &LiePair<E>,
    h: &HermitianForm<E>,
    h_inv: &Mat<E>,
    gamma: &GammaTensor<E>,
) -> Result<Connection<E>> {
    let n = h.dim();
    let t = h.matrix[0][0].clone();
    let id = mat_identity(n, &t);
    let inv_ok = Outcome::collect(mat_diff("hinv h", &mat_mul(h_inv, &h.matrix), &id), 0.0)
        .merge(Outcome::collect(mat_diff("h hinv", &mat_mul(&h.matrix, h_inv), &id), 0.0));
    if !inv_ok.pass {
        return Err(Error::CheckFailed(format!("h^ij h_jk = δ fails: {}", inv_ok.witness.unwrap_or_default())));
    }
    let herm = gamma.check_hermitian_paired(&lp.adjoint);
    if !herm.pass {
        return Err(Error::CheckFailed(format!("γ not hermitian: {}", herm.witness.unwrap_or_default())));
    }
    let half = GaussRat::from_ratio(1, 2);
    let i = GaussRat::i();
    let gam = (0..lp.dim())
        .map(|a| {
            let dh = lp.apply_mat(a, &h.matrix);
            let first = mat_mul(h_inv, &dh);
            let second = mat_mul(h_inv, &gamma.0[a]);
            first
                .iter()
                .zip(&second)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.scale_by(&half).plus(&y.scale_by(&i))).collect())
                .collect()
        })
        .collect();
    let gens = (0..n).map(|k| ModuleVector::basis(n, k, &t)).collect();
    Ok(Connection::new(gens, gam))
}

/// `p∘∇` on the generators `g̃_i = ê_j P^j_i`: `Γ'_a = Γ_a P + δ_a(P)`.
pub fn project_connection<E: StarElement>(
    lp: &LiePair<E>,
    p: &ModuleMap<E>,
    h: &HermitianForm<E>,
    free: &Connection<E>,
) -> Result<Connection<E>> {
    let (idem, orth) = crate::module::projection_outcomes(p, h);
    let o = idem.merge(orth);
    if !o.pass {
        return Err(Error::CheckFailed(format!("not an orthogonal projection: {}", o.witness.unwrap_or_default())));
    }
    let gam = (0..lp.dim()).map(|a| mat_add(&mat_mul(&free.gamma[a], &p.matrix), &lp.apply_mat(a, &p.matrix))).collect();
    Ok(Connection::new(p.columns(), gam))
}

/// Both sides of `δ_a h(g_b, g_c) = h(∇_{a*} g_b, g_c) + h(g_b, ∇_a g_c)`.
pub fn metric_compatibility_identities<E: StarElement>(
    conn: &Connection<E>,
    h: &HermitianForm<E>,
    lp: &LiePair<E>,
) -> Result<Vec<(String, E, E)>> {
    let k = conn.num_generators();
    let nab: Vec<Vec<ModuleVector<E>>> =
        (0..lp.dim()).map(|a| (0..k).map(|j| conn.ambient(&conn.column(a, j))).collect()).collect();
    let mut out = Vec::new();
    for a in 0..lp.dim() {
        let astar = lp.adjoint[a];
        for b in 0..k {
            for c in 0..k {
                let lhs = lp.apply(a, &h.eval(&conn.generators[b], &conn.generators[c])?);
                let rhs = h.eval(&nab[astar][b], &conn.generators[c])?.plus(&h.eval(&conn.generators[b], &nab[a][c])?);
                out.push((format!("metric[a={a}][b={b}][c={c}]"), lhs, rhs));
            }
        }
    }
    Ok(out)
}

pub fn check_metric_compatibility<E: StarElement>(
    id: &str,
    conn: &Connection<E>,
    h: &HermitianForm<E>,
    lp: &LiePair<E>,
) -> Result<CheckResult> {
    let items = metric_compatibility_identities(conn, h, lp)?.into_iter().map(|(l, x, y)| (l, x.minus(&y)));
    Ok(CheckResult::from_residuals(id, "δ h(m1, m2) = h(∇_δ* m1, m2) + h(m1, ∇_δ m2) on generators", items))
}

/// `T_ab = ∇_a g_b − ∇_b g_a − g_c f_ab^c` for `a < b`, in ambient coordinates;
/// the generators must be the images `φ(δ_a)`.
pub fn torsion<E: StarElement>(conn: &Connection<E>, lp: &LiePair<E>) -> Result<Vec<((usize, usize), ModuleVector<E>)>> {
    let m = lp.dim();
    if conn.num_generators() != m {
        return Err(Error::DimensionMismatch { expected: m, found: conn.num_generators() });
    }
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let mut t = conn.ambient(&conn.column(a, b)).sub(&conn.ambient(&conn.column(b, a)));
            for c in 0..m {
                let f = &lp.structure[a][b][c];
                if !f.is_zero() {
                    t = t.sub(&conn.generators[c].scale(f));
                }
            }
            out.push(((a, b), t));
        }
    }
    Ok(out)
}

pub fn check_torsion_free<E: StarElement>(id: &str, conn: &Connection<E>, lp: &LiePair<E>) -> Result<CheckResult> {
    let mut items = Vec::new();
    for ((a, b), t) in torsion(conn, lp)? {
        items.extend(t.0.into_iter().enumerate().map(|(i, x)| (format!("T[{a}][{b}]^{i}"), x)));
    }
    Ok(CheckResult::from_residuals(id, "∇_a φ(δ_b) − ∇_b φ(δ_a) = φ([δ_a, δ_b])", items))
}

/// `Γ^c_{ab} = h^{cp}(h⁰(e_p, δ_a e_b) + iγ_{a,pb})` on the generators `e_a = φ(δ_a)`.
pub fn levi_civita<E: StarElement>(
    lp: &LiePair<E>,
    frame: &GeneratorSet<E>,
    h0: &HermitianForm<E>,
    gamma: &GammaTensor<E>,
) -> Result<Connection<E>> {
    let reg = crate::module::check_pseudo_inverse("levi-civita/regularity", frame, h0)?;
    if !reg.pass {
        return Err(Error::CheckFailed(format!("regularity: {}", reg.witness.unwrap_or_default())));
    }
    let herm = gamma.check_hermitian_paired(&lp.adjoint);
    if !herm.pass {
        return Err(Error::CheckFailed(format!("γ not hermitian: {}", herm.witness.unwrap_or_default())));
    }
    let sym = gamma.check_symmetric();
    if !sym.pass {
        return Err(Error::CheckFailed(format!("γ not symmetric: {}", sym.witness.unwrap_or_default())));
    }
    let hinv = frame.pseudo_inverse.as_ref().expect("checked by regularity");
    let m = lp.dim();
    let i = GaussRat::i();
    let mut gam = Vec::with_capacity(m);
    for a in 0..m {
        let de: Vec<ModuleVector<E>> = frame.generators.iter().map(|e| lp.apply_vector(a, e)).collect();
        let y: Mat<E> = (0..frame.len())
            .map(|p| {
                (0..frame.len())
                    .map(|b| Ok(h0.eval(&frame.generators[p], &de[b])?.plus(&gamma.0[a][p][b].scale_by(&i))))
                    .collect::<Result<Vec<E>>>()
            })
            .collect::<Result<_>>()?;
        gam.push(mat_mul(hinv, &y));
    }
    Ok(Connection::new(frame.generators.clone(), gam))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{AlgebraElement, Derivation, Presentation};
    use crate::ring::DerivationRef;

    fn fuzzy_pair() -> (Arc<Presentation>, LiePair<AlgebraElement>, Vec<AlgebraElement>) {
        let p = Presentation::fuzzy();
        let ds: Vec<DerivationRef<AlgebraElement>> =
            Derivation::all(&p).into_iter().map(|d| Arc::new(d) as DerivationRef<AlgebraElement>).collect();
        let f = p
            .structure_constants()
            .iter()
            .map(|r| r.iter().map(|c| c.iter().map(|s| s.as_constant().unwrap()).collect()).collect())
            .collect();
        let x = ["X", "Y", "Z"].iter().map(|n| AlgebraElement::generator(&p, n).unwrap()).collect();
        (p.clone(), LiePair::new("fuzzy", ds, f), x)
    }

    #[test]
    fn dof_counts() {
        assert_eq!((gamma_dof(1), gamma_dof(2), gamma_dof(3)), (1, 4, 10));
    }

    #[test]
    fn lie_pair_relations() {
        let (_, lp, x) = fuzzy_pair();
        assert!(lp.check("fuzzy", &x).pass);
    }

    #[test]
    fn flat_and_epsilon_connections() {
        let (p, lp, x) = fuzzy_pair();
        let h0 = HermitianForm::standard(3, &x[0]);
        let id = mat_identity(3, &x[0]);
        let flat = free_hermitian_connection(&lp, &h0, &id, &GammaTensor::zero(3, 3, &x[0])).unwrap();
        assert!(flat.gamma.iter().flatten().flatten().all(|e| e.is_zero()));
        assert!(check_metric_compatibility("flat", &flat, &h0, &lp).unwrap().pass);

        let i = AlgebraElement::gauss(&p, GaussRat::i());
        let eps = |a: usize, b: usize, c: usize| -> i64 {
            match (a, b, c) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
                _ => 0,
            }
        };
        let gam = GammaTensor(
            (0..3)
                .map(|a| (0..3).map(|j| (0..3).map(|k| i.scale_gauss(&GaussRat::from_int(eps(a, j, k)))).collect()).collect())
                .collect(),
        );
        let conn = free_hermitian_connection(&lp, &h0, &id, &gam).unwrap();
        for a in 0..3 {
            for (jj, row) in conn.gamma[a].iter().enumerate() {
                for (ii, e) in row.iter().enumerate() {
                    // Γ^j_{ai} = −ε_{aji}
                    assert_eq!(*e, AlgebraElement::gauss(&p, GaussRat::from_int(-eps(a, jj, ii))));
                }
            }
        }
        assert!(check_metric_compatibility("eps", &conn, &h0, &lp).unwrap().pass);
        let broken = conn.perturbed(0, 1, 1, &AlgebraElement::one(&p));
        let r = check_metric_compatibility("broken", &broken, &h0, &lp).unwrap();
        assert!(!r.pass && r.witness.unwrap().starts_with("metric[a=0]"));

        let mut bad = gam.clone();
        bad.0[0][0][1] = AlgebraElement::one(&p);
        assert!(free_hermitian_connection(&lp, &h0, &id, &bad).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let (p, lp, x) = fuzzy_pair();
        let h0 = HermitianForm::standard(3, &x[0]);
        let pi = ModuleMap::new((0..3).map(|i| (0..3).map(|j| &x[i] * &x[j]).collect()).collect());
        let pm = ModuleMap::new(mat_add(&mat_identity(3, &x[0]), &pi.matrix.iter().map(|r| r.iter().map(|e| -e).collect()).collect()));
        let free = free_hermitian_connection(&lp, &h0, &mat_identity(3, &x[0]), &GammaTensor::zero(3, 3, &x[0])).unwrap();
        let conn = project_connection(&lp, &pm, &h0, &free).unwrap();
        let f = &(&x[0] * &x[2]) + &AlgebraElement::hbar(&p);
        let m = vec![x[1].clone(), AlgebraElement::one(&p), x[2].clone()];
        let mf: Vec<_> = m.iter().map(|e| e * &f).collect();
        for a in 0..3 {
            let lhs = conn.ambient(&conn.apply(&lp, a, &mf));
            let rhs = conn.ambient(&conn.apply(&lp, a, &m)).right_mul(&f).add(&conn.ambient(&m).right_mul(&lp.apply(a, &f)));
            assert!(lhs.diff("L", &rhs).iter().all(|(_, e)| e.is_zero()));
        }
        let r01 = conn.ambient(&conn.curvature(&lp, 0, 1, 2));
        let r10 = conn.ambient(&conn.curvature(&lp, 1, 0, 2));
        assert!(r01.add(&r10).0.iter().all(|e| e.is_zero()));
        assert!(conn.curvature(&lp, 1, 1, 0).iter().all(|e| e.is_zero()));
        let one_d = LiePair::abelian("one", vec![lp.derivations[0].clone()]);
        let single = Connection::new(vec![ModuleVector::basis(3, 0, &x[0])], vec![vec![vec![x[0].zero_like()]]]);
        assert!(torsion(&single, &one_d).unwrap().is_empty());
    }
}
