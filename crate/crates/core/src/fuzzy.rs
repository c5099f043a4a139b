//! The fuzzy sphere: tangent projection, frames, metric, the ∇⁰ and ∇^ε connections,
//! the embedded-manifold Levi-Civita construction, and the monopole bundle.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::{AlgebraElement, Derivation, Presentation};
use crate::check::{CheckResult, Outcome};
use crate::connection::{
    check_metric_compatibility, check_torsion_free, free_hermitian_connection, levi_civita, project_connection, Connection,
    GammaTensor, LiePair,
};
use crate::error::{Error, Result};
use crate::module::{
    embed_regular_module, mat_adjoint, mat_diff, mat_identity, mat_mul, mat_sub, projection_outcomes, GeneratorSet,
    HermitianForm, Mat, ModuleMap, ModuleVector,
};
use crate::numeric::{spin_rep, MatrixDerivation, MatrixRep, IDENTITY_TOL, RELATION_TOL};
use crate::numeric::CMat;
use crate::ring::{DerivationRef, StarElement};
use crate::scalar::GaussRat;

/// Levi-Civita symbol on `{0, 1, 2}`.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn eps_g(i: usize, j: usize, k: usize) -> GaussRat {
    GaussRat::from_int(epsilon(i, j, k))
}

fn sum<E: StarElement>(t: &E, it: impl IntoIterator<Item = E>) -> E {
    it.into_iter().fold(t.zero_like(), |a, b| a.plus(&b))
}

/// Fuzzy sphere data over a backend: exact elements or spin matrices.
#[derive(Clone)]
pub struct FuzzyGeometry<E> {
    /// `"exact"` or `"matrix"`.
    pub mode: String,
    pub tolerance: f64,
    pub lie: LiePair<E>,
    pub x: Vec<E>,
    /// `ℏ·𝟙`.
    pub hbar: E,
    pub h0: HermitianForm<E>,
    pub pi: ModuleMap<E>,
    pub p: ModuleMap<E>,
    pub xi: ModuleVector<E>,
    /// `ẽ_i = P(ê_i)`.
    pub et: Vec<ModuleVector<E>>,
    /// `e_i = ε_ijk ẽ_j X_k`.
    pub e: Vec<ModuleVector<E>>,
    /// `e_i = ẽ_j B_ji`.
    pub b: Mat<E>,
    /// `ẽ_i = e_j A_ji`.
    pub a: Mat<E>,
    /// `g_ij = h(e_i, e_j)`.
    pub g: Mat<E>,
    /// `g^ij = (1+ℏ²)δ_ij + Π_ji`.
    pub ginv: Mat<E>,
}

/// Lie pair of the symbolic fuzzy sphere: `∂_i = (1/iℏ)[X_i, ·]`.
pub fn fuzzy_lie_pair(p: &Arc<Presentation>) -> LiePair<AlgebraElement> {
    let ds: Vec<DerivationRef<AlgebraElement>> =
        Derivation::all(p).into_iter().map(|d| Arc::new(d) as DerivationRef<AlgebraElement>).collect();
    let f = p
        .structure_constants()
        .iter()
        .map(|r| r.iter().map(|c| c.iter().map(|s| s.as_constant().expect("rational structure constants")).collect()).collect())
        .collect();
    LiePair::new(p.id(), ds, f)
}

fn epsilon_structure() -> Vec<Vec<Vec<GaussRat>>> {
    (0..3).map(|a| (0..3).map(|b| (0..3).map(|c| eps_g(a, b, c)).collect()).collect()).collect()
}

impl FuzzyGeometry<AlgebraElement> {
    /// Symbolic geometry with formal ℏ.
    pub fn symbolic() -> Result<Self> {
        Self::symbolic_on(&Presentation::fuzzy())
    }

    pub fn symbolic_on(p: &Arc<Presentation>) -> Result<Self> {
        let x = ["X", "Y", "Z"].iter().map(|n| AlgebraElement::generator(p, n)).collect::<Result<Vec<_>>>()?;
        FuzzyGeometry::build("exact", 0.0, fuzzy_lie_pair(p), x, AlgebraElement::hbar(p))
    }
}

impl FuzzyGeometry<CMat> {
    /// Geometry in the spin-j representation, `twice_j = 2j`.
    pub fn spin(twice_j: u32) -> Result<(Self, MatrixRep)> {
        let rep = spin_rep(twice_j)?;
        let hb = rep.hbar;
        let pref = num_complex::Complex64::new(0.0, -1.0 / hb);
        let ds: Vec<DerivationRef<CMat>> = ["d1", "d2", "d3"]
            .iter()
            .zip(&rep.images)
            .map(|(n, g)| {
                Arc::new(MatrixDerivation { name: (*n).into(), generator: g.clone(), prefactor: pref }) as DerivationRef<CMat>
            })
            .collect();
        let lie = LiePair::new(format!("spin-{twice_j}/2"), ds, epsilon_structure());
        let hbar = CMat::identity(rep.dim).scale_complex(num_complex::Complex64::new(hb, 0.0));
        let g = FuzzyGeometry::build("matrix", IDENTITY_TOL, lie, rep.images.clone(), hbar)?;
        Ok((g, rep))
    }
}

impl<E: StarElement> FuzzyGeometry<E> {
    pub fn build(mode: &str, tolerance: f64, lie: LiePair<E>, x: Vec<E>, hbar: E) -> Result<Self> {
        let t = x[0].clone();
        let one = t.one_like();
        let h0 = HermitianForm::standard(3, &t);
        let pi = ModuleMap::new((0..3).map(|i| (0..3).map(|j| x[i].times(&x[j])).collect()).collect());
        let p = ModuleMap::new(mat_sub(&mat_identity(3, &t), &pi.matrix));
        let xi = ModuleVector(x.clone());
        let et = p.columns();
        // B_ji = ε_ijk X_k
        let b: Mat<E> = (0..3)
            .map(|j| (0..3).map(|i| sum(&t, (0..3).map(|k| x[k].scale_by(&eps_g(i, j, k))))).collect())
            .collect();
        // A_ji = −ε_ijk X_k + iℏδ_ij
        let ih = hbar.times_i();
        let a: Mat<E> = (0..3)
            .map(|j| {
                (0..3)
                    .map(|i| {
                        let s = sum(&t, (0..3).map(|k| x[k].scale_by(&eps_g(i, j, k)))).negate();
                        if i == j {
                            s.plus(&ih)
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect();
        let gens = GeneratorSet::new(et.clone(), None);
        let e: Vec<ModuleVector<E>> =
            (0..3).map(|i| gens.combine(&(0..3).map(|j| b[j][i].clone()).collect::<Vec<_>>())).collect();
        let g = (0..3).map(|i| (0..3).map(|j| h0.eval(&e[i], &e[j])).collect::<Result<Vec<_>>>()).collect::<Result<Mat<E>>>()?;
        let onep = one.plus(&hbar.times(&hbar));
        let ginv = (0..3)
            .map(|i| (0..3).map(|j| if i == j { onep.plus(&pi.matrix[j][i]) } else { pi.matrix[j][i].clone() }).collect())
            .collect();
        let geo = FuzzyGeometry { mode: mode.into(), tolerance, lie, x, hbar, h0, pi, p, xi, et, e, b, a, g, ginv };
        let (idem, orth) = projection_outcomes(&geo.p, &geo.h0);
        let o = idem.merge(orth);
        if !o.pass {
            return Err(Error::CheckFailed(format!("tangent projection: {}", o.witness.unwrap_or_default())));
        }
        Ok(geo)
    }

    fn t(&self) -> &E {
        &self.x[0]
    }

    fn collect(&self, items: Vec<(String, E)>) -> Outcome {
        Outcome::collect(items, self.tolerance)
    }

    fn result(&self, id: &str, statement: &str, o: Outcome) -> CheckResult {
        CheckResult::from_outcome(format!("fuzzy/{id}"), statement, &self.mode, o)
    }

    fn gens(&self, v: &[ModuleVector<E>]) -> GeneratorSet<E> {
        GeneratorSet::new(v.to_vec(), None)
    }

    fn vdiff(&self, label: &str, a: &ModuleVector<E>, b: &ModuleVector<E>) -> Vec<(String, E)> {
        a.diff(label, b)
    }

    /// `Π² = Π`, `P² = P`, orthogonality, `tr P = 2·𝟙`, and `P(U) + Π(U) = U`.
    pub fn projection_checks(&self) -> Vec<CheckResult> {
        let (pi_i, pi_o) = projection_outcomes(&self.pi, &self.h0);
        let (p_i, p_o) = projection_outcomes(&self.p, &self.h0);
        let tr = self.collect(vec![("tr P - 2".into(), self.p.trace().minus(&self.t().from_gauss(&GaussRat::from_int(2))))]);
        let u = ModuleVector(vec![self.x[0].times(&self.x[1]), self.hbar.clone(), self.x[2].plus(&self.t().one_like())]);
        let dec = self.collect(self.vdiff("P(U)+Π(U)-U", &self.p.apply(&u).add(&self.pi.apply(&u)), &u));
        let mut out = vec![
            self.result("pi-projection", "Π∘Π = Π and Π is h⁰-orthogonal", pi_i.merge(pi_o)),
            self.result("p-projection", "P∘P = P and P is h⁰-orthogonal", p_i.merge(p_o)),
            self.result("trace", "tr P = 2·𝟙", tr),
            self.result("decomposition", "P(U) + Π(U) = U", dec),
        ];
        let f = self.x[0].times(&self.x[1]).plus(&self.x[2]);
        let xf = self.xi.right_mul(&f);
        let basis = self.collect(vec![("h0(ξ,ξf) - f".into(), self.h0.eval(&self.xi, &xf).map(|v| v.minus(&f)).unwrap_or_else(|_| self.t().one_like()))]);
        out.push(self.result("xi-basis", "h⁰(ξ, ξf) = f", basis));
        out
    }

    /// Frame conversions `e_i = ε_ijk ẽ_j X_k = ê_j ε_ijk X_k − iℏξX_i` and `ẽ_i = −ε_ijk e_j X_k + iℏe_i`.
    pub fn frame_relations_check(&self) -> Vec<CheckResult> {
        let t = self.t();
        let mut explicit = Vec::new();
        let mut inverse = Vec::new();
        let mut round = Vec::new();
        let eg = self.gens(&self.e);
        let ih = self.hbar.times_i();
        for i in 0..3 {
            let classical =
                ModuleVector((0..3).map(|j| sum(t, (0..3).map(|k| self.x[k].scale_by(&eps_g(i, j, k))))).collect());
            let rhs = classical.sub(&self.xi.right_mul(&ih.times(&self.x[i])));
            explicit.extend(self.vdiff(&format!("e_{}", i + 1), &self.e[i], &rhs));
            let col: Vec<E> = (0..3).map(|j| self.a[j][i].clone()).collect();
            inverse.extend(self.vdiff(&format!("et_{}", i + 1), &eg.combine(&col), &self.et[i]));
            // e → ẽ → e: e_i = ẽ_k B_ki = e_j A_jk B_ki
            let ab = mat_mul(&self.a, &self.b);
            let col: Vec<E> = (0..3).map(|j| ab[j][i].clone()).collect();
            round.extend(self.vdiff(&format!("e_{}", i + 1), &eg.combine(&col), &self.e[i]));
        }
        vec![
            self.result("frame-forward", "e_i = ε_ijk ẽ_j X_k = ê_j ε_ijk X_k − iℏ ξ X_i", self.collect(explicit)),
            self.result("frame-inverse", "ẽ_i = −ε_ijk e_j X_k + iℏ e_i", self.collect(inverse)),
            self.result("frame-roundtrip", "e → ẽ → e returns the same ambient coordinates", self.collect(round)),
        ]
    }

    /// `ẽ_k X_k = 0`.
    pub fn contraction_check(&self) -> CheckResult {
        let v = self.gens(&self.et).combine(&self.x);
        let items = v.0.into_iter().enumerate().map(|(i, e)| (format!("(ẽ_k X_k)^{i}"), e)).collect();
        self.result("et-contraction", "ẽ_k X_k = 0", self.collect(items))
    }

    /// `g_ij = P_ji − ℏ²Π_ij`, `e_i g^ij g_jk = e_k`, `(g^ij)* = g^ji`, and the intermediate identity.
    pub fn metric_inverse_check(&self) -> Vec<CheckResult> {
        let h2 = self.hbar.times(&self.hbar);
        let mut metric = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let rhs = self.p.matrix[j][i].minus(&h2.times(&self.pi.matrix[i][j]));
                metric.push((format!("g_{i}{j}"), self.g[i][j].minus(&rhs)));
            }
        }
        let eg = self.gens(&self.e);
        let gg = mat_mul(&self.ginv, &self.g);
        let mut inv = Vec::new();
        for k in 0..3 {
            let col: Vec<E> = (0..3).map(|i| gg[i][k].clone()).collect();
            inv.extend(self.vdiff(&format!("e_i g^i· g_·{k} - e_{k}"), &eg.combine(&col), &self.e[k]));
        }
        let herm = mat_diff("g^ij* - g^ji", &mat_adjoint(&self.ginv), &self.ginv);
        // e_i A_ik P_kl (A_jl)* = (1+ℏ²) e_j + e_i Π_ji, with A_ij = ε_ijk X_k + iℏδ_ij
        let t = self.t();
        let ih = self.hbar.times_i();
        let amat: Mat<E> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let s = sum(t, (0..3).map(|k| self.x[k].scale_by(&eps_g(i, j, k))));
                        if i == j {
                            s.plus(&ih)
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect();
        let m = mat_mul(&mat_mul(&amat, &self.p.matrix), &mat_adjoint(&amat));
        let onep = t.one_like().plus(&h2);
        let mut inter = Vec::new();
        let mut pi_kill = Vec::new();
        for j in 0..3 {
            let col: Vec<E> = (0..3).map(|i| m[i][j].clone()).collect();
            let pcol: Vec<E> = (0..3).map(|i| self.pi.matrix[j][i].clone()).collect();
            let rhs = self.e[j].right_mul(&onep).add(&eg.combine(&pcol));
            inter.extend(self.vdiff(&format!("j={j}"), &eg.combine(&col), &rhs));
            let kcol: Vec<E> = (0..3).map(|i| self.pi.matrix[i][j].clone()).collect();
            pi_kill.extend(eg.combine(&kcol).0.into_iter().enumerate().map(|(c, x)| (format!("(e_i Π_i{j})^{c}"), x)));
        }
        vec![
            self.result("metric", "g_ij = h(e_i, e_j) = P_ji − ℏ²Π_ij", self.collect(metric)),
            self.result("metric-inverse", "e_i g^ij g_jk = e_k with g^ij = (1+ℏ²)δ_ij + Π_ji", self.collect(inv)),
            self.result("metric-inverse-hermitian", "(g^ij)* = g^ji", self.collect(herm)),
            self.result(
                "metric-inverse-intermediate",
                "e_i A_ik h^kl (A_jl)* = (1+ℏ²)e_j + e_i Π_ji and e_i Π_ij = 0",
                self.collect(inter).merge(self.collect(pi_kill)),
            ),
        ]
    }

    /// `ẽ_k ∂_i P_kj = −e_i X_j`.
    pub fn lemma_check(&self) -> CheckResult {
        let etg = self.gens(&self.et);
        let mut items = Vec::new();
        for i in 0..3 {
            let dp = self.lie.apply_mat(i, &self.p.matrix);
            for j in 0..3 {
                let col: Vec<E> = (0..3).map(|k| dp[k][j].clone()).collect();
                let rhs = self.e[i].right_mul(&self.x[j]).neg();
                items.extend(self.vdiff(&format!("i={i},j={j}"), &etg.combine(&col), &rhs));
            }
        }
        self.result("lemma", "ẽ_k ∂_i P_kj = −e_i X_j", self.collect(items))
    }

    /// `p∘∇` for the free connection with `γ_{i,jk} = c·iε_ijk` on the generators ẽ.
    pub fn projected_connection(&self, c: i64) -> Result<Connection<E>> {
        let t = self.t();
        let ic = t.from_gauss(&GaussRat::from_parts(0, c));
        let gamma = GammaTensor(
            (0..3).map(|a| (0..3).map(|j| (0..3).map(|k| ic.scale_by(&eps_g(a, j, k))).collect()).collect()).collect(),
        );
        let free = free_hermitian_connection(&self.lie, &self.h0, &mat_identity(3, t), &gamma)?;
        project_connection(&self.lie, &self.p, &self.h0, &free)
    }

    /// Ambient image of `∇_a m` for `m` given in ẽ-coefficients.
    fn nabla(&self, conn: &Connection<E>, a: usize, m: &[E]) -> ModuleVector<E> {
        conn.ambient(&conn.apply(&self.lie, a, m))
    }

    fn b_col(&self, j: usize) -> Vec<E> {
        (0..3).map(|k| self.b[k][j].clone()).collect()
    }

    fn unit(&self, j: usize) -> Vec<E> {
        (0..3).map(|k| if k == j { self.t().one_like() } else { self.t().zero_like() }).collect()
    }

    /// The ∇⁰ tables, metric compatibility, and the closed forms of R⁰.
    pub fn nabla_zero_checks(&self) -> Result<Vec<CheckResult>> {
        let conn = self.projected_connection(0)?;
        let eg = self.gens(&self.e);
        let ih = self.hbar.times_i();
        let mut tab = Vec::new();
        let mut etab = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = self.nabla(&conn, i, &self.unit(j));
                tab.extend(self.vdiff(&format!("∇_{i} ẽ_{j}"), &lhs, &self.e[i].right_mul(&self.x[j]).neg()));
                let lhs = self.nabla(&conn, i, &self.b_col(j));
                let form1 = self.et[i].right_mul(&self.x[j]).sub(&self.e[i].right_mul(&ih.times(&self.x[j])));
                let coeffs: Vec<E> = (0..3)
                    .map(|k| {
                        sum(self.t(), (0..3).map(|l| self.x[l].times(&self.x[j]).scale_by(&eps_g(i, k, l)))).negate()
                    })
                    .collect();
                let form2 = eg.combine(&coeffs);
                etab.extend(self.vdiff(&format!("∇_{i} e_{j} (first form)"), &lhs, &form1));
                etab.extend(self.vdiff(&format!("∇_{i} e_{j} (second form)"), &lhs, &form2));
            }
        }
        let metric = self.result(
            "nabla0-metric",
            "∂_a h(ẽ_b, ẽ_c) = h(∇⁰_a ẽ_b, ẽ_c) + h(ẽ_b, ∇⁰_a ẽ_c)",
            self.metric_outcome(&conn)?,
        );
        let mut r_et = Vec::new();
        let mut r_e = Vec::new();
        let mut tensor = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let r = conn.ambient(&conn.curvature(&self.lie, i, j, k));
                    let mut rhs = self.e[i]
                        .right_mul(&self.x[j])
                        .sub(&self.e[j].right_mul(&self.x[i]))
                        .right_mul(&ih.times(&self.x[k]));
                    for l in 0..3 {
                        rhs = rhs
                            .sub(&self.e[j].right_mul(&self.x[l]).scale(&eps_g(i, k, l)))
                            .add(&self.e[i].right_mul(&self.x[l]).scale(&eps_g(j, k, l)));
                    }
                    r_et.extend(self.vdiff(&format!("R0({i},{j})ẽ_{k}"), &r, &rhs));
                    let re = conn.ambient(&conn.curvature_on(&self.lie, i, j, &self.b_col(k)));
                    let rhs = self.e[i].right_mul(&self.g[j][k]).sub(&self.e[j].right_mul(&self.g[i][k]));
                    r_e.extend(self.vdiff(&format!("R0({i},{j})e_{k}"), &re, &rhs));
                    for l in 0..3 {
                        let rl = conn.ambient(&conn.curvature_on(&self.lie, i, j, &self.b_col(l)));
                        let lhs = self.h0.eval(&self.e[k], &rl)?;
                        let rhs = self.g[k][i].times(&self.g[j][l]).minus(&self.g[k][j].times(&self.g[i][l]));
                        tensor.push((format!("R0_{k}{l}{i}{j}"), lhs.minus(&rhs)));
                    }
                }
            }
        }
        Ok(vec![
            self.result("nabla0-table", "∇⁰_{∂_i} ẽ_j = −e_i X_j", self.collect(tab)),
            self.result("nabla0-e-table", "∇⁰_{∂_i} e_j = ẽ_i X_j − iℏ e_i X_j = −ε_ikl e_k X_l X_j", self.collect(etab)),
            metric,
            self.result(
                "R0-et",
                "R⁰(∂_i,∂_j)ẽ_k = −ε_ikl e_j X_l + ε_jkl e_i X_l + iℏ(e_i X_j − e_j X_i)X_k",
                self.collect(r_et),
            ),
            self.result("R0-e", "R⁰(∂_i,∂_j)e_k = e_i h(e_j,e_k) − e_j h(e_i,e_k)", self.collect(r_e)),
            self.result("R0-tensor", "h(e_k, R⁰(∂_i,∂_j)e_l) = h(e_k,e_i)h(e_j,e_l) − h(e_k,e_j)h(e_i,e_l)", self.collect(tensor)),
        ])
    }

    fn metric_outcome(&self, conn: &Connection<E>) -> Result<Outcome> {
        let items = crate::connection::metric_compatibility_identities(conn, &self.h0, &self.lie)?;
        Ok(self.collect(items.into_iter().map(|(l, a, b)| (l, a.minus(&b))).collect()))
    }

    /// The ∇^ε tables, metric compatibility, and vanishing curvature.
    pub fn nabla_epsilon_checks(&self) -> Result<Vec<CheckResult>> {
        let conn = self.projected_connection(1)?;
        let mut tab = Vec::new();
        let mut etab = Vec::new();
        let mut curv = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let rhs = (0..3).fold(ModuleVector::zero(3, self.t()), |acc, k| acc.add(&self.et[k].scale(&eps_g(i, j, k))));
                tab.extend(self.vdiff(&format!("∇_{i} ẽ_{j}"), &self.nabla(&conn, i, &self.unit(j)), &rhs));
                let rhs = (0..3).fold(ModuleVector::zero(3, self.t()), |acc, k| acc.add(&self.e[k].scale(&eps_g(i, j, k))));
                etab.extend(self.vdiff(&format!("∇_{i} e_{j}"), &self.nabla(&conn, i, &self.b_col(j)), &rhs));
                for k in 0..3 {
                    let r = conn.ambient(&conn.curvature(&self.lie, i, j, k));
                    curv.extend(r.0.into_iter().enumerate().map(|(c, x)| (format!("R({i},{j})ẽ_{k}^{c}"), x)));
                    let r = conn.ambient(&conn.curvature_on(&self.lie, i, j, &self.b_col(k)));
                    curv.extend(r.0.into_iter().enumerate().map(|(c, x)| (format!("R({i},{j})e_{k}^{c}"), x)));
                }
            }
        }
        Ok(vec![
            self.result("nablaeps-table", "∇^ε_{∂_i} ẽ_j = ε_ijk ẽ_k", self.collect(tab)),
            self.result("nablaeps-e-table", "∇^ε_{∂_i} e_j = ε_ijk e_k", self.collect(etab)),
            self.result(
                "nablaeps-metric",
                "∂_a h(ẽ_b, ẽ_c) = h(∇^ε_a ẽ_b, ẽ_c) + h(ẽ_b, ∇^ε_a ẽ_c)",
                self.metric_outcome(&conn)?,
            ),
            self.result("Reps-zero", "R^ε(∂_i,∂_j)e_k = R^ε(∂_i,∂_j)ẽ_k = 0", self.collect(curv)),
        ])
    }

    /// `[∂_a, ∂_b] = ε_abc ∂_c` and hermiticity on the generators.
    pub fn lie_pair_check(&self) -> CheckResult {
        let r = self.lie.check("fuzzy/lie-pair", &self.x);
        if self.mode == "exact" {
            return r;
        }
        let m = 3;
        let mut items = Vec::new();
        for x in &self.x {
            for a in 0..m {
                for b in 0..m {
                    let mut r = self.lie.apply(a, &self.lie.apply(b, x)).minus(&self.lie.apply(b, &self.lie.apply(a, x)));
                    for c in 0..m {
                        r = r.minus(&self.lie.apply(c, x).scale_by(&eps_g(a, b, c)));
                    }
                    items.push((format!("[∂_{a},∂_{b}]"), r));
                }
            }
        }
        self.result("lie-pair", "[∂_a, ∂_b] = ε_abc ∂_c on generators", self.collect(items))
    }

    /// Everything verified for the fuzzy sphere, in a fixed order.
    pub fn full_suite(&self, connection: Option<ConnectionChoice>) -> Result<Vec<CheckResult>> {
        let mut out = vec![self.lie_pair_check()];
        out.extend(self.projection_checks());
        out.extend(self.frame_relations_check());
        out.push(self.contraction_check());
        out.extend(self.metric_inverse_check());
        out.push(self.lemma_check());
        if connection != Some(ConnectionChoice::Epsilon) {
            out.extend(self.nabla_zero_checks()?);
        }
        if connection != Some(ConnectionChoice::Zero) {
            out.extend(self.nabla_epsilon_checks()?);
        }
        Ok(out)
    }
}

/// Which connection a fuzzy verification covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionChoice {
    Zero,
    Epsilon,
}

/// Defining-relation residuals of a spin representation.
pub fn spin_relation_check(rep: &MatrixRep) -> CheckResult {
    let res = rep.relation_residuals(&Presentation::fuzzy());
    let worst = res.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    let witness = res.iter().find(|(_, r)| *r >= RELATION_TOL).map(|(l, r)| format!("{l}: {r:.3e}"));
    let mut c = CheckResult::exact(
        format!("fuzzy/relations/{}", rep.dim),
        "[X_i, X_j] = iℏε_ijk X_k and X² + Y² + Z² = 𝟙",
        witness.is_none(),
        witness,
    );
    c.mode = "matrix".into();
    c.max_residual = Some(worst);
    c
}

/// The embedded sphere `(S²_ℏ, 𝔤, {X, Y, Z})`: frame `e_a = ∂_a X`, metric
/// `h_ab = δ_ab − X_b X_a` and its inverse `(1+ℏ²)δ_ab + (1/ℏ² − 2)X_a X_b + X_b X_a`.
pub fn embedded_sphere<E: StarElement>(geo: &FuzzyGeometry<E>, inv_hbar_sq: &E) -> GeneratorSet<E> {
    let t = geo.t();
    let frame: Vec<ModuleVector<E>> = (0..3).map(|a| geo.lie.apply_vector(a, &geo.xi)).collect();
    let h2 = geo.hbar.times(&geo.hbar);
    let c1 = t.one_like().plus(&h2);
    let c2 = inv_hbar_sq.minus(&t.from_gauss(&GaussRat::from_int(2)));
    let inv = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    let mut v = c2.times(&geo.x[a]).times(&geo.x[b]).plus(&geo.x[b].times(&geo.x[a]));
                    if a == b {
                        v = v.plus(&c1);
                    }
                    v
                })
                .collect()
        })
        .collect();
    GeneratorSet::new(frame, Some(inv))
}

/// Random fully symmetric `γ_{a,bc}` with hermitian entries of degree ≤ 2 and small integer coefficients.
pub fn random_symmetric_gamma<R: Rng + ?Sized>(p: &Arc<Presentation>, rng: &mut R) -> GammaTensor<AlgebraElement> {
    let x: Vec<AlgebraElement> = ["X", "Y", "Z"].iter().map(|n| AlgebraElement::generator(p, n).expect("fuzzy")).collect();
    let mut monos = vec![AlgebraElement::one(p)];
    monos.extend(x.iter().cloned());
    for a in &x {
        for b in &x {
            monos.push(a * b);
        }
    }
    let mut entry = || {
        let mut y = AlgebraElement::zero(p);
        for m in &monos {
            let c = GaussRat::from_parts(rng.random_range(-3..=3), rng.random_range(-3..=3));
            if !c.is_zero() {
                y = &y + &m.scale_gauss(&c);
            }
        }
        &y + &y.star()
    };
    let mut table = vec![vec![vec![AlgebraElement::zero(p); 3]; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            for c in b..3 {
                let v = entry();
                for (i, j, k) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    table[i][j][k] = v.clone();
                }
            }
        }
    }
    GammaTensor(table)
}

/// Regularity, then metric compatibility and torsion freedom of the Levi-Civita
/// connection built from `gamma` on the embedded sphere.
pub fn levi_civita_checks<E: StarElement>(
    id: &str,
    geo: &FuzzyGeometry<E>,
    inv_hbar_sq: &E,
    gamma: &GammaTensor<E>,
) -> Result<Vec<CheckResult>> {
    let frame = embedded_sphere(geo, inv_hbar_sq);
    let reg = crate::module::check_pseudo_inverse(&format!("{id}/regularity"), &frame, &geo.h0)?;
    let conn = levi_civita(&geo.lie, &frame, &geo.h0, gamma)?;
    let metric = check_metric_compatibility(&format!("{id}/metric"), &conn, &geo.h0, &geo.lie)?;
    let torsion = check_torsion_free(&format!("{id}/torsion"), &conn, &geo.lie)?;
    Ok(vec![reg, metric, torsion])
}

/// The doubled-module embedding of the tangent module `P(A³)`.
pub fn tangent_embedding_checks(geo: &FuzzyGeometry<AlgebraElement>) -> Result<Vec<CheckResult>> {
    Ok(embed_regular_module("embedding/fuzzy-tangent", &geo.p, &geo.h0)?.checks)
}

/// Monopole projection over the fuzzy sphere at `ℏ = t − 1/t`.
#[derive(Clone)]
pub struct MonopoleBundle {
    pub t: BigRational,
    pub hbar: BigRational,
    /// `√(4+ℏ²) = t + 1/t`.
    pub s: BigRational,
    /// `α = ½(√(4+ℏ²) − ℏ) = 1/t`.
    pub alpha: BigRational,
    pub presentation: Arc<Presentation>,
    pub lie: LiePair<AlgebraElement>,
    pub h0: HermitianForm<AlgebraElement>,
    pub p: ModuleMap<AlgebraElement>,
    pub connection: Connection<AlgebraElement>,
}

pub fn build_monopole(t: &BigRational) -> Result<MonopoleBundle> {
    if t <= &BigRational::one() {
        return Err(Error::InvalidParameter(format!("monopole parameter t = {t} must exceed 1")));
    }
    let inv_t = t.recip();
    let hbar = t - &inv_t;
    let s = t + &inv_t;
    let alpha = inv_t.clone();
    debug_assert!(alpha.is_positive());
    let pres = Presentation::fuzzy_at(&GaussRat::from_rational(hbar.clone()));
    let lie = fuzzy_lie_pair(&pres);
    let g = |n: &str| AlgebraElement::generator(&pres, n).expect("fuzzy");
    let (x, y, z) = (g("X"), g("Y"), g("Z"));
    let iy = y.scale_gauss(&GaussRat::i());
    let a1 = AlgebraElement::gauss(&pres, GaussRat::from_rational(alpha.clone()));
    let inv_s = GaussRat::from_rational(s.recip());
    let pm: Mat<AlgebraElement> = vec![vec![&a1 + &z, &x + &iy], vec![&x - &iy, &a1 - &z]]
        .into_iter()
        .map(|r| r.into_iter().map(|e| e.scale_gauss(&inv_s)).collect())
        .collect();
    let p = ModuleMap::new(pm);
    let h0 = HermitianForm::standard(2, &x);
    let free = free_hermitian_connection(&lie, &h0, &mat_identity(2, &x), &GammaTensor::zero(3, 2, &x))?;
    let connection = project_connection(&lie, &p, &h0, &free)?;
    Ok(MonopoleBundle { t: t.clone(), hbar, s, alpha, presentation: pres, lie, h0, p, connection })
}

impl MonopoleBundle {
    fn el(&self, n: &str) -> AlgebraElement {
        AlgebraElement::generator(&self.presentation, n).expect("fuzzy")
    }

    fn c(&self, q: &BigRational) -> GaussRat {
        GaussRat::from_rational(q.clone())
    }

    /// The γ = 0 connection table, each entry scaled by `1/√(4+ℏ²)`:
    /// `(a, b, coefficients on ẽ_1, ẽ_2)`.
    pub fn connection_table(&self) -> Vec<(usize, usize, [AlgebraElement; 2])> {
        let (x, y, z) = (self.el("X"), self.el("Y"), self.el("Z"));
        let i = GaussRat::i();
        let mi = GaussRat::from_parts(0, -1);
        let iy = y.scale_gauss(&i);
        vec![
            (0, 0, [-&y, z.scale_gauss(&mi)]),
            (0, 1, [z.scale_gauss(&i), y.clone()]),
            (1, 0, [x.clone(), -&z]),
            (1, 1, [-&z, -&x]),
            (2, 0, [AlgebraElement::zero(&self.presentation), (&x - &iy).scale_gauss(&i)]),
            (2, 1, [(&x + &iy).scale_gauss(&mi), AlgebraElement::zero(&self.presentation)]),
        ]
    }

    /// The curvature table `R(∂_a, ∂_b)ẽ_c` with prefactor `1/(4+ℏ²)` omitted.
    pub fn curvature_table(&self) -> Vec<(usize, usize, usize, [AlgebraElement; 2])> {
        let (x, y, z) = (self.el("X"), self.el("Y"), self.el("Z"));
        let hb = AlgebraElement::gauss(&self.presentation, self.c(&self.hbar));
        let ac = |a: &AlgebraElement, b: &AlgebraElement| &(a * b) + &(b * a);
        let i = GaussRat::i();
        let it = |e: AlgebraElement| e.scale_gauss(&i);
        // (a, b, pair (A, B)) for R(∂_a,∂_b)ẽ_1 = iẽ_1(−A + ℏB) − ẽ_2(C + iD), R ẽ_2 = ẽ_1(C − iD) + iẽ_2(A + ℏB)
        let rows = [
            (0, 1, ac(&z, &z), z.clone(), ac(&y, &z), ac(&z, &x)),
            (1, 2, ac(&z, &x), x.clone(), ac(&x, &y), ac(&x, &x)),
            (2, 0, ac(&y, &z), y.clone(), ac(&y, &y), ac(&x, &y)),
        ];
        let mut out = Vec::new();
        for (a, b, aa, bb, cc, dd) in rows {
            let hbb = &hb * &bb;
            out.push((a, b, 0, [it(&-&aa + &hbb), -&(&cc + &it(dd.clone()))]));
            out.push((a, b, 1, [&cc - &it(dd.clone()), it(&aa + &hbb)]));
        }
        out
    }

    pub fn checks(&self) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        let (idem, orth) = projection_outcomes(&self.p, &self.h0);
        out.push(CheckResult::exact("monopole/idempotent", "P² = P", idem.pass, idem.witness));
        out.push(CheckResult::exact("monopole/orthogonal", "P_ab* = P_ba (orthogonal for h⁰)", orth.pass, orth.witness));
        let tr = self.p.trace();
        let expect = AlgebraElement::gauss(&self.presentation, self.c(&(BigRational::one() - &self.hbar / &self.s)));
        out.push(CheckResult::from_residuals("monopole/trace", "tr P = 1 − ℏ/√(4+ℏ²)", [("tr".to_string(), &tr - &expect)]));
        let inv_s = GaussRat::from_rational(self.s.recip());
        let inv_s2 = GaussRat::from_rational((&self.s * &self.s).recip());
        let gens = GeneratorSet::new(self.connection.generators.clone(), None);
        for (a, b, coeffs) in self.connection_table() {
            let lhs = self.connection.ambient(&self.connection.column(a, b));
            let rhs = gens.combine(&coeffs).scale(&inv_s);
            out.push(CheckResult::from_residuals(
                format!("monopole/connection/{}{}", a + 1, b + 1),
                format!("∇_∂{} ẽ_{} matches the γ = 0 table (with 1/√(4+ℏ²))", a + 1, b + 1),
                lhs.diff("amb", &rhs),
            ));
        }
        for (a, b, c, coeffs) in self.curvature_table() {
            let lhs = self.connection.ambient(&self.connection.curvature(&self.lie, a, b, c));
            let rhs = gens.combine(&coeffs).scale(&inv_s2);
            out.push(CheckResult::from_residuals(
                format!("monopole/curvature/{}{}/{}", a + 1, b + 1, c + 1),
                format!("R(∂{},∂{}) ẽ_{} matches the table with 1/(4+ℏ²)", a + 1, b + 1, c + 1),
                lhs.diff("amb", &rhs),
            ));
        }
        Ok(out)
    }
}

/// `1/ℏ²` as an element of the symbolic fuzzy algebra.
pub fn inv_hbar_sq(p: &Arc<Presentation>) -> AlgebraElement {
    let h = p.hbar().clone();
    AlgebraElement::scalar(p, (&h * &h).inv().expect("ℏ ≠ 0"))
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: {s}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn all_pass(v: &[CheckResult]) {
        for c in v {
            assert!(c.pass, "{}: {:?}", c.check_id, c.witness);
        }
    }

    #[test]
    fn symbolic_suite() {
        let g = FuzzyGeometry::symbolic().unwrap();
        all_pass(&g.full_suite(None).unwrap());
        let e1 = &g.e[0];
        assert_eq!(e1.0[0].to_text(), "-i*hbar * X^2");
    }

    #[test]
    fn spin_suite() {
        for tj in [1, 2, 4] {
            let (g, rep) = FuzzyGeometry::spin(tj).unwrap();
            assert!(spin_relation_check(&rep).pass);
            all_pass(&g.full_suite(None).unwrap());
        }
    }

    #[test]
    fn embedding_and_levi_civita() {
        let g = FuzzyGeometry::symbolic().unwrap();
        all_pass(&tangent_embedding_checks(&g).unwrap());
        let p = g.x[0].presentation().clone();
        let ih = inv_hbar_sq(&p);
        let zero = GammaTensor::zero(3, 3, &g.x[0]);
        let r = levi_civita_checks("lc0", &g, &ih, &zero).unwrap();
        all_pass(&r);
        assert!(r[0].flags.contains(&"basis".to_string()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gam = random_symmetric_gamma(&p, &mut rng);
        all_pass(&levi_civita_checks("lc-rand", &g, &ih, &gam).unwrap());
    }

    #[test]
    fn monopole_t2() {
        let m = build_monopole(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(m.hbar, BigRational::new(3.into(), 2.into()));
        assert_eq!(m.alpha, BigRational::new(1.into(), 2.into()));
        assert_eq!(m.s.recip(), BigRational::new(2.into(), 5.into()));
        all_pass(&m.checks().unwrap());
        assert!(build_monopole(&parse_rational("1").unwrap()).is_err());
        let m = build_monopole(&parse_rational("3/2").unwrap()).unwrap();
        all_pass(&m.checks().unwrap());
    }
}
