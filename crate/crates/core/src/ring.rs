//! Common interface over the three element backends: exact algebra elements,
//! rational expressions with formal inverses, and complex matrices.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, Derivation};
use crate::scalar::GaussRat;

/// A *-ring element with Gaussian-rational scalars.
pub trait StarElement: Clone + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn adjoint(&self) -> Self;
    fn scale_by(&self, c: &GaussRat) -> Self;
    /// Size of the element as a discrepancy: `0` for exact zero, otherwise
    /// `f64::INFINITY` for exact backends and the largest entry modulus for matrices.
    fn residual(&self) -> f64;
    /// Inverse when the element is an invertible multiple of the unit
    /// (matrices: any well-conditioned invertible matrix).
    fn scalar_inverse(&self) -> Option<Self>;
    /// Text used in witnesses and reports.
    fn describe(&self) -> String;

    /// Largest residual accepted as zero for this backend.
    fn tolerance(&self) -> f64 {
        0.0
    }

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    fn from_gauss(&self, c: &GaussRat) -> Self {
        self.one_like().scale_by(c)
    }

    fn times_i(&self) -> Self {
        self.scale_by(&GaussRat::i())
    }

    fn is_exact_zero(&self) -> bool {
        self.residual() == 0.0
    }

    fn commutator(&self, o: &Self) -> Self {
        self.times(o).minus(&o.times(self))
    }
}

/// A derivation acting on a backend.
pub trait DerivationOp<E>: Send + Sync {
    fn apply(&self, x: &E) -> E;
    fn label(&self) -> String;
}

pub type DerivationRef<E> = Arc<dyn DerivationOp<E>>;

impl StarElement for AlgebraElement {
    fn zero_like(&self) -> Self {
        AlgebraElement::zero(self.presentation())
    }
    fn one_like(&self) -> Self {
        AlgebraElement::one(self.presentation())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn adjoint(&self) -> Self {
        self.star()
    }
    fn scale_by(&self, c: &GaussRat) -> Self {
        self.scale_gauss(c)
    }
    fn residual(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    }
    fn scalar_inverse(&self) -> Option<Self> {
        let s = self.as_scalar()?;
        Some(AlgebraElement::scalar(self.presentation(), s.inv()?))
    }
    fn describe(&self) -> String {
        self.to_text()
    }
}

impl DerivationOp<AlgebraElement> for Derivation {
    fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        Derivation::apply(self, x)
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

/// Left inverse of a square matrix over the ring by Gauss–Jordan elimination,
/// accepting only pivots for which [`StarElement::scalar_inverse`] succeeds.
pub fn matrix_inverse<E: StarElement>(m: &[Vec<E>]) -> Option<Vec<Vec<E>>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return None;
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut a: Vec<Vec<E>> = m.to_vec();
    let mut inv: Vec<Vec<E>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col].scalar_inverse().is_some())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].scalar_inverse()?;
        for j in 0..n {
            a[col][j] = p.times(&a[col][j]);
            inv[col][j] = p.times(&inv[col][j]);
        }
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].minus(&f.times(&a[col][j]));
                inv[r][j] = inv[r][j].minus(&f.times(&inv[col][j]));
            }
        }
    }
    Some(inv)
}
