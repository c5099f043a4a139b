//! Coefficient field ℚ(i)(ℏ): rational functions in a formal real parameter ℏ
//! with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Gaussian rational `re + im·i` with `re, im ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: rat(n, 1), im: BigRational::zero() }
    }

    /// `n/d` as a real Gaussian rational. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussRat { re: rat(n, d), im: BigRational::zero() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat { re: r, im: BigRational::zero() }
    }

    /// `(a + b·i)` with integer parts.
    pub fn from_parts(a: i64, b: i64) -> Self {
        GaussRat { re: rat(a, 1), im: rat(b, 1) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: BigRational::zero() };
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Real and purely imaginary values print bare (`3/2`, `-i`, `2*i`);
    /// mixed values print parenthesized (`(1 - 1/2*i)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let mag = im_part(&self.im.abs());
                write!(f, "({} {} {})", fmt_rational(&self.re), sign, mag)
            }
        }
    }
}

/// Polynomial in ℏ with Gaussian-rational coefficients, ascending powers,
/// no trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<GaussRat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c·ℏ^k`.
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        let mut v = vec![GaussRat::zero(); k];
        v.push(c);
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<GaussRat>) -> Self {
        while v.last().is_some_and(GaussRat::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.0.last()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.0.len() {
            0 => Some(GaussRat::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = GaussRat::zero();
        let v = (0..n)
            .map(|k| &*self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn conj(&self) -> Poly {
        Poly(self.0.iter().map(GaussRat::conj).collect())
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.leading().expect("division by zero polynomial");
        let dl_inv = dl.inv().expect("nonzero leading coefficient");
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![GaussRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &dl_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dj);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    pub fn eval(&self, h: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * h + c.to_complex())
    }

    pub fn eval_exact(&self, h: &GaussRat) -> GaussRat {
        self.0.iter().rev().fold(GaussRat::zero(), |acc, c| &(&acc * h) + c)
    }

    fn fmt_text(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = split_sign(c);
            let pow = match k {
                0 => None,
                1 => Some("hbar".to_string()),
                _ => Some(format!("hbar^{k}")),
            };
            parts.push((
                neg,
                match pow {
                    None => mag.to_string(),
                    Some(p) if mag.is_one() => p,
                    Some(p) => format!("{mag}*{p}"),
                },
            ));
        }
        join_signed(&parts)
    }
}

/// Splits `c` into a sign and a magnitude suitable for printing after `+`/`-`.
/// Mixed complex values keep their sign inside the parentheses.
pub(crate) fn split_sign(c: &GaussRat) -> (bool, GaussRat) {
    if c.im.is_zero() {
        (c.re.is_negative(), GaussRat::from_rational(c.re.abs()))
    } else if c.re.is_zero() {
        (c.im.is_negative(), GaussRat::new(BigRational::zero(), c.im.abs()))
    } else {
        (false, c.clone())
    }
}

/// Joins signed pieces as `a - b + c`; empty input prints `0`.
pub(crate) fn join_signed(parts: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (k, (neg, body)) in parts.iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Element of ℚ(i)(ℏ), kept as `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::constant(GaussRat::one()) }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRat::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn hbar() -> Self {
        Scalar { num: Poly::monomial(GaussRat::one(), 1), den: Poly::constant(GaussRat::one()) }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_ratio(n, d))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::constant(GaussRat::one()) }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::constant(GaussRat::one()) }
    }

    /// `num/den` reduced to canonical form; `None` if `den` is zero.
    pub fn from_fraction(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Scalar::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return Scalar { num, den };
            }
            let ci = c.inv().expect("nonzero denominator");
            return Scalar { num: num.scale(&ci), den: Poly::constant(GaussRat::one()) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let l = d.leading().expect("nonzero").clone();
        if !l.is_one() {
            let li = l.inv().expect("nonzero");
            n = n.scale(&li);
            d = d.scale(&li);
        }
        Scalar { num: n, den: d }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a Gaussian rational if it does not depend on ℏ.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Scalar::one(), |acc, _| &acc * self)
    }

    /// Numeric value at a real or complex ℏ.
    pub fn eval(&self, h: Complex64) -> Complex64 {
        self.num.eval(h) / self.den.eval(h)
    }

    /// Exact value at a Gaussian-rational ℏ; `None` if the denominator vanishes there.
    pub fn eval_exact(&self, h: &GaussRat) -> Option<GaussRat> {
        let d = self.den.eval_exact(h).inv()?;
        Some(&self.num.eval_exact(h) * &d)
    }

    /// Canonical text. Polynomials print as sums of `c*hbar^k` pieces; rational
    /// functions as `(num)/(den)`.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.fmt_text()
        } else {
            format!("({})/({})", self.num.fmt_text(), self.den.fmt_text())
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add(&o.num), den: self.den.clone() };
        }
        if self.den == o.den {
            return Scalar::normalized(self.num.add(&o.num), self.den.clone());
        }
        Scalar::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        Scalar::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Scalar, Add add, Sub sub, Mul mul, Div div);
forward_owned!(GaussRat, Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::from_gauss(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Scalar {
        Scalar::hbar()
    }

    #[test]
    fn rational_function_reduces_to_lowest_terms() {
        // (ℏ² − 1)/(2ℏ − 2) = (ℏ + 1)/2
        let num = &(&h() * &h()) - &Scalar::one();
        let den = &(&Scalar::from_int(2) * &h()) - &Scalar::from_int(2);
        let q = &num / &den;
        assert!(q.is_polynomial());
        assert_eq!(q, &(&h() + &Scalar::one()) * &Scalar::from_ratio(1, 2));
    }

    #[test]
    fn denominator_is_monic() {
        let s = &Scalar::one() / &(&Scalar::from_int(3) * &(&Scalar::from_int(4) + &(&h() * &h())));
        assert!(s.denom().leading().unwrap().is_one());
        assert_eq!(s.numer().as_constant(), Some(GaussRat::from_ratio(1, 3)));
    }

    #[test]
    fn zero_is_canonical() {
        let a = &(&h() / &(&h() + &Scalar::one())) - &(&h() / &(&h() + &Scalar::one()));
        assert_eq!(a, Scalar::zero());
        assert!(a.denom().is_one());
    }

    #[test]
    fn conjugation_fixes_hbar() {
        let s = &Scalar::i() * &h();
        assert_eq!(s.conj(), -&s);
        assert_eq!(h().conj(), h());
    }

    #[test]
    fn exact_evaluation_at_rational_point() {
        let s = &Scalar::one() / &(&Scalar::from_int(4) + &(&h() * &h()));
        assert_eq!(s.eval_exact(&GaussRat::from_ratio(3, 2)), Some(GaussRat::from_ratio(4, 25)));
    }

    #[test]
    fn text_forms() {
        let s = &(&Scalar::from_gauss(GaussRat::new(rat(3, 2), rat(1, 2))) * &h()) * &h();
        assert_eq!(s.to_text(), "(3/2 + 1/2*i)*hbar^2");
        assert_eq!(Scalar::i().neg().to_text(), "-i");
        assert_eq!((&h() + &Scalar::from_int(-2)).to_text(), "-2 + hbar");
    }
}
