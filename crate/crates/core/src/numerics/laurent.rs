//! Sparse Laurent polynomials over complex doubles.
//!
//! Exponents may be negative; coefficients live in a sorted map. This is the
//! carrier for generating functions f(z) = Σ z^n p_n and for the symbols
//! α(z), β(z), γ(z) of the q-difference operators, where exact
//! coefficient-level arithmetic turns operator identities into residual
//! polynomials whose coefficients can be bounded directly.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative magnitude below which `normalize` drops a coefficient.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    /// c·z^e.
    pub fn monomial(exponent: i64, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            coeffs.insert(exponent, c);
        }
        LaurentPolynomial { coeffs }
    }

    /// Polynomial Σ coeffs[k]·z^k with exponents starting at 0.
    pub fn from_coeffs(coeffs: &[Complex64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, c);
        }
        p
    }

    /// Accumulate c into the z^e coefficient, dropping exact zeros.
    pub fn add_term(&mut self, exponent: i64, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i64) -> Complex64 {
        self.coeffs
            .get(&exponent)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop coefficients below `PRUNE_THRESHOLD` × (max coefficient magnitude).
    pub fn normalize(&mut self) {
        let scale = self.max_coeff_magnitude();
        if scale == 0.0 {
            return;
        }
        let cut = PRUNE_THRESHOLD * scale;
        self.coeffs.retain(|_, c| c.norm() >= cut);
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &v)| (e, v * c)).collect(),
        }
    }

    /// Multiply by z^shift.
    pub fn shifted(&self, shift: i64) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &v)| (e + shift, v)).collect(),
        }
    }

    /// d/dz: c·z^e ↦ c·e·z^{e−1}.
    pub fn derivative(&self) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in &self.coeffs {
            p.add_term(e - 1, c * e as f64);
        }
        p
    }

    /// f(z) ↦ f(s·z): rescales each coefficient by s^e.
    ///
    /// This is the exact coefficient-level form of the q-shift f(q^j z).
    pub fn dilate(&self, s: Complex64) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in &self.coeffs {
            p.add_term(e, c * s.powi(e as i32));
        }
        p
    }

    /// Evaluate at z; negative exponents use 1/z^{|e|} (z must be nonzero for
    /// those to be finite).
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.coeffs {
            acc += c * z.powi(e as i32);
        }
        acc
    }

    /// Dense coefficient vector c_0..c_d for a polynomial with only
    /// nonnegative exponents.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        if let Some(min) = self.min_exponent() {
            if min < 0 {
                return Err(Error::degenerate(
                    "negative exponents present; not a polynomial",
                ));
            }
        }
        let deg = self.max_exponent().unwrap_or(0);
        let mut dense = vec![Complex64::new(0.0, 0.0); deg as usize + 1];
        for (&e, &c) in &self.coeffs {
            dense[e as usize] = c;
        }
        Ok(dense)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arithmetic_and_evaluation_agree() {
        let mut f = LaurentPolynomial::zero();
        f.add_term(-2, c(1.0, 1.0));
        f.add_term(0, c(-3.0, 0.5));
        f.add_term(3, c(0.25, 0.0));
        let mut g = LaurentPolynomial::zero();
        g.add_term(-1, c(2.0, 0.0));
        g.add_term(1, c(0.0, -1.0));

        let z = c(0.7, -0.4);
        let prod = &f * &g;
        assert!((prod.evaluate(z) - f.evaluate(z) * g.evaluate(z)).norm() < 1e-12);
        let sum = &f + &g;
        assert!((sum.evaluate(z) - (f.evaluate(z) + g.evaluate(z))).norm() < 1e-12);
    }

    #[test]
    fn derivative_of_monomials() {
        let mut f = LaurentPolynomial::zero();
        f.add_term(-1, c(2.0, 0.0));
        f.add_term(0, c(5.0, 0.0));
        f.add_term(4, c(1.0, 0.0));
        let d = f.derivative();
        assert_eq!(d.coeff(-2), c(-2.0, 0.0));
        assert_eq!(d.coeff(-1), c(0.0, 0.0));
        assert_eq!(d.coeff(3), c(4.0, 0.0));
    }

    #[test]
    fn dilation_matches_pointwise_substitution() {
        let f = LaurentPolynomial::from_coeffs(&[c(1.0, 0.0), c(-2.0, 1.0), c(0.5, 0.0)]);
        let s = c(0.9, 0.3);
        let z = c(1.1, -0.2);
        assert!((f.dilate(s).evaluate(z) - f.evaluate(s * z)).norm() < 1e-12);
    }

    #[test]
    fn normalize_prunes_relative_dust() {
        let mut f = LaurentPolynomial::zero();
        f.add_term(0, c(1.0, 0.0));
        f.add_term(1, c(1e-16, 0.0));
        f.add_term(2, c(1e-9, 0.0));
        f.normalize();
        assert_eq!(f.coeff(1), c(0.0, 0.0));
        // 1e−9 is far above the prune threshold and must survive: it is the
        // kind of genuine residual the tests measure.
        assert_eq!(f.coeff(2), c(1e-9, 0.0));
    }

    #[test]
    fn exact_cancellation_removes_entry() {
        let mut f = LaurentPolynomial::monomial(3, c(2.0, -1.0));
        f.add_term(3, c(-2.0, 1.0));
        assert!(f.is_zero());
    }
}
