//! Scalar kernels shared by every family: shifted factorials, q-shifted
//! factorials, ratio-driven truncated hypergeometric sums, Laurent polynomial
//! algebra and complex polynomial root finding.

pub mod dd;
pub mod laurent;
pub mod roots;

pub use laurent::LaurentPolynomial;
pub use roots::polynomial_roots;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Rising factorial (a)_k = a(a+1)⋯(a+k−1), with (a)_0 = 1.
pub fn pochhammer(a: Complex64, k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..k {
        acc *= a + j as f64;
    }
    acc
}

/// q-shifted factorial (d;q)_k = (1−d)(1−dq)⋯(1−dq^{k−1}), with (d;q)_0 = 1.
pub fn q_pochhammer(d: Complex64, q: Complex64, k: u32) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = one;
    let mut dq = d;
    for _ in 0..k {
        acc *= one - dq;
        dq *= q;
    }
    acc
}

/// Terms t_0, t_1, …, t_n of a hypergeometric-type sum, built from successive
/// term ratios: t_0 = 1, t_k = t_{k−1}·ratios[k−1].
///
/// Accumulating through ratios avoids forming the large Pochhammer products
/// explicitly. A non-finite ratio (vanishing denominator upstream) is an
/// invalid-parameter error.
pub fn hypergeometric_terms(ratios: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut terms = Vec::with_capacity(ratios.len() + 1);
    let mut t = Complex64::new(1.0, 0.0);
    terms.push(t);
    for (k, r) in ratios.iter().enumerate() {
        if !r.is_finite() {
            return Err(Error::invalid(format!(
                "non-finite term ratio at index {}",
                k + 1
            )));
        }
        t *= r;
        terms.push(t);
    }
    Ok(terms)
}

/// Σ_{k=0}^{n} t_k with t_0 = 1 and t_k = t_{k−1}·ratios[k−1], summed
/// left-to-right in index order.
pub fn truncated_hypergeometric_sum(ratios: &[Complex64]) -> Result<Complex64> {
    Ok(hypergeometric_terms(ratios)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pochhammer_empty_product() {
        assert_eq!(pochhammer(c(17.3, -2.0), 0), c(1.0, 0.0));
    }

    #[test]
    fn pochhammer_small_integers() {
        // (2)_3 = 2·3·4
        assert_eq!(pochhammer(c(2.0, 0.0), 3), c(24.0, 0.0));
        // (−3)_5 contains the factor (−3+3)
        assert_eq!(pochhammer(c(-3.0, 0.0), 5), c(0.0, 0.0));
    }

    #[test]
    fn pochhammer_step_identity_is_exact() {
        // (a)_{k+1} = (a)_k·(a+k), exactly, since both sides run the same product.
        let a = c(0.731, -1.257);
        for k in 0..=64u32 {
            let lhs = pochhammer(a, k + 1);
            let rhs = pochhammer(a, k) * (a + k as f64);
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn q_pochhammer_basics() {
        assert_eq!(q_pochhammer(c(0.3, 0.1), c(0.9, 0.0), 0), c(1.0, 0.0));
        let v = q_pochhammer(c(0.5, 0.0), c(0.5, 0.0), 2);
        assert!((v - c(0.375, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn q_pochhammer_at_root_of_unity_gives_n() {
        // (q;q)_{N−1} = Π_{j=1}^{N−1}(1−q^j) = N for q a primitive N-th root,
        // cross-checked against 1+x+…+x^{N−1} evaluated at x=1.
        for n in [3u32, 5, 8, 12] {
            let q = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
            let prod = q_pochhammer(q, q, n - 1);
            let cyclotomic_at_one: f64 = (0..n).map(|_| 1.0).sum();
            assert!(
                (prod - c(cyclotomic_at_one, 0.0)).norm() < 1e-12 * n as f64,
                "N={n}: {prod}"
            );
        }
    }

    #[test]
    fn hypergeometric_sum_degenerate_ratios() {
        let zero = c(0.0, 0.0);
        assert_eq!(
            truncated_hypergeometric_sum(&[zero, zero, zero]).unwrap(),
            c(1.0, 0.0)
        );
        let r = c(0.25, -0.5);
        assert_eq!(
            truncated_hypergeometric_sum(&[r, zero, zero]).unwrap(),
            c(1.0, 0.0) + r
        );
    }

    #[test]
    fn hypergeometric_sum_rejects_non_finite_ratio() {
        let bad = c(f64::INFINITY, 0.0);
        assert!(truncated_hypergeometric_sum(&[c(1.0, 0.0), bad]).is_err());
    }
}
