//! All complex roots of a polynomial via the Aberth-Ehrlich simultaneous
//! iteration.

use num_complex::Complex64;

use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 400;
const STEP_TOL: f64 = 1e-13;
/// Post-condition bound: |p(root)| ≤ RESIDUAL_TOL · Σ|c_i||root|^i.
const RESIDUAL_TOL: f64 = 1e-8;

/// All roots (with multiplicity) of a polynomial with nonnegative exponents.
///
/// The leading coefficient must be nonzero and the degree at least 1.
pub fn polynomial_roots(p: &LaurentPolynomial) -> Result<Vec<Complex64>> {
    let dense = p.to_dense()?;
    polynomial_roots_dense(&dense)
}

/// Roots of Σ coeffs[k]·z^k (ascending exponent order).
pub fn polynomial_roots_dense(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last() == Some(&zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Err(Error::degenerate("constant polynomial has no root set"));
    }

    // Exact zero roots split off first.
    let mut roots = Vec::new();
    while c.first() == Some(&zero) {
        roots.push(zero);
        c.remove(0);
    }
    let degree = c.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }

    // Monic normalization.
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|&v| v / lead).collect();

    if degree == 1 {
        roots.push(-monic[0]);
        return finish(coeffs, roots);
    }

    // Cauchy bound radius, guesses on a circle with an irrational-ish phase
    // offset so no guess starts on a symmetry axis of the root set.
    let radius = 1.0 + monic[..degree].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let center = -monic[degree - 1] / degree as f64;
    let mut x: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / degree as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (p_val, dp_val) = horner_with_derivative(&monic, x[i]);
            if p_val == zero {
                continue;
            }
            let newton = if dp_val == zero {
                // Flat spot: nudge off it.
                Complex64::new(1e-8, 1e-8)
            } else {
                p_val / dp_val
            };
            let mut repulsion = zero;
            for (j, &xj) in x.iter().enumerate() {
                if j != i {
                    let d = x[i] - xj;
                    if d != zero {
                        repulsion += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom == zero { newton } else { newton / denom };
            x[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + x[i].norm()));
        }
        if max_step < STEP_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::solver("Aberth iteration did not converge"));
    }

    roots.extend(x);
    finish(coeffs, roots)
}

fn finish(coeffs: &[Complex64], roots: Vec<Complex64>) -> Result<Vec<Complex64>> {
    for &r in &roots {
        let mut val = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        let mut zp = Complex64::new(1.0, 0.0);
        for &c in coeffs {
            val += c * zp;
            scale += c.norm() * zp.norm();
            zp *= r;
        }
        if val.norm() > RESIDUAL_TOL * scale {
            return Err(Error::solver(format!(
                "root residual {:.3e} exceeds bound at {r}",
                val.norm() / scale
            )));
        }
    }
    Ok(roots)
}

/// (p(x), p'(x)) by a fused Horner pass over ascending coefficients.
fn horner_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair_off(mut expected: Vec<Complex64>, got: &[Complex64]) -> f64 {
        let mut worst = 0.0f64;
        for &g in got {
            let (idx, dist) = expected
                .iter()
                .enumerate()
                .map(|(i, &e)| (i, (e - g).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            worst = worst.max(dist);
            expected.swap_remove(idx);
        }
        worst
    }

    #[test]
    fn quadratic_plus_minus_one() {
        let p = LaurentPolynomial::from_coeffs(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let roots = polynomial_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(pair_off(vec![c(1.0, 0.0), c(-1.0, 0.0)], &roots) < 1e-12);
    }

    #[test]
    fn geometric_series_roots_are_roots_of_unity() {
        // 1+z+…+z^{N−1} has roots q^k, k=1..N−1, q = e^{2πi/N}.
        for n in [3u32, 5, 9, 12] {
            let ones = vec![c(1.0, 0.0); n as usize];
            let p = LaurentPolynomial::from_coeffs(&ones);
            let roots = polynomial_roots(&p).unwrap();
            let expect: Vec<Complex64> = (1..n)
                .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
                .collect();
            assert!(pair_off(expect, &roots) < 1e-10, "N={n}");
        }
    }

    #[test]
    fn zero_roots_are_split_off() {
        // z^2(z−3)
        let p = LaurentPolynomial::from_coeffs(&[
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-3.0, 0.0),
            c(1.0, 0.0),
        ]);
        let roots = polynomial_roots(&p).unwrap();
        assert!(pair_off(vec![c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)], &roots) < 1e-12);
    }

    #[test]
    fn constant_is_degenerate() {
        let p = LaurentPolynomial::constant(c(4.0, 0.0));
        assert!(matches!(
            polynomial_roots(&p),
            Err(crate::error::Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn monic_reconstruction_round_trip() {
        let coeffs = [c(0.3, -0.8), c(-1.2, 0.4), c(0.0, 2.0), c(1.5, 0.0), c(1.0, 0.0)];
        let p = LaurentPolynomial::from_coeffs(&coeffs);
        let roots = polynomial_roots(&p).unwrap();
        // Rebuild monic Π(z−r) and compare against the monic input.
        let mut rebuilt = LaurentPolynomial::one();
        for &r in &roots {
            let factor = LaurentPolynomial::from_coeffs(&[-r, c(1.0, 0.0)]);
            rebuilt = &rebuilt * &factor;
        }
        for k in 0..coeffs.len() {
            let want = coeffs[k] / coeffs[coeffs.len() - 1];
            assert!(
                (rebuilt.coeff(k as i64) - want).norm() <= 1e-8 * (1.0 + want.norm()),
                "coefficient {k}"
            );
        }
    }
}
