//! Property tests for the scalar kernels and oracle plumbing.

use num_complex::Complex64;
use proptest::prelude::*;
use qes_spectral::eigensolver;
use qes_spectral::numerics::{self, LaurentPolynomial};
use qes_spectral::tridiagonal::TridiagonalOperator;

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// (a)_{k+1} = (a)_k·(a+k), exactly, for k ≤ 64.
    #[test]
    fn pochhammer_step(a in small_complex(), k in 0u32..=64) {
        let lhs = numerics::pochhammer(a, k + 1);
        let rhs = numerics::pochhammer(a, k) * (a + k as f64);
        prop_assert_eq!(lhs, rhs);
    }

    /// (d;q)_k = (1−d)·(dq;q)_{k−1} to relative 1e−13.
    #[test]
    fn q_pochhammer_peel(d in small_complex(), q in small_complex(), k in 1u32..=24) {
        let lhs = numerics::q_pochhammer(d, q, k);
        let rhs = (Complex64::new(1.0, 0.0) - d) * numerics::q_pochhammer(d * q, q, k - 1);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + lhs.norm().max(rhs.norm())));
    }

    /// Roots followed by monic reconstruction reproduce the monic input
    /// coefficients to relative 1e−8.
    #[test]
    fn roots_round_trip(coeffs in proptest::collection::vec(small_complex(), 2..7)) {
        let mut coeffs = coeffs;
        // Keep the leading coefficient well away from zero.
        let lead = coeffs.last_mut().unwrap();
        if lead.norm() < 0.5 {
            *lead += Complex64::new(1.0, 0.5);
        }
        let p = LaurentPolynomial::from_coeffs(&coeffs);
        let roots = match numerics::polynomial_roots(&p) {
            Ok(r) => r,
            // A genuinely unlucky draw (clustered roots) may fail the
            // residual bound; that is the solver being honest, not a bug.
            Err(_) => return Ok(()),
        };
        let mut rebuilt = LaurentPolynomial::one();
        for &r in &roots {
            rebuilt = &rebuilt * &LaurentPolynomial::from_coeffs(&[-r, Complex64::new(1.0, 0.0)]);
        }
        let lead = *coeffs.last().unwrap();
        let scale = coeffs.iter().map(|c| (c / lead).norm()).fold(1.0, f64::max);
        for (k, c) in coeffs.iter().enumerate() {
            let want = c / lead;
            let got = rebuilt.coeff(k as i64);
            prop_assert!(
                (got - want).norm() <= 1e-8 * scale,
                "coefficient {}: {} vs {}", k, got, want
            );
        }
    }

    /// Laurent multiplication evaluates pointwise.
    #[test]
    fn laurent_mul_evaluates(
        f_coeffs in proptest::collection::vec(small_complex(), 1..5),
        g_coeffs in proptest::collection::vec(small_complex(), 1..5),
        z in small_complex(),
    ) {
        prop_assume!(z.norm() > 0.1);
        let f = LaurentPolynomial::from_coeffs(&f_coeffs).shifted(-1);
        let g = LaurentPolynomial::from_coeffs(&g_coeffs).shifted(-2);
        let prod = &f * &g;
        let direct = f.evaluate(z) * g.evaluate(z);
        prop_assert!((prod.evaluate(z) - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    /// Oracle self-consistency on random real symmetric tridiagonals:
    /// eigenvalue sum vs trace (relative 1e−10) and product vs determinant
    /// (relative 1e−8).
    #[test]
    fn spectrum_trace_determinant(
        diag in proptest::collection::vec(-4.0f64..4.0, 2..10),
        seedling in -4.0f64..4.0,
    ) {
        let n = diag.len();
        let off: Vec<Complex64> = (0..n - 1)
            .map(|i| Complex64::new(seedling * 0.7 + 0.3 * i as f64, 0.0))
            .collect();
        let main: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let t = TridiagonalOperator::new(main, off.clone(), off).unwrap();
        let ev = eigensolver::eigenvalues(&t).unwrap();
        let sum: Complex64 = ev.iter().sum();
        prop_assert!((sum - t.trace()).norm() <= 1e-10 * (1.0 + t.trace().norm()));
        let prod: Complex64 = ev.iter().product();
        let det = eigensolver::determinant(&t);
        prop_assert!((prod - det).norm() <= 1e-8 * (1.0 + det.norm()));
    }
}
