//! Cross-module identity tests: eigenvector proportionality between the
//! oracle and the closed forms, the nonpolynomial solution branch of the
//! Jacobi reduction, and the flux-matrix point of the q-Hahn family.

use num_complex::Complex64;
use qes_spectral::dual_hahn::{self, HahnParams};
use qes_spectral::eigensolver;
use qes_spectral::hofstadter::{self, FluxSpec};
use qes_spectral::q_hahn::{self, QHahnParams};
use qes_spectral::rng::SplitMix64;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest componentwise deviation of `v` from proportionality to `w`.
fn proportional_deviation(v: &[Complex64], w: &[Complex64]) -> f64 {
    let scale = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (idx, _) = w
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    let ratio = v[idx] / w[idx];
    v.iter()
        .zip(w)
        .map(|(a, b)| (a - ratio * b).norm() / scale)
        .fold(0.0, f64::max)
}

#[test]
fn inverse_iteration_recovers_transposed_polynomials() {
    let p = HahnParams::new(0.5, 0.25, 5).unwrap();
    let mt = dual_hahn::build_recurrence_matrix(&p).transpose();
    for m in 0..=5i64 {
        let lam = c64(p.eigenvalue(m), 0.0);
        let v = eigensolver::eigenvector(&mt, lam).unwrap();
        let tp = dual_hahn::build_transposed_polynomials(&p, lam).unwrap();
        let dev = proportional_deviation(&v, &tp);
        assert!(dev <= 1e-8, "m={m}: deviation {dev:.3e}");
    }
}

#[test]
fn inverse_iteration_recovers_q_generating_function() {
    // The m = 0 eigenvector of the root-of-unity matrix at 2x_0 = a + 1/a is
    // the all-ones geometric generating function.
    let p = QHahnParams::root_of_unity(7, 2, c64(0.7, 0.15), c64(0.2, -0.05)).unwrap();
    let matrix = q_hahn::build_q_matrix_root_of_unity(&p).unwrap();
    let lam = p.a() + 1.0 / p.a();
    let v = eigensolver::eigenvector(&matrix, lam).unwrap();
    let f0 = q_hahn::generating_function_root_of_unity(0, &p).unwrap();
    let coeffs: Vec<Complex64> = (0..7).map(|k| f0.coeff(k)).collect();
    let dev = proportional_deviation(&v, &coeffs);
    assert!(dev <= 1e-8, "deviation {dev:.3e}");
}

/// The reduction formula keeps solving the differential equation for
/// negative indices, where it leaves the polynomial space: checked with
/// step-extrapolated central differences at random points.
#[test]
fn nonpolynomial_solutions_satisfy_the_ode() {
    let p = HahnParams::new(0.5, 0.25, 3).unwrap();
    let (az, bz, cz) = dual_hahn::differential_operator_coefficients(&p);
    let mut rng = SplitMix64::new(7);
    for m in [-1i64, -2] {
        let lam = p.eigenvalue(m);
        let f = |z: Complex64| dual_hahn::jacobi_reduction_rhs(m, &p, z).unwrap();
        for _ in 0..10 {
            let z = loop {
                let z = c64(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
                if (z - c64(1.0, 0.0)).norm() > 0.35 {
                    break z;
                }
            };
            let h = 1e-3;
            let d1 = |h: f64| (f(z + h) - f(z - h)) / (2.0 * h);
            let d2 = |h: f64| (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
            let fp = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
            let fpp = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
            let term_a = az.evaluate(z) * fpp;
            let term_b = bz.evaluate(z) * fp;
            let term_c = cz.evaluate(z) * f(z);
            let lhs = term_a + term_b + term_c;
            let rhs = lam * f(z);
            let scale = [lhs, rhs, term_a, term_b, term_c]
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max);
            let resid = (lhs - rhs).norm() / scale.max(1.0);
            assert!(resid <= 1e-8, "m={m} z={z}: residual {resid:.3e}");
        }
    }
}

#[test]
fn flux_point_of_the_q_family_reproduces_the_sine_spectrum() {
    // a = iq^{1/2}, b = 0 (hence c = −iq^{1/2}) turns the root-of-unity
    // family into the flux matrix up to a diagonal similarity: same spectrum.
    for (n, s) in [(5u32, 1u32), (9, 2), (15, 4)] {
        let half = Complex64::from_polar(1.0, std::f64::consts::PI * s as f64 / n as f64);
        let a = c64(0.0, 1.0) * half;
        let p = QHahnParams::root_of_unity(n, s, a, c64(0.0, 0.0)).unwrap();
        let closed = q_hahn::spectrum_closed_form(&p);
        let sines: Vec<Complex64> = hofstadter::m_spectrum_closed_form(&FluxSpec::new(n, s).unwrap())
            .into_iter()
            .map(|x| c64(x, 0.0))
            .collect();
        let rep = eigensolver::compare_spectra(&closed, &sines, 1e-12 * (1.0 + 2.0)).unwrap();
        assert!(rep.passed, "N={n} S={s}: pairing {}", rep.max_residual);

        // And the recurrence matrix at this point carries the same spectrum
        // as the flux matrix M itself.
        let mq = q_hahn::build_q_matrix_root_of_unity(&p).unwrap();
        let ev_q = eigensolver::eigenvalues(&mq).unwrap();
        let ev_m = eigensolver::eigenvalues(&hofstadter::build_m(&FluxSpec::new(n, s).unwrap())).unwrap();
        let rep = eigensolver::compare_spectra(&ev_q, &ev_m, 3e-9).unwrap();
        assert!(rep.passed, "N={n} S={s}: M vs M_q pairing {}", rep.max_residual);
    }
}

#[test]
fn general_q_operator_row_sums_match_all_ones_action() {
    // Applying the symbol operator to the all-ones-coefficient polynomial
    // reproduces the matrix row sums (the z-side view of f(1)-type identities).
    let p = QHahnParams::general(5, c64(0.85, 0.0), c64(0.9, 0.0), c64(0.3, 0.0)).unwrap();
    let (alpha, beta, gamma) = q_hahn::q_difference_coefficients_general(&p);
    let ones = qes_spectral::numerics::LaurentPolynomial::from_coeffs(&[c64(1.0, 0.0); 5]);
    let q = p.q();
    let applied = &(&(&alpha * &ones) + &(&beta * &ones.dilate(q))) + &(&gamma * &ones.dilate(q * q));
    let matrix = q_hahn::build_q_matrix_general(&p).unwrap();
    for row in 0..5usize {
        let want: Complex64 = (0..5).map(|col| matrix.entry(row, col)).sum();
        let got = applied.coeff(row as i64);
        assert!((got - want).norm() <= 1e-12 * (1.0 + want.norm()), "row {row}");
    }
}

#[test]
fn dual_hahn_n8_spectrum_named_case() {
    let p = HahnParams::new(1.2, 0.7, 8).unwrap();
    let closed: Vec<Complex64> = dual_hahn::eigenvalues_closed_form(&p)
        .into_iter()
        .map(|x| c64(x, 0.0))
        .collect();
    let ev = eigensolver::eigenvalues(&dual_hahn::build_recurrence_matrix(&p)).unwrap();
    let max_mag = closed.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rep = eigensolver::compare_spectra(&closed, &ev, 1e-9 * (1.0 + max_mag)).unwrap();
    assert!(rep.passed, "pairing {}", rep.max_residual);
}
