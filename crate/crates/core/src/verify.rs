//! Per-family identity checks, shared by the CLI `verify` command and the
//! acceptance suite.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dual_hahn::{self, HahnParams};
use crate::eigensolver;
use crate::error::Result;
use crate::numerics::LaurentPolynomial;
use crate::q_hahn::{self, QHahnMode, QHahnParams, SqrtBranch};
use crate::selftest::Tolerances;
use crate::tridiagonal::TridiagonalOperator;

/// One named check with its measured value and threshold.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn measure(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

/// Test hook: bump one matrix entry so every spectrum check must notice.
fn maybe_inject(t: &TridiagonalOperator, inject: bool) -> TridiagonalOperator {
    if !inject {
        return t.clone();
    }
    let mut main = t.main().to_vec();
    main[0] += Complex64::new(1e-3 * (1.0 + t.scale()), 0.0);
    TridiagonalOperator::new(main, t.sub().to_vec(), t.sup().to_vec())
        .expect("perturbed matrix stays valid")
}

fn spectrum_check(
    name: &str,
    matrix: &TridiagonalOperator,
    closed: &[Complex64],
    base_tol: f64,
) -> Result<CheckOutcome> {
    let oracle = eigensolver::eigenvalues(matrix)?;
    let max_mag = closed.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = base_tol * (1.0 + max_mag);
    let report = eigensolver::compare_spectra(closed, &oracle, tol)?;
    Ok(CheckOutcome::measure(name, report.max_residual, tol))
}

/// All identity checks for a dual-Hahn parameter set.
pub fn verify_hahn(
    p: &HahnParams,
    tol: &Tolerances,
    inject_error: bool,
) -> Result<Vec<CheckOutcome>> {
    let mut checks = Vec::new();
    let matrix = maybe_inject(&dual_hahn::build_recurrence_matrix(p), inject_error);
    let closed: Vec<Complex64> = dual_hahn::eigenvalues_closed_form(p)
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    checks.push(spectrum_check("spectrum", &matrix, &closed, tol.get("eigen"))?);

    // Transpose invariance: M and Mᵀ share their spectrum.
    let oracle_m = eigensolver::eigenvalues(&matrix)?;
    let oracle_mt = eigensolver::eigenvalues(&matrix.transpose())?;
    let max_mag = closed.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rep = eigensolver::compare_spectra(&oracle_m, &oracle_mt, tol.get("eigen") * (1.0 + max_mag))?;
    checks.push(CheckOutcome::measure(
        "transpose-spectrum",
        rep.max_residual,
        rep.tolerance,
    ));

    let mut worst_ode = 0.0f64;
    let mut worst_vec = 0.0f64;
    let mut worst_prop = 0.0f64;
    let mt = matrix.transpose();
    for m in 0..=p.n() {
        worst_ode = worst_ode.max(dual_hahn::ode_residual(m, p)?);

        let lam = p.eigenvalue(m as i64);
        let tp = dual_hahn::build_transposed_polynomials(p, Complex64::new(lam, 0.0))?;
        let mv = mt.matvec(&tp)?;
        let scale = mv.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let resid = mv
            .iter()
            .zip(&tp)
            .map(|(got, t)| (got - t * lam).norm())
            .fold(0.0, f64::max);
        worst_vec = worst_vec.max(resid / scale);

        let f = dual_hahn::generating_function(m, p)?;
        worst_prop = worst_prop.max(proportionality_deviation(&f, &tp));
    }
    checks.push(CheckOutcome::measure("ode-residual", worst_ode, tol.get("ode")));
    checks.push(CheckOutcome::measure(
        "eigenvector-consistency",
        worst_vec,
        tol.get("eigenvector"),
    ));
    checks.push(CheckOutcome::measure(
        "generating-function-proportionality",
        worst_prop,
        tol.get("proportionality"),
    ));

    let mut worst_jacobi = 0.0f64;
    let sample_z = [
        Complex64::new(0.3, 0.2),
        Complex64::new(-0.7, 0.4),
        Complex64::new(1.4, -0.9),
        Complex64::new(-1.2, -0.3),
        Complex64::new(0.1, 1.6),
    ];
    for m in 0..=p.n() {
        for &z in &sample_z {
            let (lhs, rhs) = dual_hahn::jacobi_reduction(m, p, z)?;
            worst_jacobi = worst_jacobi.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    checks.push(CheckOutcome::measure(
        "jacobi-reduction",
        worst_jacobi,
        tol.get("jacobi"),
    ));

    checks.push(CheckOutcome::measure(
        "sl2-decomposition",
        dual_hahn::sl2_decomposition_check(p),
        tol.get("sl2"),
    ));
    Ok(checks)
}

/// Componentwise deviation of the Laurent coefficients from proportionality
/// to `target`, the constant fixed by the first nonzero target entry.
pub fn proportionality_deviation(f: &LaurentPolynomial, target: &[Complex64]) -> f64 {
    let mut ratio = None;
    let mut worst = 0.0f64;
    let scale = target.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    for (k, t) in target.iter().enumerate() {
        let c = f.coeff(k as i64);
        if ratio.is_none() && t.norm() > 1e-12 * scale {
            ratio = Some(c / t);
            continue;
        }
        match ratio {
            Some(r) => worst = worst.max((c - r * t).norm() / scale),
            None => worst = worst.max(c.norm() / scale),
        }
    }
    worst
}

/// All identity checks for a q-Hahn parameter set (both modes).
pub fn verify_qhahn(
    p: &QHahnParams,
    tol: &Tolerances,
    inject_error: bool,
) -> Result<Vec<CheckOutcome>> {
    let mut checks = Vec::new();
    let matrix = match p.mode() {
        QHahnMode::RootOfUnity { .. } => q_hahn::build_q_matrix_root_of_unity(p)?,
        QHahnMode::General => q_hahn::build_q_matrix_general(p)?,
    };
    let matrix = maybe_inject(&matrix, inject_error);
    let closed = q_hahn::spectrum_closed_form(p);
    checks.push(spectrum_check("spectrum", &matrix, &closed, tol.get("eigen"))?);

    // Operator/matrix duality: the monomial-basis matrix of the symbols.
    let symbol_matrix = q_hahn::operator_matrix(p)?;
    let mut duality_dev = 0.0f64;
    let reference = match p.mode() {
        QHahnMode::RootOfUnity { .. } => q_hahn::build_q_matrix_root_of_unity(p)?,
        QHahnMode::General => q_hahn::build_q_matrix_general(p)?,
    };
    for i in 0..reference.dim() {
        for j in 0..reference.dim() {
            duality_dev = duality_dev
                .max((reference.entry(i, j) - symbol_matrix.entry(i, j)).norm());
        }
    }
    checks.push(CheckOutcome::measure(
        "operator-matrix-duality",
        duality_dev / reference.scale().max(1.0),
        tol.get("duality"),
    ));

    let mut worst_resid = 0.0f64;
    for m in 0..p.n() {
        worst_resid = worst_resid.max(q_hahn::q_difference_residual(m, p)?);
    }
    checks.push(CheckOutcome::measure(
        "q-difference-residual",
        worst_resid,
        tol.get("q-residual"),
    ));

    match p.mode() {
        QHahnMode::RootOfUnity { .. } => {
            let principal = q_hahn::uq_sl2_decomposition_check(p, SqrtBranch::Principal)?;
            let uq_tol = tol.get("uq-sl2");
            if principal <= uq_tol {
                checks.push(CheckOutcome::measure("uq-sl2 (principal branch)", principal, uq_tol));
            } else {
                let flipped = q_hahn::uq_sl2_decomposition_check(p, SqrtBranch::Flipped)?;
                checks.push(CheckOutcome::measure(
                    "uq-sl2 (flipped branch fallback)",
                    flipped,
                    uq_tol,
                ));
            }

            // Double-sum route: f_m(z) = Σ zⁿ p_n(x_m) from the explicit series.
            let mut worst_ds = 0.0f64;
            for m in 0..p.n() {
                let f = q_hahn::generating_function_root_of_unity(m, p)?;
                let t = p.a() * p.q_pow(m as i64);
                let scale = f.max_coeff_magnitude().max(1.0);
                for k in 0..p.n() {
                    let pn = q_hahn::cdqh_polynomial_series(k, t, p)?;
                    worst_ds = worst_ds.max((f.coeff(k as i64) - pn).norm() / scale);
                }
            }
            checks.push(CheckOutcome::measure(
                "double-sum-equivalence",
                worst_ds,
                tol.get("double-sum"),
            ));

            if p.b().norm() <= q_hahn::VALIDITY_THRESHOLD {
                let mut worst_zero = 0.0f64;
                for m in 0..p.n() {
                    let closed_zeros = q_hahn::zeros_b0(m, p)?;
                    let f = q_hahn::generating_function_root_of_unity(m, p)?;
                    let roots = crate::numerics::polynomial_roots(&f)?;
                    let rep =
                        eigensolver::compare_spectra(&closed_zeros, &roots, tol.get("zeros"))?;
                    worst_zero = worst_zero.max(rep.max_residual);
                }
                checks.push(CheckOutcome::measure("zero-sets", worst_zero, tol.get("zeros")));
            }
        }
        QHahnMode::General => {
            checks.push(CheckOutcome::measure(
                "little-q-jacobi-reduction",
                little_q_jacobi_coefficient_deviation(p)?,
                tol.get("little-q-jacobi"),
            ));
            if p.b().norm() > q_hahn::VALIDITY_THRESHOLD {
                checks.push(CheckOutcome::measure(
                    "dual-qhahn-equivalence",
                    q_hahn::equivalence_check(p)?,
                    tol.get("equivalence"),
                ));
            }
        }
    }
    Ok(checks)
}

/// Coefficientwise comparison of the two general-q expressions for f_m: the
/// explicit sum against (z;q)_m · P_{N−1−m}(za⁻²q^{−m−1}; ba⁻¹q^{−N}, a²q^{2m} | q)
/// built from the little q-Jacobi series in its own parametrization.
pub fn little_q_jacobi_coefficient_deviation(p: &QHahnParams) -> Result<f64> {
    let n = p.n();
    let q = p.q();
    let a = p.a();
    let b = p.b();
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for m in 0..n {
        let direct = q_hahn::generating_function_general(m, p)?;

        // Little q-Jacobi series in z: coefficient of z^k is the ₂φ₁ term
        // times (q·a⁻²q^{−m−1})^k.
        let deg = n - 1 - m;
        let alpha = b / a * q.powi(-(n as i32));
        let beta = a * a * q.powi(2 * m as i32);
        let x_factor = q * q.powi(-(m as i32 + 1)) / (a * a);
        let mut series = LaurentPolynomial::constant(one);
        let mut term = one;
        for k in 1..=deg {
            let j = k as i32 - 1;
            let num = (one - q.powi(j - deg as i32)) * (one - alpha * beta * q.powi(deg as i32 + 1 + j));
            let den = (one - alpha * q.powi(1 + j)) * (one - q.powi(k as i32));
            term *= num / den * x_factor;
            series.add_term(k as i64, term);
        }
        let mut rhs = series;
        for j in 0..m {
            let mut factor = LaurentPolynomial::constant(one);
            factor.add_term(1, -q.powi(j as i32));
            rhs = &rhs * &factor;
        }

        let scale = direct.max_coeff_magnitude().max(1.0);
        for k in 0..n as i64 {
            worst = worst.max((direct.coeff(k) - rhs.coeff(k)).norm() / scale);
        }
    }
    Ok(worst)
}
