//! Dual Hahn polynomials, their tridiagonal recurrence matrices, the
//! second-order differential operator their generating functions solve, its
//! closed-form spectrum λ(m) = m(m+γ+δ+1), the Jacobi-polynomial reduction of
//! the eigenfunctions, the sl₂ decomposition of the operator, and the general
//! quadratic-coefficient tridiagonal family.
//!
//! Conventions. The recurrence
//!   λ p_n = A_n p_{n+1} − (A_n+C_n) p_n + C_n p_{n−1},
//!   A_n = (n−N)(n+γ+1),  C_n = n(n−δ−N−1)
//! defines the matrix M (rows n = 0..N). C_0 = 0 and A_N = 0 close the
//! band, and the transpose Mᵀ is the monomial-basis matrix of the
//! differential operator D acting on polynomials of degree ≤ N, with
//! eigenvectors whose coefficients are the rescaled polynomials
//!   tilde_p_n = (−N)_n (γ+1)_n / ((−δ−N)_n n!) · p_n.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::numerics::{pochhammer, LaurentPolynomial};
use crate::tridiagonal::TridiagonalOperator;

/// Absolute threshold under which a validity factor counts as vanishing.
pub const VALIDITY_THRESHOLD: f64 = 1e-12;

/// Parameter bundle (γ, δ, N) for the dual Hahn family.
///
/// Validity requires every factor of (γ+1)_k and (−δ−N)_k, k = 1..N, to stay
/// away from zero: those products sit in denominators of the series, the
/// transpose rescaling and the Jacobi reduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HahnParams {
    gamma: f64,
    delta: f64,
    n: u32,
}

impl HahnParams {
    pub fn new(gamma: f64, delta: f64, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("N must be at least 1"));
        }
        if !gamma.is_finite() || !delta.is_finite() {
            return Err(Error::invalid("parameters must be finite"));
        }
        for j in 0..n {
            let g = gamma + 1.0 + j as f64;
            if g.abs() <= VALIDITY_THRESHOLD {
                return Err(Error::invalid(format!(
                    "(γ+1)_k vanishes: γ+1+{j} = {g:.3e}"
                )));
            }
            let d = -delta - n as f64 + j as f64;
            if d.abs() <= VALIDITY_THRESHOLD {
                return Err(Error::invalid(format!(
                    "(−δ−N)_k vanishes: −δ−N+{j} = {d:.3e}"
                )));
            }
        }
        Ok(HahnParams { gamma, delta, n })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// A_n = (n−N)(n+γ+1).
    pub fn coeff_a(&self, n: u32) -> f64 {
        (n as f64 - self.n as f64) * (n as f64 + self.gamma + 1.0)
    }

    /// C_n = n(n−δ−N−1).
    pub fn coeff_c(&self, n: u32) -> f64 {
        n as f64 * (n as f64 - self.delta - self.n as f64 - 1.0)
    }

    /// λ(m) = m(m+γ+δ+1).
    pub fn eigenvalue(&self, m: i64) -> f64 {
        m as f64 * (m as f64 + self.gamma + self.delta + 1.0)
    }
}

/// p_n(λ), evaluated through the three-term recurrence seeded p_{−1} = 0,
/// p_0 = 1. The recurrence needs only λ and is O(n); the explicit double sum
/// is kept in tests as the independent oracle.
pub fn dual_hahn_polynomial(n: u32, lam: Complex64, p: &HahnParams) -> Result<Complex64> {
    if n > p.n() {
        return Err(Error::invalid(format!("n={n} exceeds N={}", p.n())));
    }
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for j in 0..n {
        let a = p.coeff_a(j);
        let c = p.coeff_c(j);
        // λ p_j = A_j p_{j+1} − (A_j+C_j) p_j + C_j p_{j−1}
        let next = ((lam + a + c) * cur - c * prev) / a;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The (N+1)-dimensional matrix M of the recurrence: main_n = −(A_n+C_n),
/// super_n = A_n, sub_n = C_n.
pub fn build_recurrence_matrix(p: &HahnParams) -> TridiagonalOperator {
    let n = p.n();
    let main: Vec<Complex64> = (0..=n)
        .map(|k| Complex64::new(-(p.coeff_a(k) + p.coeff_c(k)), 0.0))
        .collect();
    let sup: Vec<Complex64> = (0..n).map(|k| Complex64::new(p.coeff_a(k), 0.0)).collect();
    let sub: Vec<Complex64> = (1..=n).map(|k| Complex64::new(p.coeff_c(k), 0.0)).collect();
    TridiagonalOperator::new(main, sub, sup).expect("valid by construction")
}

/// tilde_p_n(λ) = (−N)_n (γ+1)_n / ((−δ−N)_n n!) · p_n(λ) for n = 0..N — the
/// coefficient vector of the generating function, i.e. the Mᵀ eigenvector
/// when λ = λ(m).
pub fn build_transposed_polynomials(p: &HahnParams, lam: Complex64) -> Result<Vec<Complex64>> {
    let n = p.n();
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut factor = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            // Multiply in one step of each Pochhammer: ratio of consecutive factors.
            let j = (k - 1) as f64;
            let num = (j - n as f64) * (j + p.gamma() + 1.0);
            let den = (j - p.delta() - n as f64) * k as f64;
            if den.abs() <= VALIDITY_THRESHOLD {
                return Err(Error::invalid("vanishing (−δ−N)_n in transpose rescaling"));
            }
            factor *= num / den;
        }
        out.push(factor * dual_hahn_polynomial(k, lam, p)?);
    }
    Ok(out)
}

/// Closed-form spectrum λ(m) = m(m+γ+δ+1), m = 0..N, in index order.
pub fn eigenvalues_closed_form(p: &HahnParams) -> Vec<f64> {
    (0..=p.n() as i64).map(|m| p.eigenvalue(m)).collect()
}

/// Coefficients (a(z), b(z), c(z)) of the differential operator
/// D = a(z)d²/dz² + b(z)d/dz + c(z) solved by the generating functions:
///   a(z) = z(z−1)²,
///   b(z) = (γ−N+2)z² − (γ−δ−2N+2)z − (δ+N),
///   c(z) = −N(γ+1)(z−1).
pub fn differential_operator_coefficients(
    p: &HahnParams,
) -> (LaurentPolynomial, LaurentPolynomial, LaurentPolynomial) {
    let g = p.gamma();
    let d = p.delta();
    let nf = p.n() as f64;
    let re = |x: f64| Complex64::new(x, 0.0);
    // z(z−1)² = z − 2z² + z³
    let a = LaurentPolynomial::from_coeffs(&[re(0.0), re(1.0), re(-2.0), re(1.0)]);
    let b = LaurentPolynomial::from_coeffs(&[
        re(-(d + nf)),
        re(-(g - d - 2.0 * nf + 2.0)),
        re(g - nf + 2.0),
    ]);
    let c = LaurentPolynomial::from_coeffs(&[re(nf * (g + 1.0)), re(-nf * (g + 1.0))]);
    (a, b, c)
}

/// f_m(z) = (1−z)^m Σ_{k=0}^{N−m} (m−N)_k (m+γ+1)_k / ((−δ−N)_k k!) · z^k,
/// a polynomial of degree ≤ N whose coefficients are proportional to
/// tilde_p_n(λ(m)).
///
/// The binomial convolution cancels heavily at moderate m (its alternating
/// partial sums dwarf the final coefficients), so the coefficient assembly
/// runs in compensated double-double and rounds once at the end; the returned
/// coefficients are correctly rounded relative to their own size, which the
/// coefficient-level residual checks need.
pub fn generating_function(m: u32, p: &HahnParams) -> Result<LaurentPolynomial> {
    use crate::numerics::dd::Dd;

    let n = p.n();
    if m > n {
        return Err(Error::invalid(format!("m={m} exceeds N={n}")));
    }
    let g = p.gamma();
    let d = p.delta();

    // Series terms s_k, k = 0..N−m, by ratio accumulation.
    let mut series = Vec::with_capacity((n - m) as usize + 1);
    let mut term = Dd::ONE;
    series.push(term);
    for k in 1..=(n - m) {
        let j = (k - 1) as f64;
        let num = Dd::from_f64(m as f64 + j - n as f64)
            .mul(Dd::from_f64(g).add(Dd::from_f64(m as f64 + 1.0 + j)));
        let den = Dd::from_f64(-d).add(Dd::from_f64(j - n as f64)).mul(Dd::from_f64(k as f64));
        if den.abs_f64() <= VALIDITY_THRESHOLD {
            return Err(Error::invalid("vanishing (−δ−N)_k in the series"));
        }
        term = term.mul(num).div(den);
        series.push(term);
    }

    // Signed binomial coefficients of (1−z)^m.
    let mut binom = Vec::with_capacity(m as usize + 1);
    let mut c = Dd::ONE;
    binom.push(c);
    for j in 0..m {
        c = c.mul(Dd::from_f64(m as f64 - j as f64)).div(Dd::from_f64(j as f64 + 1.0));
        binom.push(c);
    }

    let mut f = LaurentPolynomial::zero();
    for out in 0..=n as usize {
        let mut acc = Dd::ZERO;
        let k_lo = out.saturating_sub(m as usize);
        let k_hi = out.min((n - m) as usize);
        for k in k_lo..=k_hi {
            let b_idx = out - k;
            let signed = if b_idx % 2 == 0 { binom[b_idx] } else { binom[b_idx].neg() };
            acc = acc.add(series[k].mul(signed));
        }
        f.add_term(out as i64, Complex64::new(acc.to_f64(), 0.0));
    }
    Ok(f)
}

/// Coefficient-level residual of the eigenvalue equation λ(m)f = Df for
/// f = f_m, using exact polynomial differentiation and multiplication.
///
/// Returns max residual coefficient divided by the scale of the cancelling
/// terms (λf and the three operator terms individually, which also covers
/// λ(0) = 0).
pub fn ode_residual(m: u32, p: &HahnParams) -> Result<f64> {
    let f = generating_function(m, p)?;
    let lam = Complex64::new(p.eigenvalue(m as i64), 0.0);
    let (a, b, c) = differential_operator_coefficients(p);
    let term_a = &a * &f.derivative().derivative();
    let term_b = &b * &f.derivative();
    let term_c = &c * &f;
    let lam_f = f.scale(lam);
    let residual = (&(&(&term_a + &term_b) + &term_c) - &lam_f).normalized();
    let scale = [&term_a, &term_b, &term_c, &lam_f]
        .iter()
        .map(|t| t.max_coeff_magnitude())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(residual.max_coeff_magnitude());
    }
    Ok(residual.max_coeff_magnitude() / scale)
}

/// Jacobi polynomial P_k^{(α,β)}(x) by the standard three-term recurrence
/// (complex argument, real parameters).
pub fn jacobi_polynomial(k: u32, alpha: f64, beta: f64, x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = Complex64::new((alpha - beta) / 2.0, 0.0) + x * (1.0 + (alpha + beta) / 2.0);
    for j in 2..=k {
        let jf = j as f64;
        let ab = alpha + beta;
        let a1 = 2.0 * jf * (jf + ab) * (2.0 * jf + ab - 2.0);
        let a2 = (2.0 * jf + ab - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (2.0 * jf + ab - 1.0) * (2.0 * jf + ab) * (2.0 * jf + ab - 2.0);
        let a4 = 2.0 * (jf + alpha - 1.0) * (jf + beta - 1.0) * (2.0 * jf + ab);
        let next = ((Complex64::new(a2, 0.0) + x * a3) * cur - prev * a4) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Both sides of the Jacobi reduction of the generating function at a point:
///   f_m(z)  and  (N−m)!/(−N−δ)_{N−m} · (1−z)^N ·
///   P^{(−δ−N−1, −γ−N−1)}_{N−m}((1+z)/(1−z)).
///
/// The index may be pushed past N (m = −1, −2, …), where the right-hand side
/// is a nonpolynomial formal solution; the left side is then unavailable and
/// only [`jacobi_reduction_rhs`] applies.
pub fn jacobi_reduction(
    m: u32,
    p: &HahnParams,
    z: Complex64,
) -> Result<(Complex64, Complex64)> {
    let lhs = generating_function(m, p)?.evaluate(z);
    let rhs = jacobi_reduction_rhs(m as i64, p, z)?;
    Ok((lhs, rhs))
}

/// The Jacobi-side expression of the reduction for any integer index m ≤ N.
pub fn jacobi_reduction_rhs(m: i64, p: &HahnParams, z: Complex64) -> Result<Complex64> {
    if (z - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
        return Err(Error::degenerate("argument (1+z)/(1−z) is singular at z=1"));
    }
    let n = p.n() as i64;
    if m > n {
        return Err(Error::invalid(format!("index m={m} exceeds N={n}")));
    }
    let k = (n - m) as u32;
    let alpha = -p.delta() - p.n() as f64 - 1.0;
    let beta = -p.gamma() - p.n() as f64 - 1.0;
    let num = pochhammer(Complex64::new(1.0, 0.0), k);
    let den = pochhammer(Complex64::new(-(p.n() as f64) - p.delta(), 0.0), k);
    if den.norm() <= VALIDITY_THRESHOLD {
        return Err(Error::invalid("vanishing (−N−δ)_{N−m} prefactor"));
    }
    let one = Complex64::new(1.0, 0.0);
    let arg = (one + z) / (one - z);
    Ok(num / den * (one - z).powu(p.n()) * jacobi_polynomial(k, alpha, beta, arg))
}

// ───────────────────────── sl₂ structure ─────────────────────────

/// Monomial-basis matrices of the sl₂ generators on polynomials of degree ≤ N:
/// J⁻ z^k = k z^{k−1}, J⁰ z^k = (k−N/2) z^k, J⁺ z^k = (k−N) z^{k+1}.
///
/// Returned as (J⁺, J⁰, J⁻), each (N+1)×(N+1).
pub fn build_sl2_generators(n: u32) -> (DenseMatrix, DenseMatrix, DenseMatrix) {
    let dim = n as usize + 1;
    let mut jp = DenseMatrix::zeros(dim);
    let mut j0 = DenseMatrix::zeros(dim);
    let mut jm = DenseMatrix::zeros(dim);
    for k in 0..dim {
        j0.set(k, k, Complex64::new(k as f64 - n as f64 / 2.0, 0.0));
        if k > 0 {
            jm.set(k - 1, k, Complex64::new(k as f64, 0.0));
        }
        if k + 1 < dim {
            jp.set(k + 1, k, Complex64::new(k as f64 - n as f64, 0.0));
        }
    }
    (jp, j0, jm)
}

/// Assemble the operator from its sl₂ form
///   J⁺J⁰ − 2J⁺J⁻ + J⁰J⁻ + (γ+1+N/2)J⁺ + (δ−γ−2)J⁰ − (N/2+δ)J⁻ + N(δ+γ)/2
/// and compare against the monomial-basis matrix of D (which is Mᵀ).
///
/// Returns the max-entry deviation divided by the max-entry scale of Mᵀ.
pub fn sl2_decomposition_check(p: &HahnParams) -> f64 {
    let n = p.n();
    let (jp, j0, jm) = build_sl2_generators(n);
    let g = p.gamma();
    let d = p.delta();
    let nf = n as f64;
    let re = |x: f64| Complex64::new(x, 0.0);

    let mut assembled = jp.matmul(&j0);
    assembled = assembled.sub(&jp.matmul(&jm).scaled(re(2.0)));
    assembled = assembled.add(&j0.matmul(&jm));
    assembled = assembled.add(&jp.scaled(re(g + 1.0 + nf / 2.0)));
    assembled = assembled.add(&j0.scaled(re(d - g - 2.0)));
    assembled = assembled.sub(&jm.scaled(re(nf / 2.0 + d)));
    assembled = assembled.add(&DenseMatrix::identity(n as usize + 1).scaled(re(nf * (d + g) / 2.0)));

    let target = build_recurrence_matrix(p).transpose().to_dense();
    assembled.max_abs_diff(&target) / target.max_abs().max(1.0)
}

// ───────────────────────── general family ─────────────────────────

/// Real quadratic q(k) = c₀ + c₁k + c₂k².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadratic(pub f64, pub f64, pub f64);

impl Quadratic {
    pub fn eval(&self, k: f64) -> f64 {
        self.0 + self.1 * k + self.2 * k * k
    }
}

/// The general tridiagonal family: diagonal A(k), superdiagonal B(k),
/// subdiagonal C(k) for arbitrary quadratics subject to the boundary
/// conditions C(N+1) = B(−1) = 0.
#[derive(Clone, Copy, Debug)]
pub struct GeneralFamilySpec {
    pub a: Quadratic,
    pub b: Quadratic,
    pub c: Quadratic,
    pub n: u32,
}

/// Boundary tolerance for the general family.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

impl GeneralFamilySpec {
    /// Residual of the Askey-Wilson row condition a_k + b_{k−1} + c_{k+1} = 0,
    /// maximized over k = 0..N (boundary terms contribute zero by the
    /// boundary conditions).
    pub fn askey_wilson_residual(&self) -> f64 {
        (0..=self.n)
            .map(|k| {
                let k = k as f64;
                (self.a.eval(k) + self.b.eval(k - 1.0) + self.c.eval(k + 1.0)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// (N+1)-dimensional operator with diagonal a_k = A(k), superdiagonal
/// b_k = B(k), subdiagonal c_k = C(k).
pub fn build_general_family(spec: &GeneralFamilySpec) -> Result<TridiagonalOperator> {
    let n = spec.n;
    let b_edge = spec.b.eval(-1.0);
    if b_edge.abs() > BOUNDARY_TOLERANCE {
        return Err(Error::invalid(format!("boundary B(−1) = {b_edge:.3e} ≠ 0")));
    }
    let c_edge = spec.c.eval(n as f64 + 1.0);
    if c_edge.abs() > BOUNDARY_TOLERANCE {
        return Err(Error::invalid(format!("boundary C(N+1) = {c_edge:.3e} ≠ 0")));
    }
    let main: Vec<Complex64> = (0..=n)
        .map(|k| Complex64::new(spec.a.eval(k as f64), 0.0))
        .collect();
    let sup: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(spec.b.eval(k as f64), 0.0))
        .collect();
    let sub: Vec<Complex64> = (1..=n)
        .map(|k| Complex64::new(spec.c.eval(k as f64), 0.0))
        .collect();
    TridiagonalOperator::new(main, sub, sup)
}

/// The dual-Hahn transpose written as a general-family instance:
/// A(k) = −(A_k+C_k), B(k) = C(k+1), C(k) = A(k−1).
pub fn dual_hahn_transpose_family(p: &HahnParams) -> GeneralFamilySpec {
    let g = p.gamma();
    let d = p.delta();
    let nf = p.n() as f64;
    // −(A_k + C_k) = −(2k² + k(γ−δ−2N) − N(γ+1))
    let a = Quadratic(nf * (g + 1.0), -(g - d - 2.0 * nf), -2.0);
    // C(k+1) = (k+1)(k−δ−N)
    let b = Quadratic(-(d + nf), 1.0 - d - nf, 1.0);
    // A(k−1) = (k−1−N)(k+γ)
    let c = Quadratic(-(1.0 + nf) * g, g - 1.0 - nf, 1.0);
    GeneralFamilySpec { a, b, c, n: p.n() }
}
