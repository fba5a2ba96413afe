//! Schrödinger reduction of the dual-Hahn differential problem.
//!
//! Under ψ(y) = f(coth²(y/2)) / {√(sinh y) sinh^γ(y/2) cosh^δ(y/2) coth^N(y/2)}
//! the polynomial eigenproblem becomes −ψ″ + V(y)ψ = εψ with
//!
//!   V(y) = [ (γ−δ)(2N+γ+δ+2)cosh y + (N+γ)² + (N+δ)² + 2(2N+γ+δ) + 3/2 ]
//!          / (2 sinh²y)  +  (1+γ+δ)²/4,
//!
//!   ε_m = −m(m+γ+δ+1),   ψ_m(y) ∝ P^{(−δ−N−1, −γ−N−1)}_{N−m}(−cosh y) / D(y),
//!
//! with D(y) the same weight. ψ and ψ′ are discontinuous at y = 0, so all
//! evaluation lives on y > 0; square-integrability holds on the full line iff
//! γ+N < 0 and 2m+γ+δ+1 > 0, and on the half line (ψ(0) = 0) iff
//! γ+N < −1/2 and γ+δ+1 > 0.

use crate::dual_hahn::{jacobi_polynomial, HahnParams};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchrodingerDomain {
    FullLine,
    HalfLine,
}

/// Evaluation grid for sampling and residual checks.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub y_min: f64,
    pub y_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.y_min > 0.0) {
            return Err(Error::degenerate(format!(
                "y_min = {} must be positive (singularity at y = 0)",
                self.y_min
            )));
        }
        if self.y_max <= self.y_min {
            return Err(Error::invalid("y_max must exceed y_min"));
        }
        if self.n_points < 64 {
            return Err(Error::invalid("grid needs at least 64 points"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let h = (self.y_max - self.y_min) / (self.n_points - 1) as f64;
        (0..self.n_points).map(|i| self.y_min + i as f64 * h).collect()
    }
}

/// V(y); singular at y = 0.
pub fn potential(y: f64, p: &HahnParams) -> Result<f64> {
    if y == 0.0 {
        return Err(Error::degenerate("potential is singular at y = 0"));
    }
    let g = p.gamma();
    let d = p.delta();
    let nf = p.n() as f64;
    let sh = y.sinh();
    let bracket = (g - d) * (2.0 * nf + g + d + 2.0) * y.cosh()
        + (nf + g) * (nf + g)
        + (nf + d) * (nf + d)
        + 2.0 * (2.0 * nf + g + d)
        + 1.5;
    Ok(bracket / (2.0 * sh * sh) + potential_asymptote(p))
}

/// V(y) → (1+γ+δ)²/4 as y → ∞.
pub fn potential_asymptote(p: &HahnParams) -> f64 {
    let s = 1.0 + p.gamma() + p.delta();
    s * s / 4.0
}

/// ε_m = −m(m+γ+δ+1); the negative of the differential operator's λ(m).
pub fn energy(m: i32, p: &HahnParams) -> f64 {
    -p.eigenvalue(m as i64)
}

/// Unnormalized ψ_m(y) (c_m = 1); negative m gives the formal nonpolynomial
/// branch. Requires y > 0 and m ≤ N.
pub fn eigenfunction_raw(m: i32, y: f64, p: &HahnParams) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::degenerate("eigenfunctions are evaluated on y > 0"));
    }
    let n = p.n() as i32;
    if m > n {
        return Err(Error::invalid(format!("m={m} exceeds N={n}")));
    }
    let g = p.gamma();
    let d = p.delta();
    let k = (n - m) as u32;
    let alpha = -d - p.n() as f64 - 1.0;
    let beta = -g - p.n() as f64 - 1.0;
    let numerator = jacobi_polynomial(k, alpha, beta, Complex64::new(-y.cosh(), 0.0)).re;
    let half = y / 2.0;
    let denominator = y.sinh().sqrt()
        * half.sinh().powf(g)
        * half.cosh().powf(d)
        * (half.cosh() / half.sinh()).powi(n)
        * (1.0 - y.cosh()).powi(n);
    Ok(numerator / denominator)
}

/// (full_line, half_line) square-integrability of ψ_m.
pub fn integrability_predicates(p: &HahnParams, m: i32) -> (bool, bool) {
    let g = p.gamma();
    let d = p.delta();
    let nf = p.n() as f64;
    let full = g + nf < 0.0 && 2.0 * m as f64 + g + d + 1.0 > 0.0;
    let half = g + nf < -0.5 && g + d + 1.0 > 0.0;
    (full, half)
}

/// Strict ordering ε_N < ε_{N−1} < … < ε_0 = 0; requires γ+δ+1 > 0.
pub fn spectrum_ordering_check(p: &HahnParams) -> Result<bool> {
    if !(p.gamma() + p.delta() + 1.0 > 0.0) {
        return Err(Error::invalid("ordering statement needs γ+δ+1 > 0"));
    }
    let energies: Vec<f64> = (0..=p.n() as i32).map(|m| energy(m, p)).collect();
    Ok(energies.windows(2).all(|w| w[1] < w[0]) && energies[0] == 0.0)
}

// ───────────────────────── problem with normalization ─────────────────────────

/// A parameter set with a domain and grid, carrying the L²-normalization
/// constants of its integrable levels.
#[derive(Clone, Debug)]
pub struct SchrodingerProblem {
    params: HahnParams,
    domain: SchrodingerDomain,
    grid: GridSpec,
    norm_constants: Vec<f64>,
}

/// Lower quadrature limit (the weight is singular at 0).
const ETA: f64 = 1e-6;
/// Hard ceiling for the tail search.
const Y_CEILING: f64 = 200.0;
/// Tail threshold, relative to the integrand's running peak.
const TAIL_THRESHOLD: f64 = 1e-12;
/// Per-panel absolute tolerance of the adaptive Simpson rule.
const SIMPSON_TOL: f64 = 1e-10;

impl SchrodingerProblem {
    pub fn new(params: HahnParams, domain: SchrodingerDomain, grid: GridSpec) -> Result<Self> {
        grid.validate()?;
        let mut norm_constants = Vec::with_capacity(params.n() as usize + 1);
        for m in 0..=params.n() as i32 {
            let integrable = match domain {
                SchrodingerDomain::FullLine => integrability_predicates(&params, m).0,
                SchrodingerDomain::HalfLine => integrability_predicates(&params, m).1,
            };
            if integrable {
                let y_cut = tail_cut(&params, m, m)?;
                let norm_sq = adaptive_simpson(
                    &|y| {
                        let v = eigenfunction_raw(m, y, &params).unwrap_or(0.0);
                        v * v
                    },
                    ETA,
                    y_cut,
                    SIMPSON_TOL,
                );
                if !(norm_sq > 0.0) || !norm_sq.is_finite() {
                    return Err(Error::solver(format!("norm of ψ_{m} not computable")));
                }
                norm_constants.push(1.0 / norm_sq.sqrt());
            } else {
                norm_constants.push(1.0);
            }
        }
        Ok(SchrodingerProblem {
            params,
            domain,
            grid,
            norm_constants,
        })
    }

    pub fn params(&self) -> &HahnParams {
        &self.params
    }

    pub fn domain(&self) -> SchrodingerDomain {
        self.domain
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// ψ_m(y) with c_m: unit L² norm over the quadrature domain when the
    /// domain's integrability predicate holds, c_m = 1 otherwise.
    pub fn eigenfunction(&self, m: i32, y: f64) -> Result<f64> {
        if m < 0 || m > self.params.n() as i32 {
            return Err(Error::invalid(format!("level m={m} outside 0..N")));
        }
        Ok(self.norm_constants[m as usize] * eigenfunction_raw(m, y, &self.params)?)
    }

    pub fn normalization(&self, m: i32) -> Option<f64> {
        self.norm_constants.get(m as usize).copied()
    }
}

/// |∫ψ_{m1}ψ_{m2} dy| / (‖ψ_{m1}‖·‖ψ_{m2}‖) over [η, Y], Y from the tail scan.
///
/// Both levels must satisfy the problem's integrability predicate and differ.
pub fn orthogonality_check(problem: &SchrodingerProblem, m1: i32, m2: i32) -> Result<f64> {
    if m1 == m2 {
        return Err(Error::invalid("orthogonality needs m1 ≠ m2"));
    }
    let p = problem.params();
    for m in [m1, m2] {
        let (full, half) = integrability_predicates(p, m);
        let ok = match problem.domain() {
            SchrodingerDomain::FullLine => full,
            SchrodingerDomain::HalfLine => half,
        };
        if !ok {
            return Err(Error::invalid(format!("ψ_{m} is not square-integrable here")));
        }
    }
    let y_cut = tail_cut(p, m1, m2)?;
    let cross = adaptive_simpson(
        &|y| {
            eigenfunction_raw(m1, y, p).unwrap_or(0.0) * eigenfunction_raw(m2, y, p).unwrap_or(0.0)
        },
        ETA,
        y_cut,
        SIMPSON_TOL,
    );
    let n1 = adaptive_simpson(
        &|y| {
            let v = eigenfunction_raw(m1, y, p).unwrap_or(0.0);
            v * v
        },
        ETA,
        y_cut,
        SIMPSON_TOL,
    );
    let n2 = adaptive_simpson(
        &|y| {
            let v = eigenfunction_raw(m2, y, p).unwrap_or(0.0);
            v * v
        },
        ETA,
        y_cut,
        SIMPSON_TOL,
    );
    if !(n1 > 0.0 && n2 > 0.0) {
        return Err(Error::QuadratureFailure("vanishing norm".into()));
    }
    Ok(cross.abs() / (n1 * n2).sqrt())
}

/// First Y where |ψ_{m1}ψ_{m2}| has dropped below 1e−12 of its running peak
/// and keeps decreasing; failure if that never happens by Y = 200.
fn tail_cut(p: &HahnParams, m1: i32, m2: i32) -> Result<f64> {
    let integrand = |y: f64| -> f64 {
        (eigenfunction_raw(m1, y, p).unwrap_or(f64::INFINITY)
            * eigenfunction_raw(m2, y, p).unwrap_or(f64::INFINITY))
        .abs()
    };
    let mut peak: f64 = 0.0;
    let mut y = 0.5;
    while y <= Y_CEILING {
        let v = integrand(y);
        if v.is_finite() {
            peak = peak.max(v);
        }
        if y >= 2.0 && v.is_finite() && v <= TAIL_THRESHOLD * peak.max(1e-300) {
            let ahead = integrand(y + 0.5);
            if ahead.is_finite() && ahead <= v {
                return Ok(y);
            }
        }
        y += 0.5;
    }
    Err(Error::QuadratureFailure(format!(
        "integrand tail not below {TAIL_THRESHOLD:.0e} of peak by Y = {Y_CEILING}"
    )))
}

/// Recursive adaptive Simpson with absolute per-panel tolerance.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

// ───────────────────────── finite-difference residual ─────────────────────────

/// Grid spacing of the residual stencil.
const FD_STEP: f64 = 1e-3;

/// Max over `ys` of |−ψ″ + Vψ − εψ| divided by the max magnitude of the
/// individual terms, with ψ″ from the 5-point second-difference stencil at
/// h and h/2, Richardson-extrapolated once.
pub fn schrodinger_residual(p: &HahnParams, m: i32, ys: &[f64]) -> Result<f64> {
    let eps = energy(m, p);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &y in ys {
        if y <= 2.0 * FD_STEP {
            return Err(Error::degenerate("grid point too close to the singularity"));
        }
        let psi = |t: f64| eigenfunction_raw(m, t, p);
        let stencil = |h: f64| -> Result<f64> {
            Ok(
                (-psi(y - 2.0 * h)? + 16.0 * psi(y - h)? - 30.0 * psi(y)? + 16.0 * psi(y + h)?
                    - psi(y + 2.0 * h)?)
                    / (12.0 * h * h),
            )
        };
        let second = (16.0 * stencil(FD_STEP / 2.0)? - stencil(FD_STEP)?) / 15.0;
        let v_psi = potential(y, p)? * psi(y)?;
        let e_psi = eps * psi(y)?;
        let r = -second + v_psi - e_psi;
        worst = worst.max(r.abs());
        scale = scale.max(second.abs()).max(v_psi.abs()).max(e_psi.abs());
    }
    if scale == 0.0 {
        return Ok(worst);
    }
    Ok(worst / scale)
}
