//! Midband matrices of the Azbel-Hofstadter problem at rational flux.
//!
//! For odd N and S coprime to N, with q = e^{2πiS/N}:
//!
//! - `H` is the N×N real symmetric tridiagonal matrix with zero diagonal and
//!   off-diagonal entries −2 sin(2πS(n+1)/N) (from i(q^{n+1} − q^{−(n+1)}));
//! - `M` is the complex symmetric matrix with zero diagonal and off-diagonal
//!   entries 1 − q^{n+1}, whose spectrum is {2 sin(2πk/N)};
//! - the two are tied by H = (M − M*)/i, exact up to rounding.
//!
//! The N×N spectrum identity for M is verified with a double-double
//! determinant oracle: the matrix is so non-normal that f64 entries stop
//! determining its eigenvalues to 1e−9 beyond N ≈ 25, while the determinant
//! of the exactly-built double-double matrix pins each root to ~1e−15.
//! Butterfly sweeps go through H and the certified Sturm bisection path.

use num_complex::Complex64;
use std::io::Write;

use crate::eigensolver::{self, DdTridiagonal, SpectrumReport};
use crate::error::{Error, Result};
use crate::numerics::dd::DdComplex;
use crate::tridiagonal::TridiagonalOperator;

/// Rational flux 4πS/N per plaquette, N odd, gcd(S,N) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FluxSpec {
    n: u32,
    s: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

impl FluxSpec {
    pub fn new(n: u32, s: u32) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::invalid(format!("N={n} must be odd and positive")));
        }
        if s == 0 || s > n {
            return Err(Error::invalid(format!("S={s} out of range for N={n}")));
        }
        if gcd(s, n) != 1 {
            return Err(Error::invalid(format!("gcd(S={s}, N={n}) ≠ 1")));
        }
        if n > 1 && s == n {
            return Err(Error::invalid("S=N gives zero flux"));
        }
        Ok(FluxSpec { n, s })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// sin(2πS·j/N) with the angle reduced mod N.
    fn sin_frac(&self, j: i64) -> f64 {
        let r = (j * self.s as i64).rem_euclid(self.n as i64);
        (std::f64::consts::TAU * r as f64 / self.n as f64).sin()
    }

    /// q^j = e^{2πiS·j/N} with the angle reduced mod N.
    fn q_pow(&self, j: i64) -> Complex64 {
        let r = (j * self.s as i64).rem_euclid(self.n as i64);
        Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / self.n as f64)
    }
}

/// The real symmetric matrix H: zero diagonal,
/// super_n = sub_{n+1} = −2 sin(2πS(n+1)/N).
pub fn build_h(f: &FluxSpec) -> TridiagonalOperator {
    let n = f.n() as usize;
    let main = vec![Complex64::new(0.0, 0.0); n];
    let off: Vec<Complex64> = (1..n)
        .map(|j| Complex64::new(-2.0 * f.sin_frac(j as i64), 0.0))
        .collect();
    TridiagonalOperator::new(main, off.clone(), off).expect("valid by construction")
}

/// The complex symmetric matrix M: zero diagonal,
/// entries (n, n±1) with value 1 − q^{n or n+1} per the hat recurrence
/// (the a = iq^{1/2}, b = 0 point of the root-of-unity family).
pub fn build_m(f: &FluxSpec) -> TridiagonalOperator {
    let n = f.n() as usize;
    let one = Complex64::new(1.0, 0.0);
    let main = vec![Complex64::new(0.0, 0.0); n];
    let off: Vec<Complex64> = (1..n).map(|j| one - f.q_pow(j as i64)).collect();
    TridiagonalOperator::new(main, off.clone(), off).expect("valid by construction")
}

/// Max-entry magnitude of H − (M − M*)/i, M* the conjugate transpose.
/// The identity is exact; the return value is pure rounding (≤ 1e−13).
pub fn verify_h_identity(f: &FluxSpec) -> f64 {
    let h = build_h(f);
    let m = build_m(f);
    let n = f.n() as usize;
    let i_unit = Complex64::new(0.0, 1.0);
    let mut worst = 0.0f64;
    for row in 0..n {
        for col in row.saturating_sub(1)..(row + 2).min(n) {
            let lhs = h.entry(row, col);
            let rhs = (m.entry(row, col) - m.entry(col, row).conj()) / i_unit;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Closed-form spectrum of M: {2 sin(2πk/N), k = 0..N−1}.
pub fn m_spectrum_closed_form(f: &FluxSpec) -> Vec<f64> {
    let n = f.n();
    (0..n)
        .map(|k| 2.0 * (std::f64::consts::TAU * k as f64 / n as f64).sin())
        .collect()
}

/// Verify the spectrum of M against the sine set with the double-double
/// determinant oracle: Newton-refine det(M−λI) from each closed-form value;
/// N distinct refined roots of the degree-N characteristic polynomial
/// certify the multiset.
pub fn verify_m_spectrum(f: &FluxSpec, tol: f64) -> Result<SpectrumReport> {
    let n = f.n() as usize;
    let closed: Vec<Complex64> = m_spectrum_closed_form(f)
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();

    let one = DdComplex::ONE;
    let off: Vec<DdComplex> = (1..n)
        .map(|j| {
            let q_j = DdComplex::cis_two_pi_frac(j as i64 * f.s() as i64, f.n() as i64);
            one.sub(q_j)
        })
        .collect();
    let dd = DdTridiagonal {
        main: vec![DdComplex::ZERO; n],
        sub: off.clone(),
        sup: off,
    };
    let refined = eigensolver::refine_eigenvalues_dd(&dd, &closed);

    // Distinctness: the refinements must be N different roots.
    for i in 0..refined.len() {
        for j in i + 1..refined.len() {
            if (refined[i] - refined[j]).norm() <= 2.0 * tol {
                return Err(Error::solver(format!(
                    "refined roots {i} and {j} collide; multiset not certified"
                )));
            }
        }
    }

    let mut report = eigensolver::compare_spectra(&closed, &refined, tol)?;
    report.metadata.insert(
        "oracle".into(),
        serde_json::Value::String("double-double determinant Newton refinement".into()),
    );
    report
        .metadata
        .insert("flux_numerator".into(), serde_json::Value::from(f.s()));
    report
        .metadata
        .insert("flux_denominator".into(), serde_json::Value::from(f.n()));
    Ok(report)
}

// ───────────────────────── butterfly sweep ─────────────────────────

/// One (flux, eigenvalue) sample of the butterfly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ButterflyPoint {
    pub flux_numerator: u32,
    pub flux_denominator: u32,
    pub eigenvalue: f64,
}

impl ButterflyPoint {
    /// Flux coordinate 2S/N (= Φ/2π with Φ = 4πS/N).
    pub fn flux_value(&self) -> f64 {
        2.0 * self.flux_numerator as f64 / self.flux_denominator as f64
    }
}

/// Sweep outcome: all points plus any per-point solver failures (the sweep
/// continues past them).
#[derive(Clone, Debug, Default)]
pub struct ButterflySweep {
    pub points: Vec<ButterflyPoint>,
    pub failures: Vec<String>,
}

/// Spectra of H for every odd N ≤ n_max and every S coprime to N (S = 1 for
/// N = 1), eigenvalues by the real-symmetric bisection path, sorted by
/// (S/N, eigenvalue).
pub fn butterfly_sweep(n_max: u32) -> Result<ButterflySweep> {
    if n_max == 0 || n_max % 2 == 0 || n_max > 63 {
        return Err(Error::invalid(format!("N_max={n_max} must be odd and ≤ 63")));
    }
    let mut sweep = ButterflySweep::default();
    for n in (1..=n_max).step_by(2) {
        let s_values: Vec<u32> = if n == 1 {
            vec![1]
        } else {
            (1..n).filter(|s| gcd(*s, n) == 1).collect()
        };
        for s in s_values {
            let flux = FluxSpec::new(n, s)?;
            let h = build_h(&flux);
            match eigensolver::eigenvalues(&h) {
                Ok(ev) => {
                    for lam in ev {
                        debug_assert!(lam.re.abs() <= 4.0 + 1e-9, "spectral bound violated");
                        sweep.points.push(ButterflyPoint {
                            flux_numerator: s,
                            flux_denominator: n,
                            eigenvalue: lam.re,
                        });
                    }
                }
                Err(e) => sweep.failures.push(format!("N={n} S={s}: {e}")),
            }
        }
    }
    sweep.points.sort_by(|a, b| {
        let lhs = a.flux_numerator as u64 * b.flux_denominator as u64;
        let rhs = b.flux_numerator as u64 * a.flux_denominator as u64;
        lhs.cmp(&rhs).then(a.eigenvalue.total_cmp(&b.eigenvalue))
    });
    Ok(sweep)
}

/// CSV emission: exact header, one row per eigenvalue, 17 significant digits,
/// LF line endings.
pub fn write_butterfly_csv<W: Write>(points: &[ButterflyPoint], out: &mut W) -> std::io::Result<()> {
    out.write_all(b"flux_numerator,flux_denominator,flux_value,eigenvalue\n")?;
    for p in points {
        writeln!(
            out,
            "{},{},{:.16e},{:.16e}",
            p.flux_numerator,
            p.flux_denominator,
            p.flux_value(),
            p.eigenvalue
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flux_spec_validation() {
        assert!(FluxSpec::new(4, 1).is_err());
        assert!(FluxSpec::new(9, 3).is_err());
        assert!(FluxSpec::new(9, 2).is_ok());
        assert!(FluxSpec::new(1, 1).is_ok());
    }

    #[test]
    fn h_matrix_n3_hand_values() {
        let f = FluxSpec::new(3, 1).unwrap();
        let h = build_h(&f);
        let s3 = 3f64.sqrt();
        assert!((h.entry(0, 1).re + s3).abs() < 1e-14);
        assert!((h.entry(1, 2).re - s3).abs() < 1e-14);
        assert_eq!(h.trace(), Complex64::new(0.0, 0.0));
        assert!(h.is_real_symmetric());
    }

    #[test]
    fn m_matrix_band_edges_close() {
        let f = FluxSpec::new(9, 2).unwrap();
        // The conceptual entries 1−q^0 (bottom) and 1−q^N (top) are exact
        // zeros and live outside the stored band.
        assert_eq!(f.q_pow(0), Complex64::new(1.0, 0.0));
        assert_eq!(f.q_pow(9), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn identity_is_exact_to_rounding() {
        for (n, s) in [(3u32, 1u32), (9, 2), (15, 4), (63, 20)] {
            let f = FluxSpec::new(n, s).unwrap();
            let dev = verify_h_identity(&f);
            assert!(dev <= 1e-13, "N={n} S={s}: {dev:.3e}");
        }
    }

    #[test]
    fn m_spectrum_small_n_via_generic_oracle() {
        let f = FluxSpec::new(9, 2).unwrap();
        let m = build_m(&f);
        let oracle = eigensolver::eigenvalues(&m).unwrap();
        let closed: Vec<Complex64> = m_spectrum_closed_form(&f)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
        let rep = eigensolver::compare_spectra(&closed, &oracle, 3e-9).unwrap();
        assert!(rep.passed, "pairing {}", rep.max_residual);
    }

    #[test]
    fn m_spectrum_large_n_via_dd_oracle() {
        let f = FluxSpec::new(63, 1).unwrap();
        let rep = verify_m_spectrum(&f, 1e-9 * 3.0).unwrap();
        assert!(rep.passed, "pairing {}", rep.max_residual);
    }

    #[test]
    fn h_spectrum_n3() {
        // det(H−λ) = −λ(λ²−6) for N=3, S=1: the H spectrum is {0, ±√6}
        // (distinct from the sine spectrum, which belongs to M).
        let f = FluxSpec::new(3, 1).unwrap();
        let ev = eigensolver::eigenvalues(&build_h(&f)).unwrap();
        let s6 = 6f64.sqrt();
        let want = [-s6, 0.0, s6];
        for (e, w) in ev.iter().zip(want) {
            assert!((e.re - w).abs() < 1e-12 && e.im == 0.0, "{e} vs {w}");
        }
    }

    #[test]
    fn spectrum_symmetric_under_flux_reflection() {
        let n = 15;
        for s in [1u32, 2, 4] {
            let ev1 = eigensolver::eigenvalues(&build_h(&FluxSpec::new(n, s).unwrap())).unwrap();
            let ev2 =
                eigensolver::eigenvalues(&build_h(&FluxSpec::new(n, n - s).unwrap())).unwrap();
            let rep = eigensolver::compare_spectra(&ev1, &ev2, 1e-10).unwrap();
            assert!(rep.passed, "S={s}: {}", rep.max_residual);
        }
    }

    #[test]
    fn butterfly_small_counts_and_format() {
        let sweep = butterfly_sweep(3).unwrap();
        assert!(sweep.failures.is_empty());
        // N=1 → 1 point; N=3, S∈{1,2} → 6 points.
        assert_eq!(sweep.points.len(), 7);
        let mut csv = Vec::new();
        write_butterfly_csv(&sweep.points, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "flux_numerator,flux_denominator,flux_value,eigenvalue"
        );
        assert_eq!(lines.count(), 7);
        assert!(!text.contains('\r'));
        // Sorted by flux then eigenvalue.
        let fluxes: Vec<f64> = sweep.points.iter().map(|p| p.flux_value()).collect();
        assert!(fluxes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn butterfly_eigenvalues_within_bound() {
        let sweep = butterfly_sweep(15).unwrap();
        assert!(sweep
            .points
            .iter()
            .all(|p| p.eigenvalue.abs() <= 4.0 + 1e-12));
    }

    #[test]
    fn butterfly_rejects_bad_sweep_bounds() {
        assert!(butterfly_sweep(0).is_err());
        assert!(butterfly_sweep(4).is_err());
        assert!(butterfly_sweep(65).is_err());
    }
}
