//! Complex tridiagonal operators — the matrix form of a three-term recurrence.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise threshold (relative to the matrix scale) below which a matrix is
/// treated as real / symmetric for solver dispatch.
pub const REALITY_THRESHOLD: f64 = 1e-13;

/// A dim×dim matrix with nonzero entries only on the sub-, main and
/// superdiagonal.
///
/// `sub[i]` is the entry (i+1, i), `main[i]` is (i, i), `sup[i]` is (i, i+1);
/// a recurrence with a vanishing first lower coefficient stores its lower
/// diagonal starting from index 1, so that boundary zero never appears.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalOperator {
    main: Vec<Complex64>,
    sub: Vec<Complex64>,
    sup: Vec<Complex64>,
}

impl TridiagonalOperator {
    pub fn new(
        main: Vec<Complex64>,
        sub: Vec<Complex64>,
        sup: Vec<Complex64>,
    ) -> Result<Self> {
        let dim = main.len();
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if sub.len() + 1 != dim || sup.len() + 1 != dim {
            return Err(Error::LengthMismatch(sub.len() + 1, dim));
        }
        for v in main.iter().chain(&sub).chain(&sup) {
            if !v.is_finite() {
                return Err(Error::invalid("non-finite matrix entry"));
            }
        }
        Ok(TridiagonalOperator { main, sub, sup })
    }

    pub fn dim(&self) -> usize {
        self.main.len()
    }

    pub fn main(&self) -> &[Complex64] {
        &self.main
    }

    pub fn sub(&self) -> &[Complex64] {
        &self.sub
    }

    pub fn sup(&self) -> &[Complex64] {
        &self.sup
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if i == j {
            self.main[i]
        } else if j + 1 == i {
            self.sub[j]
        } else if i + 1 == j {
            self.sup[i]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Swap sub- and superdiagonal.
    pub fn transpose(&self) -> Self {
        TridiagonalOperator {
            main: self.main.clone(),
            sub: self.sup.clone(),
            sup: self.sub.clone(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.main.iter().sum()
    }

    /// Largest entry magnitude.
    pub fn scale(&self) -> f64 {
        self.main
            .iter()
            .chain(&self.sub)
            .chain(&self.sup)
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::LengthMismatch(v.len(), n));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = self.main[i] * v[i];
            if i > 0 {
                acc += self.sub[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.sup[i] * v[i + 1];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn is_real(&self) -> bool {
        let tol = REALITY_THRESHOLD * self.scale().max(1.0);
        self.main
            .iter()
            .chain(&self.sub)
            .chain(&self.sup)
            .all(|v| v.im.abs() <= tol)
    }

    pub fn is_real_symmetric(&self) -> bool {
        if !self.is_real() {
            return false;
        }
        let tol = REALITY_THRESHOLD * self.scale().max(1.0);
        self.sub
            .iter()
            .zip(&self.sup)
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// (main, off) as real arrays for the symmetric bisection path.
    pub fn real_symmetric_parts(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.main.iter().map(|v| v.re).collect(),
            self.sub.iter().map(|v| v.re).collect(),
        )
    }

    pub fn to_dense(&self) -> crate::dense::DenseMatrix {
        let n = self.dim();
        let mut m = crate::dense::DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.entry(i, j));
            }
        }
        m
    }
}
