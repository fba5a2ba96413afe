//! Compensated double-double arithmetic (~31 significant digits).
//!
//! Used only as oracle machinery: the midband flux matrices are so non-normal
//! that their eigenvalues are not determined by f64 entries beyond N ≈ 25
//! (entry rounding of 1e−16 moves eigenvalues by order one at N = 63), so the
//! spectrum identity there is refined against a determinant evaluated in
//! double-double precision. Entries are built from exact rational angles via
//! the sin/cos routines below.
//!
//! Plain named methods instead of operator traits: the type is internal and
//! call sites stay explicit about every rounding-sensitive step.
#![allow(clippy::should_implement_trait)]

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// π split across two doubles.
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul(Dd::from_f64(q1)));
        let q2 = r.hi / rhs.hi;
        let r2 = r.sub(rhs.mul(Dd::from_f64(q2)));
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// Exact scaling by a power of two.
    pub fn scale_pow2(self, f: f64) -> Dd {
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn abs_f64(self) -> f64 {
        self.hi.abs()
    }

    /// sin and cos of a small argument |x| ≲ π/4 by Taylor series.
    fn sin_cos_taylor(x: Dd) -> (Dd, Dd) {
        let x2 = x.mul(x);
        // sin
        let mut term = x;
        let mut sin = x;
        let mut k = 1.0f64;
        for _ in 0..24 {
            term = term.mul(x2).div(Dd::from_f64((k + 1.0) * (k + 2.0))).neg();
            sin = sin.add(term);
            if term.abs_f64() < 1e-35 {
                break;
            }
            k += 2.0;
        }
        // cos
        let mut term = Dd::ONE;
        let mut cos = Dd::ONE;
        let mut k = 0.0f64;
        for _ in 0..24 {
            term = term.mul(x2).div(Dd::from_f64((k + 1.0) * (k + 2.0))).neg();
            cos = cos.add(term);
            if term.abs_f64() < 1e-35 {
                break;
            }
            k += 2.0;
        }
        (sin, cos)
    }

    /// (sin, cos) of 2π·num/den with the angle reduced exactly in integers.
    pub fn sin_cos_two_pi_frac(num: i64, den: i64) -> (Dd, Dd) {
        assert!(den > 0);
        let r = num.rem_euclid(den);
        // x = 2π r/den, then fold by quarter turns: x = k·(π/2) + u.
        let frac = Dd::from_f64(r as f64).div(Dd::from_f64(den as f64));
        let x = Dd::PI.scale_pow2(2.0).mul(frac);
        let half_pi = Dd::PI.scale_pow2(0.5);
        let k = (x.to_f64() / half_pi.to_f64()).round();
        let u = x.sub(half_pi.mul(Dd::from_f64(k)));
        let (s, c) = Dd::sin_cos_taylor(u);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        }
    }
}

/// Complex double-double scalar.
#[derive(Clone, Copy, Debug, Default)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> Self {
        DdComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        DdComplex {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn to_complex64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, rhs: Self) -> Self {
        DdComplex::new(self.re.add(rhs.re), self.im.add(rhs.im))
    }

    pub fn sub(self, rhs: Self) -> Self {
        DdComplex::new(self.re.sub(rhs.re), self.im.sub(rhs.im))
    }

    pub fn neg(self) -> Self {
        DdComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(self, rhs: Self) -> Self {
        DdComplex::new(
            self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        )
    }

    pub fn div(self, rhs: Self) -> Self {
        let den = rhs.re.mul(rhs.re).add(rhs.im.mul(rhs.im));
        let num = self.mul(DdComplex::new(rhs.re, rhs.im.neg()));
        DdComplex::new(num.re.div(den), num.im.div(den))
    }

    pub fn scale_pow2(self, f: f64) -> Self {
        DdComplex::new(self.re.scale_pow2(f), self.im.scale_pow2(f))
    }

    pub fn abs_f64(self) -> f64 {
        self.to_complex64().norm()
    }

    /// e^{2πi·num/den} with exact integer angle reduction.
    pub fn cis_two_pi_frac(num: i64, den: i64) -> Self {
        let (s, c) = Dd::sin_cos_two_pi_frac(num, den);
        DdComplex::new(c, s)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, k: i32) -> Self {
        if k < 0 {
            return DdComplex::ONE.div(self.powi(-k));
        }
        let mut base = self;
        let mut exp = k as u32;
        let mut acc = DdComplex::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }
}
