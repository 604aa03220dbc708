use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::config::PrecisionConfig;
use super::real::Real;

/// A complex number with both parts held at working precision.
#[derive(Clone, PartialEq)]
pub struct ComplexValue {
    pub re: Real,
    pub im: Real,
}

impl ComplexValue {
    pub fn new(re: Real, im: Real) -> Self {
        ComplexValue { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::new(Real::one(prec), Real::zero(prec))
    }

    pub fn i(prec: usize) -> Self {
        Self::new(Real::zero(prec), Real::one(prec))
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Self::new(re, Real::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self::new(Real::from_f64(re, prec), Real::from_f64(im, prec))
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Self::from_f64(z.re, z.im, prec)
    }

    pub fn from_polar(r: &Real, theta: &Real) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    /// `e^(iπ·q/p)`. Multiples of `π/2` are produced exactly.
    pub fn cis_pi(q: i64, p: u64, prec: usize) -> Self {
        assert!(p > 0, "cis_pi: zero denominator");
        let p = p as i64;
        // Reduce 2q/p; when it is an integer the point is one of ±1, ±i.
        if (2 * q) % p == 0 {
            let quarter = ((2 * q / p) % 4 + 4) % 4;
            let (re, im) = match quarter {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return Self::new(Real::from_i64(re, prec), Real::from_i64(im, prec));
        }
        let theta = Real::pi(prec) * Real::from_i64(q, prec) / Real::from_i64(p, prec);
        Self::new(theta.cos(), theta.sin())
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        Self::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Modulus `|z|`.
    pub fn abs(&self) -> Real {
        Real::hypot(&self.re, &self.im)
    }

    pub fn dist(&self, other: &ComplexValue) -> Real {
        (self - other).abs()
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, k: &Real) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Self::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexValue::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Raw `atan2(im, re)` in `(-π, π]`; `0` for the origin.
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Principal argument in `(-π, π]`, with points whose imaginary part is
    /// within `zero_tol·|re|` of the negative real axis snapped to `π`.
    pub fn principal_arg(&self, cfg: &PrecisionConfig) -> Real {
        if self.on_negative_axis(cfg) {
            return Real::pi(self.prec());
        }
        self.arg()
    }

    pub(crate) fn on_negative_axis(&self, cfg: &PrecisionConfig) -> bool {
        self.re.is_negative() && self.im.abs() <= cfg.zero_tol_real() * self.re.abs()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} {:+?}i)", self.re, self.im)
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

macro_rules! complex_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b ComplexValue> for &'a ComplexValue {
            type Output = ComplexValue;
            fn $method(self, rhs: &'b ComplexValue) -> ComplexValue {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<ComplexValue> for ComplexValue {
            type Output = ComplexValue;
            fn $method(self, rhs: ComplexValue) -> ComplexValue {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a ComplexValue> for ComplexValue {
            type Output = ComplexValue;
            fn $method(self, rhs: &'a ComplexValue) -> ComplexValue {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<ComplexValue> for &'a ComplexValue {
            type Output = ComplexValue;
            fn $method(self, rhs: ComplexValue) -> ComplexValue {
                self.$method(&rhs)
            }
        }
    };
}

complex_binop!(Add, add, |a, b| ComplexValue::new(&a.re + &b.re, &a.im + &b.im));
complex_binop!(Sub, sub, |a, b| ComplexValue::new(&a.re - &b.re, &a.im - &b.im));
complex_binop!(Mul, mul, |a, b| ComplexValue::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re));
complex_binop!(Div, div, |a, b| {
    let d = b.norm_sqr();
    ComplexValue::new((&a.re * &b.re + &a.im * &b.im) / &d, (&a.im * &b.re - &a.re * &b.im) / &d)
});

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue::new(-self.re, -self.im)
    }
}

impl Neg for &ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cis_pi_exact_quarters() {
        let p = 128;
        assert_eq!(ComplexValue::cis_pi(1, 2, p), ComplexValue::i(p));
        assert_eq!(ComplexValue::cis_pi(-1, 1, p), -ComplexValue::one(p));
        assert_eq!(ComplexValue::cis_pi(3, 2, p), -ComplexValue::i(p));
        assert_eq!(ComplexValue::cis_pi(4, 2, p), ComplexValue::one(p));
    }

    #[test]
    fn division_inverts_multiplication() {
        let p = 128;
        let a = ComplexValue::from_f64(0.3, -1.7, p);
        let b = ComplexValue::from_f64(-2.5, 0.25, p);
        let back = &(&a * &b) / &b;
        assert!(back.dist(&a).to_f64() < 1e-37);
        assert!((&b * &b.recip()).dist(&ComplexValue::one(p)).to_f64() < 1e-37);
    }

    #[test]
    fn snapped_arg_on_cut() {
        let cfg = PrecisionConfig::default();
        let z = ComplexValue::from_f64(-2.0, -1e-30, 128);
        assert!((z.arg().to_f64() + std::f64::consts::PI).abs() < 1e-12);
        assert!((z.principal_arg(&cfg).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }
}
