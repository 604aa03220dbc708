//! Arbitrary-precision real scalar.
//!
//! [`Real`] wraps an `astro_float::BigFloat` and remembers the working
//! precision it was created at. Binary operations run at the larger of the
//! two operand precisions and round to nearest-even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(value: BigFloat, prec: usize) -> Self {
        Real { value, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::wrap(BigFloat::from_u8(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::wrap(BigFloat::from_u8(1, prec), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_i64(n, prec), prec)
    }

    /// `num / den` rounded once at `prec`.
    pub fn from_ratio(num: i64, den: i64, prec: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain(format!("rational {num}/{den} has zero denominator")));
        }
        Ok(Self::from_i64(num, prec) / Self::from_i64(den, prec))
    }

    pub fn pi(prec: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec, RM)), prec)
    }

    /// Parses a decimal literal (`"-1.25"`, `"3e-4"`) or an integer ratio
    /// (`"-2/3"`).
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse { what: "real number", input: s.to_string() };
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return Self::from_ratio(num, den, prec).map_err(|_| bad());
        }
        if s.is_empty() {
            return Err(bad());
        }
        let value = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        if value.is_nan() || value.is_inf() {
            return Err(bad());
        }
        Ok(Self::wrap(value, prec))
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Re-rounds to a new working precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        let mut value = self.value.clone();
        if !value.is_zero() {
            // set_precision only fails for an invalid precision argument.
            let _ = value.set_precision(prec, RM);
        }
        Self::wrap(value, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    /// True for strictly negative values; `-0` counts as non-negative.
    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec);
        }
        Self::wrap(self.value.sqrt(self.prec, RM), self.prec)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.sin(self.prec, RM, cc)), self.prec)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.cos(self.prec, RM, cc)), self.prec)
    }

    pub fn tan(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.tan(self.prec, RM, cc)), self.prec)
    }

    pub fn atan(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.atan(self.prec, RM, cc)), self.prec)
    }

    /// Four-quadrant arctangent in `(-π, π]`. A zero `y` with negative `x`
    /// yields `π` regardless of the sign of zero.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec.max(x.prec);
        if y.is_zero() && x.is_zero() {
            return Real::zero(prec);
        }
        let pi = Real::pi(prec);
        if y.abs() <= x.abs() {
            let t = (y / x).atan();
            if x.is_positive() {
                t
            } else if y.is_negative() {
                t - pi
            } else {
                t + pi
            }
        } else {
            let half_pi = &pi / &Real::from_i64(2, prec);
            let t = (x / y).atan();
            if y.is_positive() {
                half_pi - t
            } else {
                -half_pi - t
            }
        }
    }

    pub fn hypot(a: &Real, b: &Real) -> Real {
        (a * a + b * b).sqrt()
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.value.floor(), self.prec)
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Real::one(self.prec);
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

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64` (truncated to the two leading mantissa words).
    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let Some((words, _, sign, exp, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let n = words.len();
        if n == 0 {
            return 0.0;
        }
        let two64 = 2f64.powi(64);
        let mut mant = words[n - 1] as f64 / two64;
        if n >= 2 {
            mant += words[n - 2] as f64 / two64 / two64;
        }
        let mag = mant * 2f64.powi(exp);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Scientific notation with exactly `digits` digits after the point,
    /// rounded half-up on the decimal expansion.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return format!("{}e+0", fixed_mantissa("0", digits));
        }
        if !self.is_finite() {
            return "NaN".to_string();
        }
        let raw = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string());
        let (negative, body) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw.as_str()),
        };
        let (mant, exp) = body.split_once('e').unwrap_or((body, "0"));
        let mut exp: i64 = exp.parse().unwrap_or(0);
        let mut ds: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        let want = digits + 1;
        if ds.len() > want {
            let round_up = ds[want] >= 5;
            ds.truncate(want);
            if round_up {
                let mut i = want;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(want);
                        exp += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        ds.resize(want, 0);
        let digits_str: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
        let sign = if negative { "-" } else { "" };
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{}e{esign}{}", fixed_mantissa(&digits_str, digits), exp.abs())
    }
}

fn fixed_mantissa(ds: &str, digits: usize) -> String {
    let mut it = ds.chars();
    let lead = it.next().unwrap_or('0');
    let rest: String = it.chain(std::iter::repeat('0')).take(digits).collect();
    if digits == 0 {
        lead.to_string()
    } else {
        format!("{lead}.{rest}")
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_sci_string(digits.max(1)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.value.partial_cmp(&other.value) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'b Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(BigFloat::$method(&self.value, &rhs.value, prec, RM), prec)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -3.5, 0.75, 1e-30, 6.02e23, 0.0, -2.0f64.powi(-70)] {
            assert_eq!(Real::from_f64(x, 128).to_f64(), x);
        }
    }

    #[test]
    fn parse_forms() {
        let third = Real::parse("1/3", 128).unwrap();
        let back = &third * &Real::from_i64(3, 128);
        assert!((back - Real::one(128)).abs().to_f64() < 1e-37);
        assert_eq!(Real::parse("-0.25", 128).unwrap().to_f64(), -0.25);
        assert!(Real::parse("abc", 128).is_err());
        assert!(Real::parse("1/0", 128).is_err());
        assert!(Real::parse("", 128).is_err());
    }

    #[test]
    fn atan2_quadrants() {
        let p = 128;
        let r = |x: f64| Real::from_f64(x, p);
        let cases = [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (0.0, -1.0), (3.0, 0.5), (-0.2, -7.0)];
        for (y, x) in cases {
            let got = Real::atan2(&r(y), &r(x)).to_f64();
            let want = f64::atan2(y, x);
            assert!((got - want).abs() < 1e-15, "atan2({y},{x}) = {got}, want {want}");
        }
        let negzero = -Real::zero(p);
        assert!((Real::atan2(&negzero, &r(-1.0)).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sci_string_rounding() {
        let p = 128;
        assert_eq!(Real::from_f64(1.0, p).to_sci_string(3), "1.000e+0");
        assert_eq!(Real::from_f64(-0.75, p).to_sci_string(2), "-7.50e-1");
        assert_eq!(Real::from_f64(9.9996, p).to_sci_string(3), "1.000e+1");
        assert_eq!(Real::zero(p).to_sci_string(2), "0.00e+0");
        assert_eq!(Real::parse("1/3", p).unwrap().to_sci_string(5), "3.33333e-1");
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Real::parse("1.01", 128).unwrap();
        let mut acc = Real::one(128);
        for _ in 0..37 {
            acc = &acc * &x;
        }
        let rel = ((x.powi(37) - &acc) / acc).abs().to_f64();
        assert!(rel < 1e-36);
    }
}
