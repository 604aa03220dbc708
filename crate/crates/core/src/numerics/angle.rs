//! Recognition of arguments that are rational multiples of `π`.

use std::fmt;

use crate::error::{domain, Error, Result};

use super::complex::ComplexValue;
use super::config::PrecisionConfig;
use super::real::Real;

/// The argument `2πq/p` with `gcd(p, |q|) = 1` and `-p/2 < q ≤ p/2`.
///
/// `p` is the angular order `p*(z)` of any `z` with this argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    p: u64,
    q: i64,
}

impl RationalAngle {
    /// Reduces `q/p` to lowest terms and folds it into `(-1/2, 1/2]` turns.
    pub fn new(p: u64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("rational angle with p = 0".into()));
        }
        let g = gcd(p, q.unsigned_abs());
        let (p, mut q) = (p / g, q / g as i64);
        let pi = p as i64;
        q = q.rem_euclid(pi);
        if 2 * q > pi {
            q -= pi;
        }
        Ok(RationalAngle { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The argument `2πq/p` at precision `prec`.
    pub fn radians(&self, prec: usize) -> Real {
        Real::pi(prec) * Real::from_i64(2 * self.q, prec) / Real::from_i64(self.p as i64, prec)
    }

    pub fn divides(&self, other: &RationalAngle) -> bool {
        other.p.is_multiple_of(self.p)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// First continued-fraction convergent `h/k` of `t` with `k ≤ qmax` and
/// `|t − h/k| ≤ tol`, returned as `(h, k)`.
///
/// Convergents are tried in order of increasing denominator, so the result is
/// the simplest fraction the expansion reaches within tolerance.
pub fn best_rational(t: &Real, qmax: u64, tol: &Real) -> Option<(i64, u64)> {
    let prec = t.prec();
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut x = t.clone();
    for _ in 0..128 {
        let floor = x.floor();
        let a = floor.to_f64();
        if !a.is_finite() || a.abs() > 1e15 {
            return None;
        }
        let a = a as i128;
        (h_prev, h) = (h, a * h + h_prev);
        (k_prev, k) = (k, a * k + k_prev);
        if k > qmax as i128 {
            return None;
        }
        let approx = Real::from_i64(h as i64, prec) / Real::from_i64(k as i64, prec);
        if (t - &approx).abs() <= *tol {
            return Some((h as i64, k as u64));
        }
        let frac = &x - &floor;
        if frac.is_zero() {
            return None;
        }
        x = Real::one(prec) / frac;
    }
    None
}

/// Detects `Arg(z) ∈ ℚπ`, returning the reduced angle `2πq/p` when some
/// convergent of `Arg(z)/(2π)` with `p ≤ angle_qmax` lies within `angle_tol`.
///
/// `Ok(None)` means "not detected at this qmax and tolerance"; it is not a
/// proof that the argument is irrational.
pub fn rational_angle_of(z: &ComplexValue, cfg: &PrecisionConfig) -> Result<Option<RationalAngle>> {
    if z.abs() <= cfg.zero_tol_real() {
        return Err(domain("argument of zero is undefined"));
    }
    let prec = cfg.mantissa_bits().max(z.prec());
    let turns = z.principal_arg(cfg) / (Real::pi(prec) * Real::from_i64(2, prec));
    match best_rational(&turns, cfg.angle_qmax(), &cfg.angle_tol_real()) {
        Some((q, p)) => RationalAngle::new(p, q).map(Some),
        None => Ok(None),
    }
}
