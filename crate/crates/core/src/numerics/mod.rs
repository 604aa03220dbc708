//! High-precision complex kernels: principal square root, argument
//! recognition and the plane-vector predicates.

mod angle;
mod complex;
mod config;
mod real;

pub(crate) use angle::gcd;
pub use angle::{best_rational, rational_angle_of, RationalAngle};
pub use complex::ComplexValue;
pub use config::{PrecisionConfig, DEFAULT_ANGLE_QMAX, DEFAULT_MANTISSA_BITS, MAX_MANTISSA_BITS, MIN_MANTISSA_BITS};
pub use real::Real;

/// `√z = √|z|·e^(i·Arg(z)/2)` with `Arg ∈ (-π, π]`.
///
/// The result lies in the open right half-plane or on the non-negative
/// imaginary axis. A negative real `z` with a zero imaginary part of either
/// sign maps to the positive imaginary axis.
pub fn principal_sqrt(z: &ComplexValue) -> ComplexValue {
    let prec = z.prec();
    if z.is_zero() {
        return ComplexValue::zero(prec);
    }
    let two = Real::from_i64(2, prec);
    let r = z.abs();
    if !z.re.is_negative() {
        let s = ((&r + &z.re) / &two).sqrt();
        let im = &z.im / (&two * &s);
        ComplexValue::new(s, im)
    } else {
        let t = ((&r - &z.re) / &two).sqrt();
        let re = z.im.abs() / (&two * &t);
        let im = if z.im.is_negative() { -t } else { t };
        ComplexValue::new(re, im)
    }
}

/// [`principal_sqrt`] with the branch cut snapped: points within
/// `zero_tol·|re|` of the negative real axis are treated as lying on it, so
/// their root lands on the positive imaginary axis side.
pub fn principal_sqrt_snapped(z: &ComplexValue, cfg: &PrecisionConfig) -> ComplexValue {
    if z.on_negative_axis(cfg) {
        let flipped = ComplexValue::new(z.re.clone(), z.im.abs());
        return principal_sqrt(&flipped);
    }
    principal_sqrt(z)
}

fn relative_bound(a: &ComplexValue, b: &ComplexValue, cfg: &PrecisionConfig) -> Real {
    let prec = a.prec().max(b.prec());
    cfg.zero_tol_real() * (a.abs() * b.abs() + Real::one(prec))
}

/// `a ⊥ b` as plane vectors: `|Re(conj(a)·b)| ≤ zero_tol·(|a||b| + 1)`.
/// A zero operand is perpendicular to everything.
pub fn is_perpendicular(a: &ComplexValue, b: &ComplexValue, cfg: &PrecisionConfig) -> bool {
    let dot = &a.re * &b.re + &a.im * &b.im;
    dot.abs() <= relative_bound(a, b, cfg)
}

/// `a ∥ b` as plane vectors: `|Im(conj(a)·b)| ≤ zero_tol·(|a||b| + 1)`.
/// A zero operand is parallel to everything.
pub fn is_parallel(a: &ComplexValue, b: &ComplexValue, cfg: &PrecisionConfig) -> bool {
    let cross = &a.re * &b.im - &a.im * &b.re;
    cross.abs() <= relative_bound(a, b, cfg)
}
