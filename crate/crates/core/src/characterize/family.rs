//! Linear `A(z) = az + b` with `W₁(z) = z`: the closed-form zero location and
//! a generator for the constant-`B` family with residue 2.

use crate::error::{domain, Result};
use crate::numerics::{best_rational, ComplexValue, PrecisionConfig, Real};
use crate::polyseq::{Polynomial, SequenceSpec};

/// `c = b(tan θ − tan rθ) / ((a−2) tan rθ − a tan θ)`.
///
/// Evaluated as `b·sin((1−r)θ) / ((a−2) sin rθ cos θ − a sin θ cos rθ)`,
/// which is the same ratio with both sides multiplied by `cos θ cos rθ` and
/// stays finite when either tangent is infinite.
pub fn linear_a_zero_formula(a: &Real, b: &Real, theta: &Real, r: u64) -> Result<Real> {
    let prec = a.prec().max(b.prec()).max(theta.prec());
    let tol = Real::from_f64(2f64.powi(-(prec as i32) / 2), prec);
    if b.is_zero() {
        return Err(domain("b must be nonzero"));
    }
    if !theta.is_positive() || *theta >= Real::pi(prec) {
        return Err(domain("θ must lie in (0, π)"));
    }
    let r_theta = Real::from_i64(r as i64, prec) * theta;
    let two = Real::from_i64(2, prec);
    let (s, co) = (theta.sin(), theta.cos());
    let (sr, cr) = (r_theta.sin(), r_theta.cos());
    let den = (a - &two) * &sr * &co - a * &s * &cr;
    let scale = (a - &two).abs() + a.abs();
    if den.abs() <= tol * scale {
        return Err(domain("denominator (a−2)·tan(rθ) − a·tan(θ) vanishes"));
    }
    let num = b * (theta - &r_theta).sin();
    Ok(num / den)
}

/// The constant-`B` family member and its predicted common zero.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub spec: SequenceSpec,
    /// `b / (4cos²θ − a)`.
    pub point: ComplexValue,
    /// Denominator of `θ/π` in lowest terms, when it is recognised.
    pub period: Option<u64>,
    pub residue: u64,
}

/// `W₁ = z`, `A = az + b`, `B = −4b²cos²θ/(4cos²θ − a)²`.
pub fn make_family_spec(theta: &Real, a: &Real, b: &Real, cfg: &PrecisionConfig) -> Result<FamilySpec> {
    let prec = cfg.mantissa_bits();
    let (theta, a, b) = (theta.with_prec(prec), a.with_prec(prec), b.with_prec(prec));
    let half_pi = Real::pi(prec) / Real::from_i64(2, prec);
    if !theta.is_positive() || theta >= half_pi {
        return Err(domain("θ must lie in (0, π/2)"));
    }
    if b.is_zero() {
        return Err(domain("b must be nonzero"));
    }
    let four = Real::from_i64(4, prec);
    let cos = theta.cos();
    let k = &four * &cos * &cos;
    let gap = &k - &a;
    if gap.abs() <= cfg.zero_tol_real() * (a.abs() + &four) {
        return Err(domain("a must differ from 4cos²θ"));
    }
    let b_const = -(&k * &b * &b) / (&gap * &gap);
    let spec = SequenceSpec::new(
        Polynomial::new(vec![ComplexValue::from_real(b.clone()), ComplexValue::from_real(a)]),
        Polynomial::constant(ComplexValue::from_real(b_const)),
        Polynomial::z(prec),
        *cfg,
    )?;
    let turns = &theta / Real::pi(prec);
    let period =
        best_rational(&turns, cfg.angle_qmax(), &cfg.angle_tol_real()).filter(|&(q, _)| q != 0).map(|(_, p)| p);
    Ok(FamilySpec { spec, point: ComplexValue::from_real(b / gap), period, residue: 2 })
}
