//! The criterion for real coefficients at a real point, and the `tan(rθ)`
//! identity.

use crate::error::{precondition, Result};
use crate::numerics::{ComplexValue, Real};
use crate::polyseq::{negligible, real_theta, ClosedFormParts, PointValues, SequenceSpec};

use super::{decide, Checks, Classification, CommonZeroCertificate, Rejection, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealCase {
    /// `Δ(c) > 0` and `A(c) = 0`: zeros at the odd indices.
    DeltaPositiveAZero,
    /// `Δ(c) < 0`: the angle `θ` decides.
    DeltaNegativeAngular,
}

/// A periodic certificate at a real point together with its real angle.
#[derive(Clone, Debug)]
pub struct RealCertificate {
    /// `θ ∈ (0, π)` with `tan θ = √(−Δ)/A`, or `π/2` when `A(c) = 0`.
    pub theta: Real,
    pub case: RealCase,
    pub certificate: CommonZeroCertificate,
}

impl RealCertificate {
    /// Attaches `θ` and the case to a periodic verdict at a real point.
    /// Returns `Ok(None)` for any other verdict.
    pub fn from_classification(spec: &SequenceSpec, cls: &Classification) -> Result<Option<Self>> {
        let Some(cert) = cls.certificate() else {
            return Ok(None);
        };
        let c = real_point(spec, &cls.point)?;
        let vals = spec.values_at(&c);
        let delta = vals.delta().re;
        let prec = spec.prec();
        let (theta, case) = if delta.is_positive() {
            (Real::pi(prec) / Real::from_i64(2, prec), RealCase::DeltaPositiveAZero)
        } else {
            (real_theta(&vals.a.re, &delta)?, RealCase::DeltaNegativeAngular)
        };
        Ok(Some(RealCertificate { theta, case, certificate: cert.clone() }))
    }
}

/// Validates real data and returns `c` with its imaginary part dropped.
fn real_point(spec: &SequenceSpec, c: &ComplexValue) -> Result<ComplexValue> {
    if !spec.has_real_coefficients() {
        return Err(precondition("A, B and W1 must have real coefficients"));
    }
    if c.im.abs() > spec.cfg().zero_tol_real() {
        return Err(precondition("the point c must be real"));
    }
    Ok(ComplexValue::from_real(c.re.with_prec(spec.prec())))
}

/// Real-data decision at a real point.
///
/// `Δ(c) > 0` can only give a common zero when `A(c) = 0`, and then the
/// zeros are the odd indices provided `W₁(c) = 0` as well. For `Δ(c) < 0`
/// the first two conditions of the complex criterion hold automatically
/// and only the angle test runs.
pub fn classify_real_point(spec: &SequenceSpec, c: &ComplexValue) -> Result<Classification> {
    let cfg = spec.cfg();
    let c = real_point(spec, c)?;
    let vals = spec.values_at(&c);
    if negligible(&vals.b, &vals.b_scale, cfg) {
        return Err(precondition("B(c) must not vanish"));
    }
    let verdict = real_verdict(spec, &c, &vals);
    Ok(Classification { point: c, verdict, qmax: cfg.angle_qmax() })
}

fn real_verdict(spec: &SequenceSpec, c: &ComplexValue, vals: &PointValues) -> Verdict {
    let cfg = spec.cfg();
    let parts = ClosedFormParts::from_values(vals, cfg);
    if vals.delta_vanishes(&parts.delta, cfg) {
        return Verdict::NotCommonZero(Rejection::DeltaVanishes);
    }
    if parts.delta.re.is_positive() {
        if !negligible(&vals.a, &vals.a_scale, cfg) {
            return Verdict::NotCommonZero(Rejection::ConditionI);
        }
        // v = −1 here, so the general builder yields p = 2, r = 1 exactly
        // when u = −1, i.e. when W₁(c) = 0.
        return decide(spec, c, vals, Checks::Complex);
    }
    decide(spec, c, vals, Checks::RealNegativeDelta)
}

/// `|tan(rθ) − √(−Δ(c))/(A(c) − 2W₁(c))|` at a real point.
pub fn tan_r_theta_check(spec: &SequenceSpec, c: &ComplexValue, cert: &CommonZeroCertificate) -> Result<f64> {
    let cfg = spec.cfg();
    let prec = spec.prec();
    let c = real_point(spec, c)?;
    let vals = spec.values_at(&c);
    if negligible(&vals.a, &vals.a_scale, cfg) {
        return Err(precondition("A(c) must not vanish"));
    }
    if negligible(&vals.b, &vals.b_scale, cfg) {
        return Err(precondition("B(c) must not vanish"));
    }
    let two = Real::from_i64(2, prec);
    let gap = &vals.a.re - &vals.w1.re * &two;
    let gap_scale = &vals.a_scale + &vals.w1_scale * &two;
    if gap.abs() <= cfg.zero_tol_real() * gap_scale {
        return Err(precondition("A(c) − 2W1(c) must not vanish"));
    }
    let delta = vals.delta().re;
    if delta >= -cfg.zero_tol_real() {
        return Err(precondition("Δ(c) must be negative"));
    }
    let theta = real_theta(&vals.a.re, &delta)?;
    let lhs = (Real::from_i64(cert.r as i64, prec) * theta).tan();
    let rhs = (-delta).sqrt() / gap;
    Ok((lhs - rhs).abs().to_f64())
}
