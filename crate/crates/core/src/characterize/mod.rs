//! Pointwise decision: is `c` a common zero, and if so with which period and
//! residue?
//!
//! With `B(c) ≠ 0` and `Δ(c) ≠ 0` the sequence at `c` is governed by the two
//! ratios
//!
//! ```text
//! u = (2W₁ − A − √Δ) / (2W₁ − A + √Δ),   v = (A + √Δ) / (A − √Δ)
//! ```
//!
//! and `W_n(c) = 0` exactly when `v^n = u`. A common zero needs both on the
//! unit circle with `v` a root of unity of order `p` and `u = v^r`; the zeros
//! are then the indices `n ≡ r (mod p)`.

mod family;
mod real;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Result};
use crate::numerics::{gcd, is_parallel, rational_angle_of, ComplexValue, PrecisionConfig, RationalAngle, Real};
use crate::polyseq::{negligible, ClosedFormParts, PointValues, SequenceSpec};

pub use family::{linear_a_zero_formula, make_family_spec, FamilySpec};
pub use real::{classify_real_point, tan_r_theta_check, RealCase, RealCertificate};

/// `u = g⁻/g⁺` and `v = (A+√Δ)/(A−√Δ)` at one point.
#[derive(Clone, Debug)]
pub struct UVPair {
    pub u: ComplexValue,
    pub v: ComplexValue,
}

/// Everything needed to re-check a periodic common zero independently.
#[derive(Clone, Debug)]
pub struct CommonZeroCertificate {
    pub point: ComplexValue,
    pub delta: ComplexValue,
    pub uv: UVPair,
    /// The `x` with `A(c)² = x·B(c)`.
    pub x_ratio: ComplexValue,
    pub angle_v: RationalAngle,
    pub angle_u: RationalAngle,
    pub p: u64,
    pub r: u64,
    pub residuals: BTreeMap<String, f64>,
}

impl CommonZeroCertificate {
    /// `W_n(c) = 0 ⟺ n ≡ r (mod p)`.
    pub fn residue_class(&self, n: u64) -> bool {
        n % self.p == self.r
    }

    /// Indices `1 ≤ n ≤ nmax` in the residue class.
    pub fn zero_indices(&self, nmax: u64) -> Vec<u64> {
        (self.r..=nmax).step_by(self.p as usize).collect()
    }
}

/// Free-function form of [`CommonZeroCertificate::residue_class`].
pub fn residue_class(cert: &CommonZeroCertificate, n: u64) -> bool {
    cert.residue_class(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ratio {
    U,
    V,
}

/// Why a point is not (certified as) a common zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `B(c) = 0` but `A(c)·W₁(c) ≠ 0`: `W_n(c) = A^(n−1)W₁` never vanishes.
    DegenerateNonvanishing,
    /// `Δ(c) = 0` rules out common zeros.
    DeltaVanishes,
    /// `A² = x·B` with `x` outside `(−4, 0]`.
    ConditionI,
    /// `A(c)` not parallel to `W₁(c)`.
    ConditionII,
    /// `g⁺(c) = 0`, so no `W_n` vanishes at `c`.
    GPlusVanishes,
    /// `|u|` or `|v|` differs from 1.
    NotOnUnitCircle,
    /// No rational angle with denominator `≤ qmax` within tolerance.
    AngleNotDetected { ratio: Ratio, qmax: u64 },
    /// `p*(u)` does not divide `p*(v)`.
    DivisibilityFailed { order_u: u64, order_v: u64 },
    /// `v` has order 1, or `v^p` misses 1 by more than the tolerance.
    RootOfUnityResidual,
    /// No `1 ≤ r < p` has `v^r = u` within tolerance.
    ResidueNotFound,
}

impl Rejection {
    /// Stable identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::DegenerateNonvanishing => "degenerate-nonvanishing",
            Rejection::DeltaVanishes => "delta-vanishes",
            Rejection::ConditionI => "condition-i",
            Rejection::ConditionII => "condition-ii",
            Rejection::GPlusVanishes => "g-plus-vanishes",
            Rejection::NotOnUnitCircle => "not-on-unit-circle",
            Rejection::AngleNotDetected { ratio: Ratio::U, .. } => "angle-u-not-detected",
            Rejection::AngleNotDetected { ratio: Ratio::V, .. } => "angle-v-not-detected",
            Rejection::DivisibilityFailed { .. } => "divisibility-failed",
            Rejection::RootOfUnityResidual => "root-of-unity-residual",
            Rejection::ResidueNotFound => "residue-not-found",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::DegenerateNonvanishing => write!(f, "B(c) = 0 and A(c)·W1(c) ≠ 0"),
            Rejection::DeltaVanishes => write!(f, "Δ(c) = 0"),
            Rejection::ConditionI => write!(f, "A(c)² ≠ x·B(c) for any x in (−4, 0]"),
            Rejection::ConditionII => write!(f, "A(c) is not parallel to W1(c)"),
            Rejection::GPlusVanishes => write!(f, "g⁺(c) = 0"),
            Rejection::NotOnUnitCircle => write!(f, "|u| or |v| is not 1"),
            Rejection::AngleNotDetected { ratio, qmax } => {
                write!(f, "Arg({ratio:?}) not recognised as a rational multiple of π with denominator ≤ {qmax}")
            }
            Rejection::DivisibilityFailed { order_u, order_v } => {
                write!(f, "p*(u) = {order_u} does not divide p*(v) = {order_v}")
            }
            Rejection::RootOfUnityResidual => write!(f, "v is not a nontrivial root of unity to tolerance"),
            Rejection::ResidueNotFound => write!(f, "no r < p with v^r = u"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    NotCommonZero(Rejection),
    /// `B(c) = 0` and `W_n(c) = 0` for every `n ≥ first_zero_index`.
    Degenerate {
        first_zero_index: u64,
    },
    Periodic(Box<CommonZeroCertificate>),
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub point: ComplexValue,
    pub verdict: Verdict,
    /// The `angle_qmax` the angle detection ran with.
    pub qmax: u64,
}

impl Classification {
    pub fn is_common_zero(&self) -> bool {
        !matches!(self.verdict, Verdict::NotCommonZero(_))
    }

    pub fn certificate(&self) -> Option<&CommonZeroCertificate> {
        match &self.verdict {
            Verdict::Periodic(cert) => Some(cert),
            _ => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match &self.verdict {
            Verdict::NotCommonZero(why) => Some(why),
            _ => None,
        }
    }

    /// Indices `1 ≤ n ≤ nmax` with `W_n(c) = 0` as predicted by the verdict.
    pub fn predicted_zero_indices(&self, nmax: u64) -> Vec<u64> {
        match &self.verdict {
            Verdict::NotCommonZero(_) => Vec::new(),
            Verdict::Degenerate { first_zero_index } => (*first_zero_index..=nmax).collect(),
            Verdict::Periodic(cert) => cert.zero_indices(nmax),
        }
    }
}

/// Computes `u` and `v` at `c`.
///
/// Fails with a domain error when `B(c)`, `Δ(c)` or `g⁺(c)` vanishes.
pub fn compute_uv(spec: &SequenceSpec, c: &ComplexValue) -> Result<UVPair> {
    let cfg = spec.cfg();
    let vals = spec.values_at(c);
    if negligible(&vals.b, &vals.b_scale, cfg) {
        return Err(domain("B(c) vanishes"));
    }
    let parts = ClosedFormParts::from_values(&vals, cfg);
    if vals.delta_vanishes(&parts.delta, cfg) {
        return Err(domain("Δ(c) vanishes"));
    }
    uv_from_parts(&vals, &parts, cfg)
}

fn uv_from_parts(vals: &PointValues, parts: &ClosedFormParts, cfg: &PrecisionConfig) -> Result<UVPair> {
    let g_scale = (&parts.g_plus - &parts.g_minus).abs() + parts.g_plus.abs() + parts.g_minus.abs();
    if parts.g_plus.abs() <= cfg.zero_tol_real() * g_scale {
        return Err(domain("g⁺(c) vanishes"));
    }
    let u = &parts.g_minus / &parts.g_plus;
    let v = &(&vals.a + &parts.sqrt_delta) / &(&vals.a - &parts.sqrt_delta);
    Ok(UVPair { u, v })
}

/// `x = A²/B` lies in `(−4, 0]` up to `zero_tol·(|x| + 1)`.
fn x_in_range(x: &ComplexValue, cfg: &PrecisionConfig) -> bool {
    let prec = x.prec();
    let band = cfg.zero_tol_real() * (x.abs() + Real::one(prec));
    x.im.abs() <= band && x.re <= band && x.re > Real::from_i64(-4, prec)
}

/// Full decision procedure at `c`. Never fails: every negative outcome is a
/// [`Rejection`].
pub fn classify_point(spec: &SequenceSpec, c: &ComplexValue) -> Classification {
    let cfg = spec.cfg();
    let c = c.with_prec(spec.prec());
    let vals = spec.values_at(&c);
    let verdict = decide(spec, &c, &vals, Checks::Complex);
    Classification { point: c, verdict, qmax: cfg.angle_qmax() }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Checks {
    /// Conditions (i) and (ii) are tested explicitly.
    Complex,
    /// Real data at a real point: (i) and (ii) are implied once `Δ < 0`.
    RealNegativeDelta,
}

pub(crate) fn decide(spec: &SequenceSpec, c: &ComplexValue, vals: &PointValues, checks: Checks) -> Verdict {
    let cfg = spec.cfg();
    if negligible(&vals.b, &vals.b_scale, cfg) {
        // W_n(c) = A(c)^(n−1)·W₁(c) for n ≥ 1.
        return if negligible(&vals.w1, &vals.w1_scale, cfg) {
            Verdict::Degenerate { first_zero_index: 1 }
        } else if negligible(&vals.a, &vals.a_scale, cfg) {
            Verdict::Degenerate { first_zero_index: 2 }
        } else {
            Verdict::NotCommonZero(Rejection::DegenerateNonvanishing)
        };
    }
    let parts = ClosedFormParts::from_values(vals, cfg);
    if vals.delta_vanishes(&parts.delta, cfg) {
        return Verdict::NotCommonZero(Rejection::DeltaVanishes);
    }
    let x_ratio = &(&vals.a * &vals.a) / &vals.b;
    if checks == Checks::Complex {
        if !x_in_range(&x_ratio, cfg) {
            return Verdict::NotCommonZero(Rejection::ConditionI);
        }
        if !is_parallel(&vals.a, &vals.w1, cfg) {
            return Verdict::NotCommonZero(Rejection::ConditionII);
        }
    }
    certify(c, vals, &parts, x_ratio, cfg)
}

fn certify(
    c: &ComplexValue,
    vals: &PointValues,
    parts: &ClosedFormParts,
    x_ratio: ComplexValue,
    cfg: &PrecisionConfig,
) -> Verdict {
    use Verdict::NotCommonZero as Reject;
    let prec = c.prec();
    let tol = cfg.zero_tol_real();
    let one = Real::one(prec);

    let Ok(uv) = uv_from_parts(vals, parts, cfg) else {
        return Reject(Rejection::GPlusVanishes);
    };
    // With A(c) = 0 condition (ii) holds vacuously yet |u| may differ from
    // 1, so the unit modulus is checked directly.
    let abs_u_dev = (uv.u.abs() - &one).abs();
    let abs_v_dev = (uv.v.abs() - &one).abs();
    if abs_u_dev > tol || abs_v_dev > tol {
        return Reject(Rejection::NotOnUnitCircle);
    }

    let qmax = cfg.angle_qmax();
    let angle_v = match rational_angle_of(&uv.v, cfg) {
        Ok(Some(a)) => a,
        _ => return Reject(Rejection::AngleNotDetected { ratio: Ratio::V, qmax }),
    };
    let angle_u = match rational_angle_of(&uv.u, cfg) {
        Ok(Some(a)) => a,
        _ => return Reject(Rejection::AngleNotDetected { ratio: Ratio::U, qmax }),
    };
    if !angle_u.divides(&angle_v) {
        return Reject(Rejection::DivisibilityFailed { order_u: angle_u.p(), order_v: angle_v.p() });
    }
    let p = angle_v.p();
    if p < 2 {
        return Reject(Rejection::RootOfUnityResidual);
    }

    // Scan v^1..v^(p−1) for the power closest to u.
    let mut power = uv.v.clone();
    let mut best: Option<(u64, Real)> = None;
    for k in 1..p {
        let d = power.dist(&uv.u);
        if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
            best = Some((k, d));
        }
        power = &power * &uv.v;
    }
    let v_pow_p_dev = power.dist(&ComplexValue::one(prec));
    if v_pow_p_dev > tol {
        return Reject(Rejection::RootOfUnityResidual);
    }
    let Some((r, r_dev)) = best.filter(|(_, d)| *d <= tol) else {
        return Reject(Rejection::ResidueNotFound);
    };

    let turns = |z: &ComplexValue, a: &RationalAngle| -> f64 {
        let two_pi = Real::pi(prec) * Real::from_i64(2, prec);
        let exact = Real::from_i64(a.q(), prec) / Real::from_i64(a.p() as i64, prec);
        (z.principal_arg(cfg) / two_pi - exact).abs().to_f64()
    };
    let mut residuals = BTreeMap::new();
    residuals.insert("abs_u_minus_1".to_string(), abs_u_dev.to_f64());
    residuals.insert("abs_v_minus_1".to_string(), abs_v_dev.to_f64());
    residuals.insert("v_pow_p_minus_1".to_string(), v_pow_p_dev.to_f64());
    residuals.insert("v_pow_r_minus_u".to_string(), r_dev.to_f64());
    residuals.insert("x_ratio_im".to_string(), x_ratio.im.abs().to_f64());
    residuals.insert("angle_u_offset".to_string(), turns(&uv.u, &angle_u));
    residuals.insert("angle_v_offset".to_string(), turns(&uv.v, &angle_v));
    residuals.insert("delta_band".to_string(), vals.delta_band(cfg).to_f64());

    Verdict::Periodic(Box::new(CommonZeroCertificate {
        point: c.clone(),
        delta: parts.delta.clone(),
        uv,
        x_ratio,
        angle_v,
        angle_u,
        p,
        r,
        residuals,
    }))
}

/// Outcome of the angle identity `Arg(A+√Δ) − Arg(A) = qπ/p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArgCheck {
    /// Distance of `(Arg(A+√Δ) − Arg(A))·p/π` to `q`.
    pub residual: f64,
    /// Nearest integer coprime to `p`.
    pub q: i64,
}

/// Checks that `Arg(A(c)+√Δ(c)) − Arg(A(c))` is `qπ/p` with `gcd(p, q) = 1`.
pub fn corollary_arg_check(cert: &CommonZeroCertificate, spec: &SequenceSpec, c: &ComplexValue) -> Result<ArgCheck> {
    let cfg = spec.cfg();
    let vals = spec.values_at(c);
    if negligible(&vals.a, &vals.a_scale, cfg) || vals.a.is_zero() {
        return Err(domain("A(c) vanishes; its argument is undefined"));
    }
    let parts = ClosedFormParts::from_values(&vals, cfg);
    let prec = spec.prec();
    let phi = (&vals.a + &parts.sqrt_delta).principal_arg(cfg) - vals.a.principal_arg(cfg);
    let t = phi * Real::from_i64(cert.p as i64, prec) / Real::pi(prec);
    let center = t.floor().to_f64() as i64;
    let span = cert.p as i64 + 1;
    let (q, residual) = (center - span..=center + span + 1)
        .filter(|q| gcd(q.unsigned_abs(), cert.p) == 1)
        .map(|q| (q, (&t - Real::from_i64(q, prec)).abs()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("p ≥ 1 always has coprime integers nearby");
    Ok(ArgCheck { residual: residual.to_f64(), q })
}
