//! Polynomials, the order-two recurrence, and its closed forms.
//!
//! [`recurrence_eval`] is the reference everything else is checked against;
//! the closed forms are alternative routes to the same numbers.

use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{domain, precondition, Result};
use crate::numerics::{principal_sqrt_snapped, ComplexValue, PrecisionConfig, Real};

/// Dense polynomial, coefficients in ascending degree. The empty list is the
/// zero polynomial.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<ComplexValue>,
}

impl Polynomial {
    /// Drops trailing coefficients that are exactly zero.
    pub fn new(mut coeffs: Vec<ComplexValue>) -> Self {
        while coeffs.last().is_some_and(ComplexValue::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ComplexValue) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z(prec: usize) -> Self {
        Self::new(vec![ComplexValue::zero(prec), ComplexValue::one(prec)])
    }

    /// Real coefficients given as `f64`, ascending degree.
    pub fn from_real_f64(coeffs: &[f64], prec: usize) -> Self {
        Self::new(coeffs.iter().map(|&x| ComplexValue::from_f64(x, 0.0, prec)).collect())
    }

    /// Drops trailing coefficients whose magnitude is at most
    /// `tol · max_k |c_k|`.
    pub fn trimmed(mut self, tol: f64) -> Self {
        let Some(max) = self.coeffs.iter().map(ComplexValue::abs).reduce(Real::max) else {
            return self;
        };
        let bound = Real::from_f64(tol, max.prec()) * max;
        while self.coeffs.last().is_some_and(|c| c.abs() <= bound) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, c: &ComplexValue) -> ComplexValue {
        let mut acc = ComplexValue::zero(c.prec());
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * c) + coeff;
        }
        acc
    }

    /// `Σ |c_k|·|z|^k`, the magnitude rounding errors in [`Self::eval`] are
    /// relative to.
    pub fn eval_scale(&self, c: &ComplexValue) -> Real {
        let r = c.abs();
        let mut acc = Real::zero(c.prec());
        for coeff in self.coeffs.iter().rev() {
            acc = &acc * &r + coeff.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Real::from_i64(k as i64, c.prec()))).collect(),
        )
    }

    /// All imaginary parts at most `tol` in magnitude.
    pub fn has_real_coefficients(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs().to_f64() <= tol)
    }

    pub fn with_prec(&self, prec: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c.with_prec(prec)).collect())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = &*o + s;
        }
        Polynomial::new(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let prec = self.coeffs[0].prec().max(rhs.coeffs[0].prec());
        let mut out = vec![ComplexValue::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

/// Free-function form of [`Polynomial::eval`].
pub fn eval_poly(p: &Polynomial, c: &ComplexValue) -> ComplexValue {
    p.eval(c)
}

/// A normalized sequence: `W_0 = 1`, `W_1`, and
/// `W_n = A·W_{n-1} + B·W_{n-2}` for `n ≥ 2`.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    a: Polynomial,
    b: Polynomial,
    w1: Polynomial,
    cfg: PrecisionConfig,
}

impl SequenceSpec {
    /// Coefficients are re-rounded to the configured precision and trimmed at
    /// `zero_tol`. A zero `B` is rejected: the recurrence would collapse to a
    /// geometric sequence.
    pub fn new(a: Polynomial, b: Polynomial, w1: Polynomial, cfg: PrecisionConfig) -> Result<Self> {
        let prec = cfg.mantissa_bits();
        let tidy = |p: Polynomial| p.with_prec(prec).trimmed(cfg.zero_tol());
        let (a, b, w1) = (tidy(a), tidy(b), tidy(w1));
        if b.is_zero() {
            return Err(domain("B must not be the zero polynomial"));
        }
        Ok(SequenceSpec { a, b, w1, cfg })
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn w1(&self) -> &Polynomial {
        &self.w1
    }

    pub fn cfg(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn prec(&self) -> usize {
        self.cfg.mantissa_bits()
    }

    /// Same polynomials under different tolerances or precision.
    pub fn with_cfg(&self, cfg: PrecisionConfig) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), self.w1.clone(), cfg)
    }

    /// True when `A`, `B` and `W_1` have imaginary parts within `zero_tol`.
    pub fn has_real_coefficients(&self) -> bool {
        let tol = self.cfg.zero_tol();
        [&self.a, &self.b, &self.w1].iter().all(|p| p.has_real_coefficients(tol))
    }

    /// `A(c)`, `B(c)`, `W_1(c)` with their evaluation scales.
    pub fn values_at(&self, c: &ComplexValue) -> PointValues {
        let c = c.with_prec(self.prec().max(c.prec()));
        PointValues {
            a: self.a.eval(&c),
            b: self.b.eval(&c),
            w1: self.w1.eval(&c),
            a_scale: self.a.eval_scale(&c),
            b_scale: self.b.eval_scale(&c),
            w1_scale: self.w1.eval_scale(&c),
        }
    }
}

/// The coefficient polynomials evaluated at one point.
#[derive(Clone, Debug)]
pub struct PointValues {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub w1: ComplexValue,
    pub a_scale: Real,
    pub b_scale: Real,
    pub w1_scale: Real,
}

impl PointValues {
    pub fn delta(&self) -> ComplexValue {
        let four = Real::from_i64(4, self.a.prec());
        &(&self.a * &self.a) + &self.b.scale(&four)
    }

    /// `|Δ| ≤ zero_tol·(|A|² + 4|B| + 1)`.
    pub fn delta_vanishes(&self, delta: &ComplexValue, cfg: &PrecisionConfig) -> bool {
        delta.abs() <= self.delta_band(cfg)
    }

    pub fn delta_band(&self, cfg: &PrecisionConfig) -> Real {
        let prec = self.a.prec();
        let four = Real::from_i64(4, prec);
        cfg.zero_tol_real() * (self.a.norm_sqr() + four * self.b.abs() + Real::one(prec))
    }
}

/// True when `|value| ≤ zero_tol · scale`; only an exact zero passes when the
/// scale is zero.
pub fn negligible(value: &ComplexValue, scale: &Real, cfg: &PrecisionConfig) -> bool {
    value.abs() <= cfg.zero_tol_real() * scale
}

/// Flags the entries of `[W_0, W_1, …]` that vanish against their local
/// scale `max(|W_{n−1}|, |W_n|, |W_{n+1}|)`.
///
/// A running maximum would misread a geometrically decaying sequence as
/// vanishing; the neighbours of a zero are nonzero unless the whole tail is.
pub fn vanishing_flags(values: &[ComplexValue], tol: f64) -> Vec<bool> {
    let mags: Vec<f64> = values.iter().map(|w| w.abs().to_f64()).collect();
    (0..mags.len())
        .map(|n| {
            let lo = n.saturating_sub(1);
            let hi = (n + 1).min(mags.len() - 1);
            let scale = mags[lo..=hi].iter().copied().fold(0.0, f64::max);
            mags[n] <= tol * scale
        })
        .collect()
}

/// `[W_0(c), …, W_nmax(c)]` by the literal recurrence.
pub fn recurrence_eval(spec: &SequenceSpec, c: &ComplexValue, nmax: usize) -> Vec<ComplexValue> {
    let vals = spec.values_at(c);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(ComplexValue::one(spec.prec()));
    if nmax >= 1 {
        out.push(vals.w1.clone());
    }
    for n in 2..=nmax {
        let next = &(&vals.a * &out[n - 1]) + &(&vals.b * &out[n - 2]);
        out.push(next);
    }
    out
}

/// `Δ(c) = A(c)² + 4B(c)`.
pub fn discriminant(spec: &SequenceSpec, c: &ComplexValue) -> ComplexValue {
    spec.values_at(c).delta()
}

/// `Δ`, its principal root and `g± = (2W_1 − A ± √Δ)/2` at one point.
#[derive(Clone, Debug)]
pub struct ClosedFormParts {
    pub delta: ComplexValue,
    pub sqrt_delta: ComplexValue,
    pub g_plus: ComplexValue,
    pub g_minus: ComplexValue,
}

impl ClosedFormParts {
    pub fn at(spec: &SequenceSpec, c: &ComplexValue) -> Self {
        Self::from_values(&spec.values_at(c), spec.cfg())
    }

    pub fn from_values(vals: &PointValues, cfg: &PrecisionConfig) -> Self {
        let prec = vals.a.prec();
        let delta = vals.delta();
        let sqrt_delta = principal_sqrt_snapped(&delta, cfg);
        let half = Real::from_ratio(1, 2, prec).expect("nonzero denominator");
        let base = &vals.w1.scale(&Real::from_i64(2, prec)) - &vals.a;
        let g_plus = (&base + &sqrt_delta).scale(&half);
        let g_minus = (&base - &sqrt_delta).scale(&half);
        ClosedFormParts { delta, sqrt_delta, g_plus, g_minus }
    }
}

/// `W_n(c)` from the two-branch closed form.
///
/// When `|Δ(c)|` is within the tolerance band the repeated-root branch
/// `A^(n−1)/2^n · (A + n(2W_1 − A))` is used; otherwise
/// `(g⁺(A+√Δ)^n − g⁻(A−√Δ)^n) / (2^n √Δ)`. `n = 0` returns 1.
pub fn closed_form(spec: &SequenceSpec, c: &ComplexValue, n: u64) -> ComplexValue {
    let prec = spec.prec();
    if n == 0 {
        return ComplexValue::one(prec);
    }
    let vals = spec.values_at(c);
    let parts = ClosedFormParts::from_values(&vals, spec.cfg());
    let two_n = Real::from_i64(2, prec).powi(n);
    if vals.delta_vanishes(&parts.delta, spec.cfg()) {
        let two_w1_minus_a = &vals.w1.scale(&Real::from_i64(2, prec)) - &vals.a;
        let inner = &vals.a + &two_w1_minus_a.scale(&Real::from_i64(n as i64, prec));
        let head = vals.a.powi(n - 1);
        return (&head * &inner).scale(&(Real::one(prec) / two_n));
    }
    let plus = (&vals.a + &parts.sqrt_delta).powi(n);
    let minus = (&vals.a - &parts.sqrt_delta).powi(n);
    let numer = &(&parts.g_plus * &plus) - &(&parts.g_minus * &minus);
    &numer / &parts.sqrt_delta.scale(&two_n)
}

/// `θ ∈ (0, π)` with `tan θ = √(−Δ)/A`, and `θ = π/2` when `A = 0`.
pub fn real_theta(a: &Real, delta: &Real) -> Result<Real> {
    if !delta.is_negative() {
        return Err(precondition("real angle needs Δ(c) < 0"));
    }
    Ok(Real::atan2(&(-delta).sqrt(), a))
}

/// `W_n(c) = |B|^(n/2)·(cos nθ + (2W_1 − A) sin nθ / √(−Δ))` for real data
/// with `Δ(c) < 0`.
pub fn closed_form_real_trig(spec: &SequenceSpec, c: &ComplexValue, n: u64) -> Result<ComplexValue> {
    let cfg = spec.cfg();
    let prec = spec.prec();
    if !spec.has_real_coefficients() {
        return Err(precondition("A, B and W1 must have real coefficients"));
    }
    if c.im.abs().to_f64() > cfg.zero_tol() {
        return Err(precondition("the point c must be real"));
    }
    let c = ComplexValue::from_real(c.re.clone());
    let vals = spec.values_at(&c);
    let delta = vals.delta().re;
    if delta >= -cfg.zero_tol_real() {
        return Err(precondition("Δ(c) must be negative"));
    }
    let theta = real_theta(&vals.a.re, &delta)?;
    let nf = Real::from_i64(n as i64, prec);
    let n_theta = &nf * &theta;
    let slope = (&vals.w1.re * Real::from_i64(2, prec) - &vals.a.re) / (-&delta).sqrt();
    let radius = vals.b.re.abs().sqrt().powi(n);
    Ok(ComplexValue::from_real(radius * (n_theta.cos() + slope * n_theta.sin())))
}
