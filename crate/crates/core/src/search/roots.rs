//! Simultaneous root finding: Aberth iteration in `f64` for starting values,
//! then the same iteration at working precision to polish.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::numerics::{ComplexValue, PrecisionConfig, Real};
use crate::polyseq::Polynomial;

const F64_ITERATIONS: usize = 1000;
const POLISH_ITERATIONS: usize = 200;

/// All complex roots of `p` with multiplicity, in a deterministic order.
///
/// A nonzero constant has no roots. Each root is polished until `|p(z)|` is
/// within a small multiple of the working precision times
/// `Σ|c_k||z|^k`, or the Aberth step stalls at that level.
pub fn roots_of(p: &Polynomial, cfg: &PrecisionConfig) -> Result<Vec<ComplexValue>> {
    if p.is_zero() {
        return Err(domain("the zero polynomial has no finite root set"));
    }
    let prec = cfg.mantissa_bits();
    let p = p.with_prec(prec);
    // Exact zeros at the origin come off first.
    let leading_zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![ComplexValue::zero(prec); leading_zeros];
    let q = Polynomial::new(p.coeffs()[leading_zeros..].to_vec());
    match q.degree() {
        Some(0) | None => {}
        Some(1) => {
            let c = q.coeffs();
            roots.push(-(&c[0] / &c[1]));
        }
        Some(_) => {
            let monic = monic_f64(&q);
            let start = aberth_f64(&monic);
            roots.extend(polish(&q, start, prec));
        }
    }
    Ok(roots)
}

/// Coefficients divided by the leading one, rounded to `f64`.
fn monic_f64(p: &Polynomial) -> Vec<Complex64> {
    let lead = p.coeffs().last().expect("nonconstant");
    p.coeffs().iter().map(|c| (c / lead).to_c64()).collect()
}

/// `p(z)/p'(z)` in `f64`, evaluated through the reversed polynomial for
/// `|z| > 1` so that large roots do not overflow.
fn newton_ratio(c: &[Complex64], z: Complex64) -> Complex64 {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (c[d], Complex64::new(0.0, 0.0));
        for k in (0..d).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        return p / dp;
    }
    let y = z.inv();
    let (mut q, mut dq) = (c[0], Complex64::new(0.0, 0.0));
    for &ck in &c[1..=d] {
        dq = dq * y + q;
        q = q * y + ck;
    }
    // p'(z)/p(z) = d/z − y²·q'(y)/q(y)
    let log_deriv = d as f64 * y - y * y * dq / q;
    log_deriv.inv()
}

fn aberth_f64(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let radius = c[0].norm().powf(1.0 / d as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + 0.4)).collect();
    let mut done = vec![false; d];
    for _ in 0..F64_ITERATIONS {
        let mut moving = false;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let ratio = newton_ratio(c, z[k]);
            if !ratio.is_finite() || ratio.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
            }
            if !step.is_finite() || step.norm() <= 4.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            } else {
                moving = true;
            }
        }
        if !moving {
            break;
        }
    }
    z
}

/// `(p(z), p'(z), Σ|c_k||z|^k)`.
fn eval_with_derivative(p: &Polynomial, z: &ComplexValue) -> (ComplexValue, ComplexValue, Real) {
    let prec = z.prec();
    let r = z.abs();
    let mut value = ComplexValue::zero(prec);
    let mut deriv = ComplexValue::zero(prec);
    let mut scale = Real::zero(prec);
    for c in p.coeffs().iter().rev() {
        deriv = &(&deriv * z) + &value;
        value = &(&value * z) + c;
        scale = &scale * &r + c.abs();
    }
    (value, deriv, scale)
}

fn polish(p: &Polynomial, start: Vec<Complex64>, prec: usize) -> Vec<ComplexValue> {
    let d = start.len();
    let eps = Real::from_f64(2f64.powi(-(prec as i32)), prec);
    let slack = Real::from_i64(4 * d as i64 + 8, prec);
    let one = ComplexValue::one(prec);
    let mut z: Vec<ComplexValue> = start.into_iter().map(|w| ComplexValue::from_c64(w, prec)).collect();
    let mut done = vec![false; d];
    for _ in 0..POLISH_ITERATIONS {
        let mut moving = false;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (value, deriv, scale) = eval_with_derivative(p, &z[k]);
            if value.abs() <= &eps * &slack * scale || deriv.is_zero() {
                done[k] = true;
                continue;
            }
            let ratio = &value / &deriv;
            let mut repulsion = ComplexValue::zero(prec);
            for j in (0..d).filter(|&j| j != k) {
                let gap = &z[k] - &z[j];
                if !gap.is_zero() {
                    repulsion = &repulsion + &gap.recip();
                }
            }
            let step = &ratio / &(&one - &(&ratio * &repulsion));
            if !step.is_finite() {
                done[k] = true;
                continue;
            }
            z[k] = &z[k] - &step;
            if step.abs() <= &eps * &slack * z[k].abs() {
                done[k] = true;
            } else {
                moving = true;
            }
        }
        if !moving {
            break;
        }
    }
    z
}
