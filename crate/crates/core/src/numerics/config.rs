use crate::error::{Error, Result};

use super::real::Real;

pub const DEFAULT_MANTISSA_BITS: usize = 128;
pub const MIN_MANTISSA_BITS: usize = 53;
/// Above this the default tolerances underflow an `f64`.
pub const MAX_MANTISSA_BITS: usize = 2048;
pub const DEFAULT_ANGLE_QMAX: u64 = 512;

/// Working precision and the tolerances every verdict is taken against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    mantissa_bits: usize,
    zero_tol: f64,
    angle_qmax: u64,
    angle_tol: f64,
}

impl PrecisionConfig {
    /// Defaults: `zero_tol = 2^-(bits/2)`, `angle_tol = 2^-(bits/4)`,
    /// `angle_qmax = 512`.
    pub fn new(mantissa_bits: usize) -> Result<Self> {
        if !(MIN_MANTISSA_BITS..=MAX_MANTISSA_BITS).contains(&mantissa_bits) {
            return Err(Error::Config(format!(
                "mantissa_bits must lie in [{MIN_MANTISSA_BITS}, {MAX_MANTISSA_BITS}], got {mantissa_bits}"
            )));
        }
        Ok(PrecisionConfig {
            mantissa_bits,
            zero_tol: 2f64.powi(-((mantissa_bits / 2) as i32)),
            angle_qmax: DEFAULT_ANGLE_QMAX,
            angle_tol: 2f64.powi(-((mantissa_bits / 4) as i32)),
        })
    }

    pub fn with_zero_tol(mut self, tol: f64) -> Result<Self> {
        self.zero_tol = positive("zero_tol", tol)?;
        Ok(self)
    }

    pub fn with_angle_tol(mut self, tol: f64) -> Result<Self> {
        self.angle_tol = positive("angle_tol", tol)?;
        Ok(self)
    }

    pub fn with_angle_qmax(mut self, qmax: u64) -> Result<Self> {
        if qmax < 2 {
            return Err(Error::Config(format!("angle_qmax must be at least 2, got {qmax}")));
        }
        self.angle_qmax = qmax;
        Ok(self)
    }

    pub fn mantissa_bits(&self) -> usize {
        self.mantissa_bits
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn angle_qmax(&self) -> u64 {
        self.angle_qmax
    }

    pub fn angle_tol(&self) -> f64 {
        self.angle_tol
    }

    pub fn zero_tol_real(&self) -> Real {
        Real::from_f64(self.zero_tol, self.mantissa_bits)
    }

    pub fn angle_tol_real(&self) -> Real {
        Real::from_f64(self.angle_tol, self.mantissa_bits)
    }

    /// Decimal digits after the point used when reporting values.
    pub fn report_digits(&self) -> usize {
        self.mantissa_bits / 4
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self::new(DEFAULT_MANTISSA_BITS).expect("default precision is valid")
    }
}

fn positive(name: &str, tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::Config(format!("{name} must be positive and finite, got {tol}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_precision() {
        let cfg = PrecisionConfig::default();
        assert_eq!(cfg.mantissa_bits(), 128);
        assert_eq!(cfg.zero_tol(), 2f64.powi(-64));
        assert_eq!(cfg.angle_tol(), 2f64.powi(-32));
        assert_eq!(cfg.angle_qmax(), 512);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(PrecisionConfig::new(52).is_err());
        assert!(PrecisionConfig::new(4096).is_err());
        let cfg = PrecisionConfig::default();
        assert!(cfg.with_zero_tol(0.0).is_err());
        assert!(cfg.with_angle_tol(f64::NAN).is_err());
        assert!(cfg.with_angle_qmax(1).is_err());
        assert!(cfg.with_angle_qmax(2).is_ok());
    }
}
