//! JSON spec files.
//!
//! ```json
//! {
//!   "precision_bits": 128,
//!   "A":  [["1", "0"], {"a": "1", "b": "-1", "n": 3}, ["1", "0"]],
//!   "B":  [["0", "0"], {"r": "1", "theta_pi": "-2/3"}],
//!   "W1": [["0", "0"], ["1", "0"]]
//! }
//! ```
//!
//! Coefficients are listed in ascending degree. Each is a rectangular pair
//! of decimal or `p/q` strings, a polar `r·e^(iπq/p)`, or a quadratic surd
//! `a + b√n`.

use serde::{Deserialize, Serialize};

use commonzero::numerics::{ComplexValue, PrecisionConfig, Real};
use commonzero::polyseq::{Polynomial, SequenceSpec};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Coefficient {
    Rect([String; 2]),
    Polar { r: String, theta_pi: String },
    Surd { a: String, b: String, n: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_qmax: Option<u64>,
    #[serde(rename = "A")]
    pub a: Vec<Coefficient>,
    #[serde(rename = "B")]
    pub b: Vec<Coefficient>,
    #[serde(rename = "W1")]
    pub w1: Vec<Coefficient>,
}

/// Command-line overrides applied on top of the file's own settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub precision_bits: Option<usize>,
    pub angle_qmax: Option<u64>,
    pub zero_tol: Option<f64>,
}

fn invalid(field: String, msg: impl Into<String>) -> CliError {
    CliError::Input { field, msg: msg.into() }
}

fn parse_real(field: &str, what: &str, s: &str, prec: usize) -> Result<Real, CliError> {
    Real::parse(s, prec).map_err(|_| invalid(format!("{field}.{what}"), format!("cannot parse '{s}'")))
}

/// `"q/p"` or `"q"`, as integers.
fn parse_ratio(field: &str, s: &str) -> Result<(i64, u64), CliError> {
    let bad = || invalid(format!("{field}.theta_pi"), format!("expected an integer ratio 'q/p', got '{s}'"));
    let (q, p) = s.split_once('/').unwrap_or((s, "1"));
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    if p == 0 {
        return Err(bad());
    }
    Ok((q, p))
}

impl Coefficient {
    fn to_value(&self, field: &str, prec: usize) -> Result<ComplexValue, CliError> {
        match self {
            Coefficient::Rect([re, im]) => {
                Ok(ComplexValue::new(parse_real(field, "re", re, prec)?, parse_real(field, "im", im, prec)?))
            }
            Coefficient::Polar { r, theta_pi } => {
                let r = parse_real(field, "r", r, prec)?;
                let (q, p) = parse_ratio(field, theta_pi)?;
                Ok(ComplexValue::cis_pi(q, p, prec).scale(&r))
            }
            Coefficient::Surd { a, b, n } => {
                let a = parse_real(field, "a", a, prec)?;
                let b = parse_real(field, "b", b, prec)?;
                let root = Real::from_i64(*n as i64, prec).sqrt();
                Ok(ComplexValue::from_real(a + b * root))
            }
        }
    }

    fn from_value(z: &ComplexValue, digits: usize) -> Self {
        Coefficient::Rect([z.re.to_sci_string(digits), z.im.to_sci_string(digits)])
    }
}

fn polynomial(name: &str, coeffs: &[Coefficient], prec: usize) -> Result<Polynomial, CliError> {
    let values = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_value(&format!("{name}[{k}]"), prec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(values))
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid("spec".into(), e.to_string()))
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid("--spec".into(), format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    pub fn config(&self, over: &Overrides) -> Result<PrecisionConfig, CliError> {
        let bits = over.precision_bits.or(self.precision_bits).unwrap_or(commonzero::numerics::DEFAULT_MANTISSA_BITS);
        let mut cfg = PrecisionConfig::new(bits).map_err(|e| invalid("precision_bits".into(), e.to_string()))?;
        if let Some(q) = over.angle_qmax.or(self.angle_qmax) {
            cfg = cfg.with_angle_qmax(q).map_err(|e| invalid("angle_qmax".into(), e.to_string()))?;
        }
        if let Some(t) = over.zero_tol {
            cfg = cfg.with_zero_tol(t).map_err(|e| invalid("--tol".into(), e.to_string()))?;
        }
        Ok(cfg)
    }

    pub fn to_spec(&self, over: &Overrides) -> Result<SequenceSpec, CliError> {
        let cfg = self.config(over)?;
        let prec = cfg.mantissa_bits();
        let a = polynomial("A", &self.a, prec)?;
        let b = polynomial("B", &self.b, prec)?;
        let w1 = polynomial("W1", &self.w1, prec)?;
        SequenceSpec::new(a, b, w1, cfg).map_err(|e| invalid("B".into(), e.to_string()))
    }

    /// Rectangular form with enough decimal digits to re-parse to the same
    /// binary values.
    pub fn from_spec(spec: &SequenceSpec) -> Self {
        let cfg = spec.cfg();
        let digits = (cfg.mantissa_bits() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        let dump = |p: &Polynomial| p.coeffs().iter().map(|c| Coefficient::from_value(c, digits)).collect();
        SpecFile {
            precision_bits: Some(cfg.mantissa_bits()),
            angle_qmax: Some(cfg.angle_qmax()),
            a: dump(spec.a()),
            b: dump(spec.b()),
            w1: dump(spec.w1()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }
}
