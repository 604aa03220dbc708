//! JSON records. `serde_json::Map` keeps keys sorted, and every number is
//! printed as a fixed-width string, so identical runs give identical bytes.

use serde_json::{json, Map, Value};

use commonzero::characterize::{Classification, CommonZeroCertificate, Verdict};
use commonzero::numerics::{ComplexValue, PrecisionConfig, Real};

pub fn real(x: &Real, digits: usize) -> Value {
    Value::String(x.to_sci_string(digits))
}

pub fn complex(z: &ComplexValue, digits: usize) -> Value {
    json!({ "re": real(&z.re, digits), "im": real(&z.im, digits) })
}

/// Residuals are diagnostics; six significant digits are plenty.
pub fn residual(x: f64) -> Value {
    Value::String(format!("{x:.5e}"))
}

pub fn settings(cfg: &PrecisionConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("precision_bits".into(), json!(cfg.mantissa_bits()));
    m.insert("angle_qmax".into(), json!(cfg.angle_qmax()));
    m.insert("zero_tol".into(), residual(cfg.zero_tol()));
    m.insert("angle_tol".into(), residual(cfg.angle_tol()));
    m
}

pub fn certificate(cert: &CommonZeroCertificate, digits: usize) -> Value {
    let residuals: Map<String, Value> = cert.residuals.iter().map(|(k, v)| (k.clone(), residual(*v))).collect();
    json!({
        "p": cert.p,
        "r": cert.r,
        "u": complex(&cert.uv.u, digits),
        "v": complex(&cert.uv.v, digits),
        "delta": complex(&cert.delta, digits),
        "x_ratio": complex(&cert.x_ratio, digits),
        "angle_u": cert.angle_u.to_string(),
        "angle_v": cert.angle_v.to_string(),
        "residuals": residuals,
    })
}

/// Verdict fields merged into an enclosing record.
pub fn classification(cls: &Classification, digits: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("point".into(), complex(&cls.point, digits));
    m.insert("qmax".into(), json!(cls.qmax));
    match &cls.verdict {
        Verdict::Periodic(cert) => {
            m.insert("verdict".into(), json!("periodic"));
            m.insert("certificate".into(), certificate(cert, digits));
        }
        Verdict::Degenerate { first_zero_index } => {
            m.insert("verdict".into(), json!("degenerate"));
            m.insert("first_zero_index".into(), json!(first_zero_index));
        }
        Verdict::NotCommonZero(why) => {
            m.insert("verdict".into(), json!("not-common-zero"));
            m.insert("reason".into(), json!(why.code()));
            m.insert("reason_detail".into(), json!(why.to_string()));
        }
    }
    m
}

pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
