//! Point syntax: `"re,im"`, `"r@q/p"` for `r·e^(iπq/p)`, or a lone real.
//! Every number may be a decimal or an integer ratio.

use commonzero::numerics::{ComplexValue, Real};

use crate::CliError;

pub fn parse_point(s: &str, prec: usize) -> Result<ComplexValue, CliError> {
    let bad = |msg: String| CliError::Input { field: "--point".into(), msg };
    let real = |part: &str| Real::parse(part, prec).map_err(|_| bad(format!("cannot parse '{part}' in '{s}'")));
    if let Some((r, angle)) = s.split_once('@') {
        let (q, p) = angle.split_once('/').unwrap_or((angle, "1"));
        let q: i64 = q.trim().parse().map_err(|_| bad(format!("angle '{angle}' is not 'q/p'")))?;
        let p: u64 = p.trim().parse().map_err(|_| bad(format!("angle '{angle}' is not 'q/p'")))?;
        if p == 0 {
            return Err(bad(format!("angle '{angle}' has a zero denominator")));
        }
        return Ok(ComplexValue::cis_pi(q, p, prec).scale(&real(r)?));
    }
    if let Some((re, im)) = s.split_once(',') {
        return Ok(ComplexValue::new(real(re)?, real(im)?));
    }
    Ok(ComplexValue::from_real(real(s)?))
}
