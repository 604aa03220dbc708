//! The embedded suite of worked examples.
//!
//! Each entry is classified, its `(p, r)` compared with the expected pair,
//! and its predicted zero set compared with the literal recurrence up to
//! [`ORACLE_NMAX`]. Family members also check the closed-form location.

use commonzero::characterize::{
    classify_point, classify_real_point, linear_a_zero_formula, Classification, RealCertificate,
};
use commonzero::numerics::{ComplexValue, Real};
use commonzero::polyseq::{recurrence_eval, vanishing_flags, Polynomial, SequenceSpec};

use crate::point::parse_point;
use crate::specfile::{Overrides, SpecFile};
use crate::CliError;

pub const ORACLE_NMAX: usize = 48;
/// Size of the nudge applied to `A`'s constant term by `--perturb`.
pub const PERTURBATION: f64 = 1e-6;

pub struct Golden {
    pub name: &'static str,
    pub json: &'static str,
    pub point: &'static str,
    pub real: bool,
    pub expected: (u64, u64),
    /// `(a, b)` for `A = az + b`, `W₁ = z`.
    pub linear: Option<(&'static str, &'static str)>,
}

pub const SUITE: &[Golden] = &[
    Golden {
        name: "eg1",
        json: include_str!("../fixtures/eg1.json"),
        point: "1@1/6",
        real: false,
        expected: (4, 3),
        linear: None,
    },
    Golden {
        name: "ccoeff",
        json: include_str!("../fixtures/ccoeff.json"),
        point: "0.5@1/3",
        real: false,
        expected: (4, 2),
        linear: None,
    },
    Golden {
        name: "family-pi3-a0-b1",
        json: include_str!("../fixtures/family-pi3-a0-b1.json"),
        point: "1",
        real: true,
        expected: (3, 2),
        linear: Some(("0", "1")),
    },
    Golden {
        name: "family-pi4-a0-b1",
        json: include_str!("../fixtures/family-pi4-a0-b1.json"),
        point: "1/2",
        real: true,
        expected: (4, 2),
        linear: Some(("0", "1")),
    },
    Golden {
        name: "family-pi4-a1-b2",
        json: include_str!("../fixtures/family-pi4-a1-b2.json"),
        point: "2",
        real: true,
        expected: (4, 2),
        linear: Some(("1", "2")),
    },
    Golden {
        name: "family-pi6-a0-b1",
        json: include_str!("../fixtures/family-pi6-a0-b1.json"),
        point: "1/3",
        real: true,
        expected: (6, 2),
        linear: Some(("0", "1")),
    },
    Golden {
        name: "family-pi6-a1-b2",
        json: include_str!("../fixtures/family-pi6-a1-b2.json"),
        point: "1",
        real: true,
        expected: (6, 2),
        linear: Some(("1", "2")),
    },
    Golden {
        name: "odd",
        json: include_str!("../fixtures/odd.json"),
        point: "0",
        real: true,
        expected: (2, 1),
        linear: None,
    },
];

pub fn find(name: &str) -> Option<&'static Golden> {
    SUITE.iter().find(|g| g.name == name)
}

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Adds [`PERTURBATION`] to the constant term of `A`.
fn perturbed(spec: &SequenceSpec) -> Result<SequenceSpec, CliError> {
    let prec = spec.prec();
    let mut coeffs = spec.a().coeffs().to_vec();
    if coeffs.is_empty() {
        coeffs.push(ComplexValue::zero(prec));
    }
    coeffs[0] = &coeffs[0] + &ComplexValue::from_f64(PERTURBATION, 0.0, prec);
    SequenceSpec::new(Polynomial::new(coeffs), spec.b().clone(), spec.w1().clone(), *spec.cfg()).map_err(CliError::Core)
}

fn classify(g: &Golden, spec: &SequenceSpec, c: &ComplexValue) -> Result<Classification, CliError> {
    if g.real {
        classify_real_point(spec, c).map_err(CliError::Core)
    } else {
        Ok(classify_point(spec, c))
    }
}

pub fn run(g: &'static Golden, perturb: bool) -> Result<Outcome, CliError> {
    let mut spec = SpecFile::from_json(g.json)?.to_spec(&Overrides::default())?;
    if perturb {
        spec = perturbed(&spec)?;
    }
    let c = parse_point(g.point, spec.prec())?;
    let cls = classify(g, &spec, &c)?;
    let fail = |detail: String| Ok(Outcome { name: g.name, passed: false, detail });

    let Some(cert) = cls.certificate() else {
        let why = cls.rejection().map_or_else(|| "degenerate".to_string(), |r| r.code().to_string());
        return fail(format!("no periodic certificate ({why})"));
    };
    if (cert.p, cert.r) != g.expected {
        return fail(format!("(p, r) = ({}, {}), expected {:?}", cert.p, cert.r, g.expected));
    }

    let flags = vanishing_flags(&recurrence_eval(&spec, &c, ORACLE_NMAX + 1), 1e-20);
    let observed: Vec<u64> = (1..=ORACLE_NMAX as u64).filter(|&n| flags[n as usize]).collect();
    let predicted = cls.predicted_zero_indices(ORACLE_NMAX as u64);
    if observed != predicted {
        return fail(format!("recurrence zeros {observed:?} differ from predicted {predicted:?}"));
    }

    let mut detail =
        format!("(p, r) = ({}, {}), zeros agree with the recurrence for n <= {ORACLE_NMAX}", cert.p, cert.r);
    if let Some((a, b)) = g.linear {
        let prec = spec.prec();
        let theta = match RealCertificate::from_classification(&spec, &cls).map_err(CliError::Core)? {
            Some(rc) => rc.theta,
            None => return fail("no real certificate".into()),
        };
        let a = Real::parse(a, prec).map_err(CliError::Core)?;
        let b = Real::parse(b, prec).map_err(CliError::Core)?;
        let formula = linear_a_zero_formula(&a, &b, &theta, cert.r).map_err(CliError::Core)?;
        let err = (formula - &c.re).abs().to_f64() / c.re.abs().to_f64().max(1.0);
        if err > 1e-25 {
            return fail(format!("closed-form location off by {err:.3e}"));
        }
        detail.push_str(&format!(", closed form matches to {err:.1e}"));
    }
    Ok(Outcome { name: g.name, passed: true, detail })
}
