//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use commonzero::characterize::{
    classify_point, classify_real_point, corollary_arg_check, linear_a_zero_formula, make_family_spec,
    tan_r_theta_check, Classification, CommonZeroCertificate, RealCertificate, Verdict,
};
use commonzero::numerics::{rational_angle_of, ComplexValue, PrecisionConfig, Real};
use commonzero::polyseq::{
    closed_form, closed_form_real_trig, recurrence_eval, vanishing_flags, Polynomial, SequenceSpec,
};
use commonzero::search::find_candidates;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: usize = 128;
const TOL: f64 = 1e-20;

type Outcome = Result<String, String>;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::new(P).expect("valid precision")
}

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::from_f64(re, im, P)
}

fn real_poly(coeffs: &[f64]) -> Polynomial {
    Polynomial::from_real_f64(coeffs, P)
}

fn spec(a: Polynomial, b: Polynomial, w1: Polynomial) -> SequenceSpec {
    SequenceSpec::new(a, b, w1, cfg()).expect("valid spec")
}

fn example_one() -> SequenceSpec {
    let root3 = Real::from_i64(3, P).sqrt();
    let a = Polynomial::new(vec![
        ComplexValue::one(P),
        ComplexValue::from_real(Real::one(P) - root3),
        ComplexValue::one(P),
    ]);
    spec(a, real_poly(&[0.0, 0.0, -0.5]), Polynomial::z(P))
}

fn example_complex() -> (SequenceSpec, ComplexValue) {
    let b = Polynomial::new(vec![ComplexValue::zero(P), ComplexValue::cis_pi(-2, 3, P)]);
    let point = ComplexValue::cis_pi(1, 3, P).scale(&Real::from_ratio(1, 2, P).unwrap());
    (spec(real_poly(&[1.0, 0.0, 4.0]), b, Polynomial::z(P)), point)
}

/// The family instances allowed by `a ≠ 4cos²θ`: `(k, a, b)` with `θ = π/k`.
fn family_cases() -> Vec<(i64, f64, f64)> {
    let mut out = Vec::new();
    for k in [3, 4, 6] {
        let four_cos2 = 4.0 * (std::f64::consts::PI / k as f64).cos().powi(2);
        for (a, b) in [(0.0, 1.0), (1.0, 2.0)] {
            if (four_cos2 - a).abs() > 1e-9 {
                out.push((k, a, b));
            }
        }
    }
    out
}

fn pi_over(k: i64) -> Real {
    Real::pi(P) / Real::from_i64(k, P)
}

/// Indices `1..=nmax` where the literal recurrence vanishes at `at`.
fn observed_zeros(s: &SequenceSpec, at: &ComplexValue, nmax: usize) -> Vec<u64> {
    let ws = recurrence_eval(s, at, nmax + 1);
    let flags = vanishing_flags(&ws, TOL);
    (1..=nmax).filter(|&n| flags[n]).map(|n| n as u64).collect()
}

fn expect_periodic(cls: &Classification) -> Result<&CommonZeroCertificate, String> {
    cls.certificate().ok_or_else(|| format!("expected a periodic verdict, got {:?}", cls.verdict))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every certificate seen during the run, for the property suite.
struct Ledger {
    certs: Vec<CommonZeroCertificate>,
}

fn example_one_reproduction(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let s = example_one();
    let at = ComplexValue::cis_pi(1, 6, P);
    let cls = classify_point(&s, &at);
    let cert = expect_periodic(&cls)?;
    check((cert.p, cert.r) == (4, 3), || format!("p = {}, r = {}", cert.p, cert.r))?;
    let observed = observed_zeros(&s, &at, 48);
    let predicted: Vec<u64> = (1..=48).filter(|n| n % 4 == 3).collect();
    check(observed == predicted, || format!("zero indices {observed:?}"))?;
    let elapsed = start.elapsed();
    check(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    ledger.certs.push(cert.clone());
    Ok(format!("p = 4, r = 3, zeros n ≡ 3 (mod 4) for n ≤ 48 in {:.0} ms", elapsed.as_secs_f64() * 1e3))
}

fn complex_example_reproduction(ledger: &mut Ledger) -> Outcome {
    let (s, at) = example_complex();
    let cls = classify_point(&s, &at);
    let cert = expect_periodic(&cls)?;
    check((cert.p, cert.r) == (4, 2), || format!("p = {}, r = {}", cert.p, cert.r))?;
    let observed = observed_zeros(&s, &at, 48);
    let predicted: Vec<u64> = (1..=48).filter(|n| n % 4 == 2).collect();
    check(observed == predicted, || format!("zero indices {observed:?}"))?;
    ledger.certs.push(cert.clone());
    Ok("p = 4, r = 2, zeros n ≡ 2 (mod 4) for n ≤ 48".into())
}

fn family_reproduction(ledger: &mut Ledger) -> Outcome {
    let cf = cfg();
    let mut worst = 0.0f64;
    let cases = family_cases();
    for &(k, a, b) in &cases {
        let (ar, br) = (Real::from_f64(a, P), Real::from_f64(b, P));
        let fam = make_family_spec(&pi_over(k), &ar, &br, &cf).map_err(|e| e.to_string())?;
        let expected_c = Real::from_f64(b, P) / (Real::from_f64(4.0, P) * pi_over(k).cos().powi(2) - &ar);
        let cls =
            classify_real_point(&fam.spec, &ComplexValue::from_real(expected_c.clone())).map_err(|e| e.to_string())?;
        let cert = expect_periodic(&cls)?;
        check((cert.p, cert.r) == (k as u64, 2), || {
            format!("θ = π/{k}, (a, b) = ({a}, {b}): p = {}, r = {}", cert.p, cert.r)
        })?;
        let located = linear_a_zero_formula(&ar, &br, &pi_over(k), 2).map_err(|e| e.to_string())?;
        let rel = ((&located - &expected_c) / &expected_c).abs().to_f64();
        worst = worst.max(rel);
        check(rel <= 1e-25, || format!("θ = π/{k}: formula relative error {rel:e}"))?;
        ledger.certs.push(cert.clone());
    }
    Ok(format!("{} instances periodic with r = 2; formula relative error ≤ {worst:.1e}", cases.len()))
}

fn random_complex_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let degree = rng.gen_range(0..=3);
    Polynomial::new((0..=degree).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

fn random_real_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let degree = rng.gen_range(0..=3);
    real_poly(&(0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>())
}

/// Largest `|x_n − y_n| / max_{k ≤ n} |y_k|` over the run.
fn relative_gap(got: &[ComplexValue], oracle: &[ComplexValue]) -> f64 {
    let mut scale = 0.0f64;
    let mut worst = 0.0f64;
    for (x, y) in got.iter().zip(oracle) {
        scale = scale.max(y.abs().to_f64());
        if scale > 0.0 {
            worst = worst.max(x.dist(y).to_f64() / scale);
        }
    }
    worst
}

fn oracle_equivalence() -> Outcome {
    let bound = 2f64.powi(-64);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let b = random_complex_poly(&mut rng);
        if b.is_zero() {
            continue;
        }
        let s = spec(random_complex_poly(&mut rng), b, random_complex_poly(&mut rng));
        let at = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let oracle = recurrence_eval(&s, &at, 50);
        let got: Vec<ComplexValue> = (0..=50).map(|n| closed_form(&s, &at, n)).collect();
        let gap = relative_gap(&got, &oracle);
        worst = worst.max(gap);
        check(gap <= bound, || format!("complex spec #{done}: relative error {gap:e}"))?;
        done += 1;
    }
    let mut worst_trig = 0.0f64;
    let mut done_trig = 0;
    while done_trig < 100 {
        let b = random_real_poly(&mut rng);
        if b.is_zero() {
            continue;
        }
        let s = spec(random_real_poly(&mut rng), b, random_real_poly(&mut rng));
        let at = c(rng.gen_range(-1.0..1.0), 0.0);
        if s.values_at(&at).delta().re.to_f64() >= -1e-6 {
            continue;
        }
        let oracle = recurrence_eval(&s, &at, 50);
        let got = (0..=50)
            .map(|n| closed_form_real_trig(&s, &at, n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let gap = relative_gap(&got, &oracle);
        worst_trig = worst_trig.max(gap);
        check(gap <= bound, || format!("real spec #{done_trig}: relative error {gap:e}"))?;
        done_trig += 1;
    }
    Ok(format!("worst relative error {worst:.1e} (closed form), {worst_trig:.1e} (trigonometric)"))
}

fn search_cross_validation(ledger: &mut Ledger) -> Outcome {
    let cf = cfg();
    let mut cases = vec![("eg1".to_string(), example_one(), ComplexValue::cis_pi(1, 6, P))];
    for (k, a, b) in family_cases() {
        let fam = make_family_spec(&pi_over(k), &Real::from_f64(a, P), &Real::from_f64(b, P), &cf)
            .map_err(|e| e.to_string())?;
        cases.push((format!("π/{k} ({a}, {b})"), fam.spec, fam.point));
    }
    let nmax = 14;
    for (name, s, at) in &cases {
        let cls = classify_point(s, at);
        let cert = expect_periodic(&cls)?;
        let report = find_candidates(s, nmax).map_err(|e| e.to_string())?;
        let hit = report
            .candidates
            .iter()
            .find(|cand| cand.cluster.center.dist(at).to_f64() <= 1e-10)
            .ok_or_else(|| format!("{name}: certified zero not found"))?;
        let predicted = cert.zero_indices(nmax as u64);
        check(hit.observed == predicted, || format!("{name}: observed {:?}, predicted {predicted:?}", hit.observed))?;
        for cand in &report.candidates {
            if let Some(cert) = cand.classification.certificate() {
                check(cand.observed == cand.predicted, || format!("{name}: candidate index mismatch"))?;
                ledger.certs.push(cert.clone());
            }
        }
    }
    let fib = spec(real_poly(&[1.0]), real_poly(&[1.0]), real_poly(&[1.0]));
    let report = find_candidates(&fib, nmax).map_err(|e| e.to_string())?;
    check(report.candidates.is_empty(), || format!("Fibonacci: {} candidates", report.candidates.len()))?;
    Ok(format!("{} specs located within 1e-10 with matching index sets; Fibonacci empty", cases.len()))
}

fn certificate_properties(ledger: &Ledger) -> Outcome {
    let cf = cfg();
    let one = ComplexValue::one(P);
    for (i, cert) in ledger.certs.iter().enumerate() {
        let ctx = |msg: String| format!("certificate #{i} at {:?}: {msg}", cert.point.to_c64());
        let (u, v) = (&cert.uv.u, &cert.uv.v);
        check((u.abs().to_f64() - 1.0).abs() <= TOL && (v.abs().to_f64() - 1.0).abs() <= TOL, || {
            ctx("off unit circle".into())
        })?;
        let vp = v.powi(cert.p).dist(&one).to_f64();
        let vr = v.powi(cert.r).dist(u).to_f64();
        check(vp <= TOL && vr <= TOL, || ctx(format!("|v^p − 1| = {vp:e}, |v^r − u| = {vr:e}")))?;
        check(cert.p >= 2 && cert.r >= 1 && cert.r < cert.p, || ctx(format!("p = {}, r = {}", cert.p, cert.r)))?;
        for j in 1..cert.p {
            check(v.powi(j).dist(&one).to_f64() > TOL, || ctx(format!("v^{j} = 1 before p")))?;
        }
        for j in 1..cert.r {
            check(v.powi(j).dist(u).to_f64() > TOL, || ctx(format!("v^{j} = u before r")))?;
        }
        let pu = rational_angle_of(u, &cf).map_err(|e| e.to_string())?.ok_or_else(|| ctx("angle of u".into()))?;
        let pv = rational_angle_of(v, &cf).map_err(|e| e.to_string())?.ok_or_else(|| ctx("angle of v".into()))?;
        check(pv.p() == cert.p && pv.p() % pu.p() == 0, || ctx(format!("p*(u) = {}, p*(v) = {}", pu.p(), pv.p())))?;
    }
    check(!ledger.certs.is_empty(), || "no certificates collected".into())?;
    Ok(format!("{} certificates satisfy every invariant", ledger.certs.len()))
}

fn identity_checks() -> Outcome {
    let cf = cfg();
    let mut arg_checked = 0;
    let mut tan_checked = 0;
    let mut specs: Vec<(SequenceSpec, ComplexValue)> =
        vec![(example_one(), ComplexValue::cis_pi(1, 6, P)), example_complex()];
    for (k, a, b) in family_cases() {
        let fam = make_family_spec(&pi_over(k), &Real::from_f64(a, P), &Real::from_f64(b, P), &cf)
            .map_err(|e| e.to_string())?;
        specs.push((fam.spec, fam.point));
    }
    for (s, at) in &specs {
        let cls = classify_point(s, at);
        let cert = expect_periodic(&cls)?;
        if let Ok(res) = corollary_arg_check(cert, s, at) {
            check(res.residual <= TOL, || format!("arg residual {:e} at {:?}", res.residual, at.to_c64()))?;
            arg_checked += 1;
        }
        if let Ok(res) = tan_r_theta_check(s, at, cert) {
            check(res <= TOL, || format!("tan residual {res:e} at {:?}", at.to_c64()))?;
            tan_checked += 1;
        }
    }

    let fam = make_family_spec(&pi_over(3), &Real::zero(P), &Real::one(P), &cf).map_err(|e| e.to_string())?;
    let cls = classify_real_point(&fam.spec, &fam.point).map_err(|e| e.to_string())?;
    let rc = RealCertificate::from_classification(&fam.spec, &cls)
        .map_err(|e| e.to_string())?
        .ok_or("π/3 instance not periodic")?;
    let tan = (Real::from_i64(rc.certificate.r as i64, P) * &rc.theta).tan();
    let gap = (tan + Real::from_i64(3, P).sqrt()).abs().to_f64();
    check(gap <= TOL, || format!("tan(rθ) + √3 = {gap:e}"))?;
    Ok(format!("{arg_checked} arg checks, {tan_checked} tan checks within 1e-20; tan(2π/3) = −√3"))
}

fn real_dichotomy(ledger: &mut Ledger) -> Outcome {
    let s = spec(real_poly(&[0.0, 1.0]), real_poly(&[1.0]), real_poly(&[0.0, 1.0]));
    let origin = c(0.0, 0.0);
    let cls = classify_real_point(&s, &origin).map_err(|e| e.to_string())?;
    let cert = expect_periodic(&cls)?;
    check((cert.p, cert.r) == (2, 1), || format!("p = {}, r = {}", cert.p, cert.r))?;
    let observed = observed_zeros(&s, &origin, 41);
    let odd: Vec<u64> = (1..=41).step_by(2).collect();
    check(observed == odd, || format!("zero indices {observed:?}"))?;
    ledger.certs.push(cert.clone());
    Ok("zeros exactly at odd n ≤ 41".into())
}

fn degenerate_branch() -> Outcome {
    let origin = c(0.0, 0.0);
    let s = spec(real_poly(&[1.0]), real_poly(&[0.0, 1.0]), real_poly(&[1.0]));
    let cls = classify_point(&s, &origin);
    check(!cls.is_common_zero(), || format!("A = 1, B = z, W1 = 1: {:?}", cls.verdict))?;
    check(observed_zeros(&s, &origin, 20).is_empty(), || "A = 1, B = z, W1 = 1 vanishes somewhere".into())?;

    let s = spec(real_poly(&[0.0, 1.0]), real_poly(&[0.0, 1.0]), real_poly(&[0.0, 1.0]));
    let cls = classify_point(&s, &origin);
    check(matches!(cls.verdict, Verdict::Degenerate { first_zero_index: 1 }), || format!("{:?}", cls.verdict))?;
    let ws = recurrence_eval(&s, &origin, 20);
    check(ws[1..].iter().all(ComplexValue::is_zero), || "W_n(0) ≠ 0 for some 1 ≤ n ≤ 20".into())?;
    Ok("nonvanishing rejected; A = B = W1 = z degenerate from n = 1".into())
}

fn main() -> ExitCode {
    let mut ledger = Ledger { certs: Vec::new() };
    let mut results: Vec<(&str, Outcome)> = vec![
        ("example eg1", example_one_reproduction(&mut ledger)),
        ("complex-coefficient example", complex_example_reproduction(&mut ledger)),
        ("r = 2 family", family_reproduction(&mut ledger)),
        ("oracle equivalence", oracle_equivalence()),
        ("search cross-validation", search_cross_validation(&mut ledger)),
    ];
    let identities = identity_checks();
    let dichotomy = real_dichotomy(&mut ledger);
    let degenerate = degenerate_branch();
    // The property suite runs last so it sees every certificate produced.
    results.push(("certificate properties", certificate_properties(&ledger)));
    results.extend([("identity checks", identities), ("real dichotomy", dichotomy), ("degenerate branch", degenerate)]);

    let mut failed = 0;
    for (i, (name, outcome)) in results.into_iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
