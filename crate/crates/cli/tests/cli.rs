use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_commonzero"))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn exit_codes() {
    let eg1 = fixture("eg1.json");
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "--spec", &eg1, "--point", "1@1/6"], 0),
        (&["classify", "--spec", &eg1, "--point", "1@-1/6"], 0),
        (&["classify", "--spec", &eg1, "--point", "2,0"], 1),
        (&["classify", "--spec", "/nonexistent/spec.json", "--point", "0"], 2),
        (&["classify", "--spec", &eg1, "--point", "1@x"], 2),
        (&["classify", "--spec", &eg1], 2),
        (&["classify", "--spec", &eg1, "--point", "0", "--precision", "8"], 2),
        (&["classify", "--spec", &fixture("ccoeff.json"), "--point", "0", "--real"], 2),
        (&["sequence", "--spec", &eg1, "--point", "2,0"], 0),
        (&["examples", "--list"], 0),
        (&["examples", "--perturb", "nope"], 2),
    ];
    for (args, code) in cases {
        assert_eq!(run(args).status.code(), Some(*code), "{args:?}");
    }
}

#[test]
fn negative_verdict_names_the_reason() {
    let out = run(&["classify", "--spec", &fixture("eg1.json"), "--point", "2,0"]);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "not-common-zero");
    assert!(v["reason"].as_str().is_some_and(|r| !r.is_empty()));
    assert!(v.get("certificate").is_none());
}

#[test]
fn rejected_point_never_vanishes() {
    let rows = sequence_rows("eg1.json", "2,0", "101");
    let flags: Vec<bool> =
        rows.windows(3).map(|w| w[1].3 <= 1e-20 * w.iter().map(|r| r.3).fold(0.0, f64::max)).collect();
    assert!(flags.iter().all(|&f| !f), "some W_n with n <= 100 vanishes at 2");
}

#[test]
fn scan_of_constant_coefficients_is_empty() {
    let out = run(&["scan", "--spec", &fixture("fibonacci.json"), "--nmax", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["candidates"], serde_json::json!([]));
}

#[test]
fn scan_csv_lists_confirmed_candidates() {
    let out = run(&["scan", "--spec", &fixture("family-pi6-a1-b2.json"), "--nmax", "14", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let at_one = rows.iter().find(|r| (r[0].parse::<f64>().unwrap() - 1.0).abs() < 1e-10).expect("row at 1");
    assert_eq!((&at_one[2], &at_one[3], &at_one[4], &at_one[5]), ("periodic", "6", "2", "2 8 14"));
}

#[test]
fn missing_file_diagnostic_names_the_flag() {
    let out = run(&["classify", "--spec", "/nonexistent/spec.json", "--point", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--spec"));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--spec", &fixture("ccoeff.json"), "--point", "0.5@1/3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!((v["certificate"]["p"].as_u64(), v["certificate"]["r"].as_u64()), (Some(4), Some(2)));
}

#[test]
fn real_criterion_reports_theta() {
    let out = run(&["classify", "--spec", &fixture("family-pi6-a1-b2.json"), "--point", "1", "--real"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let theta: f64 = v["real"]["theta"].as_str().unwrap().parse().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    let tan: f64 = v["identities"]["tan_check"]["residual"].as_str().unwrap().parse().unwrap();
    assert!(tan < 1e-20);
}

#[test]
fn dump_spec_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let dumped = dir.path().join("eg1.json");
    let dumped = dumped.to_str().unwrap();
    let out = run(&["classify", "--spec", &fixture("eg1.json"), "--dump-spec", "--out", dumped]);
    assert_eq!(out.status.code(), Some(0));
    let again = dir.path().join("again.json");
    let again = again.to_str().unwrap();
    run(&["classify", "--spec", dumped, "--dump-spec", "--out", again]);
    assert_eq!(std::fs::read(dumped).unwrap(), std::fs::read(again).unwrap());

    let original = run(&["classify", "--spec", &fixture("eg1.json"), "--point", "1@1/6"]);
    let reloaded = run(&["classify", "--spec", dumped, "--point", "1@1/6"]);
    assert_eq!(json_of(&original)["certificate"], json_of(&reloaded)["certificate"]);
}

#[test]
fn scan_finds_the_family_zero() {
    let dir = tempfile::tempdir().unwrap();
    let roots = dir.path().join("roots.csv");
    let out =
        run(&["scan", "--spec", &fixture("family-pi6-a1-b2.json"), "--nmax", "14", "--roots", roots.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let hit = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| {
            let re: f64 = c["center"]["re"].as_str().unwrap().parse().unwrap();
            let im: f64 = c["center"]["im"].as_str().unwrap().parse().unwrap();
            (re - 1.0).abs() < 1e-10 && im.abs() < 1e-10
        })
        .expect("candidate at 1");
    assert_eq!(hit["status"], "confirmed");
    assert_eq!(hit["observed"], serde_json::json!([2, 8, 14]));

    // W_n has degree n here, so the roots file holds 1 + 2 + … + 14 rows.
    let mut rdr = csv::Reader::from_path(&roots).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["n", "re", "im"]);
    assert_eq!(rdr.records().count(), (1..=14).sum::<usize>());
}

#[test]
fn scan_witness_lists_outside_indices() {
    let out = run(&["scan", "--spec", &fixture("eg1.json"), "--nmax", "12", "--witness"]);
    let v = json_of(&out);
    let periodic: Vec<&Value> =
        v["candidates"].as_array().unwrap().iter().filter(|c| c["verdict"] == "periodic").collect();
    assert!(!periodic.is_empty());
    for c in periodic {
        let entries = c["witness"]["entries"].as_array().unwrap();
        let observed: Vec<u64> = c["observed"].as_array().unwrap().iter().map(|n| n.as_u64().unwrap()).collect();
        assert!(!entries.is_empty());
        assert!(entries.iter().all(|e| !observed.contains(&e["index"].as_u64().unwrap())));
    }
}

fn sequence_rows(spec: &str, point: &str, nmax: &str) -> Vec<(u64, f64, f64, f64)> {
    let out = run(&["sequence", "--spec", &fixture(spec), "--point", point, "--nmax", nmax]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["n", "re", "im", "abs"]);
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap(), r[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn sequence_vanishes_on_the_residue_class() {
    let rows = sequence_rows("ccoeff.json", "0.5@1/3", "12");
    assert_eq!(rows.len(), 13);
    let scale = rows.iter().map(|r| r.3).fold(0.0, f64::max);
    for &(n, _, _, abs) in &rows {
        assert_eq!(abs <= 1e-25 * scale, n % 4 == 2, "n = {n}, |W| = {abs}");
    }
}

#[test]
fn sequence_of_fibonacci_is_integral() {
    let rows = sequence_rows("fibonacci.json", "3", "20");
    let (mut a, mut b) = (1.0, 1.0);
    for &(n, re, im, _) in &rows {
        let want = if n <= 1 {
            1.0
        } else {
            (a, b) = (b, a + b);
            b
        };
        assert_eq!((re, im), (want, 0.0), "n = {n}");
    }
}

#[test]
fn examples_pass_and_perturbation_fails() {
    let out = run(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);

    let out = run(&["examples", "--perturb", "family-pi6-a1-b2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].contains("family-pi6-a1-b2"));
}
