//! `commonzero`: classify candidate common zeros of `W_n = A·W_{n−1} + B·W_{n−2}`,
//! print the sequence at a point, or search for common zeros numerically.
//!
//! Exit status is 0 for success or an affirmative verdict, 1 for a negative
//! verdict and 2 for any error.

mod golden;
mod point;
mod report;
mod specfile;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use commonzero::characterize::{
    classify_point, classify_real_point, corollary_arg_check, tan_r_theta_check, Classification, RealCase,
    RealCertificate,
};
use commonzero::polyseq::{recurrence_eval, vanishing_flags, SequenceSpec};
use commonzero::search::{find_candidates_with, limit_point_witness, CandidateStatus, SearchConfig};

use specfile::{Overrides, SpecFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {field}: {msg}")]
    Input { field: String, msg: String },
    #[error("{0}")]
    Core(#[from] commonzero::error::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser)]
#[command(name = "commonzero", version, about = "Common zeros of order-two polynomial recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point is a common zero and print its certificate.
    Classify(ClassifyArgs),
    /// Print W_0..W_nmax at a point.
    Sequence(SequenceArgs),
    /// Search for common zeros among the roots of W_1..W_nmax.
    Scan(ScanArgs),
    /// Run the embedded suite of worked examples.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// JSON spec file with A, B and W1.
    #[arg(long)]
    spec: String,
    /// Mantissa bits, overriding the file.
    #[arg(long)]
    precision: Option<usize>,
    /// Largest denominator accepted for a rational angle.
    #[arg(long)]
    qmax: Option<u64>,
    /// Relative tolerance for deciding that a value vanishes.
    #[arg(long)]
    tol: Option<f64>,
    /// Print the parsed spec as canonical JSON and exit.
    #[arg(long)]
    dump_spec: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<String>,
    /// Add wall-clock timings to the report.
    #[arg(long)]
    timing: bool,
}

impl SpecArgs {
    fn load(&self) -> Result<SequenceSpec, CliError> {
        let over = Overrides { precision_bits: self.precision, angle_qmax: self.qmax, zero_tol: self.tol };
        SpecFile::read(&self.spec)?.to_spec(&over)
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: SpecArgs,
    /// `re,im`, `r@q/p` for r·e^(iπq/p), or a real number.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Apply the real-coefficient criterion at a real point.
    #[arg(long)]
    real: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SequenceArgs {
    #[command(flatten)]
    common: SpecArgs,
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, default_value_t = 24)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: SpecArgs,
    #[arg(long, default_value_t = 12)]
    nmax: usize,
    /// Cluster radius for roots of different W_n.
    #[arg(long, default_value_t = commonzero::search::DEFAULT_CLUSTER_TOL)]
    cluster_tol: f64,
    /// Stop before the first W_n whose degree exceeds this.
    #[arg(long, default_value_t = commonzero::search::DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// Write every root as CSV rows `n,re,im`.
    #[arg(long)]
    roots: Option<String>,
    /// For each confirmed periodic zero, list the nearest root of every
    /// W_n outside its residue class.
    #[arg(long)]
    witness: bool,
    /// `csv` prints one row per confirmed candidate instead of the report.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ExamplesArgs {
    /// List the suite without running it.
    #[arg(long)]
    list: bool,
    /// Nudge A of the named entry; that entry is then expected to fail.
    #[arg(long)]
    perturb: Option<String>,
}

fn emit(out: Option<&str>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dump_spec(args: &SpecArgs) -> Result<ExitCode, CliError> {
    let spec = args.load()?;
    let mut text = SpecFile::from_spec(&spec).to_json();
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn required_point(point: &Option<String>) -> Result<&str, CliError> {
    point.as_deref().ok_or_else(|| CliError::Input { field: "--point".into(), msg: "required".into() })
}

fn verdict_code(cls: &Classification) -> ExitCode {
    if cls.is_common_zero() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn classify(args: &ClassifyArgs) -> Result<ExitCode, CliError> {
    if args.common.dump_spec {
        return dump_spec(&args.common);
    }
    let started = Instant::now();
    let spec = args.common.load()?;
    let c = point::parse_point(required_point(&args.point)?, spec.prec())?;
    let cls = if args.real { classify_real_point(&spec, &c)? } else { classify_point(&spec, &c) };
    let digits = spec.cfg().report_digits();

    let mut rec = report::settings(spec.cfg());
    rec.insert("command".into(), json!("classify"));
    rec.insert("criterion".into(), json!(if args.real { "real" } else { "complex" }));
    rec.extend(report::classification(&cls, digits));

    if let Some(cert) = cls.certificate() {
        let mut ids = Map::new();
        match corollary_arg_check(cert, &spec, &c) {
            Ok(chk) => {
                ids.insert("arg_check".into(), json!({ "residual": report::residual(chk.residual), "q": chk.q }));
            }
            Err(e) => {
                ids.insert("arg_check".into(), json!({ "skipped": e.to_string() }));
            }
        }
        if args.real {
            match tan_r_theta_check(&spec, &c, cert) {
                Ok(res) => ids.insert("tan_check".into(), json!({ "residual": report::residual(res) })),
                Err(e) => ids.insert("tan_check".into(), json!({ "skipped": e.to_string() })),
            };
            if let Some(rc) = RealCertificate::from_classification(&spec, &cls)? {
                let case = match rc.case {
                    RealCase::DeltaPositiveAZero => "delta-positive-a-zero",
                    RealCase::DeltaNegativeAngular => "delta-negative",
                };
                rec.insert("real".into(), json!({ "theta": report::real(&rc.theta, digits), "case": case }));
            }
        }
        rec.insert("identities".into(), Value::Object(ids));
    }
    if args.common.timing {
        rec.insert("timing_ms".into(), json!(started.elapsed().as_secs_f64() * 1e3));
    }
    emit(args.common.out.as_deref(), &report::render(&Value::Object(rec)))?;
    Ok(verdict_code(&cls))
}

fn sequence(args: &SequenceArgs) -> Result<ExitCode, CliError> {
    if args.common.dump_spec {
        return dump_spec(&args.common);
    }
    let spec = args.common.load()?;
    let c = point::parse_point(required_point(&args.point)?, spec.prec())?;
    let digits = spec.cfg().report_digits();
    let values = recurrence_eval(&spec, &c, args.nmax);
    let rows = values.iter().enumerate().map(|(n, w)| {
        [n.to_string(), w.re.to_sci_string(digits), w.im.to_sci_string(digits), w.abs().to_sci_string(digits)]
    });

    let text = match args.format {
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(["n", "re", "im", "abs"])?;
            for row in rows {
                wtr.write_record(&row)?;
            }
            String::from_utf8(wtr.into_inner().map_err(|e| e.into_error())?).expect("csv output is UTF-8")
        }
        Format::Json => {
            let flags = vanishing_flags(&values, spec.cfg().zero_tol());
            let rows: Vec<Value> = rows
                .zip(flags)
                .map(|([n, re, im, abs], zero)| {
                    json!({ "n": n.parse::<u64>().expect("index"), "re": re, "im": im, "abs": abs, "vanishes": zero })
                })
                .collect();
            let mut rec = report::settings(spec.cfg());
            rec.insert("command".into(), json!("sequence"));
            rec.insert("point".into(), report::complex(&c, digits));
            rec.insert("values".into(), Value::Array(rows));
            report::render(&Value::Object(rec))
        }
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn status_name(s: &CandidateStatus) -> &'static str {
    match s {
        CandidateStatus::Confirmed => "confirmed",
        CandidateStatus::IndexMismatch => "index-mismatch",
        CandidateStatus::Rejected(_) => "rejected",
    }
}

fn scan(args: &ScanArgs) -> Result<ExitCode, CliError> {
    if args.common.dump_spec {
        return dump_spec(&args.common);
    }
    let started = Instant::now();
    let spec = args.common.load()?;
    let digits = spec.cfg().report_digits();
    let search = SearchConfig { cluster_tol: args.cluster_tol, max_degree: args.max_degree };
    let found = find_candidates_with(&spec, args.nmax, &search)?;

    if let Some(path) = &args.roots {
        let mut wtr = csv::Writer::from_path(path)?;
        wtr.write_record(["n", "re", "im"])?;
        for set in &found.zero_sets {
            for z in &set.roots {
                wtr.write_record([set.index.to_string(), z.re.to_sci_string(digits), z.im.to_sci_string(digits)])?;
            }
        }
        wtr.flush()?;
    }

    if let Format::Csv = args.format {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["re", "im", "verdict", "p", "r", "indices"])?;
        for cand in found.confirmed() {
            let (verdict, p, r) = match cand.classification.certificate() {
                Some(cert) => ("periodic", cert.p.to_string(), cert.r.to_string()),
                None => ("degenerate", String::new(), String::new()),
            };
            let indices: Vec<String> = cand.observed.iter().map(u64::to_string).collect();
            let center = &cand.cluster.center;
            wtr.write_record([
                center.re.to_sci_string(digits),
                center.im.to_sci_string(digits),
                verdict.to_string(),
                p,
                r,
                indices.join(" "),
            ])?;
        }
        let text = String::from_utf8(wtr.into_inner().map_err(|e| e.into_error())?).expect("csv output is UTF-8");
        emit(args.common.out.as_deref(), &text)?;
        return Ok(ExitCode::SUCCESS);
    }

    let (mut confirmed, mut others) = (Vec::new(), Vec::new());
    for cand in &found.candidates {
        let mut rec = report::classification(&cand.classification, digits);
        rec.insert("center".into(), report::complex(&cand.cluster.center, digits));
        rec.insert("radius".into(), report::real(&cand.cluster.radius, digits));
        rec.insert("observed".into(), json!(cand.observed));
        rec.insert("predicted".into(), json!(cand.predicted));
        rec.insert("status".into(), json!(status_name(&cand.status)));
        if args.witness && cand.status == CandidateStatus::Confirmed {
            let w = match limit_point_witness(&spec, &cand.classification, found.nmax) {
                Ok(w) => {
                    let entries: Vec<Value> = w
                        .entries
                        .iter()
                        .map(|e| json!({ "index": e.index, "distance": report::real(&e.distance, digits) }))
                        .collect();
                    json!({ "entries": entries, "closest": w.closest().map(|e| e.index), "note": w.note })
                }
                Err(e) => json!({ "skipped": e.to_string() }),
            };
            rec.insert("witness".into(), w);
        }
        if cand.status == CandidateStatus::Confirmed {
            confirmed.push(Value::Object(rec));
        } else {
            others.push(Value::Object(rec));
        }
    }

    let mut rec = report::settings(spec.cfg());
    rec.insert("command".into(), json!("scan"));
    rec.insert("requested_nmax".into(), json!(found.requested_nmax));
    rec.insert("nmax".into(), json!(found.nmax));
    rec.insert("cluster_tol".into(), report::residual(args.cluster_tol));
    rec.insert("identically_zero".into(), json!(found.identically_zero));
    rec.insert("candidates".into(), Value::Array(confirmed));
    // Shared roots that failed classification or disagreed with the
    // predicted indices, kept for diagnosis.
    rec.insert("unconfirmed".into(), Value::Array(others));
    if args.common.timing {
        rec.insert("timing_ms".into(), json!(started.elapsed().as_secs_f64() * 1e3));
    }
    emit(args.common.out.as_deref(), &report::render(&Value::Object(rec)))?;
    Ok(ExitCode::SUCCESS)
}

fn examples(args: &ExamplesArgs) -> Result<ExitCode, CliError> {
    if let Some(name) = &args.perturb {
        if golden::find(name).is_none() {
            return Err(CliError::Input { field: "--perturb".into(), msg: format!("no example named '{name}'") });
        }
    }
    let mut out = String::new();
    if args.list {
        for g in golden::SUITE {
            let crit = if g.real { "real" } else { "complex" };
            out.push_str(&format!("{:<18} point {:<8} {crit:<7} (p, r) = {:?}\n", g.name, g.point, g.expected));
        }
        emit(None, &out)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut all = true;
    for g in golden::SUITE {
        let perturb = args.perturb.as_deref() == Some(g.name);
        let o = golden::run(g, perturb)?;
        all &= o.passed;
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let note = if perturb { " [perturbed]" } else { "" };
        out.push_str(&format!("{tag} {}{note}: {}\n", o.name, o.detail));
    }
    emit(None, &out)?;
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => classify(a),
        Command::Sequence(a) => sequence(a),
        Command::Scan(a) => scan(a),
        Command::Examples(a) => examples(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
