//! Brute-force cross-check of the pointwise criterion: expand every `W_n(z)`,
//! find all roots, and group roots shared by several indices.

mod cluster;
mod roots;

use rayon::prelude::*;

use crate::characterize::{classify_point, Classification, Rejection, Verdict};
use crate::error::{precondition, Result};
use crate::numerics::{ComplexValue, Real};
use crate::polyseq::{Polynomial, SequenceSpec};

pub use cluster::{cluster_points, ZeroCluster};
pub use roots::roots_of;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEGREE: usize = 2000;

/// The roots of one `W_n`, with multiplicity.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub index: u64,
    pub roots: Vec<ComplexValue>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub cluster_tol: f64,
    /// Expansion stops before the first `W_n` of higher degree.
    pub max_degree: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { cluster_tol: DEFAULT_CLUSTER_TOL, max_degree: DEFAULT_MAX_DEGREE }
    }
}

/// `W_0, …, W_nmax` as explicit polynomials.
///
/// A bound on each coefficient's magnitude is carried alongside, built from
/// the absolute values of the summands; coefficients below `zero_tol` times
/// that bound are cancellation residue and are set to zero, which also keeps
/// the degree honest.
pub fn expand_wn(spec: &SequenceSpec, nmax: usize) -> Vec<Polynomial> {
    let cfg = spec.cfg();
    let prec = spec.prec();
    let tol = cfg.zero_tol_real();
    let abs_of = |p: &Polynomial| -> Vec<Real> { p.coeffs().iter().map(ComplexValue::abs).collect() };
    let (a_abs, b_abs) = (abs_of(spec.a()), abs_of(spec.b()));

    let mut polys = vec![Polynomial::constant(ComplexValue::one(prec))];
    let mut bounds = vec![vec![Real::one(prec)]];
    if nmax >= 1 {
        polys.push(spec.w1().clone());
        bounds.push(abs_of(spec.w1()));
    }
    for n in 2..=nmax {
        let raw = &(spec.a() * &polys[n - 1]) + &(spec.b() * &polys[n - 2]);
        let bound = add_abs(&mul_abs(&a_abs, &bounds[n - 1], prec), &mul_abs(&b_abs, &bounds[n - 2], prec));
        let mut coeffs = raw.coeffs().to_vec();
        for (c, m) in coeffs.iter_mut().zip(&bound) {
            if !c.is_zero() && c.abs() <= &tol * m {
                *c = ComplexValue::zero(prec);
            }
        }
        let poly = Polynomial::new(coeffs);
        let mut bound = bound;
        bound.truncate(poly.coeffs().len());
        polys.push(poly);
        bounds.push(bound);
    }
    polys
}

fn mul_abs(a: &[Real], b: &[Real], prec: usize) -> Vec<Real> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Real::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn add_abs(a: &[Real], b: &[Real]) -> Vec<Real> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = &*o + s;
    }
    out
}

/// Roots of each listed `W_n`, computed in parallel and returned in the
/// order given.
fn zero_sets(polys: &[Polynomial], indices: &[u64], spec: &SequenceSpec) -> Result<Vec<ZeroSet>> {
    indices.par_iter().map(|&n| Ok(ZeroSet { index: n, roots: roots_of(&polys[n as usize], spec.cfg())? })).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    /// A common zero whose observed indices match the predicted ones.
    Confirmed,
    /// Classified as a common zero, but the roots found disagree with the
    /// predicted indices.
    IndexMismatch,
    Rejected(Rejection),
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub cluster: ZeroCluster,
    pub classification: Classification,
    /// Indices whose roots fell in the cluster.
    pub observed: Vec<u64>,
    /// Indices `≤ nmax` the classification says vanish, excluding `W_n ≡ 0`.
    pub predicted: Vec<u64>,
    pub status: CandidateStatus,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub requested_nmax: usize,
    /// Largest index searched after applying the degree cap.
    pub nmax: usize,
    pub zero_sets: Vec<ZeroSet>,
    /// Indices with `W_n ≡ 0`; every point is a root, so they are left out
    /// of clustering.
    pub identically_zero: Vec<u64>,
    pub candidates: Vec<Candidate>,
}

impl SearchReport {
    pub fn confirmed(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.status == CandidateStatus::Confirmed)
    }
}

/// [`find_candidates_with`] under the default [`SearchConfig`].
pub fn find_candidates(spec: &SequenceSpec, nmax: usize) -> Result<SearchReport> {
    find_candidates_with(spec, nmax, &SearchConfig::default())
}

/// Roots of `W_1..W_nmax` shared by at least two indices, each checked by
/// [`classify_point`] at the cluster center.
pub fn find_candidates_with(spec: &SequenceSpec, nmax: usize, search: &SearchConfig) -> Result<SearchReport> {
    if nmax < 2 {
        return Err(precondition("nmax must be at least 2"));
    }
    let mut polys = expand_wn(spec, nmax);
    let capped = polys.iter().position(|p| p.degree().is_some_and(|d| d > search.max_degree));
    let used = capped.map_or(nmax, |first_over| first_over.saturating_sub(1));
    polys.truncate(used + 1);

    let identically_zero: Vec<u64> = (1..=used as u64).filter(|&n| polys[n as usize].is_zero()).collect();
    let searched: Vec<u64> = (1..=used as u64).filter(|&n| !polys[n as usize].is_zero()).collect();
    let sets = zero_sets(&polys, &searched, spec)?;

    let points: Vec<(u64, ComplexValue)> =
        sets.iter().flat_map(|s| s.roots.iter().map(move |z| (s.index, z.clone()))).collect();
    let candidates = cluster_points(&points, search.cluster_tol)
        .into_iter()
        .filter(|cl| cl.indices().len() >= 2)
        .map(|cluster| {
            let classification = classify_point(spec, &cluster.center);
            let observed = cluster.indices();
            let predicted: Vec<u64> = classification
                .predicted_zero_indices(used as u64)
                .into_iter()
                .filter(|n| !identically_zero.contains(n))
                .collect();
            let status = match &classification.verdict {
                Verdict::NotCommonZero(why) => CandidateStatus::Rejected(why.clone()),
                _ if observed == predicted => CandidateStatus::Confirmed,
                _ => CandidateStatus::IndexMismatch,
            };
            Candidate { cluster, classification, observed, predicted, status }
        })
        .collect();

    Ok(SearchReport { requested_nmax: nmax, nmax: used, zero_sets: sets, identically_zero, candidates })
}

#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub index: u64,
    /// The root of `W_index` nearest the common zero.
    pub root: ComplexValue,
    pub distance: Real,
}

#[derive(Clone, Debug)]
pub struct LimitPointWitness {
    pub entries: Vec<WitnessEntry>,
    pub note: Option<String>,
}

impl LimitPointWitness {
    /// The entry closest to the common zero.
    pub fn closest(&self) -> Option<&WitnessEntry> {
        self.entries.iter().min_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap_or(std::cmp::Ordering::Equal))
    }
}

/// For each `n ≤ nmax` outside the residue class, the root of `W_n` nearest
/// the certified common zero.
///
/// Distances are reported as found; nothing here asserts they decrease.
pub fn limit_point_witness(spec: &SequenceSpec, cls: &Classification, nmax: usize) -> Result<LimitPointWitness> {
    let cert = match &cls.verdict {
        Verdict::Periodic(cert) => cert,
        Verdict::Degenerate { .. } => {
            return Ok(LimitPointWitness {
                entries: Vec::new(),
                note: Some("B(c) = 0: every index from the first zero on vanishes, so no witnesses apply".into()),
            })
        }
        Verdict::NotCommonZero(_) => return Err(precondition("a certified common zero is required")),
    };
    if (nmax as u64) < 3 * cert.p {
        return Err(precondition("nmax must be at least 3p"));
    }
    let polys = expand_wn(spec, nmax);
    let indices: Vec<u64> = (1..=nmax as u64)
        .filter(|&n| !cert.residue_class(n) && polys[n as usize].degree().is_some_and(|d| d >= 1))
        .collect();
    let c = &cls.point;
    let entries = zero_sets(&polys, &indices, spec)?
        .into_iter()
        .filter_map(|set| {
            let nearest = set
                .roots
                .into_iter()
                .map(|z| {
                    let d = z.dist(c);
                    (z, d)
                })
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))?;
            Some(WitnessEntry { index: set.index, root: nearest.0, distance: nearest.1 })
        })
        .collect();
    Ok(LimitPointWitness { entries, note: None })
}
