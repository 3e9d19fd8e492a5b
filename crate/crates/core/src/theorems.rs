//! Executable checks of the mixture theorems, plus the bipartition
//! enumeration that independently confirms genuineness claims.
//!
//! - Theorem 1: mixtures of `M < d` states with maximally mixed one-qudit
//!   marginals are detected by the purity criterion.
//! - Theorem 2: with `M = d`, detection holds everywhere except at uniform
//!   weights over pairwise-orthogonal components.
//! - Theorem 3: if every component has separable one-drop reductions and
//!   every single subsystem witnesses the criterion, every bipartition is
//!   entangled.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{bipartitions, purity_criterion};
use crate::error::{Error, Result};
use crate::mixtures::{
    build_mixture, gram_overlaps, membership_m, membership_n, mixture_purity,
    purity_orthogonal_floor, MixtureSpec, Ternary,
};
use crate::random::{orthonormal_m_class_states, random_weights, trial_rng};
use crate::tensor::{partial_trace, purity, DensityMatrix};
use crate::tol::EPS_CRIT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem2")]
    Theorem2,
    #[serde(rename = "theorem3")]
    Theorem3,
}

impl TheoremId {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(TheoremId::Theorem1),
            2 => Ok(TheoremId::Theorem2),
            3 => Ok(TheoremId::Theorem3),
            _ => Err(Error::param(format!("theorem must be 1, 2 or 3, got {n}"))),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            TheoremId::Theorem1 => 1,
            TheoremId::Theorem2 => 2,
            TheoremId::Theorem3 => 3,
        };
        write!(f, "theorem {n}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Hypotheses hold and the conclusion was observed.
    Confirmed,
    /// Hypotheses do not hold; no claim is made.
    HypothesesNotMet,
    /// A hypothesis could not be decided (certifier inconclusive, or the
    /// spec sits within the decision margin of an excluded point).
    Unknown,
    /// Hypotheses hold but the conclusion failed: a counterexample or a bug.
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genuineness {
    Genuine,
    /// No claim either way.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub hypotheses_hold: bool,
    pub conclusion_observed: bool,
    pub outcome: Outcome,
    /// Only reported for theorem 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genuineness: Option<Genuineness>,
    pub details: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl TheoremVerdict {
    fn new(theorem: TheoremId, hypotheses_hold: bool, conclusion_observed: bool) -> Self {
        let outcome = match (hypotheses_hold, conclusion_observed) {
            (true, true) => Outcome::Confirmed,
            (true, false) => Outcome::Violated,
            (false, _) => Outcome::HypothesesNotMet,
        };
        TheoremVerdict {
            theorem,
            hypotheses_hold,
            conclusion_observed,
            outcome,
            genuineness: None,
            details: BTreeMap::new(),
            notes: Vec::new(),
            seed: None,
        }
    }

    fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }
}

fn require_m_class(spec: &MixtureSpec) -> Result<()> {
    for (k, phi) in spec.states().iter().enumerate() {
        if !membership_m(phi) {
            return Err(Error::Hypothesis(format!(
                "component {} does not have maximally mixed one-qudit marginals",
                k + 1
            )));
        }
    }
    Ok(())
}

fn common_details(v: TheoremVerdict, spec: &MixtureSpec, rho: &DensityMatrix) -> TheoremVerdict {
    let floor = purity_orthogonal_floor(spec.weights());
    v.detail("m", spec.len() as f64)
        .detail("d", spec.shape().d() as f64)
        .detail("n", spec.shape().n() as f64)
        .detail("purity", purity(rho))
        .detail("mixture_purity", mixture_purity(spec))
        .detail("orthogonal_floor", floor)
        .detail("marginal_bound", 1.0 / spec.shape().d() as f64)
}

/// Theorem 1: `d > M` implies detection.
pub fn check_theorem1(spec: &MixtureSpec) -> Result<TheoremVerdict> {
    require_m_class(spec)?;
    let rho = build_mixture(spec);
    let detected = purity_criterion(&rho)?.detected;
    let v = TheoremVerdict::new(TheoremId::Theorem1, spec.shape().d() > spec.len(), detected);
    Ok(common_details(v, spec, &rho))
}

/// Squared distance from the excluded point, in purity units:
/// `sum_k (w_k - 1/M)^2 + sum_{k != l} w_k w_l G_kl`.
///
/// Algebraically this is `P - 1/M`, but it is computed from the weights
/// and overlaps only.
pub fn excluded_point_distance(spec: &MixtureSpec) -> f64 {
    let m = spec.len() as f64;
    let w = spec.weights();
    let g = gram_overlaps(spec);
    let spread: f64 = w.iter().map(|x| (x - 1.0 / m).powi(2)).sum();
    let mut cross = 0.0;
    for k in 0..w.len() {
        for l in 0..w.len() {
            if k != l {
                cross += w[k] * w[l] * g[(k, l)];
            }
        }
    }
    spread + cross
}

/// Excluded-point tolerance: purity must equal `1/d` to this precision.
const EXCLUDED_TOL: f64 = 1e-12;
/// Specs farther than this from the excluded point must be detected.
const RESOLVED_DISTANCE: f64 = 10.0 * EPS_CRIT;

/// Theorem 2: `M = d` implies detection except at uniform weights over
/// orthogonal components, where the purity is exactly `1/d`.
pub fn check_theorem2(spec: &MixtureSpec) -> Result<TheoremVerdict> {
    let (m, d) = (spec.len(), spec.shape().d());
    if m != d {
        return Err(Error::Hypothesis(format!("theorem 2 needs M = d, got M = {m}, d = {d}")));
    }
    require_m_class(spec)?;
    let rho = build_mixture(spec);
    let report = purity_criterion(&rho)?;
    let distance = excluded_point_distance(spec);
    let p = purity(&rho);

    let mut v = if distance > RESOLVED_DISTANCE {
        TheoremVerdict::new(TheoremId::Theorem2, true, report.detected)
    } else if distance <= EXCLUDED_TOL {
        let mut v = TheoremVerdict::new(TheoremId::Theorem2, false, report.detected);
        let gap = (p - 1.0 / d as f64).abs();
        if gap > EXCLUDED_TOL || report.detected {
            v.outcome = Outcome::Violated;
            v.notes.push(format!("excluded point: purity differs from 1/d by {gap:e}"));
        } else {
            v.notes.push("excluded point: uniform weights over orthogonal components".into());
        }
        v
    } else {
        let mut v = TheoremVerdict::new(TheoremId::Theorem2, false, report.detected);
        v.outcome = Outcome::Unknown;
        v.notes
            .push("spec lies within the decision margin of the excluded point".into());
        v
    };
    v = common_details(v, spec, &rho).detail("excluded_point_distance", distance);
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartitionEntry {
    pub subset: Vec<usize>,
    pub complement: Vec<usize>,
    pub subset_purity: f64,
    /// `subset_purity < tr rho^2` beyond the decision margin.
    pub entangled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartitionReport {
    pub whole_purity: f64,
    pub partitions: Vec<BipartitionEntry>,
    pub all_entangled: bool,
}

/// Purity criterion on every unordered bipartition `{S, S^c}` (listed as
/// the side containing subsystem 1).
pub fn bipartition_scan(rho: &DensityMatrix) -> Result<BipartitionReport> {
    let n = rho.shape().n();
    if n < 2 {
        return Err(Error::contract("bipartitions need at least two subsystems"));
    }
    let whole = purity(rho);
    let partitions = bipartitions(n)
        .into_par_iter()
        .map(|s| {
            let p = purity(&partial_trace(rho, &s)?);
            Ok(BipartitionEntry {
                complement: s.complement(n).labels().to_vec(),
                subset: s.labels().to_vec(),
                subset_purity: p,
                entangled: p < whole - EPS_CRIT,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_entangled = partitions.iter().all(|e| e.entangled);
    Ok(BipartitionReport {
        whole_purity: whole,
        partitions,
        all_entangled,
    })
}

/// Theorem 3: separable one-drop reductions for every component plus
/// detection at every subsystem imply genuine multipartite entanglement.
pub fn check_theorem3(spec: &MixtureSpec) -> Result<TheoremVerdict> {
    let n = spec.shape().n();
    if n < 3 {
        return Err(Error::Hypothesis(format!("theorem 3 needs N >= 3, got N = {n}")));
    }
    let memberships: Vec<Ternary> = spec.states().iter().map(membership_n).collect::<Result<_>>()?;
    let rho = build_mixture(spec);
    let report = purity_criterion(&rho)?;
    let scan = bipartition_scan(&rho)?;

    let any_no = memberships.contains(&Ternary::No);
    let any_unknown = memberships.contains(&Ternary::Unknown);
    let hypotheses = !any_no && !any_unknown && report.all_witnesses();
    let mut v = TheoremVerdict::new(TheoremId::Theorem3, hypotheses, scan.all_entangled);
    if !any_no && any_unknown && report.all_witnesses() {
        v.outcome = Outcome::Unknown;
    }
    v.genuineness = Some(if v.outcome == Outcome::Confirmed {
        Genuineness::Genuine
    } else {
        Genuineness::Unknown
    });
    for (k, mem) in memberships.iter().enumerate() {
        v.notes.push(format!("component {}: separable one-drop reductions = {mem}", k + 1));
    }
    let min_gap = scan
        .partitions
        .iter()
        .map(|e| scan.whole_purity - e.subset_purity)
        .fold(f64::INFINITY, f64::min);
    v = common_details(v, spec, &rho)
        .detail("witness_count", report.witnesses.len() as f64)
        .detail("min_bipartition_gap", min_gap);
    Ok(v)
}

/// `mixture_purity - orthogonal_floor`; non-negative, zero iff orthogonal.
pub fn overlap_gap(spec: &MixtureSpec) -> f64 {
    mixture_purity(spec) - purity_orthogonal_floor(spec.weights())
}

pub fn check_theorem(theorem: TheoremId, spec: &MixtureSpec) -> Result<TheoremVerdict> {
    match theorem {
        TheoremId::Theorem1 => check_theorem1(spec),
        TheoremId::Theorem2 => check_theorem2(spec),
        TheoremId::Theorem3 => check_theorem3(spec),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub theorem: TheoremId,
    pub trials: usize,
    pub seed: u64,
    pub confirmed: usize,
    pub hypotheses_not_met: usize,
    pub unknown: usize,
    pub violated: usize,
    /// Fraction of trials with hypotheses holding where the conclusion held.
    pub detection_rate: f64,
    pub verdicts: Vec<TheoremVerdict>,
}

/// Random spec for one fuzz trial of the given theorem.
///
/// - Theorem 1: `N` in {2, 3}, `d` in {3, 4, 5}, `2 <= M < d`, orthonormal
///   generalized-GHZ components under a common random local unitary.
/// - Theorem 2: `d = M` in {2, 3}, orthonormal components; weights are
///   uniform, or uniform plus a perturbation of at least 1e-3.
/// - Theorem 3: `N` in {3, 4}, `d` in {2, 3}, unrotated generalized-GHZ
///   components (their one-drop reductions are diagonal).
pub fn fuzz_spec(theorem: TheoremId, seed: u64, trial: u64) -> Result<(u64, MixtureSpec)> {
    let (trial_seed, mut rng) = trial_rng(seed, trial);
    use rand::Rng;
    let spec = match theorem {
        TheoremId::Theorem1 => {
            let n = rng.random_range(2..=3);
            let d = rng.random_range(3..=5);
            let m = rng.random_range(2..d);
            let states = orthonormal_m_class_states(n, d, m, true, &mut rng)?;
            MixtureSpec::new(random_weights(m, &mut rng), states)?
        }
        TheoremId::Theorem2 => {
            let d = rng.random_range(2..=3);
            let n = rng.random_range(2..=3);
            let states = orthonormal_m_class_states(n, d, d, true, &mut rng)?;
            let mut w = vec![1.0 / d as f64; d];
            if rng.random_bool(0.5) {
                let delta = rng.random_range(1e-3..0.9 / d as f64);
                let (a, b) = (rng.random_range(0..d), rng.random_range(0..d - 1));
                let b = if b >= a { b + 1 } else { b };
                w[a] += delta;
                w[b] -= delta;
            }
            MixtureSpec::new(w, states)?
        }
        TheoremId::Theorem3 => {
            let n = rng.random_range(3..=4);
            let d = rng.random_range(2..=3);
            let m = rng.random_range(2..=4);
            let states = orthonormal_m_class_states(n, d, m, false, &mut rng)?;
            MixtureSpec::new(random_weights(m, &mut rng), states)?
        }
    };
    Ok((trial_seed, spec))
}

/// Runs `trials` random checks in parallel; results are in trial order.
pub fn fuzz_theorem(theorem: TheoremId, trials: usize, seed: u64) -> Result<FuzzSummary> {
    let verdicts = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (trial_seed, spec) = fuzz_spec(theorem, seed, t)?;
            let mut v = check_theorem(theorem, &spec)?;
            v.seed = Some(trial_seed);
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |o: Outcome| verdicts.iter().filter(|v| v.outcome == o).count();
    let confirmed = count(Outcome::Confirmed);
    let violated = count(Outcome::Violated);
    let applicable = verdicts.iter().filter(|v| v.hypotheses_hold).count();
    Ok(FuzzSummary {
        theorem,
        trials,
        seed,
        confirmed,
        hypotheses_not_met: count(Outcome::HypothesesNotMet),
        unknown: count(Outcome::Unknown),
        violated,
        detection_rate: if applicable == 0 {
            0.0
        } else {
            verdicts.iter().filter(|v| v.hypotheses_hold && v.conclusion_observed).count() as f64
                / applicable as f64
        },
        verdicts,
    })
}
