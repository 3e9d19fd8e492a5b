//! Structured reports behind the CLI: full detection reports, the Størmer
//! parameter scan and the named reproduction cases.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    classify_type, pairwise_concurrence, partial_information, ppt_all_bipartitions, ppt_test,
    purity_criterion, separability_certifier, wootters_concurrence, EntanglementType, PptResult,
    PurityReport, Separability, SeparabilityVerdict,
};
use crate::error::{Error, Result};
use crate::mixtures::{dicke_marginal, membership_n, MixtureSpec, Ternary};
use crate::tensor::{
    hermitian_eigen, partial_trace, purity, tensor_product, DensityMatrix,
    PureState, SubsystemSet,
};
use crate::theorems::{bipartition_scan, check_theorem3, BipartitionReport, Genuineness, Outcome};
use crate::zoo::{
    bell_state, bisect, dicke_state, ghz_state, stormer_detection_boundary, stormer_marginal_purity,
    stormer_purity, stormer_state, Bell, DickeParams, Sign,
};
use crate::tol::EPS_CRIT;

/// Eigenvalues below this are dropped when decomposing a state into
/// eigenvector components.
const SPECTRAL_CUTOFF: f64 = 1e-12;
/// Largest rank for which the spectral decomposition is checked for
/// genuine entanglement.
const MAX_SPECTRAL_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenuinenessVerdict {
    Genuine,
    Unknown,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenuinenessReport {
    pub verdict: GenuinenessVerdict,
    pub reason: String,
    pub bipartitions: BipartitionReport,
}

/// Everything the detectors can say about one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub n: usize,
    pub d: usize,
    pub purity: PurityReport,
    pub ppt: Vec<PptResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    pub separability: SeparabilityVerdict,
    pub entanglement_type: EntanglementType,
    /// `S(A|B)` in bits with `B` the last subsystem, for `N >= 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_information: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genuineness: Option<GenuinenessReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Runs every detector on `rho`.
///
/// Genuine multipartite entanglement (`N >= 3`) is claimed only when it is
/// proven: for a pure state, when every bipartition reduction is mixed; for
/// a mixed state, when its eigen-decomposition satisfies the hypotheses of
/// the separable-reduction theorem.
pub fn detect(rho: &DensityMatrix) -> Result<DetectionReport> {
    let sh = rho.shape();
    let purity_report = purity_criterion(rho)?;
    let ppt = ppt_all_bipartitions(rho)?;
    let concurrence = if sh.n() == 2 && sh.d() == 2 {
        Some(wootters_concurrence(rho)?)
    } else {
        None
    };
    let separability = separability_certifier(rho)?;
    let entanglement_type = classify_type(rho)?;
    let partial_information = if sh.n() >= 2 {
        Some(partial_information(rho, &SubsystemSet::single(sh.n())?)?)
    } else {
        None
    };
    let genuineness = if sh.n() >= 3 { Some(genuineness(rho)?) } else { None };

    let mut notes = Vec::new();
    if !purity_report.detected && ppt.iter().all(|p| p.holds) && separability.value == Separability::Inconclusive {
        notes.push(
            "purity criterion silent and every bipartition is PPT: bound entanglement cannot be excluded"
                .to_string(),
        );
    }
    if !purity_report.boundary.is_empty() {
        notes.push(format!(
            "marginal purity ties the whole purity within {EPS_CRIT:e} on subsystems {:?}",
            purity_report.boundary
        ));
    }
    Ok(DetectionReport {
        n: sh.n(),
        d: sh.d(),
        purity: purity_report,
        ppt,
        concurrence,
        separability,
        entanglement_type,
        partial_information,
        genuineness,
        notes,
    })
}

fn genuineness(rho: &DensityMatrix) -> Result<GenuinenessReport> {
    let scan = bipartition_scan(rho)?;
    let (vals, vecs) = hermitian_eigen(rho.matrix())?;
    let kept: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > SPECTRAL_CUTOFF).collect();
    let shape = rho.shape();

    if kept.len() == 1 {
        // a pure state is biseparable iff some bipartition reduction is pure
        let (verdict, reason) = if scan.all_entangled {
            (GenuinenessVerdict::Genuine, "pure state with mixed reductions on every bipartition".into())
        } else {
            (GenuinenessVerdict::Unknown, "pure state factorizes across some bipartition".to_string())
        };
        return Ok(GenuinenessReport { verdict, reason, bipartitions: scan });
    }
    if kept.len() > MAX_SPECTRAL_RANK {
        return Ok(GenuinenessReport {
            verdict: GenuinenessVerdict::Unknown,
            reason: format!("rank {} exceeds the decomposition limit", kept.len()),
            bipartitions: scan,
        });
    }
    let total: f64 = kept.iter().map(|&k| vals[k]).sum();
    let weights: Vec<f64> = kept.iter().map(|&k| vals[k] / total).collect();
    let states = kept
        .iter()
        .map(|&k| PureState::normalized(shape, vecs.column(k).into_owned()))
        .collect::<Result<Vec<_>>>()?;
    let spec = MixtureSpec::new(weights, states)?;
    let verdict = check_theorem3(&spec)?;
    let (v, reason) = match verdict.outcome {
        Outcome::Confirmed => (
            GenuinenessVerdict::Genuine,
            "eigen-decomposition components have separable one-drop reductions and every subsystem witnesses the purity criterion".to_string(),
        ),
        _ => (
            GenuinenessVerdict::Unknown,
            "hypotheses of the separable-reduction theorem not established for the eigen-decomposition".to_string(),
        ),
    };
    Ok(GenuinenessReport {
        verdict: v,
        reason,
        bipartitions: scan,
    })
}

/// One grid point of a parameter scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub parameter: f64,
    pub whole_purity: f64,
    /// Smallest one-subsystem marginal purity.
    pub marginal_purity: f64,
    pub detected: bool,
    pub ppt_holds: Option<bool>,
    pub concurrence: Option<f64>,
}

/// Grid `min, min + step, ..., <= max`, rounded to 12 decimals.
pub fn grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 || !min.is_finite() || !max.is_finite() || min > max {
        return Err(Error::param(format!("empty grid for [{min}, {max}] with step {step}")));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(Error::param("grid has more than 10^7 points"));
    }
    Ok((0..count)
        .map(|i| ((min + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Purity criterion across the Størmer family.
///
/// On `0 <= alpha <= 5` the state is built and PPT is reported; outside,
/// the purity polynomial is evaluated without a state.
pub fn stormer_scan(min: f64, max: f64, step: f64) -> Result<Vec<ScanRow>> {
    grid(min, max, step)?
        .into_iter()
        .map(|alpha| {
            if (0.0..=5.0).contains(&alpha) {
                let rho = stormer_state(alpha)?;
                let rep = purity_criterion(&rho)?;
                let ppt = ppt_test(&rho, &SubsystemSet::single(2)?)?;
                Ok(ScanRow {
                    parameter: alpha,
                    whole_purity: rep.whole_purity,
                    marginal_purity: rep.marginal_purities.values().copied().fold(f64::INFINITY, f64::min),
                    detected: rep.detected,
                    ppt_holds: Some(ppt.holds),
                    concurrence: None,
                })
            } else {
                let whole = stormer_purity(alpha);
                let marginal = stormer_marginal_purity(alpha);
                Ok(ScanRow {
                    parameter: alpha,
                    whole_purity: whole,
                    marginal_purity: marginal,
                    detected: marginal + EPS_CRIT < whole,
                    ppt_holds: None,
                    concurrence: None,
                })
            }
        })
        .collect()
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "parameter,whole_purity,marginal_purity,detected,ppt_holds,concurrence")?;
    for r in rows {
        let ppt = r.ppt_holds.map(|b| b.to_string()).unwrap_or_default();
        let conc = r.concurrence.map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.parameter, r.whole_purity, r.marginal_purity, r.detected, ppt, conc
        )?;
    }
    Ok(())
}

/// Smallest eigenvalue of the partial transpose of `sigma_alpha`.
pub fn stormer_min_pt_eigenvalue(alpha: f64) -> Result<f64> {
    Ok(ppt_test(&stormer_state(alpha)?, &SubsystemSet::single(2)?)?.min_eigenvalue)
}

/// Where the partial transpose of the Størmer state stops being positive
/// on `[lo, hi]`.
pub fn stormer_ppt_threshold(lo: f64, hi: f64) -> Result<f64> {
    let f = |a: f64| stormer_min_pt_eigenvalue(a).unwrap_or(f64::NAN);
    bisect(f, lo, hi, 1e-12)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Flag(bool),
    Text(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Number(x) => write!(f, "{x:.12}"),
            Quantity::Flag(b) => write!(f, "{b}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub quantity: String,
    pub expected: Quantity,
    pub computed: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl ReproRow {
    fn number(quantity: impl Into<String>, expected: f64, computed: f64, tol: f64) -> Self {
        ReproRow {
            quantity: quantity.into(),
            expected: Quantity::Number(expected),
            computed: Quantity::Number(computed),
            tolerance: Some(tol),
            pass: (expected - computed).abs() <= tol,
        }
    }

    fn flag(quantity: impl Into<String>, expected: bool, computed: bool) -> Self {
        ReproRow {
            quantity: quantity.into(),
            expected: Quantity::Flag(expected),
            computed: Quantity::Flag(computed),
            tolerance: None,
            pass: expected == computed,
        }
    }

    fn text(quantity: impl Into<String>, expected: &str, computed: &str) -> Self {
        ReproRow {
            quantity: quantity.into(),
            expected: Quantity::Text(expected.into()),
            computed: Quantity::Text(computed.into()),
            tolerance: None,
            pass: expected == computed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub case: String,
    pub rows: Vec<ReproRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl ReproReport {
    fn new(case: &str, rows: Vec<ReproRow>, notes: Vec<String>) -> Self {
        let pass = rows.iter().all(|r| r.pass);
        ReproReport {
            case: case.into(),
            rows,
            notes,
            pass,
        }
    }

    pub fn write_table<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "case: {}", self.case)?;
        let width = self.rows.iter().map(|r| r.quantity.len()).max().unwrap_or(8).max(8);
        writeln!(out, "{:<width$}  {:>20}  {:>20}  {:>9}  result", "quantity", "expected", "computed", "tol")?;
        for r in &self.rows {
            let tol = r.tolerance.map(|t| format!("{t:.0e}")).unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{:<width$}  {:>20}  {:>20}  {:>9}  {}",
                r.quantity,
                r.expected.to_string(),
                r.computed.to_string(),
                tol,
                if r.pass { "ok" } else { "FAIL" }
            )?;
        }
        for n in &self.notes {
            writeln!(out, "note: {n}")?;
        }
        writeln!(out, "overall: {}", if self.pass { "ok" } else { "FAIL" })
    }
}

/// Names accepted by [`reproduce`].
pub const CASES: [&str; 7] = [
    "rhoA",
    "rhoB",
    "bell-two-mix",
    "bell-four-mix",
    "dicke-marginals",
    "biseparable-control",
    "stormer-boundary",
];

pub fn reproduce(case: &str) -> Result<ReproReport> {
    match case {
        "rhoA" => repro_rho_a(),
        "rhoB" => repro_rho_b(),
        "bell-two-mix" => repro_bell_two_mix(),
        "bell-four-mix" => repro_bell_four_mix(),
        "dicke-marginals" => repro_dicke(),
        "biseparable-control" => repro_biseparable(),
        "stormer-boundary" => repro_stormer(),
        other => Err(Error::param(format!(
            "unknown case '{other}' (expected one of {})",
            CASES.join(", ")
        ))),
    }
}

fn ghz4(sign: Sign) -> Result<PureState> {
    ghz_state(4, 2, Some(sign))
}

pub fn rho_a_spec() -> Result<MixtureSpec> {
    MixtureSpec::new(vec![0.75, 0.25], vec![ghz4(Sign::Plus)?, ghz4(Sign::Minus)?])
}

pub fn rho_b_spec() -> Result<MixtureSpec> {
    MixtureSpec::new(
        vec![0.75, 0.25],
        vec![ghz4(Sign::Plus)?, dicke_state(DickeParams::new(4, 2)?)?],
    )
}

fn purity_rows(rho: &DensityMatrix) -> Result<(PurityReport, Vec<ReproRow>)> {
    let rep = purity_criterion(rho)?;
    let mut rows = vec![ReproRow::number("tr rho^2", 0.625, rep.whole_purity, 1e-12)];
    for (i, p) in &rep.marginal_purities {
        rows.push(ReproRow::number(format!("tr rho_{i}^2"), 0.5, *p, 1e-12));
    }
    rows.push(ReproRow::flag("criterion fires on every subsystem", true, rep.all_witnesses()));
    Ok((rep, rows))
}

fn repro_rho_a() -> Result<ReproReport> {
    let spec = rho_a_spec()?;
    let rho = crate::mixtures::build_mixture(&spec);
    let (_, mut rows) = purity_rows(&rho)?;
    let v = check_theorem3(&spec)?;
    rows.push(ReproRow::flag("components have separable one-drop reductions", true, v.hypotheses_hold));
    rows.push(ReproRow::flag(
        "genuine",
        true,
        v.genuineness == Some(Genuineness::Genuine),
    ));
    let det = detect(&rho)?;
    rows.push(ReproRow::flag(
        "genuine (from density matrix alone)",
        true,
        det.genuineness.map(|g| g.verdict) == Some(GenuinenessVerdict::Genuine),
    ));
    Ok(ReproReport::new("rhoA", rows, vec![]))
}

fn repro_rho_b() -> Result<ReproReport> {
    let spec = rho_b_spec()?;
    let rho = crate::mixtures::build_mixture(&spec);
    let (_, mut rows) = purity_rows(&rho)?;
    let mem = membership_n(&spec.states()[1])?;
    rows.push(ReproRow::text("Dicke(4,2) separable one-drop reductions", "no", &mem.to_string()));
    let conc = pairwise_concurrence(&spec.states()[1].projector(), 1, 2)?;
    rows.push(ReproRow::number("Dicke(4,2) pairwise concurrence", 1.0 / 3.0, conc, 1e-9));
    let v = check_theorem3(&spec)?;
    let g = match v.genuineness {
        Some(Genuineness::Genuine) => "genuine",
        _ => "unknown",
    };
    rows.push(ReproRow::text("genuineness", "unknown", g));
    Ok(ReproReport::new(
        "rhoB",
        rows,
        vec!["entangled, but the criterion cannot certify genuine multipartite entanglement here".into()],
    ))
}

fn bell_pair_mixture(a: Bell, b: Bell, lambda: f64) -> Result<DensityMatrix> {
    let pa = bell_state(a).projector();
    let pb = bell_state(b).projector();
    DensityMatrix::convex_sum(&[(lambda, &pa), (1.0 - lambda, &pb)])
}

fn repro_bell_two_mix() -> Result<ReproReport> {
    let mut rows = Vec::new();
    for lambda in grid(0.0, 1.0, 0.05)? {
        let expected = (2.0 * lambda - 1.0).abs();
        // worst case over the six distinct pairs
        let mut worst = expected;
        let mut err = 0.0f64;
        for (i, a) in Bell::ALL.iter().enumerate() {
            for b in &Bell::ALL[i + 1..] {
                let c = wootters_concurrence(&bell_pair_mixture(*a, *b, lambda)?)?;
                if (c - expected).abs() >= err {
                    err = (c - expected).abs();
                    worst = c;
                }
            }
        }
        rows.push(ReproRow::number(format!("C at lambda={lambda:.2}"), expected, worst, 1e-10));
    }
    Ok(ReproReport::new(
        "bell-two-mix",
        rows,
        vec!["each row reports the worst of the six distinct Bell pairs".into()],
    ))
}

/// Wootters concurrence of a Bell-diagonal mixture with the given weights
/// (psi+, psi-, phi+, phi-).
pub fn bell_four_mix_concurrence(weights: [f64; 4]) -> Result<f64> {
    let projs: Vec<DensityMatrix> = Bell::ALL.iter().map(|b| bell_state(*b).projector()).collect();
    let terms: Vec<(f64, &DensityMatrix)> = weights.iter().copied().zip(projs.iter()).collect();
    wootters_concurrence(&DensityMatrix::convex_sum(&terms)?)
}

fn repro_bell_four_mix() -> Result<ReproReport> {
    let mut rows = vec![ReproRow::number(
        "C uniform",
        0.0,
        bell_four_mix_concurrence([0.25; 4])?,
        1e-12,
    )];
    let cases: [[f64; 4]; 5] = [
        [0.4, 0.3, 0.2, 0.1],
        [0.7, 0.1, 0.1, 0.1],
        [0.55, 0.25, 0.15, 0.05],
        [0.9, 0.05, 0.03, 0.02],
        [0.35, 0.3, 0.25, 0.1],
    ];
    for w in cases {
        let max = w.iter().copied().fold(0.0, f64::max);
        let oracle = (2.0 * max - 1.0).max(0.0);
        rows.push(ReproRow::number(
            format!("C {w:?}"),
            oracle,
            bell_four_mix_concurrence(w)?,
            1e-10,
        ));
    }
    Ok(ReproReport::new(
        "bell-four-mix",
        rows,
        vec![
            "for Bell-diagonal states C = max(0, 2 max w - 1); a general four-Bell mixture does not have C = 1"
                .into(),
        ],
    ))
}

fn repro_dicke() -> Result<ReproReport> {
    let mut rows = Vec::new();
    let mut iff_holds = true;
    for n in 2..=8usize {
        let mut err = 0.0f64;
        for m in 1..n {
            let rho = dicke_state(DickeParams::new(n, m)?)?.projector();
            let red = partial_trace(&rho, &SubsystemSet::single(1)?)?;
            let closed = dicke_marginal(n, m)?;
            let diff = red.matrix() - closed.matrix();
            err = err.max(diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
            let max_mixed = (closed.matrix()[(0, 0)].re - 0.5).abs() < 1e-12;
            iff_holds &= max_mixed == (2 * m == n);
        }
        rows.push(ReproRow::number(format!("max marginal error N={n}"), 0.0, err, 1e-12));
    }
    rows.push(ReproRow::flag("maximally mixed marginal iff m = N/2", true, iff_holds));
    for n in [4usize, 6] {
        let rho = dicke_state(DickeParams::new(n, n / 2)?)?.projector();
        let mut worst = 0.0f64;
        let mut value = 0.0;
        for i in 1..=n {
            for j in i + 1..=n {
                let c = pairwise_concurrence(&rho, i, j)?;
                let e = (c - 1.0 / (n as f64 - 1.0)).abs();
                if e >= worst {
                    worst = e;
                    value = c;
                }
            }
        }
        rows.push(ReproRow::number(
            format!("pairwise concurrence N={n}"),
            1.0 / (n as f64 - 1.0),
            value,
            1e-9,
        ));
    }
    Ok(ReproReport::new("dicke-marginals", rows, vec![]))
}

/// `|psi+> (x) |psi+>` on four qubits.
pub fn bell_bell() -> Result<DensityMatrix> {
    let p = bell_state(Bell::PsiPlus).projector();
    tensor_product(&p, &p)
}

fn repro_biseparable() -> Result<ReproReport> {
    let rho = bell_bell()?;
    let rep = purity_criterion(&rho)?;
    let scan = bipartition_scan(&rho)?;
    let separable_cut = scan
        .partitions
        .iter()
        .find(|e| !e.entangled)
        .map(|e| format!("{:?}|{:?}", e.subset, e.complement))
        .unwrap_or_else(|| "none".into());
    let det = detect(&rho)?;
    let genuine = det.genuineness.map(|g| g.verdict) == Some(GenuinenessVerdict::Genuine);
    let rows = vec![
        ReproRow::number("tr rho^2", 1.0, rep.whole_purity, 1e-12),
        ReproRow::flag("criterion fires on every subsystem", true, rep.all_witnesses()),
        ReproRow::text("first non-entangled cut", "[1, 2]|[3, 4]", &separable_cut),
        ReproRow::flag("genuineness claimed", false, genuine),
    ];
    Ok(ReproReport::new(
        "biseparable-control",
        rows,
        vec!["the criterion detects entanglement inside each Bell pair, not across the {1,2}|{3,4} cut".into()],
    ))
}

fn repro_stormer() -> Result<ReproReport> {
    let (low, high) = stormer_detection_boundary()?;
    let mut rows = vec![
        ReproRow::number("purity boundary (low)", -1.0, low, 1e-9),
        ReproRow::number("purity boundary (high)", 6.0, high, 1e-9),
        ReproRow::number("PPT threshold", 4.0, stormer_ppt_threshold(2.0, 5.0)?, 1e-6),
        ReproRow::flag("PPT at 3.999", true, stormer_min_pt_eigenvalue(3.999)? >= -crate::tol::TAU_PSD),
        ReproRow::flag("PPT at 4.001", false, stormer_min_pt_eigenvalue(4.001)? >= -crate::tol::TAU_PSD),
    ];
    let silent = stormer_scan(2.0, 5.0, 0.25)?.iter().all(|r| !r.detected);
    rows.push(ReproRow::flag("criterion silent on [2, 5]", true, silent));
    Ok(ReproReport::new(
        "stormer-boundary",
        rows,
        vec!["separability on [2, 3] is not certified here (certifier is inconclusive)".into()],
    ))
}

/// Quick check used by the `mix` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixReport {
    pub weights: Vec<f64>,
    pub purity: f64,
    pub mixture_purity: f64,
    pub orthogonal_floor: f64,
    pub overlap_gap: f64,
    pub gram: Vec<Vec<f64>>,
    pub membership_m: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_n: Option<Vec<Ternary>>,
    pub criterion: PurityReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn mix_report(spec: &MixtureSpec) -> Result<MixReport> {
    use crate::mixtures::{build_mixture, gram_overlaps, membership_m, mixture_purity, purity_orthogonal_floor};
    let rho = build_mixture(spec);
    let g = gram_overlaps(spec);
    let gram = (0..g.nrows()).map(|i| (0..g.ncols()).map(|j| g[(i, j)]).collect()).collect();
    let membership_n = if spec.shape().n() >= 3 {
        Some(spec.states().iter().map(membership_n).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let mp = mixture_purity(spec);
    let floor = purity_orthogonal_floor(spec.weights());
    Ok(MixReport {
        weights: spec.weights().to_vec(),
        purity: purity(&rho),
        mixture_purity: mp,
        orthogonal_floor: floor,
        overlap_gap: mp - floor,
        gram,
        membership_m: spec.states().iter().map(membership_m).collect(),
        membership_n,
        criterion: purity_criterion(&rho)?,
        warnings: spec.warnings(),
    })
}
