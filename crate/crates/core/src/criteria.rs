//! Entanglement detectors: purity criterion, PPT, Wootters concurrence, a
//! conservative separability certifier and the type I/II classification.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{
    hermitian_eigen, partial_trace, partial_transpose, purity, von_neumann_entropy, CMatrix,
    DensityMatrix, SubsystemSet,
};
use crate::tol::{EPS_CRIT, TAU_HERM, TAU_PSD};

/// Whole-state purity against every one-subsystem marginal purity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurityReport {
    pub whole_purity: f64,
    /// Keyed by 1-based subsystem label.
    pub marginal_purities: BTreeMap<usize, f64>,
    pub detected: bool,
    /// Subsystems `i` with `tr rho_i^2 < tr rho^2` beyond the decision margin.
    pub witnesses: Vec<usize>,
    /// Subsystems whose marginal purity ties the whole purity within the margin.
    pub boundary: Vec<usize>,
}

impl PurityReport {
    /// True when every subsystem is a witness.
    pub fn all_witnesses(&self) -> bool {
        !self.marginal_purities.is_empty() && self.witnesses.len() == self.marginal_purities.len()
    }
}

/// Fires when some one-subsystem marginal is strictly less pure than the whole.
pub fn purity_criterion(rho: &DensityMatrix) -> Result<PurityReport> {
    let whole = purity(rho);
    let n = rho.shape().n();
    let mut marginal_purities = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut boundary = Vec::new();
    for i in 1..=n {
        let red = partial_trace(rho, &SubsystemSet::single(i)?)?;
        let p = purity(&red);
        if p + EPS_CRIT < whole {
            witnesses.push(i);
        } else if (p - whole).abs() <= EPS_CRIT {
            boundary.push(i);
        }
        marginal_purities.insert(i, p);
    }
    Ok(PurityReport {
        whole_purity: whole,
        marginal_purities,
        detected: !witnesses.is_empty(),
        witnesses,
        boundary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PptResult {
    pub part: Vec<usize>,
    pub holds: bool,
    pub min_eigenvalue: f64,
}

/// Positivity of the partial transpose on `part`.
pub fn ppt_test(rho: &DensityMatrix, part: &SubsystemSet) -> Result<PptResult> {
    let pt = partial_transpose(rho, part)?;
    let min_eigenvalue = pt.spectrum()?.last().copied().unwrap_or(0.0);
    Ok(PptResult {
        part: part.labels().to_vec(),
        holds: min_eigenvalue >= -TAU_PSD,
        min_eigenvalue,
    })
}

/// Unordered bipartitions `{S, S^c}` of `1..=n`, each listed once as the
/// side containing subsystem 1.
pub fn bipartitions(n: usize) -> Vec<SubsystemSet> {
    if n < 2 {
        return Vec::new();
    }
    let rest = n - 1;
    // bit b of mask selects subsystem b + 2; the full mask is excluded
    (0..(1usize << rest) - 1)
        .map(|mask| {
            let labels = std::iter::once(1).chain((0..rest).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
            SubsystemSet::new(labels).expect("distinct labels")
        })
        .collect()
}

/// PPT test on every canonical bipartition.
pub fn ppt_all_bipartitions(rho: &DensityMatrix) -> Result<Vec<PptResult>> {
    bipartitions(rho.shape().n())
        .iter()
        .map(|s| ppt_test(rho, s))
        .collect()
}

/// Eigenvalues of a two-qubit state below this are treated as exact zeros.
const RANK_CUTOFF: f64 = 1e-14;

/// Wootters concurrence of a two-qubit state.
///
/// The spin-flip spectrum `sqrt(eig(rho (Y⊗Y) rho* (Y⊗Y)))` is obtained as
/// the singular values of `tau = V^dagger (Y⊗Y) conj(V)`, where the columns
/// of `V` are eigenvectors scaled by the square roots of their eigenvalues.
/// This avoids square roots of rounding-level eigenvalues.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let sh = rho.shape();
    if sh.n() != 2 || sh.d() != 2 {
        return Err(Error::contract(format!("concurrence needs two qubits, got {sh}")));
    }
    let (vals, vecs) = hermitian_eigen(rho.matrix())?;
    let kept: Vec<usize> = (0..4).filter(|&k| vals[k] > RANK_CUTOFF).collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    let v = CMatrix::from_fn(4, kept.len(), |i, c| vecs[(i, kept[c])] * vals[kept[c]].sqrt());
    // sigma_y (x) sigma_y in the computational basis
    let mut yy = CMatrix::zeros(4, 4);
    let one = Complex64::new(1.0, 0.0);
    yy[(0, 3)] = -one;
    yy[(1, 2)] = one;
    yy[(2, 1)] = one;
    yy[(3, 0)] = -one;
    let tau = v.adjoint() * yy * v.map(|z| z.conj());
    let mut l: Vec<f64> = tau.singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.total_cmp(a));
    l.resize(4, 0.0);
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Concurrence of the two-qubit reduction onto subsystems `i` and `j`.
pub fn pairwise_concurrence(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64> {
    if rho.shape().d() != 2 {
        return Err(Error::contract("pairwise concurrence needs qubits"));
    }
    if i == j {
        return Err(Error::contract("pairwise concurrence needs two distinct subsystems"));
    }
    let red = partial_trace(rho, &SubsystemSet::new([i, j])?)?;
    wootters_concurrence(&red)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separability {
    SeparableCertified,
    EntangledCertified,
    Inconclusive,
}

impl fmt::Display for Separability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Separability::SeparableCertified => "separable (certified)",
            Separability::EntangledCertified => "entangled (certified)",
            Separability::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    pub value: Separability,
    pub certificate: String,
    /// Numeric evidence for an entanglement claim: the purity gap, the
    /// negative partial-transpose eigenvalue or the concurrence.
    pub witness: Option<f64>,
}

/// Conservative full-separability certifier.
///
/// Rules, first match wins: purity criterion, PPT on every bipartition,
/// two-qubit concurrence, computational-basis diagonal, single system.
pub fn separability_certifier(rho: &DensityMatrix) -> Result<SeparabilityVerdict> {
    let report = purity_criterion(rho)?;
    if let Some(&i) = report.witnesses.first() {
        return Ok(SeparabilityVerdict {
            value: Separability::EntangledCertified,
            certificate: format!(
                "purity criterion: tr(rho_{i})^2 = {} < tr rho^2 = {}",
                report.marginal_purities[&i], report.whole_purity
            ),
            witness: Some(report.whole_purity - report.marginal_purities[&i]),
        });
    }

    let off_diag = rho.off_diagonal_mass();
    let diagonal = off_diag < TAU_HERM;
    // a diagonal matrix is its own partial transpose, so PPT holds trivially
    if !diagonal {
        for part in bipartitions(rho.shape().n()) {
            let ppt = ppt_test(rho, &part)?;
            if !ppt.holds {
                return Ok(SeparabilityVerdict {
                    value: Separability::EntangledCertified,
                    certificate: format!(
                        "partial transpose on {part} has eigenvalue {:e}",
                        ppt.min_eigenvalue
                    ),
                    witness: Some(ppt.min_eigenvalue),
                });
            }
        }
    }

    let sh = rho.shape();
    if sh.n() == 2 && sh.d() == 2 {
        let c = wootters_concurrence(rho)?;
        if c > EPS_CRIT {
            return Ok(SeparabilityVerdict {
                value: Separability::EntangledCertified,
                certificate: format!("Wootters concurrence {c}"),
                witness: Some(c),
            });
        }
    }

    if diagonal {
        return Ok(SeparabilityVerdict {
            value: Separability::SeparableCertified,
            certificate: format!(
                "diagonal in the computational product basis (off-diagonal mass {off_diag:e})"
            ),
            witness: None,
        });
    }
    if sh.n() == 1 {
        return Ok(SeparabilityVerdict {
            value: Separability::SeparableCertified,
            certificate: "single subsystem".into(),
            witness: None,
        });
    }
    Ok(SeparabilityVerdict {
        value: Separability::Inconclusive,
        certificate: "purity criterion silent, every bipartition PPT, not diagonal".into(),
        witness: None,
    })
}

/// `S(A|B) = S(rho_AB) - S(rho_B)` in bits, with `B` the given subsystems.
pub fn partial_information(rho: &DensityMatrix, b: &SubsystemSet) -> Result<f64> {
    let n = rho.shape().n();
    b.validate(&rho.shape())?;
    if b.is_empty() || b.len() == n {
        return Err(Error::contract("B must be a proper non-empty subset"));
    }
    let rho_b = partial_trace(rho, b)?;
    Ok(von_neumann_entropy(rho)? - von_neumann_entropy(&rho_b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntanglementType {
    /// Detected by the purity criterion.
    TypeI,
    /// Entangled per another detector while the purity criterion is silent.
    TypeII,
    NotDetectedEntangled,
}

pub fn classify_type(rho: &DensityMatrix) -> Result<EntanglementType> {
    if purity_criterion(rho)?.detected {
        return Ok(EntanglementType::TypeI);
    }
    Ok(match separability_certifier(rho)?.value {
        Separability::EntangledCertified => EntanglementType::TypeII,
        _ => EntanglementType::NotDetectedEntangled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{tensor_product, CompositeShape, PureState};
    use crate::zoo::{bell_state, ghz_state, stormer_state, Bell, Sign};
    use approx::assert_abs_diff_eq;

    fn ghz4_mix() -> DensityMatrix {
        let p = ghz_state(4, 2, Some(Sign::Plus)).unwrap().projector();
        let m = ghz_state(4, 2, Some(Sign::Minus)).unwrap().projector();
        DensityMatrix::convex_sum(&[(0.75, &p), (0.25, &m)]).unwrap()
    }

    #[test]
    fn bipartition_count() {
        for n in 1..=6 {
            let b = bipartitions(n);
            assert_eq!(b.len(), if n < 2 { 0 } else { (1 << (n - 1)) - 1 });
            assert!(b.iter().all(|s| s.contains(1) && s.len() < n));
        }
    }

    #[test]
    fn purity_criterion_on_ghz_mixture() {
        let r = purity_criterion(&ghz4_mix()).unwrap();
        assert!(r.detected);
        assert_eq!(r.witnesses, vec![1, 2, 3, 4]);
        assert_abs_diff_eq!(r.whole_purity, 0.625, epsilon = 1e-12);
        assert!(r.all_witnesses());
    }

    #[test]
    fn purity_criterion_silent_on_identity_and_stormer() {
        let sh = CompositeShape::new(2, 3).unwrap();
        let r = purity_criterion(&DensityMatrix::maximally_mixed(sh)).unwrap();
        assert!(!r.detected);
        assert_eq!(r.boundary.len(), 0);
        assert!(!purity_criterion(&stormer_state(3.5).unwrap()).unwrap().detected);
    }

    #[test]
    fn ppt_cases() {
        let q = CompositeShape::qubits(1).unwrap();
        let prod = tensor_product(
            &PureState::basis(q, &[0]).unwrap().projector(),
            &DensityMatrix::maximally_mixed(q),
        )
        .unwrap();
        assert!(ppt_test(&prod, &SubsystemSet::single(2).unwrap()).unwrap().holds);
        let bell = bell_state(Bell::PsiPlus).projector();
        let r = ppt_test(&bell, &SubsystemSet::single(2).unwrap()).unwrap();
        assert!(!r.holds);
        assert_abs_diff_eq!(r.min_eigenvalue, -0.5, epsilon = 1e-12);
        assert!(!ppt_test(&stormer_state(4.5).unwrap(), &SubsystemSet::single(2).unwrap())
            .unwrap()
            .holds);
        assert!(ppt_test(&stormer_state(4.0).unwrap(), &SubsystemSet::single(2).unwrap())
            .unwrap()
            .holds);
    }

    #[test]
    fn concurrence_of_bell_projectors() {
        for b in Bell::ALL {
            assert_abs_diff_eq!(
                wootters_concurrence(&bell_state(b).projector()).unwrap(),
                1.0,
                epsilon = 1e-10
            );
        }
        let q3 = DensityMatrix::maximally_mixed(CompositeShape::qubits(3).unwrap());
        assert!(wootters_concurrence(&q3).is_err());
    }

    #[test]
    fn uniform_bell_mixture_has_zero_concurrence() {
        let projs: Vec<_> = Bell::ALL.iter().map(|b| bell_state(*b).projector()).collect();
        let terms: Vec<_> = projs.iter().map(|p| (0.25, p)).collect();
        let rho = DensityMatrix::convex_sum(&terms).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pairwise_concurrence_errors() {
        let rho = ghz_state(3, 3, None).unwrap().projector();
        assert!(pairwise_concurrence(&rho, 1, 2).is_err());
        let rho = ghz_state(3, 2, None).unwrap().projector();
        assert!(pairwise_concurrence(&rho, 2, 2).is_err());
        assert_abs_diff_eq!(pairwise_concurrence(&rho, 1, 3).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn certifier_rules() {
        let q2 = CompositeShape::qubits(2).unwrap();
        let diag = DensityMatrix::diagonal(q2, &[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(
            separability_certifier(&diag).unwrap().value,
            Separability::SeparableCertified
        );
        let ghz = ghz_state(4, 2, Some(Sign::Plus)).unwrap().projector();
        let red = partial_trace(&ghz, &SubsystemSet::new([2, 3, 4]).unwrap()).unwrap();
        assert_eq!(
            separability_certifier(&red).unwrap().value,
            Separability::SeparableCertified
        );
        let bb = tensor_product(&bell_state(Bell::PsiPlus).projector(), &bell_state(Bell::PsiPlus).projector()).unwrap();
        let red = partial_trace(&bb, &SubsystemSet::new([2, 3, 4]).unwrap()).unwrap();
        let v = separability_certifier(&red).unwrap();
        assert_eq!(v.value, Separability::EntangledCertified);
        assert!(v.witness.is_some());
        let single = DensityMatrix::maximally_mixed(CompositeShape::qubits(1).unwrap());
        assert_eq!(
            separability_certifier(&single).unwrap().value,
            Separability::SeparableCertified
        );
    }

    #[test]
    fn certifier_inconclusive_on_bound_entangled_stormer() {
        let v = separability_certifier(&stormer_state(3.5).unwrap()).unwrap();
        assert_eq!(v.value, Separability::Inconclusive);
        assert!(v.witness.is_none());
    }

    #[test]
    fn partial_information_signs() {
        let bell = bell_state(Bell::PsiPlus).projector();
        let two = SubsystemSet::single(2).unwrap();
        assert_abs_diff_eq!(partial_information(&bell, &two).unwrap(), -1.0, epsilon = 1e-10);
        let mixed = DensityMatrix::maximally_mixed(CompositeShape::qubits(2).unwrap());
        assert_abs_diff_eq!(partial_information(&mixed, &two).unwrap(), 1.0, epsilon = 1e-10);
        assert!(partial_information(&mixed, &SubsystemSet::new([1, 2]).unwrap()).is_err());
        assert!(partial_information(&mixed, &SubsystemSet::new([]).unwrap()).is_err());
        let rest = SubsystemSet::new([2, 3, 4]).unwrap();
        assert!(partial_information(&ghz4_mix(), &rest).unwrap() < 0.0);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_type(&ghz4_mix()).unwrap(), EntanglementType::TypeI);
        assert_eq!(classify_type(&stormer_state(4.5).unwrap()).unwrap(), EntanglementType::TypeII);
        let mixed = DensityMatrix::maximally_mixed(CompositeShape::qubits(2).unwrap());
        assert_eq!(classify_type(&mixed).unwrap(), EntanglementType::NotDetectedEntangled);
    }
}
