//! Convex mixtures of pure states, their purity functionals and membership
//! in the maximally-mixed-marginal classes.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::{separability_certifier, Separability};
use crate::error::{Error, Result};
use crate::tensor::{
    is_maximally_mixed, overlap, partial_trace, CMatrix, CompositeShape, DensityMatrix, PureState,
    SubsystemSet,
};
use crate::tol::{TAU_HERM, TAU_NORM};

/// Weights on the open simplex together with one pure state per weight.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    weights: Vec<f64>,
    states: Vec<PureState>,
}

impl MixtureSpec {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::contract(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        if weights.len() < 2 {
            return Err(Error::contract("a mixture needs at least two components"));
        }
        if let Some(w) = weights.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::contract(format!("weights must be strictly positive, got {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > TAU_NORM {
            return Err(Error::contract(format!("weights sum to {sum}, expected 1")));
        }
        let shape = states[0].shape();
        if let Some(bad) = states.iter().find(|s| s.shape() != shape) {
            return Err(Error::shape(format!(
                "components mix shapes ({shape}) and ({})",
                bad.shape()
            )));
        }
        Ok(MixtureSpec { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    /// Component count `M`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn shape(&self) -> CompositeShape {
        self.states[0].shape()
    }

    /// Pairs `(k, l)`, 0-based, of components that coincide up to a phase.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let g = gram_overlaps(self);
        let m = self.len();
        let mut out = Vec::new();
        for k in 0..m {
            for l in k + 1..m {
                if g[(k, l)] >= 1.0 - TAU_NORM {
                    out.push((k, l));
                }
            }
        }
        out
    }

    /// Human-readable warnings about the spec (duplicate components).
    pub fn warnings(&self) -> Vec<String> {
        self.duplicate_pairs()
            .into_iter()
            .map(|(k, l)| format!("components {} and {} are the same state up to phase", k + 1, l + 1))
            .collect()
    }
}

/// `sum_k w_k |phi_k><phi_k|`.
pub fn build_mixture(spec: &MixtureSpec) -> DensityMatrix {
    let dim = spec.shape().dim();
    let mut mat = CMatrix::zeros(dim, dim);
    for (w, phi) in spec.weights.iter().zip(&spec.states) {
        let a = phi.amplitudes();
        mat += (a * a.adjoint()).scale(*w);
    }
    DensityMatrix::from_parts(spec.shape(), mat)
}

/// `|<phi_k|phi_l>|^2` for every pair of components.
pub fn gram_overlaps(spec: &MixtureSpec) -> DMatrix<f64> {
    let m = spec.len();
    let mut g = DMatrix::zeros(m, m);
    for k in 0..m {
        g[(k, k)] = 1.0;
        for l in k + 1..m {
            let o: Complex64 = overlap(&spec.states[k], &spec.states[l]).expect("common shape");
            let v = o.norm_sqr().min(1.0);
            g[(k, l)] = v;
            g[(l, k)] = v;
        }
    }
    g
}

/// `sum_{k,l} w_k w_l |<phi_k|phi_l>|^2`, evaluated from the overlaps alone.
pub fn mixture_purity(spec: &MixtureSpec) -> f64 {
    let g = gram_overlaps(spec);
    let w = &spec.weights;
    let mut p = 0.0;
    for k in 0..w.len() {
        for l in 0..w.len() {
            p += w[k] * w[l] * g[(k, l)];
        }
    }
    p
}

/// `sum_k w_k^2`, the mixture purity when the components are orthogonal.
pub fn purity_orthogonal_floor(weights: &[f64]) -> f64 {
    weights.iter().map(|w| w * w).sum()
}

/// Every one-qudit marginal equals `I/d` entrywise within `TAU_HERM`.
pub fn membership_m(phi: &PureState) -> bool {
    let rho = phi.projector();
    (1..=phi.shape().n()).all(|i| {
        let red = partial_trace(&rho, &SubsystemSet::single(i).expect("label >= 1")).expect("valid label");
        is_maximally_mixed(&red, TAU_HERM)
    })
}

/// Three-valued answer for membership questions the certifier cannot
/// always settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Unknown => "unknown",
        })
    }
}

/// Membership of `phi` in the class whose one-drop reductions are all
/// separable (and whose one-qudit marginals are maximally mixed).
///
/// Requires `N >= 3`.
pub fn membership_n(phi: &PureState) -> Result<Ternary> {
    let n = phi.shape().n();
    if n < 3 {
        return Err(Error::contract(format!(
            "the separable-reduction class is defined for N >= 3, got N = {n}"
        )));
    }
    if !membership_m(phi) {
        return Ok(Ternary::No);
    }
    let rho = phi.projector();
    let mut verdict = Ternary::Yes;
    for i in 1..=n {
        let keep = SubsystemSet::single(i)?.complement(n);
        let red = partial_trace(&rho, &keep)?;
        match separability_certifier(&red)?.value {
            Separability::EntangledCertified => return Ok(Ternary::No),
            Separability::Inconclusive => verdict = Ternary::Unknown,
            Separability::SeparableCertified => {}
        }
    }
    Ok(verdict)
}

/// Membership of a pure state in both classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMembership {
    pub in_m: bool,
    /// `None` when `N < 3`, where the class is not defined.
    pub in_n: Option<Ternary>,
}

impl ClassMembership {
    pub fn of(phi: &PureState) -> Result<Self> {
        let in_n = if phi.shape().n() >= 3 {
            Some(membership_n(phi)?)
        } else {
            None
        };
        Ok(ClassMembership {
            in_m: membership_m(phi),
            in_n,
        })
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Closed-form one-qubit marginal of the Dicke state `D^N_m`:
/// `diag(C(N-1, m), C(N-1, m-1)) / (C(N-1, m) + C(N-1, m-1))`.
pub fn dicke_marginal(n: usize, m: usize) -> Result<DensityMatrix> {
    if n < 2 || m == 0 || m >= n {
        return Err(Error::param(format!(
            "Dicke excitation count must satisfy 1 <= m <= N-1 (N={n}, m={m})"
        )));
    }
    let zero = binomial(n - 1, m);
    let one = binomial(n - 1, m - 1);
    let omega = zero + one;
    DensityMatrix::diagonal(CompositeShape::qubits(1)?, &[zero / omega, one / omega])
}
