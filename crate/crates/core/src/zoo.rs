//! Constructors for the named state families.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{CMatrix, CVector, CompositeShape, DensityMatrix, PureState};

/// The four two-qubit Bell states.
///
/// `PsiPlus`/`PsiMinus` are `(|00> ± |11>)/sqrt2` and `PhiPlus`/`PhiMinus`
/// are `(|01> ± |10>)/sqrt2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bell {
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus];
}

impl FromStr for Bell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('\u{2212}', "-").to_ascii_lowercase().as_str() {
            "psi+" | "psiplus" => Ok(Bell::PsiPlus),
            "psi-" | "psiminus" => Ok(Bell::PsiMinus),
            "phi+" | "phiplus" => Ok(Bell::PhiPlus),
            "phi-" | "phiminus" => Ok(Bell::PhiMinus),
            other => Err(Error::param(format!(
                "unknown Bell state '{other}' (expected psi+, psi-, phi+ or phi-)"
            ))),
        }
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bell::PsiPlus => "psi+",
            Bell::PsiMinus => "psi-",
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
        })
    }
}

/// Relative sign of the last GHZ branch (qubits only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" | "\u{2212}" => Ok(Sign::Minus),
            other => Err(Error::param(format!("sign must be + or -, got '{other}'"))),
        }
    }
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn bell_state(which: Bell) -> PureState {
    let s = FRAC_1_SQRT_2;
    let amps = match which {
        Bell::PsiPlus => [s, 0.0, 0.0, s],
        Bell::PsiMinus => [s, 0.0, 0.0, -s],
        Bell::PhiPlus => [0.0, s, s, 0.0],
        Bell::PhiMinus => [0.0, s, -s, 0.0],
    };
    let shape = CompositeShape::qubits(2).expect("two qubits");
    PureState::new(shape, CVector::from_iterator(4, amps.into_iter().map(r))).expect("normalized")
}

/// `(1/sqrt d) sum_k |k>^N`, optionally with a minus sign on `|1>^N` for qubits.
pub fn ghz_state(n: usize, d: usize, sign: Option<Sign>) -> Result<PureState> {
    if n < 2 {
        return Err(Error::param("GHZ states need at least two subsystems"));
    }
    if sign.is_some() && d > 2 {
        return Err(Error::param("the GHZ sign variant is defined for qubits only"));
    }
    let minus = sign == Some(Sign::Minus);
    generalized_ghz(n, d, |k| {
        if minus && k == d - 1 {
            r(-1.0)
        } else {
            r(1.0)
        }
    }, &vec![0; n - 1])
}

/// Member of the generalized GHZ basis:
/// `(1/sqrt d) sum_k w^{phase*k} |k, k+s_2, ..., k+s_N>` with `w = exp(2 pi i / d)`
/// and shifts taken modulo `d`.
///
/// The `d^N` choices of `(phase, shifts)` form an orthonormal basis whose
/// members all have maximally mixed one-qudit marginals, and whose one-drop
/// reductions are diagonal.
pub fn ghz_basis_state(n: usize, d: usize, phase: usize, shifts: &[usize]) -> Result<PureState> {
    if n < 2 {
        return Err(Error::param("GHZ basis states need at least two subsystems"));
    }
    if shifts.len() != n - 1 {
        return Err(Error::param(format!("expected {} shifts, got {}", n - 1, shifts.len())));
    }
    let w = 2.0 * PI / d as f64;
    generalized_ghz(n, d, |k| Complex64::from_polar(1.0, w * ((phase * k) % d) as f64), shifts)
}

fn generalized_ghz(
    n: usize,
    d: usize,
    coeff: impl Fn(usize) -> Complex64,
    shifts: &[usize],
) -> Result<PureState> {
    let shape = CompositeShape::new(n, d)?;
    let mut amps = CVector::zeros(shape.dim());
    let norm = 1.0 / (d as f64).sqrt();
    let mut digits = vec![0; n];
    for k in 0..d {
        digits[0] = k;
        for (slot, s) in digits[1..].iter_mut().zip(shifts) {
            *slot = (k + s) % d;
        }
        amps[shape.index(&digits)] += coeff(k) * norm;
    }
    PureState::new(shape, amps)
}

/// `(1/sqrt d) sum_k |k>^(j-1) |k+1 mod d> |k>^(N-j)`, `j` 1-based.
pub fn shifted_state(n: usize, d: usize, j: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::param("shifted states need at least two subsystems"));
    }
    if j == 0 || j > n {
        return Err(Error::param(format!("position j={j} outside 1..={n}")));
    }
    let shape = CompositeShape::new(n, d)?;
    let mut amps = CVector::zeros(shape.dim());
    let norm = r(1.0 / (d as f64).sqrt());
    for k in 0..d {
        let mut digits = vec![k; n];
        digits[j - 1] = (k + 1) % d;
        amps[shape.index(&digits)] += norm;
    }
    PureState::new(shape, amps)
}

/// Qubit count and excitation number of a Dicke state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DickeParams {
    pub n: usize,
    pub m: usize,
}

impl DickeParams {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m == 0 || m >= n {
            return Err(Error::param(format!(
                "Dicke excitation count must satisfy 1 <= m <= N-1 (N={n}, m={m})"
            )));
        }
        Ok(DickeParams { n, m })
    }
}

/// Equal superposition of all weight-`m` bitstrings over `n` qubits.
pub fn dicke_state(p: DickeParams) -> Result<PureState> {
    let DickeParams { n, m } = DickeParams::new(p.n, p.m)?;
    let shape = CompositeShape::qubits(n)?;
    let dim = shape.dim();
    let count = (0..dim).filter(|b| b.count_ones() as usize == m).count();
    let amp = r(1.0 / (count as f64).sqrt());
    let amps = CVector::from_fn(dim, |i, _| {
        if i.count_ones() as usize == m {
            amp
        } else {
            r(0.0)
        }
    });
    PureState::new(shape, amps)
}

/// `W_N`, the single-excitation Dicke state.
pub fn w_state(n: usize) -> Result<PureState> {
    dicke_state(DickeParams::new(n, 1)?)
}

/// Two-qutrit Størmer state
/// `(2/7)|psi+><psi+| + (alpha/7) sigma_+ + ((5-alpha)/7) sigma_-`.
///
/// Only `0 <= alpha <= 5` gives a positive matrix; use [`stormer_purity`]
/// to evaluate the purity outside that range.
pub fn stormer_state(alpha: f64) -> Result<DensityMatrix> {
    if !(0.0..=5.0).contains(&alpha) {
        return Err(Error::Positivity(format!(
            "Størmer weights are negative for alpha = {alpha}; the state exists only for 0 <= alpha <= 5"
        )));
    }
    let shape = CompositeShape::new(2, 3)?;
    let idx = |a: usize, b: usize| 3 * a + b;
    let mut mat = CMatrix::zeros(9, 9);
    // |psi+> = (|00> + |11> + |22>)/sqrt3
    for a in 0..3 {
        for b in 0..3 {
            mat[(idx(a, a), idx(b, b))] += r(2.0 / 7.0 / 3.0);
        }
    }
    for k in 0..3 {
        let up = idx(k, (k + 1) % 3);
        let down = idx((k + 1) % 3, k);
        mat[(up, up)] += r(alpha / 21.0);
        mat[(down, down)] += r((5.0 - alpha) / 21.0);
    }
    Ok(DensityMatrix::from_parts(shape, mat))
}

/// Closed-form `tr sigma_alpha^2 = (2 alpha^2 - 10 alpha + 37) / 147`, valid
/// as a polynomial for every real `alpha`.
pub fn stormer_purity(alpha: f64) -> f64 {
    (2.0 * alpha * alpha - 10.0 * alpha + 37.0) / 147.0
}

/// One-qutrit marginal purity of the (extended) Størmer family; always 1/3.
pub fn stormer_marginal_purity(_alpha: f64) -> f64 {
    1.0 / 3.0
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::param(format!("no sign change on [{lo}, {hi}]")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Roots of `stormer_purity(alpha) - 1/3`: the purity criterion fires
/// strictly outside `[low, high]`.
pub fn stormer_detection_boundary() -> Result<(f64, f64)> {
    let g = |a: f64| stormer_purity(a) - stormer_marginal_purity(a);
    // the parabola's vertex is at alpha = 2.5
    let low = bisect(g, -50.0, 2.5, 1e-13)?;
    let high = bisect(g, 2.5, 50.0, 1e-13)?;
    Ok((low, high))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{overlap, partial_trace, purity, SubsystemSet};
    use approx::assert_abs_diff_eq;

    #[test]
    fn bell_amplitudes_and_orthogonality() {
        let psi = bell_state(Bell::PsiPlus);
        let s = FRAC_1_SQRT_2;
        let want = [s, 0.0, 0.0, s];
        for (a, w) in psi.amplitudes().iter().zip(want) {
            assert_abs_diff_eq!(a.re, w, epsilon = 1e-15);
        }
        for (i, a) in Bell::ALL.iter().enumerate() {
            for (j, b) in Bell::ALL.iter().enumerate() {
                let o = overlap(&bell_state(*a), &bell_state(*b)).unwrap().norm();
                assert_abs_diff_eq!(o, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn bell_parsing() {
        assert_eq!("psi+".parse::<Bell>().unwrap(), Bell::PsiPlus);
        assert_eq!("phi\u{2212}".parse::<Bell>().unwrap(), Bell::PhiMinus);
        assert!("chi+".parse::<Bell>().is_err());
    }

    #[test]
    fn ghz_minus_four_qubits() {
        let g = ghz_state(4, 2, Some(Sign::Minus)).unwrap();
        let a = g.amplitudes();
        assert_abs_diff_eq!(a[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a[15].re, -FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_eq!(a.iter().filter(|z| z.norm() > 0.0).count(), 2);
    }

    #[test]
    fn ghz_sign_rejected_for_qutrits() {
        assert!(ghz_state(3, 3, Some(Sign::Plus)).is_err());
        assert!(ghz_state(1, 2, None).is_err());
    }

    #[test]
    fn ghz_qutrit_marginal() {
        let rho = ghz_state(3, 3, None).unwrap().projector();
        let red = partial_trace(&rho, &SubsystemSet::single(1).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 / 3.0 } else { 0.0 };
                assert_abs_diff_eq!(red.matrix()[(i, j)].re, want, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn shifted_two_qubits() {
        let s = shifted_state(2, 2, 1).unwrap();
        // (|10> + |01>)/sqrt2
        let a = s.amplitudes();
        assert_abs_diff_eq!(a[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a[2].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert!(shifted_state(3, 3, 0).is_err());
        assert!(shifted_state(3, 3, 4).is_err());
    }

    #[test]
    fn shifted_is_orthogonal_to_ghz() {
        for (n, d) in [(2, 2), (3, 3), (4, 2), (2, 5)] {
            let g = ghz_state(n, d, None).unwrap();
            for j in 1..=n {
                let o = overlap(&shifted_state(n, d, j).unwrap(), &g).unwrap();
                assert_eq!(o.norm(), 0.0);
            }
        }
    }

    #[test]
    fn dicke_four_two_terms() {
        let dk = dicke_state(DickeParams::new(4, 2).unwrap()).unwrap();
        let support: Vec<usize> = dk
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 0.0)
            .map(|(i, _)| i)
            .collect();
        // 0011, 0101, 0110, 1001, 1010, 1100
        assert_eq!(support, vec![3, 5, 6, 9, 10, 12]);
        assert_abs_diff_eq!(dk.amplitudes()[3].re, 1.0 / 6f64.sqrt(), epsilon = 1e-15);
        assert!(DickeParams::new(4, 0).is_err());
        assert!(DickeParams::new(4, 4).is_err());
    }

    #[test]
    fn w_state_is_dicke_one() {
        let w = w_state(4).unwrap();
        let support: Vec<usize> = (0..16).filter(|&i| w.amplitudes()[i].norm() > 0.0).collect();
        assert_eq!(support, vec![1, 2, 4, 8]);
        assert_abs_diff_eq!(w.amplitudes()[8].re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn stormer_range_and_purity() {
        assert!(stormer_state(-0.1).is_err());
        assert!(stormer_state(5.1).is_err());
        let rho = stormer_state(2.5).unwrap();
        let checked = DensityMatrix::new(rho.shape(), rho.matrix().clone()).unwrap();
        assert_abs_diff_eq!(purity(&checked), stormer_purity(2.5), epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&stormer_state(5.0).unwrap()), 37.0 / 147.0, epsilon = 1e-15);
        assert_abs_diff_eq!(stormer_purity(-1.0), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(stormer_purity(6.0), 1.0 / 3.0, epsilon = 1e-15);
        assert!(stormer_purity(2.5) < 1.0 / 3.0);
    }

    #[test]
    fn ghz_basis_is_orthonormal() {
        let (n, d) = (3, 3);
        let mut states = Vec::new();
        for p in 0..d {
            for s1 in 0..d {
                for s2 in 0..d {
                    states.push(ghz_basis_state(n, d, p, &[s1, s2]).unwrap());
                }
            }
        }
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let o = overlap(a, b).unwrap().norm();
                assert_abs_diff_eq!(o, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bisect_finds_simple_root() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(x, 2f64.sqrt(), epsilon = 1e-13);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-6).is_err());
    }
}
