use entmix::criteria::{pairwise_concurrence, wootters_concurrence};
use entmix::random::{random_pure_state, trial_rng};
use entmix::tensor::{hermitian_spectrum, CMatrix};
use entmix::zoo::{bell_state, dicke_state, stormer_state, Bell, DickeParams};
use entmix::CompositeShape;
use num_complex::Complex64;

/// Characteristic polynomial coefficients `c_0..c_n` of `det(x I - A)`
/// (with `c_n = 1`) by Faddeev-LeVerrier.
fn char_poly(a: &CMatrix) -> Vec<Complex64> {
    let n = a.nrows();
    let id = CMatrix::identity(n, n);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        m = a * &m + &id * coeffs[n - k + 1];
        coeffs[n - k] = -(a * &m).trace() / k as f64;
    }
    coeffs
}

fn eval(coeffs: &[Complex64], x: f64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

#[test]
fn stormer_spectrum_against_characteristic_polynomial() {
    for alpha in [5.0, 4.0, 3.5, 2.0, 0.0] {
        let rho = stormer_state(alpha).unwrap();
        let spec = rho.spectrum().unwrap();
        let poly = char_poly(rho.matrix());
        for &lambda in &spec {
            assert!(eval(&poly, lambda).norm() < 1e-12, "alpha {alpha}: p({lambda}) != 0");
        }
        // power sums fix the multiplicities
        let mut power = CMatrix::identity(9, 9);
        for k in 1..=9 {
            power = &power * rho.matrix();
            let from_spec: f64 = spec.iter().map(|l| l.powi(k)).sum();
            assert!((power.trace().re - from_spec).abs() < 1e-12, "alpha {alpha}, k {k}");
        }
    }
}

#[test]
fn stormer_five_spectrum_closed_form() {
    // diagonal blocks: |aa> block has eigenvalues 6/21 and 0 (x2), the
    // off-diagonal pairs are diag(5/21, 0) three times
    let mut spec = hermitian_spectrum(stormer_state(5.0).unwrap().matrix()).unwrap();
    spec.sort_by(|a, b| b.total_cmp(a));
    let want = [6.0, 5.0, 5.0, 5.0, 0.0, 0.0, 0.0, 0.0, 0.0].map(|x| x / 21.0);
    for (got, want) in spec.iter().zip(want) {
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }
}

#[test]
fn pure_state_concurrence_oracle() {
    let shape = CompositeShape::qubits(2).unwrap();
    for trial in 0..200 {
        let (_, mut rng) = trial_rng(2024, trial);
        let psi = random_pure_state(shape, &mut rng).unwrap();
        let a = psi.amplitudes();
        let oracle = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        let c = wootters_concurrence(&psi.projector()).unwrap();
        assert!((c - oracle).abs() < 1e-10, "trial {trial}: {c} vs {oracle}");
    }
}

#[test]
fn bell_states_are_maximally_entangled() {
    for b in Bell::ALL {
        let c = wootters_concurrence(&bell_state(b).projector()).unwrap();
        assert!((c - 1.0).abs() < 1e-12, "{b}");
    }
}

#[test]
fn w_state_pairs() {
    // two-qubit reductions of W_N have concurrence 2/N
    for n in 3..=6 {
        let w = dicke_state(DickeParams::new(n, 1).unwrap()).unwrap().projector();
        let c = pairwise_concurrence(&w, 1, n).unwrap();
        assert!((c - 2.0 / n as f64).abs() < 1e-10, "N = {n}: {c}");
    }
}
