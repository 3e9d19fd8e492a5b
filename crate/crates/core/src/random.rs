//! Seeded random states, unitaries and mixture specs.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::Result;
use crate::mixtures::{membership_m, MixtureSpec};
use crate::tensor::{
    local_product, overlap, tensor_product, CMatrix, CVector, CompositeShape, DensityMatrix,
    PureState,
};
use crate::tol::TAU_NORM;
use crate::zoo::ghz_basis_state;

/// Deterministic generator for a trial; trial seeds are derived from a base
/// seed with a splitmix64 step so neighbouring trials are decorrelated.
pub fn trial_rng(base_seed: u64, trial: u64) -> (u64, ChaCha8Rng) {
    let seed = splitmix64(base_seed ^ splitmix64(trial));
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-distributed `d x d` unitary (QR of a Ginibre matrix with phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `U_1 (x) ... (x) U_N` with independent Haar factors.
pub fn random_local_unitary<R: Rng + ?Sized>(shape: CompositeShape, rng: &mut R) -> Result<CMatrix> {
    let factors: Vec<CMatrix> = (0..shape.n()).map(|_| haar_unitary(shape.d(), rng)).collect();
    local_product(&factors)
}

/// Uniformly random pure state on the unit sphere.
pub fn random_pure_state<R: Rng + ?Sized>(shape: CompositeShape, rng: &mut R) -> Result<PureState> {
    let v = CVector::from_fn(shape.dim(), |_, _| gaussian_complex(rng));
    PureState::normalized(shape, v)
}

/// Flat Dirichlet weights; every entry is strictly positive.
pub fn random_weights<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..m).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        if w.iter().all(|&x| x > 1e-6) {
            return w;
        }
    }
}

/// Random product projector `|a_1><a_1| (x) ... (x) |a_N><a_N|`.
pub fn random_product_state<R: Rng + ?Sized>(shape: CompositeShape, rng: &mut R) -> Result<DensityMatrix> {
    let single = CompositeShape::new(1, shape.d())?;
    let mut acc = random_pure_state(single, rng)?.projector();
    for _ in 1..shape.n() {
        acc = tensor_product(&acc, &random_pure_state(single, rng)?.projector())?;
    }
    Ok(acc)
}

/// Random convex sum of `terms` random product projectors.
pub fn random_separable_state<R: Rng + ?Sized>(
    shape: CompositeShape,
    terms: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let weights = random_weights(terms.max(1), rng);
    let parts: Vec<DensityMatrix> = (0..weights.len())
        .map(|_| random_product_state(shape, rng))
        .collect::<Result<_>>()?;
    let pairs: Vec<(f64, &DensityMatrix)> = weights.iter().copied().zip(parts.iter()).collect();
    DensityMatrix::convex_sum(&pairs)
}

/// Random mixture of `m` arbitrary pure states.
pub fn random_spec<R: Rng + ?Sized>(shape: CompositeShape, m: usize, rng: &mut R) -> Result<MixtureSpec> {
    let states = (0..m).map(|_| random_pure_state(shape, rng)).collect::<Result<Vec<_>>>()?;
    MixtureSpec::new(random_weights(m, rng), states)
}

/// `m` distinct members of the generalized GHZ basis, all sharing one
/// random local unitary when `rotate` is set.
///
/// Local unitaries keep both the pairwise overlaps and the maximally mixed
/// one-qudit marginals, so the result is an orthonormal set with
/// maximally mixed marginals. Both properties are re-checked.
pub fn orthonormal_m_class_states<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    m: usize,
    rotate: bool,
    rng: &mut R,
) -> Result<Vec<PureState>> {
    let shape = CompositeShape::new(n, d)?;
    let total = shape.dim();
    if m > total {
        return Err(crate::error::Error::param(format!(
            "only {total} orthonormal basis states exist for {shape}"
        )));
    }
    loop {
        let labels = sample(rng, total, m);
        let mut states = Vec::with_capacity(m);
        for label in labels.iter() {
            // label = phase * d^(n-1) + shifts in base d
            let phase = label / d.pow((n - 1) as u32);
            let mut rest = label % d.pow((n - 1) as u32);
            let mut shifts = vec![0; n - 1];
            for s in shifts.iter_mut().rev() {
                *s = rest % d;
                rest /= d;
            }
            states.push(ghz_basis_state(n, d, phase, &shifts)?);
        }
        if rotate {
            let u = random_local_unitary(shape, rng)?;
            states = states.iter().map(|s| s.apply(&u)).collect::<Result<_>>()?;
        }
        let members = states.iter().all(membership_m);
        let orthogonal = states.iter().enumerate().all(|(k, a)| {
            states[k + 1..]
                .iter()
                .all(|b| overlap(a, b).map(|o| o.norm_sqr() <= TAU_NORM).unwrap_or(false))
        });
        if members && orthogonal {
            return Ok(states);
        }
    }
}

/// Random complex vector helper for tests that need unnormalized input.
pub fn random_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> DVector<Complex64> {
    DVector::from_fn(len, |_, _| gaussian_complex(rng))
}
