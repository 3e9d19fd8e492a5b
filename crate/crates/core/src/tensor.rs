//! Dense linear algebra over composite qudit Hilbert spaces.
//!
//! Composite indices are row-major over subsystems: subsystem 1 is the most
//! significant base-`d` digit. Subsystem labels are 1-based everywhere in the
//! public API.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::{MAX_DIM, TAU_HERM, TAU_NORM, TAU_PSD};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Number of subsystems `N` and their common local dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompositeShape {
    n: usize,
    d: usize,
    dim: usize,
}

impl CompositeShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::shape("at least one subsystem is required"));
        }
        if d < 2 {
            return Err(Error::shape(format!("local dimension must be >= 2, got {d}")));
        }
        let dim = u32::try_from(n)
            .ok()
            .and_then(|e| d.checked_pow(e))
            .filter(|&dim| dim <= MAX_DIM)
            .ok_or(Error::Capacity { n, d, limit: MAX_DIM })?;
        Ok(CompositeShape { n, d, dim })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(n, 2)
    }

    /// Subsystem count `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Local dimension `d`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Total dimension `d^N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Base-`d` digits of a composite index, subsystem 1 first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = index % self.d;
            index /= self.d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.n);
        digits.iter().fold(0, |acc, &k| acc * self.d + k)
    }

    /// Stride of subsystem `label` (1-based) in the composite index.
    fn stride(&self, label: usize) -> usize {
        self.d.pow((self.n - label) as u32)
    }

    fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.d)
    }

    fn check_same(&self, other: &CompositeShape) -> Result<()> {
        if self != other {
            return Err(Error::shape(format!(
                "shape mismatch: (N={}, d={}) vs (N={}, d={})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CompositeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, d={}", self.n, self.d)
    }
}

/// Sorted, duplicate-free set of 1-based subsystem labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsystemSet(Vec<usize>);

impl SubsystemSet {
    /// Builds a set; labels must be >= 1 and distinct. May be empty.
    pub fn new(labels: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = labels.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::contract("subsystem labels are 1-based"));
        }
        v.sort_unstable();
        let len = v.len();
        v.dedup();
        if v.len() != len {
            return Err(Error::contract("duplicate subsystem label"));
        }
        Ok(SubsystemSet(v))
    }

    pub fn single(label: usize) -> Result<Self> {
        Self::new([label])
    }

    /// All subsystems `1..=n`.
    pub fn all(n: usize) -> Self {
        SubsystemSet((1..=n).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    /// Labels of `1..=n` not in this set.
    pub fn complement(&self, n: usize) -> SubsystemSet {
        SubsystemSet((1..=n).filter(|l| !self.contains(*l)).collect())
    }

    pub fn validate(&self, shape: &CompositeShape) -> Result<()> {
        match self.0.last() {
            Some(&max) if max > shape.n() => Err(Error::contract(format!(
                "subsystem {max} does not exist for {shape}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SubsystemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Normalized state vector over a composite shape.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    shape: CompositeShape,
    amps: CVector,
}

impl PureState {
    /// Wraps amplitudes that must already have unit norm within `TAU_NORM`.
    pub fn new(shape: CompositeShape, amps: CVector) -> Result<Self> {
        if amps.len() != shape.dim() {
            return Err(Error::shape(format!(
                "expected {} amplitudes for {shape}, got {}",
                shape.dim(),
                amps.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("non-finite amplitude"));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > TAU_NORM {
            return Err(Error::contract(format!("state norm is {norm}, expected 1")));
        }
        Ok(PureState { shape, amps })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(shape: CompositeShape, amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::contract("cannot normalize a zero or non-finite vector"));
        }
        Self::new(shape, amps.unscale(norm))
    }

    /// Computational basis vector `|digits>`.
    pub fn basis(shape: CompositeShape, digits: &[usize]) -> Result<Self> {
        if digits.len() != shape.n() || digits.iter().any(|&k| k >= shape.d()) {
            return Err(Error::shape(format!("basis label {digits:?} invalid for {shape}")));
        }
        let mut amps = CVector::zeros(shape.dim());
        amps[shape.index(digits)] = Complex64::new(1.0, 0.0);
        Ok(PureState { shape, amps })
    }

    pub fn shape(&self) -> CompositeShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_parts(self.shape, &self.amps * self.amps.adjoint())
    }

    /// Applies a unitary acting on the whole space.
    pub fn apply(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.shape.dim() || unitary.ncols() != self.shape.dim() {
            return Err(Error::shape("unitary dimension does not match state"));
        }
        Self::new(self.shape, unitary * &self.amps)
    }
}

/// Hermitian operator over a composite shape; no positivity requirement.
///
/// Partial transposes of density matrices land here.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    shape: CompositeShape,
    mat: CMatrix,
}

impl Operator {
    pub fn new(shape: CompositeShape, mat: CMatrix) -> Result<Self> {
        if mat.nrows() != shape.dim() || mat.ncols() != shape.dim() {
            return Err(Error::shape(format!(
                "expected a {0}x{0} matrix for {shape}, got {1}x{2}",
                shape.dim(),
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Operator { shape, mat })
    }

    pub fn shape(&self) -> CompositeShape {
        self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Largest entry of `|A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.mat)
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        hermitian_spectrum(&self.mat)
    }

    pub fn partial_transpose(&self, part: &SubsystemSet) -> Result<Operator> {
        part.validate(&self.shape)?;
        Ok(Operator {
            shape: self.shape,
            mat: partial_transpose_matrix(&self.mat, &self.shape, part),
        })
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    shape: CompositeShape,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(shape: CompositeShape, mat: CMatrix) -> Result<Self> {
        let op = Operator::new(shape, mat)?;
        if op.mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("non-finite matrix entry"));
        }
        let defect = op.hermiticity_defect();
        if defect > TAU_HERM {
            return Err(Error::contract(format!("matrix is not Hermitian (defect {defect:e})")));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > TAU_NORM || tr.im.abs() > TAU_NORM {
            return Err(Error::contract(format!("trace is {tr}, expected 1")));
        }
        let spec = op.spectrum()?;
        let min = spec.last().copied().unwrap_or(0.0);
        if min < -TAU_PSD {
            return Err(Error::Positivity(format!("minimum eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { shape, mat: op.mat })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_parts(shape: CompositeShape, mat: CMatrix) -> Self {
        debug_assert_eq!(mat.nrows(), shape.dim());
        DensityMatrix { shape, mat }
    }

    /// `I / D`.
    pub fn maximally_mixed(shape: CompositeShape) -> Self {
        let dim = shape.dim();
        let mat = CMatrix::identity(dim, dim).unscale(dim as f64);
        DensityMatrix { shape, mat }
    }

    /// Diagonal state from non-negative weights on the computational basis.
    pub fn diagonal(shape: CompositeShape, weights: &[f64]) -> Result<Self> {
        if weights.len() != shape.dim() {
            return Err(Error::shape("diagonal length does not match shape"));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::Positivity("negative diagonal weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > TAU_NORM {
            return Err(Error::contract(format!("diagonal weights sum to {sum}")));
        }
        let diag = CVector::from_iterator(weights.len(), weights.iter().map(|&w| Complex64::new(w, 0.0)));
        Ok(DensityMatrix {
            shape,
            mat: CMatrix::from_diagonal(&diag),
        })
    }

    /// Convex combination of density matrices sharing one shape.
    pub fn convex_sum(terms: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::contract("empty convex sum"))?;
        let shape = first.shape;
        let mut mat = CMatrix::zeros(shape.dim(), shape.dim());
        let mut total = 0.0;
        for (w, rho) in terms {
            shape.check_same(&rho.shape)?;
            if w.is_nan() || *w < 0.0 {
                return Err(Error::contract("convex weights must be non-negative"));
            }
            total += w;
            mat += rho.mat.scale(*w);
        }
        if (total - 1.0).abs() > TAU_NORM {
            return Err(Error::contract(format!("convex weights sum to {total}")));
        }
        Ok(DensityMatrix { shape, mat })
    }

    pub fn shape(&self) -> CompositeShape {
        self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn as_operator(&self) -> Operator {
        Operator {
            shape: self.shape,
            mat: self.mat.clone(),
        }
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        hermitian_spectrum(&self.mat)
    }

    /// Conjugation `U rho U^dagger` by a unitary on the whole space.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.shape.dim() || unitary.ncols() != self.shape.dim() {
            return Err(Error::shape("unitary dimension does not match state"));
        }
        let mat = unitary * &self.mat * unitary.adjoint();
        Ok(DensityMatrix {
            shape: self.shape,
            mat: symmetrize(&mat),
        })
    }

    /// Sum of squared moduli of off-diagonal entries.
    pub fn off_diagonal_mass(&self) -> f64 {
        let mut s = 0.0;
        for j in 0..self.mat.ncols() {
            for i in 0..self.mat.nrows() {
                if i != j {
                    s += self.mat[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

/// Anything with a composite shape and a dense matrix, pure or mixed.
pub trait AsDensity {
    fn to_density(&self) -> DensityMatrix;
}

impl AsDensity for PureState {
    fn to_density(&self) -> DensityMatrix {
        self.projector()
    }
}

impl AsDensity for DensityMatrix {
    fn to_density(&self) -> DensityMatrix {
        self.clone()
    }
}

/// Kronecker product of two pure states; `a` becomes the leading subsystems.
pub fn tensor_product_pure(a: &PureState, b: &PureState) -> Result<PureState> {
    let shape = joined_shape(&a.shape, &b.shape)?;
    Ok(PureState {
        shape,
        amps: a.amps.kronecker(&b.amps),
    })
}

/// Kronecker product of two density matrices; `a` becomes the leading subsystems.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let shape = joined_shape(&a.shape, &b.shape)?;
    Ok(DensityMatrix {
        shape,
        mat: a.mat.kronecker(&b.mat),
    })
}

fn joined_shape(a: &CompositeShape, b: &CompositeShape) -> Result<CompositeShape> {
    if a.d() != b.d() {
        return Err(Error::shape(format!(
            "local dimensions differ: {} vs {}",
            a.d(),
            b.d()
        )));
    }
    CompositeShape::new(a.n() + b.n(), a.d())
}

/// Reduced state on `keep`, tracing out every other subsystem.
///
/// The kept subsystems are relabeled `1..=|keep|` in ascending order.
pub fn partial_trace(rho: &DensityMatrix, keep: &SubsystemSet) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::contract(
            "partial trace over every subsystem is a scalar; keep at least one",
        ));
    }
    keep.validate(&rho.shape)?;
    let out_shape = rho.shape.with_n(keep.len())?;
    if keep.len() == rho.shape.n() {
        return Ok(rho.clone());
    }
    let traced = keep.complement(rho.shape.n());
    let kept_offsets = label_offsets(&rho.shape, keep);
    let traced_offsets = label_offsets(&rho.shape, &traced);

    let dk = kept_offsets.len();
    let mut out = CMatrix::zeros(dk, dk);
    for (r, &ro) in kept_offsets.iter().enumerate() {
        for (c, &co) in kept_offsets.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_offsets {
                acc += rho.mat[(ro + t, co + t)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(DensityMatrix::from_parts(out_shape, out))
}

/// Partial transpose of `rho` on the subsystems in `part`.
pub fn partial_transpose(rho: &DensityMatrix, part: &SubsystemSet) -> Result<Operator> {
    part.validate(&rho.shape)?;
    Ok(Operator {
        shape: rho.shape,
        mat: partial_transpose_matrix(&rho.mat, &rho.shape, part),
    })
}

/// Contribution of every configuration of `labels` to the full composite
/// index, enumerated in the relabeled (ascending, row-major) order.
fn label_offsets(shape: &CompositeShape, labels: &SubsystemSet) -> Vec<usize> {
    let strides: Vec<usize> = labels.labels().iter().map(|&l| shape.stride(l)).collect();
    let count = shape.d().pow(strides.len() as u32);
    let mut out = Vec::with_capacity(count);
    for mut k in 0..count {
        let mut off = 0;
        for s in strides.iter().rev() {
            off += (k % shape.d()) * s;
            k /= shape.d();
        }
        out.push(off);
    }
    out
}

fn partial_transpose_matrix(mat: &CMatrix, shape: &CompositeShape, part: &SubsystemSet) -> CMatrix {
    let dim = shape.dim();
    let strides: Vec<usize> = part.labels().iter().map(|&l| shape.stride(l)).collect();
    let d = shape.d();
    CMatrix::from_fn(dim, dim, |i, j| {
        let (mut si, mut sj) = (i, j);
        for &s in &strides {
            let di = (i / s) % d;
            let dj = (j / s) % d;
            si = si - di * s + dj * s;
            sj = sj - dj * s + di * s;
        }
        mat[(si, sj)]
    })
}

pub(crate) fn hermiticity_defect(mat: &CMatrix) -> f64 {
    let n = mat.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn symmetrize(mat: &CMatrix) -> CMatrix {
    (mat + mat.adjoint()).unscale(2.0)
}

/// Eigenvalues of a Hermitian matrix, descending.
///
/// Inputs with a Hermiticity defect up to `TAU_HERM` are symmetrized first.
pub fn hermitian_spectrum(mat: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(mat)?.0)
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(mat: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if mat.nrows() != mat.ncols() {
        return Err(Error::shape("spectrum of a non-square matrix"));
    }
    let defect = hermiticity_defect(mat);
    if defect.is_nan() || defect > TAU_HERM {
        return Err(Error::contract(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    let eig = SymmetricEigen::new(symmetrize(mat));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(mat.nrows(), order.len(), |i, c| eig.eigenvectors[(i, order[c])]);
    Ok((values, vectors))
}

/// `tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    rho.mat.iter().map(|z| z.norm_sqr()).sum()
}

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let s: f64 = -rho.spectrum()?.into_iter().map(xlog2x).sum::<f64>();
    Ok(s.max(0.0))
}

/// Order-2 Rényi entropy with a one-half prefactor, `-(1/2) log2 tr rho^2`.
///
/// The conventional definition has no prefactor; detectors never depend on
/// it because they compare purities directly.
pub fn renyi2_entropy(rho: &DensityMatrix) -> f64 {
    -0.5 * purity(rho).log2()
}

/// Inner product `<a|b>`.
pub fn overlap(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.shape.check_same(&b.shape)?;
    Ok(a.amps.dotc(&b.amps))
}

/// Kronecker product of per-subsystem unitaries, subsystem 1 leading.
pub fn local_product(factors: &[CMatrix]) -> Result<CMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::contract("empty product of local operators"))?;
    let d = first.nrows();
    if rest.iter().any(|f| f.nrows() != d || f.ncols() != d) {
        return Err(Error::shape("local operators have differing dimensions"));
    }
    CompositeShape::new(factors.len(), d)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kronecker(f)))
}

/// Whether `rho` equals `I/d` entrywise within `tol` (single subsystem).
pub(crate) fn is_maximally_mixed(rho: &DensityMatrix, tol: f64) -> bool {
    let dim = rho.shape.dim();
    let target = 1.0 / dim as f64;
    for j in 0..dim {
        for i in 0..dim {
            let want = if i == j { target } else { 0.0 };
            if (rho.mat[(i, j)] - Complex64::new(want, 0.0)).norm() > tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(
            CompositeShape::qubits(2).unwrap(),
            CVector::from_vec(vec![c(s), c(0.0), c(0.0), c(s)]),
        )
        .unwrap()
    }

    #[test]
    fn shape_limits() {
        assert!(CompositeShape::new(0, 2).is_err());
        assert!(CompositeShape::new(2, 1).is_err());
        assert!(CompositeShape::new(12, 2).is_ok());
        assert!(CompositeShape::new(7, 3).is_ok());
        assert!(matches!(CompositeShape::new(13, 2), Err(Error::Capacity { .. })));
        assert!(matches!(CompositeShape::new(200, 3), Err(Error::Capacity { .. })));
    }

    #[test]
    fn digits_round_trip() {
        let sh = CompositeShape::new(3, 3).unwrap();
        for i in 0..sh.dim() {
            assert_eq!(sh.index(&sh.digits(i)), i);
        }
        assert_eq!(sh.digits(5), vec![0, 1, 2]);
    }

    #[test]
    fn subsystem_set_rules() {
        assert!(SubsystemSet::new([0]).is_err());
        assert!(SubsystemSet::new([2, 2]).is_err());
        let s = SubsystemSet::new([3, 1]).unwrap();
        assert_eq!(s.labels(), &[1, 3]);
        assert_eq!(s.complement(4).labels(), &[2, 4]);
        assert!(s.validate(&CompositeShape::qubits(2).unwrap()).is_err());
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn basis_tensor_bookkeeping() {
        let q = CompositeShape::qubits(1).unwrap();
        let zero = PureState::basis(q, &[0]).unwrap();
        let one = PureState::basis(q, &[1]).unwrap();
        let prod = tensor_product_pure(&zero, &one).unwrap();
        assert_eq!(prod.amplitudes()[1], c(1.0));
        assert_eq!(prod.shape().n(), 2);
    }

    #[test]
    fn mixed_identity_tensor() {
        let q = CompositeShape::qubits(1).unwrap();
        let m = DensityMatrix::maximally_mixed(q);
        let p = tensor_product(&m, &m).unwrap();
        assert_eq!(p, DensityMatrix::maximally_mixed(CompositeShape::qubits(2).unwrap()));
    }

    #[test]
    fn tensor_rejects_mixed_local_dims() {
        let a = DensityMatrix::maximally_mixed(CompositeShape::new(1, 2).unwrap());
        let b = DensityMatrix::maximally_mixed(CompositeShape::new(1, 3).unwrap());
        assert!(matches!(tensor_product(&a, &b), Err(Error::Shape(_))));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let rho = bell().projector();
        for k in 1..=2 {
            let red = partial_trace(&rho, &SubsystemSet::single(k).unwrap()).unwrap();
            assert!(is_maximally_mixed(&red, 1e-14));
        }
    }

    #[test]
    fn empty_keep_is_rejected() {
        let rho = bell().projector();
        let empty = SubsystemSet::new([]).unwrap();
        assert!(matches!(partial_trace(&rho, &empty), Err(Error::Contract(_))));
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let rho = bell().projector();
        let pt = partial_transpose(&rho, &SubsystemSet::single(2).unwrap()).unwrap();
        let spec = pt.spectrum().unwrap();
        assert_abs_diff_eq!(spec[3], -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(spec[0], 0.5, epsilon = 1e-12);
        let back = pt.partial_transpose(&SubsystemSet::single(2).unwrap()).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
    }

    #[test]
    fn identity_is_fixed_by_partial_transpose() {
        let sh = CompositeShape::new(3, 3).unwrap();
        let rho = DensityMatrix::maximally_mixed(sh);
        let pt = partial_transpose(&rho, &SubsystemSet::new([1, 3]).unwrap()).unwrap();
        assert_eq!(pt.matrix(), rho.matrix());
    }

    #[test]
    fn spectra_of_simple_states() {
        let q = CompositeShape::qubits(1).unwrap();
        let spec = DensityMatrix::maximally_mixed(q).spectrum().unwrap();
        assert_abs_diff_eq!(spec[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(spec[1], 0.5, epsilon = 1e-15);
        let spec = PureState::basis(q, &[0]).unwrap().projector().spectrum().unwrap();
        assert_abs_diff_eq!(spec[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(spec[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn spectrum_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.1), c(0.0), c(0.5)]);
        assert!(matches!(hermitian_spectrum(&m), Err(Error::Contract(_))));
    }

    #[test]
    fn density_validation() {
        let sh = CompositeShape::qubits(1).unwrap();
        let not_psd = CMatrix::from_row_slice(2, 2, &[c(1.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(matches!(DensityMatrix::new(sh, not_psd), Err(Error::Positivity(_))));
        let bad_trace = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.0), c(0.0), c(0.6)]);
        assert!(matches!(DensityMatrix::new(sh, bad_trace), Err(Error::Contract(_))));
        let ok = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.25), c(0.25), c(0.5)]);
        assert!(DensityMatrix::new(sh, ok).is_ok());
    }

    #[test]
    fn entropies() {
        let q = CompositeShape::qubits(1).unwrap();
        let mixed = DensityMatrix::maximally_mixed(q);
        let pure = bell().projector();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(renyi2_entropy(&pure), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(renyi2_entropy(&mixed), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(purity(&mixed), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&pure), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn overlap_of_self_and_mismatch() {
        let b = bell();
        assert_abs_diff_eq!(overlap(&b, &b).unwrap().re, 1.0, epsilon = 1e-15);
        let other = PureState::basis(CompositeShape::qubits(3).unwrap(), &[0, 0, 0]).unwrap();
        assert!(overlap(&b, &other).is_err());
    }
}
