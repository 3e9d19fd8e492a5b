//! Numerical tolerances shared by every module.

/// Allowed deviation of a norm or trace from one.
pub const TAU_NORM: f64 = 1e-10;

/// Allowed entrywise Hermiticity defect, `max |A - A^dagger|`.
pub const TAU_HERM: f64 = 1e-10;

/// Eigenvalue slack when testing positive semidefiniteness.
pub const TAU_PSD: f64 = 1e-9;

/// Margin used to decide strict inequalities between purities.
pub const EPS_CRIT: f64 = 1e-9;

/// Largest composite dimension `d^N` handled with dense storage.
pub const MAX_DIM: usize = 4096;
