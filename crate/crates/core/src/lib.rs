//! Purity-based entanglement detection for multipartite qudit states.
//!
//! The crate builds pure and mixed states over `N` subsystems of common
//! local dimension `d`, applies the purity criterion (a state is entangled
//! when some one-subsystem marginal is strictly less pure than the whole),
//! and checks when convex mixtures of states with maximally mixed
//! one-qudit marginals stay entangled. PPT, Wootters concurrence and
//! bipartition enumeration serve as independent cross-checks.

pub mod criteria;
pub mod error;
pub mod io;
pub mod mixtures;
pub mod random;
pub mod report;
pub mod tensor;
pub mod theorems;
pub mod tol;
pub mod zoo;

pub use error::{Error, Result};
pub use tensor::{CompositeShape, DensityMatrix, Operator, PureState, SubsystemSet};
