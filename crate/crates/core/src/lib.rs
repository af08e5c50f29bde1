//! Classical simulator of filter diagonalization over time-propagated
//! variational bases of sparse Pauli Hamiltonians.
//!
//! The pipeline: estimate spectral bounds from extremal Gershgorin rows,
//! build guess states (CIS by default), time-propagate them exactly or
//! with a first-order Trotter product, assemble the subspace Hamiltonian
//! and metric by direct contraction or through simulated one-ancilla
//! swap-test circuits (exact or shot-sampled), solve the generalized
//! eigenproblem after canonical orthogonalization, and evaluate
//! transition properties and broadened absorption spectra.

pub mod bounds;
pub mod error;
pub mod guess;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod pauli;
pub mod propagators;
pub mod qfd;
pub mod statevector;

pub use bounds::SpectralBounds;
pub use error::{Error, Result};
pub use guess::{GuessSet, InterferingState, Part, Sign};
pub use model::ModelSpec;
pub use observables::{SpectrumLine, TransitionTable};
pub use pauli::{Axis, PauliString, PauliSum, TrotterGroups};
pub use propagators::{Propagator, PropagatorMode};
pub use qfd::{EvalPath, QfdBasis, RitzSolution, SubspaceProblem};
pub use statevector::{AncillaState, ShotPlan, State};
