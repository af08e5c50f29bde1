//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by operator construction, state manipulation, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Operator document is not valid JSON.
    #[error("invalid operator JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// A Pauli axis label other than `X`, `Y`, or `Z`.
    #[error("malformed axis label {0:?} (expected \"X\", \"Y\", or \"Z\")")]
    MalformedAxis(String),

    /// The same qubit appears twice within one Pauli string.
    #[error("duplicate qubit {qubit} within one Pauli string")]
    DuplicateQubit { qubit: usize },

    /// A coefficient that is NaN or infinite.
    #[error("coefficient {0} is not a finite real number")]
    NonFiniteCoeff(f64),

    /// A factor addresses a qubit outside the declared register.
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    /// Register sizes of two objects disagree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Dense representation requested above the configured qubit limit.
    #[error("{n_qubits} qubits exceeds the dense limit of {limit}")]
    DenseLimitExceeded { n_qubits: usize, limit: usize },

    /// A term shape the four-group Trotter split does not cover.
    #[error("unsupported term for X/Z two-local Trotter grouping: {0}")]
    UnsupportedTermShape(String),

    /// Malformed bitstring (wrong length or non-binary characters).
    #[error("invalid bitstring {0:?}")]
    InvalidBitstring(String),

    /// Shot plan with zero shots.
    #[error("shot count must be at least 1")]
    InvalidShotPlan,

    /// More guess states requested than the guess space supports.
    #[error("requested {requested} guess states but the space has dimension {available}")]
    TooManyGuessStates { requested: usize, available: usize },

    /// Interfering state with identical bra/ket guess indices.
    #[error("interfering state requires two distinct guess indices, got {0}")]
    EqualGuessIndices(usize),

    /// Guess-state index outside the guess set.
    #[error("guess index {index} out of range for {count} guesses")]
    GuessIndexOutOfRange { index: usize, count: usize },

    /// Loaded guess states failed the orthonormality check.
    #[error("guess states are not orthonormal (max deviation {max_dev:.3e} > {tol:.1e})")]
    NotOrthonormal { max_dev: f64, tol: f64 },

    /// Every metric eigenvalue fell below the spectral cutoff.
    #[error("empty subspace: all metric eigenvalues below cutoff")]
    EmptySubspace,

    /// Requested kept-dimension cannot be honored.
    #[error("cannot keep {requested} metric directions ({usable} usable)")]
    InvalidKeptDimension { requested: usize, usable: usize },

    /// Invalid sampling grid for the broadened spectrum.
    #[error("invalid spectrum grid: {0}")]
    InvalidGrid(String),

    /// Lorentzian width must be positive.
    #[error("Lorentzian width must be positive, got {0}")]
    InvalidWidth(f64),

    /// No dipole components supplied for oscillator strengths.
    #[error("oscillator strengths require at least one dipole component")]
    MissingDipole,

    /// Invalid synthetic-model parameters.
    #[error("invalid model spec: {0}")]
    InvalidModel(String),

    /// Negative spectral overage.
    #[error("overage must be nonnegative, got {0}")]
    NegativeOverage(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
