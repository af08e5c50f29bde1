//! Time propagation `U_k = exp(-i 2 pi k H / kappa)`, exact or Trotterized.
//!
//! Exact mode diagonalizes the dense Hamiltonian once and reuses the
//! spectral decomposition for every propagation. Trotter mode applies
//! `|k| * steps_per_k` first-order product steps, with the Trotterization
//! injected into the basis-state definitions so the ansatz stays
//! variational.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guess::GuessSet;
use crate::linalg::eigh;
use crate::pauli::{PauliSum, Term, TrotterGroups};
use crate::statevector::{apply_pauli_exponential, State};

/// Propagation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagatorMode {
    /// Dense spectral decomposition; limited to small registers.
    Exact,
    /// First-order Trotter product, one step block per unit of `k`.
    Trotter,
}

/// How the Trotter step orders its exponential factors.
#[derive(Debug, Clone)]
enum TrotterOrdering {
    /// The four-group X/Z two-local split.
    Grouped(TrotterGroups),
    /// One exponential per Pauli string in canonical term order, used for
    /// operators outside the X/Z two-local class.
    PerTerm { terms: Vec<Term>, identity: f64 },
}

/// A prepared propagator for one Hamiltonian and scaling constant.
pub struct Propagator {
    mode: PropagatorMode,
    steps_per_k: usize,
    kappa: f64,
    ordering: Option<TrotterOrdering>,
    eig: Option<(Vec<f64>, DMatrix<Complex64>)>,
}

impl Propagator {
    /// Exact propagation from the cached dense spectral decomposition.
    pub fn exact(h: &PauliSum, kappa: f64, dense_limit: usize) -> Result<Self> {
        let dense = h.to_dense_with_limit(dense_limit)?;
        let decomposition = eigh(&dense);
        Ok(Self {
            mode: PropagatorMode::Exact,
            steps_per_k: 1,
            kappa,
            ordering: None,
            eig: Some(decomposition),
        })
    }

    /// Trotterized propagation with `steps_per_k` first-order steps per unit.
    ///
    /// Uses the four-group split when the operator is X/Z two-local and
    /// falls back to a term-by-term ordering otherwise.
    pub fn trotter(h: &PauliSum, kappa: f64, steps_per_k: usize) -> Result<Self> {
        assert!(steps_per_k >= 1, "steps_per_k must be at least 1");
        let ordering = match h.trotter_groups() {
            Ok(groups) => TrotterOrdering::Grouped(groups),
            Err(Error::UnsupportedTermShape(_)) => TrotterOrdering::PerTerm {
                terms: h.without_identity().terms().to_vec(),
                identity: h.identity_offset(),
            },
            Err(e) => return Err(e),
        };
        Ok(Self {
            mode: PropagatorMode::Trotter,
            steps_per_k,
            kappa,
            ordering: Some(ordering),
            eig: None,
        })
    }

    pub fn mode(&self) -> PropagatorMode {
        self.mode
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn steps_per_k(&self) -> usize {
        self.steps_per_k
    }

    /// Apply `U_k` to a state; `k = 0` is the identity in both modes.
    ///
    /// Negative `k` reverses the factor ordering with negated angles, so
    /// `U_{-k}` is exactly the adjoint of `U_k` and the subspace matrices
    /// stay Hermitian by construction.
    pub fn propagate(&self, k: i64, psi: &State) -> Result<State> {
        if k == 0 {
            return Ok(psi.clone());
        }
        match self.mode {
            PropagatorMode::Exact => Ok(self.propagate_exact(k, psi)),
            PropagatorMode::Trotter => Ok(self.propagate_trotter(k, psi)),
        }
    }

    fn propagate_exact(&self, k: i64, psi: &State) -> State {
        let (vals, vecs) = self.eig.as_ref().expect("exact mode caches the spectrum");
        let dim = psi.amplitudes().len();
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        let overlaps = vecs.adjoint() * &v;
        let angle = -2.0 * std::f64::consts::PI * k as f64 / self.kappa;
        let mut out = nalgebra::DVector::from_element(dim, Complex64::new(0.0, 0.0));
        for (idx, &lambda) in vals.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, angle * lambda);
            out.axpy(phase * overlaps[idx], &vecs.column(idx).into_owned(), Complex64::new(1.0, 0.0));
        }
        State::new(psi.n_qubits(), out.data.into()).expect("dimension preserved")
    }

    fn propagate_trotter(&self, k: i64, psi: &State) -> State {
        let ordering = self
            .ordering
            .as_ref()
            .expect("trotter mode caches the ordering");
        let steps = k.unsigned_abs() as usize * self.steps_per_k;
        let theta = 2.0 * std::f64::consts::PI * k.signum() as f64
            / (self.kappa * self.steps_per_k as f64);
        let forward = k > 0;
        let mut state = psi.clone();
        for _ in 0..steps {
            state = self.trotter_step(ordering, state, theta, forward);
        }
        state
    }

    fn trotter_step(
        &self,
        ordering: &TrotterOrdering,
        mut state: State,
        theta: f64,
        forward: bool,
    ) -> State {
        match ordering {
            TrotterOrdering::Grouped(groups) => {
                let group_refs = groups.in_order();
                let identity_phase = Complex64::from_polar(1.0, -theta * groups.identity);
                if forward {
                    for group in group_refs {
                        for term in group.terms() {
                            state =
                                apply_pauli_exponential(&state, &term.string, theta * term.coeff);
                        }
                    }
                } else {
                    for group in group_refs.iter().rev() {
                        for term in group.terms().iter().rev() {
                            state =
                                apply_pauli_exponential(&state, &term.string, theta * term.coeff);
                        }
                    }
                }
                state.scaled(identity_phase)
            }
            TrotterOrdering::PerTerm { terms, identity } => {
                let identity_phase = Complex64::from_polar(1.0, -theta * identity);
                if forward {
                    for term in terms {
                        state = apply_pauli_exponential(&state, &term.string, theta * term.coeff);
                    }
                } else {
                    for term in terms.iter().rev() {
                        state = apply_pauli_exponential(&state, &term.string, theta * term.coeff);
                    }
                }
                state.scaled(identity_phase)
            }
        }
    }

    /// The time-propagated basis `Gamma_{xi,k} = U_k |Phi_xi>`, ordered by
    /// guess index outer and `k` from `-k_max` to `+k_max` inner.
    pub fn basis_states(&self, guesses: &GuessSet, k_max: usize) -> Result<Vec<State>> {
        let ks: Vec<i64> = (-(k_max as i64)..=k_max as i64).collect();
        let tasks: Vec<(usize, i64)> = (0..guesses.len())
            .flat_map(|xi| ks.iter().map(move |&k| (xi, k)))
            .collect();
        tasks
            .into_par_iter()
            .map(|(xi, k)| self.propagate(k, &guesses.states()[xi]))
            .collect()
    }
}
