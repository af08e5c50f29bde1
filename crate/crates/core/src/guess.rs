//! Classical construction of guess states.
//!
//! The default guess set comes from configuration interaction singles:
//! the Hamiltonian is projected onto the span of the reference
//! configuration `|00...0>` and all single bit-flip configurations,
//! diagonalized classically, and the lowest eigenvectors are lifted back
//! to full-register states. Interfering superpositions of guess pairs
//! feed the off-diagonal swap-test blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::pauli::PauliSum;
use crate::statevector::State;

/// How a guess set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Cis,
    File,
    Custom,
}

/// An ordered, orthonormal set of guess states.
#[derive(Debug, Clone)]
pub struct GuessSet {
    states: Vec<State>,
    provenance: Provenance,
    cis_energies: Option<Vec<f64>>,
}

impl GuessSet {
    /// Wrap externally supplied states, checking pairwise orthonormality.
    pub fn from_states(states: Vec<State>, provenance: Provenance, tol: f64) -> Result<Self> {
        let mut max_dev = 0.0_f64;
        for i in 0..states.len() {
            for j in i..states.len() {
                let expected = if i == j { 1.0 } else { 0.0 };
                let overlap = states[i].inner(&states[j])?;
                max_dev = max_dev.max((overlap - Complex64::new(expected, 0.0)).norm());
            }
        }
        if max_dev > tol {
            return Err(Error::NotOrthonormal { max_dev, tol });
        }
        Ok(Self {
            states,
            provenance,
            cis_energies: None,
        })
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Subspace eigenvalues attached by the CIS construction.
    pub fn cis_energies(&self) -> Option<&[f64]> {
        self.cis_energies.as_deref()
    }

    pub fn n_qubits(&self) -> usize {
        self.states.first().map_or(0, |s| s.n_qubits())
    }
}

/// The single-excitation configuration basis: `|00...0>` plus one flip per qubit.
fn cis_configurations(n_qubits: usize) -> Vec<usize> {
    let mut configs = vec![0usize];
    configs.extend((0..n_qubits).map(|q| 1usize << (n_qubits - 1 - q)));
    configs
}

/// CIS guess states: diagonalize the Hamiltonian in the single-excitation
/// configuration span and lift the lowest `n_states` eigenvectors.
///
/// Eigenvector phases are fixed by rotating the largest-magnitude
/// component to the positive real axis, so degenerate guess sets are
/// reproducible.
pub fn cis_guesses(h: &PauliSum, n_states: usize) -> Result<GuessSet> {
    let n = h.n_qubits();
    let configs = cis_configurations(n);
    let dim = configs.len();
    if n_states > dim {
        return Err(Error::TooManyGuessStates {
            requested: n_states,
            available: dim,
        });
    }
    // project: h_cis[i][j] = <cfg_i| H |cfg_j>, one term contributes when
    // its flip pattern sends cfg_j to cfg_i
    let mut h_cis = DMatrix::<Complex64>::zeros(dim, dim);
    for term in h.terms() {
        let masks = term.string.masks(n);
        for (j, &cfg_j) in configs.iter().enumerate() {
            let image = cfg_j as u64 ^ masks.flip;
            if let Some(i) = configs.iter().position(|&c| c as u64 == image) {
                h_cis[(i, j)] += term.coeff * masks.phase(cfg_j as u64);
            }
        }
    }
    let (vals, vecs) = eigh(&h_cis);
    let mut states = Vec::with_capacity(n_states);
    for k in 0..n_states {
        let col = vecs.column(k);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (i, &cfg) in configs.iter().enumerate() {
            amps[cfg] = col[i];
        }
        states.push(fix_phase(State::new(n, amps)?));
    }
    Ok(GuessSet {
        states,
        provenance: Provenance::Cis,
        cis_energies: Some(vals[..n_states].to_vec()),
    })
}

/// Raw configuration guesses (no diagonalization): the reference plus the
/// first `n_states - 1` single-flip configurations in qubit order.
pub fn raw_configuration_guesses(h: &PauliSum, n_states: usize) -> Result<GuessSet> {
    let n = h.n_qubits();
    let configs = cis_configurations(n);
    if n_states > configs.len() {
        return Err(Error::TooManyGuessStates {
            requested: n_states,
            available: configs.len(),
        });
    }
    let states = configs[..n_states]
        .iter()
        .map(|&c| State::from_index(n, c))
        .collect();
    Ok(GuessSet {
        states,
        provenance: Provenance::Custom,
        cis_energies: None,
    })
}

/// Rotate the largest-magnitude amplitude onto the positive real axis.
fn fix_phase(state: State) -> State {
    let amps = state.amplitudes();
    let mut best = 0usize;
    let mut best_norm = 0.0;
    for (i, a) in amps.iter().enumerate() {
        let n = a.norm();
        if n > best_norm + 1e-15 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return state;
    }
    let phase = amps[best] / Complex64::new(best_norm, 0.0);
    let n = state.n_qubits();
    let rotated = amps.iter().map(|a| a * phase.conj()).collect();
    State::from_raw(n, rotated)
}

/// Sign of an interfering superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> Complex64 {
        match self {
            Sign::Plus => Complex64::new(1.0, 0.0),
            Sign::Minus => Complex64::new(-1.0, 0.0),
        }
    }
}

/// Which part of the transition element the superposition targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// An interfering reference state for one off-diagonal guess pair:
/// `(|Phi_xi> +/- |Phi_xi'>)/sqrt(2)` or `(|Phi_xi> +/- i|Phi_xi'>)/sqrt(2)`.
#[derive(Debug, Clone)]
pub struct InterferingState {
    pub xi: usize,
    pub xi_prime: usize,
    pub sign: Sign,
    pub part: Part,
    pub state: State,
}

/// Build the interfering reference state for a guess pair.
///
/// The result is renormalized explicitly, which only matters when the
/// guesses are not exactly orthogonal.
pub fn interfering(
    set: &GuessSet,
    xi: usize,
    xi_prime: usize,
    sign: Sign,
    part: Part,
) -> Result<InterferingState> {
    if xi == xi_prime {
        return Err(Error::EqualGuessIndices(xi));
    }
    for idx in [xi, xi_prime] {
        if idx >= set.len() {
            return Err(Error::GuessIndexOutOfRange {
                index: idx,
                count: set.len(),
            });
        }
    }
    let unit = match part {
        Part::Re => Complex64::new(1.0, 0.0),
        Part::Im => Complex64::new(0.0, 1.0),
    };
    let w = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let state = State::superpose(
        &set.states[xi],
        w,
        &set.states[xi_prime],
        w * sign.factor() * unit,
    )?
    .normalized();
    Ok(InterferingState {
        xi,
        xi_prime,
        sign,
        part,
        state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Axis, PauliString};
    use approx::assert_abs_diff_eq;

    #[test]
    fn cis_on_diagonal_single_qubit() {
        let h = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::Z))]).unwrap();
        let set = cis_guesses(&h, 2).unwrap();
        let energies = set.cis_energies().unwrap();
        assert_abs_diff_eq!(energies[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(energies[1], 1.0, epsilon = 1e-12);
        // configuration basis is already the eigenbasis: |1> then |0>
        assert_abs_diff_eq!(set.states()[0].amplitudes()[1].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(set.states()[1].amplitudes()[0].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cis_without_coupling_returns_sorted_configurations() {
        // diagonal H with distinct configuration energies
        let h = PauliSum::new(
            2,
            vec![
                (-0.6, PauliString::single(0, Axis::Z)),
                (-0.25, PauliString::single(1, Axis::Z)),
            ],
        )
        .unwrap();
        let set = cis_guesses(&h, 3).unwrap();
        // config energies: |00> = -0.85, |10> = 0.35, |01> = -0.35
        let energies = set.cis_energies().unwrap();
        assert_abs_diff_eq!(energies[0], -0.85, epsilon = 1e-12);
        assert_abs_diff_eq!(energies[1], -0.35, epsilon = 1e-12);
        assert_abs_diff_eq!(energies[2], 0.35, epsilon = 1e-12);
        assert_abs_diff_eq!(set.states()[1].amplitudes()[0b01].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cis_rejects_too_many_states() {
        let h = PauliSum::new(2, vec![(1.0, PauliString::single(0, Axis::Z))]).unwrap();
        assert!(matches!(
            cis_guesses(&h, 4),
            Err(Error::TooManyGuessStates { requested: 4, available: 3 })
        ));
    }

    #[test]
    fn cis_states_are_orthonormal() {
        let h = PauliSum::new(
            3,
            vec![
                (-0.5, PauliString::single(0, Axis::Z)),
                (-0.45, PauliString::single(1, Axis::Z)),
                (0.08, PauliString::two(0, Axis::X, 1, Axis::X).unwrap()),
                (0.05, PauliString::two(1, Axis::X, 2, Axis::X).unwrap()),
            ],
        )
        .unwrap();
        let set = cis_guesses(&h, 4).unwrap();
        GuessSet::from_states(set.states().to_vec(), Provenance::Custom, 1e-10).unwrap();
    }

    #[test]
    fn interfering_examples() {
        let zero = State::basis_state("0").unwrap();
        let one = State::basis_state("1").unwrap();
        let set = GuessSet::from_states(vec![zero, one], Provenance::Custom, 1e-10).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();

        let plus_re = interfering(&set, 0, 1, Sign::Plus, Part::Re).unwrap();
        assert_abs_diff_eq!(plus_re.state.amplitudes()[0].re, inv_sqrt2, epsilon = 1e-14);
        assert_abs_diff_eq!(plus_re.state.amplitudes()[1].re, inv_sqrt2, epsilon = 1e-14);

        let minus_im = interfering(&set, 0, 1, Sign::Minus, Part::Im).unwrap();
        assert_abs_diff_eq!(minus_im.state.amplitudes()[0].re, inv_sqrt2, epsilon = 1e-14);
        assert_abs_diff_eq!(
            (minus_im.state.amplitudes()[1] - Complex64::new(0.0, -inv_sqrt2)).norm(),
            0.0,
            epsilon = 1e-14
        );

        let minus_re = interfering(&set, 0, 1, Sign::Minus, Part::Re).unwrap();
        let overlap = plus_re.state.inner(&minus_re.state).unwrap();
        assert_abs_diff_eq!(overlap.norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn interfering_rejects_equal_indices() {
        let set = GuessSet::from_states(
            vec![State::basis_state("0").unwrap(), State::basis_state("1").unwrap()],
            Provenance::Custom,
            1e-10,
        )
        .unwrap();
        assert!(matches!(
            interfering(&set, 1, 1, Sign::Plus, Part::Re),
            Err(Error::EqualGuessIndices(1))
        ));
    }

    #[test]
    fn from_states_rejects_non_orthonormal() {
        let zero = State::basis_state("0").unwrap();
        let err = GuessSet::from_states(vec![zero.clone(), zero], Provenance::File, 1e-8)
            .unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal { .. }));
    }
}
