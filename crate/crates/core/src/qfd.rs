//! Subspace assembly and the generalized Ritz eigensolve.
//!
//! The subspace Hamiltonian and metric over the time-propagated basis
//! can be evaluated three ways: direct statevector contraction, exact
//! readout of simulated one-ancilla swap-test circuits, or shot-sampled
//! readout of the same circuits. Diagonal guess blocks use the guess
//! state itself as the swap-test reference; off-diagonal blocks combine
//! four interfering-reference evaluations to recover the full complex
//! elements. The generalized eigenproblem is solved by canonical
//! orthogonalization of the metric followed by a standard Hermitian
//! eigensolve.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guess::{interfering, GuessSet, Part, Sign};
use crate::linalg::{eigh, hermiticity_error, hermitized};
use crate::pauli::PauliSum;
use crate::propagators::Propagator;
use crate::statevector::{sampled_readout, swap_test_state, State};
use crate::ShotPlan;

/// How subspace matrix elements are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalPath {
    /// Contract statevectors directly (no ancilla).
    Direct,
    /// Exact expectation values of the one-ancilla swap-test circuits.
    SwapTest,
    /// Shot-sampled Pauli measurements of the swap-test circuits.
    Sampled(ShotPlan),
}

impl EvalPath {
    fn label(&self) -> &'static str {
        match self {
            EvalPath::Direct => "direct",
            EvalPath::SwapTest => "swaptest",
            EvalPath::Sampled(_) => "sampled",
        }
    }
}

/// Interfering-reference variants in circuit order.
const VARIANTS: [(Sign, Part, &str); 4] = [
    (Sign::Plus, Part::Re, "re+"),
    (Sign::Minus, Part::Re, "re-"),
    (Sign::Plus, Part::Im, "im+"),
    (Sign::Minus, Part::Im, "im-"),
];

/// Propagated images of the four interfering references of one guess pair.
struct PairImages {
    xi: usize,
    xi_prime: usize,
    /// `images[variant][k_index] = U_k |Omega_variant>`.
    images: [Vec<State>; 4],
}

/// The cached time-propagated basis plus everything the swap-test
/// evaluation needs: per-guess images for diagonal blocks and
/// interfering-reference images for off-diagonal blocks.
///
/// Circuit identifiers depend only on the block structure, so metric,
/// Hamiltonian, and property evaluations over the same basis reuse the
/// same sampling substreams whenever their measurement bases coincide.
pub struct QfdBasis {
    n_guess: usize,
    k_max: usize,
    index_map: Vec<(usize, i64)>,
    states: Vec<State>,
    pairs: Vec<PairImages>,
}

impl QfdBasis {
    /// Propagate the guess set over `k = -k_max ..= k_max`.
    pub fn build(guesses: &GuessSet, k_max: usize, prop: &Propagator) -> Result<Self> {
        let n_guess = guesses.len();
        let states = prop.basis_states(guesses, k_max)?;
        let index_map: Vec<(usize, i64)> = (0..n_guess)
            .flat_map(|xi| (-(k_max as i64)..=k_max as i64).map(move |k| (xi, k)))
            .collect();

        let mut pair_list = Vec::new();
        for xi in 0..n_guess {
            for xi_prime in (xi + 1)..n_guess {
                pair_list.push((xi, xi_prime));
            }
        }
        let pairs: Vec<PairImages> = pair_list
            .into_par_iter()
            .map(|(xi, xi_prime)| {
                let mut images: [Vec<State>; 4] = Default::default();
                for (v, &(sign, part, _)) in VARIANTS.iter().enumerate() {
                    let omega = interfering(guesses, xi, xi_prime, sign, part)?;
                    images[v] = (-(k_max as i64)..=k_max as i64)
                        .map(|k| prop.propagate(k, &omega.state))
                        .collect::<Result<Vec<_>>>()?;
                }
                Ok(PairImages {
                    xi,
                    xi_prime,
                    images,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            n_guess,
            k_max,
            index_map,
            states,
            pairs,
        })
    }

    /// Basis dimension `M = n_guess * (2 k_max + 1)`.
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_guess(&self) -> usize {
        self.n_guess
    }

    /// Row/column labels as `(guess index, k)`.
    pub fn index_map(&self) -> &[(usize, i64)] {
        &self.index_map
    }

    /// The propagated basis states in index order.
    pub fn states(&self) -> &[State] {
        &self.states
    }

    fn row(&self, xi: usize, k_index: usize) -> usize {
        xi * (2 * self.k_max + 1) + k_index
    }

    /// Evaluate the subspace matrix of a Hermitian operator.
    ///
    /// Returns the symmetrized matrix together with the largest
    /// asymmetry observed before symmetrization.
    pub fn operator_matrix(
        &self,
        o: &PauliSum,
        path: &EvalPath,
    ) -> Result<(DMatrix<Complex64>, f64)> {
        let raw = match path {
            EvalPath::Direct => self.matrix_direct(o)?,
            EvalPath::SwapTest => self.matrix_swaptest(o, None)?,
            EvalPath::Sampled(plan) => self.matrix_swaptest(o, Some(plan))?,
        };
        let asym = hermiticity_error(&raw);
        Ok((hermitized(&raw), asym))
    }

    fn matrix_direct(&self, o: &PauliSum) -> Result<DMatrix<Complex64>> {
        let m = self.dim();
        let tasks: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| (r..m).map(move |c| (r, c)))
            .collect();
        let entries: Vec<(usize, usize, Complex64)> = tasks
            .into_par_iter()
            .map(|(r, c)| {
                let val = o.expectation(&self.states[r], &self.states[c])?;
                Ok((r, c, val))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut mat = DMatrix::<Complex64>::zeros(m, m);
        for (r, c, val) in entries {
            mat[(r, c)] = val;
            if r != c {
                mat[(c, r)] = val.conj();
            }
        }
        Ok(mat)
    }

    fn matrix_swaptest(
        &self,
        o: &PauliSum,
        plan: Option<&ShotPlan>,
    ) -> Result<DMatrix<Complex64>> {
        let n_k = 2 * self.k_max + 1;
        enum Task {
            Diag { xi: usize, ki: usize, kj: usize },
            OffDiag { pair: usize, ki: usize, kj: usize },
        }
        let mut tasks = Vec::new();
        for xi in 0..self.n_guess {
            for ki in 0..n_k {
                for kj in ki..n_k {
                    tasks.push(Task::Diag { xi, ki, kj });
                }
            }
        }
        for (pair, _) in self.pairs.iter().enumerate() {
            for ki in 0..n_k {
                for kj in ki..n_k {
                    tasks.push(Task::OffDiag { pair, ki, kj });
                }
            }
        }

        let evaluate = |v: &State, w: &State, circuit_id: &str| -> Result<Complex64> {
            let aleph = swap_test_state(v, w)?;
            match plan {
                None => crate::statevector::ancilla_readout(&aleph, o),
                Some(plan) => sampled_readout(&aleph, o, plan, circuit_id),
            }
        };

        let k_of = |idx: usize| idx as i64 - self.k_max as i64;
        let entries: Vec<Vec<(usize, usize, Complex64)>> = tasks
            .into_par_iter()
            .map(|task| match task {
                Task::Diag { xi, ki, kj } => {
                    let id = format!("d/{}/{}/{}", xi, k_of(ki), k_of(kj));
                    let val = evaluate(
                        &self.states[self.row(xi, ki)],
                        &self.states[self.row(xi, kj)],
                        &id,
                    )?;
                    Ok(vec![(self.row(xi, ki), self.row(xi, kj), val)])
                }
                Task::OffDiag { pair, ki, kj } => {
                    let images = &self.pairs[pair];
                    let (xi, xj) = (images.xi, images.xi_prime);
                    let mut m_variant = [Complex64::new(0.0, 0.0); 4];
                    for (v, &(_, _, tag)) in VARIANTS.iter().enumerate() {
                        let id = format!("o/{}/{}/{}/{}/{}", xi, xj, tag, k_of(ki), k_of(kj));
                        m_variant[v] =
                            evaluate(&images.images[v][ki], &images.images[v][kj], &id)?;
                    }
                    // With T = U_k^H O U_k', the interfering references give
                    //   d_re = T12 + T21 and d_im = i (T12 - T21),
                    // so both cross elements of the guess pair follow.
                    let d_re = m_variant[0] - m_variant[1];
                    let d_im = m_variant[2] - m_variant[3];
                    let i_unit = Complex64::new(0.0, 1.0);
                    let t12 = (d_re - i_unit * d_im) * 0.5;
                    let t21 = (d_re + i_unit * d_im) * 0.5;
                    let mut out = vec![(self.row(xi, ki), self.row(xj, kj), t12)];
                    if ki != kj {
                        // T21 lands at (xi', k), (xi, k'); mirror into the upper block
                        out.push((self.row(xi, kj), self.row(xj, ki), t21.conj()));
                    }
                    Ok(out)
                }
            })
            .collect::<Result<Vec<_>>>()?;

        let m = self.dim();
        let mut mat = DMatrix::<Complex64>::zeros(m, m);
        for (r, c, val) in entries.into_iter().flatten() {
            mat[(r, c)] = val;
        }
        // complete the strict lower triangle by Hermitian symmetry
        for r in 0..m {
            for c in 0..r {
                mat[(r, c)] = mat[(c, r)].conj();
            }
        }
        Ok(mat)
    }
}

/// Evaluation provenance of a subspace problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalMetadata {
    pub path: String,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    /// Largest |A - A^H| entry observed before symmetrization.
    pub asymmetry_h: f64,
    pub asymmetry_s: f64,
    /// For the Toeplitz-reduced build: unique elements per guess pair.
    pub unique_elements_per_pair: Option<usize>,
}

/// The assembled subspace Hamiltonian and metric.
pub struct SubspaceProblem {
    pub index_map: Vec<(usize, i64)>,
    pub h_mat: DMatrix<Complex64>,
    pub s_mat: DMatrix<Complex64>,
    pub meta: EvalMetadata,
}

impl SubspaceProblem {
    pub fn dim(&self) -> usize {
        self.h_mat.nrows()
    }
}

/// Build the subspace Hamiltonian and metric over the propagated basis.
pub fn build_subspace(
    h: &PauliSum,
    guesses: &GuessSet,
    k_max: usize,
    prop: &Propagator,
    path: &EvalPath,
) -> Result<SubspaceProblem> {
    let basis = QfdBasis::build(guesses, k_max, prop)?;
    build_subspace_with_basis(h, &basis, path)
}

/// Same as [`build_subspace`] but reusing an existing basis cache.
pub fn build_subspace_with_basis(
    h: &PauliSum,
    basis: &QfdBasis,
    path: &EvalPath,
) -> Result<SubspaceProblem> {
    let identity = PauliSum::scaled_identity(h.n_qubits(), 1.0);
    let (h_mat, asymmetry_h) = basis.operator_matrix(h, path)?;
    let (s_mat, asymmetry_s) = basis.operator_matrix(&identity, path)?;
    let (shots, seed) = match path {
        EvalPath::Sampled(plan) => (Some(plan.shots()), Some(plan.seed())),
        _ => (None, None),
    };
    Ok(SubspaceProblem {
        index_map: basis.index_map().to_vec(),
        h_mat,
        s_mat,
        meta: EvalMetadata {
            path: path.label().to_string(),
            shots,
            seed,
            asymmetry_h,
            asymmetry_s,
            unique_elements_per_pair: None,
        },
    })
}

/// The Toeplitz-reduced build: matrix elements depend only on the
/// relative shift `k' - k`, evaluated as `<Phi_xi| O U_{k'-k} |Phi_xi'>`
/// with the propagator applied after the formal reduction. Exact
/// propagation reproduces the full build; Trotterized propagation does
/// not, and the resulting method loses its variational character.
pub fn build_subspace_nonvariational(
    h: &PauliSum,
    guesses: &GuessSet,
    k_max: usize,
    prop: &Propagator,
) -> Result<SubspaceProblem> {
    let n_guess = guesses.len();
    let deltas: Vec<i64> = (-(2 * k_max as i64)..=2 * k_max as i64).collect();
    // images[xi'][delta index] = U_delta |Phi_xi'>
    let images: Vec<Vec<State>> = (0..n_guess)
        .into_par_iter()
        .map(|xi| {
            deltas
                .iter()
                .map(|&d| prop.propagate(d, &guesses.states()[xi]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let identity = PauliSum::scaled_identity(h.n_qubits(), 1.0);
    // profiles[xi][xi'][delta index] for H and S
    let mut h_profile = vec![vec![vec![Complex64::new(0.0, 0.0); deltas.len()]; n_guess]; n_guess];
    let mut s_profile = h_profile.clone();
    for xi in 0..n_guess {
        for xj in 0..n_guess {
            for (di, _) in deltas.iter().enumerate() {
                let ket = &images[xj][di];
                h_profile[xi][xj][di] = h.expectation(guesses.states().get(xi).unwrap(), ket)?;
                s_profile[xi][xj][di] = identity.expectation(guesses.states().get(xi).unwrap(), ket)?;
            }
        }
    }

    let n_k = 2 * k_max + 1;
    let m = n_guess * n_k;
    let index_map: Vec<(usize, i64)> = (0..n_guess)
        .flat_map(|xi| (-(k_max as i64)..=k_max as i64).map(move |k| (xi, k)))
        .collect();
    let mut h_mat = DMatrix::<Complex64>::zeros(m, m);
    let mut s_mat = DMatrix::<Complex64>::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            let (xi, k) = index_map[r];
            let (xj, kp) = index_map[c];
            let di = (kp - k + 2 * k_max as i64) as usize;
            h_mat[(r, c)] = h_profile[xi][xj][di];
            s_mat[(r, c)] = s_profile[xi][xj][di];
        }
    }
    let asymmetry_h = hermiticity_error(&h_mat);
    let asymmetry_s = hermiticity_error(&s_mat);
    Ok(SubspaceProblem {
        index_map,
        h_mat: hermitized(&h_mat),
        s_mat: hermitized(&s_mat),
        meta: EvalMetadata {
            path: "nonvariational".to_string(),
            shots: None,
            seed: None,
            asymmetry_h,
            asymmetry_s,
            unique_elements_per_pair: Some(deltas.len()),
        },
    })
}

/// The canonical-orthogonalization transform of a metric matrix.
pub struct CanonicalOrthogonalizer {
    /// `M x kept` transform with `X^H S X = I`.
    pub x: DMatrix<Complex64>,
    /// Metric eigenvalues, descending.
    pub s_spectrum: Vec<f64>,
    pub kept: usize,
}

/// Eigendecompose the metric and keep directions above `cutoff * max(sigma)`.
pub fn canonical_orthogonalize(
    s_mat: &DMatrix<Complex64>,
    cutoff: f64,
) -> Result<CanonicalOrthogonalizer> {
    canonical_with_kept(s_mat, None, cutoff)
}

fn canonical_with_kept(
    s_mat: &DMatrix<Complex64>,
    fixed_kept: Option<usize>,
    cutoff: f64,
) -> Result<CanonicalOrthogonalizer> {
    let (vals, vecs) = eigh(s_mat);
    let m = vals.len();
    // descending metric spectrum
    let s_spectrum: Vec<f64> = vals.iter().rev().copied().collect();
    let sigma_max = *s_spectrum.first().ok_or(Error::EmptySubspace)?;
    if sigma_max <= 0.0 {
        return Err(Error::EmptySubspace);
    }
    let kept = match fixed_kept {
        Some(k) => {
            let usable = s_spectrum.iter().filter(|&&s| s > 0.0).count();
            if k == 0 || k > usable {
                return Err(Error::InvalidKeptDimension {
                    requested: k,
                    usable,
                });
            }
            k
        }
        None => {
            let threshold = cutoff * sigma_max;
            let kept = s_spectrum.iter().filter(|&&s| s > threshold).count();
            if kept == 0 {
                return Err(Error::EmptySubspace);
            }
            kept
        }
    };
    let mut x = DMatrix::<Complex64>::zeros(m, kept);
    for j in 0..kept {
        let src = m - 1 - j; // ascending order reversed
        let scale = Complex64::new(1.0 / s_spectrum[j].sqrt(), 0.0);
        for i in 0..m {
            x[(i, j)] = vecs[(i, src)] * scale;
        }
    }
    Ok(CanonicalOrthogonalizer {
        x,
        s_spectrum,
        kept,
    })
}

/// Ritz eigenpairs of the subspace problem.
pub struct RitzSolution {
    /// Ritz energies, ascending (includes any identity-term offset that
    /// entered the subspace Hamiltonian).
    pub energies: Vec<f64>,
    /// `M x kept` coefficient matrix; columns are S-orthonormal.
    pub coeffs: DMatrix<Complex64>,
    pub kept: usize,
    /// Metric eigenvalues, descending.
    pub s_spectrum: Vec<f64>,
}

impl RitzSolution {
    /// Excitation energies relative to the lowest Ritz state.
    pub fn excitation_energies(&self) -> Vec<f64> {
        let e0 = self.energies[0];
        self.energies.iter().skip(1).map(|e| e - e0).collect()
    }

    /// Reconstruct the Ritz eigenstates from the propagated basis.
    pub fn reconstruct(&self, basis_states: &[State]) -> Result<Vec<State>> {
        if basis_states.len() != self.coeffs.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis states for a {}-row coefficient matrix",
                basis_states.len(),
                self.coeffs.nrows()
            )));
        }
        let zero = basis_states
            .first()
            .map(|s| vec![Complex64::new(0.0, 0.0); s.amplitudes().len()])
            .unwrap_or_default();
        let n = basis_states.first().map_or(0, |s| s.n_qubits());
        (0..self.kept)
            .map(|theta| {
                let mut amps = zero.clone();
                for (r, state) in basis_states.iter().enumerate() {
                    let c = self.coeffs[(r, theta)];
                    for (a, b) in amps.iter_mut().zip(state.amplitudes()) {
                        *a += c * b;
                    }
                }
                State::new(n, amps)
            })
            .collect()
    }
}

/// Solve the generalized eigenproblem with a relative metric cutoff.
pub fn solve(problem: &SubspaceProblem, cutoff: f64) -> Result<RitzSolution> {
    solve_inner(problem, None, cutoff)
}

/// Solve with a fixed kept-dimension, for nested-sweep comparisons where
/// a varying cutoff would make monotonicity checks ill-posed.
pub fn solve_with_fixed_kept(problem: &SubspaceProblem, kept: usize) -> Result<RitzSolution> {
    solve_inner(problem, Some(kept), 0.0)
}

fn solve_inner(
    problem: &SubspaceProblem,
    fixed_kept: Option<usize>,
    cutoff: f64,
) -> Result<RitzSolution> {
    let ortho = canonical_with_kept(&problem.s_mat, fixed_kept, cutoff)?;
    let projected = ortho.x.adjoint() * &problem.h_mat * &ortho.x;
    let projected = hermitized(&projected);
    let (energies, vectors) = eigh(&projected);
    let mut coeffs = &ortho.x * vectors;
    fix_column_phases(&mut coeffs);
    Ok(RitzSolution {
        energies,
        coeffs,
        kept: ortho.kept,
        s_spectrum: ortho.s_spectrum,
    })
}

/// Rotate each column so its largest-magnitude entry is real positive.
fn fix_column_phases(m: &mut DMatrix<Complex64>) {
    for j in 0..m.ncols() {
        let mut best = 0usize;
        let mut best_norm = 0.0;
        for i in 0..m.nrows() {
            let n = m[(i, j)].norm();
            if n > best_norm + 1e-15 {
                best_norm = n;
                best = i;
            }
        }
        if best_norm > 0.0 {
            let phase = m[(best, j)] / Complex64::new(best_norm, 0.0);
            let rot = phase.conj();
            for i in 0..m.nrows() {
                m[(i, j)] *= rot;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guess::{cis_guesses, GuessSet, Provenance};
    use crate::pauli::{Axis, PauliString};
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0_f64, f64::max)
    }

    #[test]
    fn kmax_zero_metric_is_identity_and_h_is_cis_diagonal() {
        let h = PauliSum::new(
            2,
            vec![
                (-0.5, PauliString::single(0, Axis::Z)),
                (-0.4, PauliString::single(1, Axis::Z)),
                (0.1, PauliString::two(0, Axis::X, 1, Axis::X).unwrap()),
            ],
        )
        .unwrap();
        let guesses = cis_guesses(&h, 3).unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.0).unwrap().kappa;
        let prop = Propagator::exact(&h, kappa, 14).unwrap();
        let problem = build_subspace(&h, &guesses, 0, &prop, &EvalPath::Direct).unwrap();
        let m = problem.dim();
        assert_eq!(m, 3);
        for r in 0..m {
            for c in 0..m {
                let expected_s = if r == c { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(
                    (problem.s_mat[(r, c)] - Complex64::new(expected_s, 0.0)).norm(),
                    0.0,
                    epsilon = 1e-10
                );
                if r != c {
                    assert_abs_diff_eq!(problem.h_mat[(r, c)].norm(), 0.0, epsilon = 1e-10);
                }
            }
        }
        let cis = guesses.cis_energies().unwrap();
        for r in 0..m {
            assert_abs_diff_eq!(problem.h_mat[(r, r)].re, cis[r], epsilon = 1e-10);
        }
    }

    #[test]
    fn single_qubit_x_recovers_both_eigenvalues_from_redundant_basis() {
        // one guess, k_max = 1: three vectors in a 2-dimensional space
        let h = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::X))]).unwrap();
        let guesses = GuessSet::from_states(
            vec![State::basis_state("0").unwrap()],
            Provenance::Custom,
            1e-10,
        )
        .unwrap();
        let prop = Propagator::exact(&h, 4.0, 14).unwrap();
        let problem = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Direct).unwrap();
        assert_eq!(problem.dim(), 3);
        for r in 0..3 {
            assert_abs_diff_eq!(problem.s_mat[(r, r)].re, 1.0, epsilon = 1e-12);
        }
        let sol = solve(&problem, 1e-8).unwrap();
        assert_eq!(sol.kept, 2);
        assert_abs_diff_eq!(sol.energies[0], -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(sol.energies[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn swaptest_path_matches_direct_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let n = 3;
        let mut terms = vec![(0.37, PauliString::identity())];
        for q in 0..n {
            terms.push((rng.random::<f64>() - 0.5, PauliString::single(q, Axis::Z)));
            terms.push((0.4 * (rng.random::<f64>() - 0.5), PauliString::single(q, Axis::X)));
        }
        for q in 0..n - 1 {
            terms.push((
                0.3 * (rng.random::<f64>() - 0.5),
                PauliString::two(q, Axis::X, q + 1, Axis::X).unwrap(),
            ));
            terms.push((
                0.2 * (rng.random::<f64>() - 0.5),
                PauliString::two(q, Axis::Z, q + 1, Axis::X).unwrap(),
            ));
        }
        let h = PauliSum::new(n, terms).unwrap();
        let guesses = cis_guesses(&h, 3).unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.5).unwrap().kappa;
        for prop in [
            Propagator::exact(&h, kappa, 14).unwrap(),
            Propagator::trotter(&h, kappa, 1).unwrap(),
        ] {
            let direct = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Direct).unwrap();
            let swap = build_subspace(&h, &guesses, 1, &prop, &EvalPath::SwapTest).unwrap();
            assert!(max_entry_diff(&direct.h_mat, &swap.h_mat) < 1e-10);
            assert!(max_entry_diff(&direct.s_mat, &swap.s_mat) < 1e-10);
            assert!(swap.meta.asymmetry_h < 1e-12);
        }
    }

    #[test]
    fn canonical_orthogonalization_examples() {
        let ident = DMatrix::<Complex64>::identity(3, 3);
        let ortho = canonical_orthogonalize(&ident, 1e-10).unwrap();
        assert_eq!(ortho.kept, 3);
        assert!(max_entry_diff(&ortho.x, &ident) < 1e-12);

        let mut s = DMatrix::<Complex64>::zeros(2, 2);
        s[(0, 0)] = Complex64::new(1.0, 0.0);
        s[(1, 1)] = Complex64::new(1e-14, 0.0);
        let ortho = canonical_orthogonalize(&s, 1e-10).unwrap();
        assert_eq!(ortho.kept, 1);
        assert_abs_diff_eq!(ortho.x[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ortho.x[(1, 0)].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn canonical_orthogonalization_random_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let m = 6;
        let mut a = DMatrix::<Complex64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                a[(i, j)] = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
        }
        let s = &a * a.adjoint();
        let ortho = canonical_orthogonalize(&s, 1e-12).unwrap();
        let check = ortho.x.adjoint() * &s * &ortho.x;
        let ident = DMatrix::<Complex64>::identity(ortho.kept, ortho.kept);
        assert!(max_entry_diff(&check, &ident) < 1e-10);
    }

    #[test]
    fn solve_one_by_one() {
        let problem = SubspaceProblem {
            index_map: vec![(0, 0)],
            h_mat: DMatrix::from_element(1, 1, Complex64::new(0.7, 0.0)),
            s_mat: DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
            meta: EvalMetadata {
                path: "direct".into(),
                shots: None,
                seed: None,
                asymmetry_h: 0.0,
                asymmetry_s: 0.0,
                unique_elements_per_pair: None,
            },
        };
        let sol = solve(&problem, 1e-8).unwrap();
        assert_eq!(sol.kept, 1);
        assert_abs_diff_eq!(sol.energies[0], 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(sol.coeffs[(0, 0)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn ritz_normalization_holds() {
        let h = PauliSum::new(
            2,
            vec![
                (-0.6, PauliString::single(0, Axis::Z)),
                (-0.3, PauliString::single(1, Axis::Z)),
                (0.2, PauliString::two(0, Axis::X, 1, Axis::X).unwrap()),
                (0.1, PauliString::single(0, Axis::X)),
            ],
        )
        .unwrap();
        let guesses = cis_guesses(&h, 3).unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.3).unwrap().kappa;
        let prop = Propagator::exact(&h, kappa, 14).unwrap();
        let problem = build_subspace(&h, &guesses, 2, &prop, &EvalPath::Direct).unwrap();
        let sol = solve(&problem, 1e-8).unwrap();
        let gram = sol.coeffs.adjoint() * &problem.s_mat * &sol.coeffs;
        let ident = DMatrix::<Complex64>::identity(sol.kept, sol.kept);
        assert!(max_entry_diff(&gram, &ident) < 1e-8);
        let h_in_ritz = sol.coeffs.adjoint() * &problem.h_mat * &sol.coeffs;
        for r in 0..sol.kept {
            for c in 0..sol.kept {
                if r != c {
                    assert!(h_in_ritz[(r, c)].norm() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn nonvariational_exact_matches_variational() {
        let h = PauliSum::new(
            2,
            vec![
                (-0.5, PauliString::single(0, Axis::Z)),
                (-0.4, PauliString::single(1, Axis::Z)),
                (0.15, PauliString::two(0, Axis::X, 1, Axis::X).unwrap()),
            ],
        )
        .unwrap();
        let guesses = cis_guesses(&h, 2).unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.2).unwrap().kappa;
        let prop = Propagator::exact(&h, kappa, 14).unwrap();
        let full = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Direct).unwrap();
        let reduced = build_subspace_nonvariational(&h, &guesses, 1, &prop).unwrap();
        assert!(max_entry_diff(&full.h_mat, &reduced.h_mat) < 1e-10);
        assert!(max_entry_diff(&full.s_mat, &reduced.s_mat) < 1e-10);
        assert_eq!(reduced.meta.unique_elements_per_pair, Some(5));
    }

    #[test]
    fn nonvariational_trotter_differs_from_variational() {
        let h = PauliSum::new(
            1,
            vec![
                (1.0, PauliString::single(0, Axis::X)),
                (1.0, PauliString::single(0, Axis::Z)),
            ],
        )
        .unwrap();
        let guesses = GuessSet::from_states(
            vec![State::basis_state("0").unwrap()],
            Provenance::Custom,
            1e-10,
        )
        .unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.0).unwrap().kappa;
        let prop = Propagator::trotter(&h, kappa, 1).unwrap();
        let full = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Direct).unwrap();
        let reduced = build_subspace_nonvariational(&h, &guesses, 1, &prop).unwrap();
        let diff = max_entry_diff(&full.h_mat, &reduced.h_mat);
        assert!(diff > 1e-6, "Trotterized reduced build should differ, diff = {diff:.3e}");
    }

    #[test]
    fn sampled_path_is_reproducible() {
        let h = PauliSum::new(
            2,
            vec![
                (-0.5, PauliString::single(0, Axis::Z)),
                (0.2, PauliString::two(0, Axis::X, 1, Axis::X).unwrap()),
            ],
        )
        .unwrap();
        let guesses = cis_guesses(&h, 2).unwrap();
        let kappa = crate::bounds::heuristic_bounds(&h, 0.2).unwrap().kappa;
        let prop = Propagator::exact(&h, kappa, 14).unwrap();
        let plan = ShotPlan::new(200, 77).unwrap();
        let a = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Sampled(plan)).unwrap();
        let b = build_subspace(&h, &guesses, 1, &prop, &EvalPath::Sampled(plan)).unwrap();
        assert_eq!(a.h_mat, b.h_mat);
        assert_eq!(a.s_mat, b.s_mat);
        assert!(a.meta.asymmetry_h > 0.0, "sampling noise should break exact Hermiticity");
    }
}
