//! Transition properties, oscillator strengths, and broadened spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::qfd::{EvalPath, QfdBasis, RitzSolution};

/// Subspace matrix of a property operator over the propagated basis.
///
/// Shares the circuit identifiers of the Hamiltonian/metric build, so
/// sampled evaluations reuse measurement outcomes wherever the Pauli
/// bases coincide.
pub fn subspace_operator(
    basis: &QfdBasis,
    o: &PauliSum,
    path: &EvalPath,
) -> Result<DMatrix<Complex64>> {
    let (mat, _) = basis.operator_matrix(o, path)?;
    Ok(mat)
}

/// Transition expectation values between Ritz states.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    /// `values[(theta, theta')] = <Psi_theta| O |Psi_theta'>`.
    pub values: DMatrix<Complex64>,
    /// Ritz energies matching the table rows.
    pub energies: Vec<f64>,
}

/// Contract a subspace operator matrix into the Ritz basis, `C^H O C`.
pub fn transition_values(sol: &RitzSolution, o_mat: &DMatrix<Complex64>) -> Result<TransitionTable> {
    if o_mat.nrows() != sol.coeffs.nrows() || o_mat.ncols() != sol.coeffs.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator matrix against {} basis rows",
            o_mat.nrows(),
            o_mat.ncols(),
            sol.coeffs.nrows()
        )));
    }
    Ok(TransitionTable {
        values: sol.coeffs.adjoint() * o_mat * &sol.coeffs,
        energies: sol.energies.clone(),
    })
}

/// One stick of the absorption spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    /// Excitation energy relative to the ground state.
    pub delta_e: f64,
    /// Dimensionless oscillator strength.
    pub strength: f64,
}

/// Oscillator strengths from ground-state transition dipoles:
/// `f_theta = (2/3) * dE_theta * sum_axes |<Psi_0| mu_axis |Psi_theta>|^2`.
///
/// Takes one transition table per Cartesian dipole component (up to 3).
pub fn oscillator_strengths(
    sol: &RitzSolution,
    dipole_tables: &[TransitionTable],
) -> Result<Vec<SpectrumLine>> {
    if dipole_tables.is_empty() {
        return Err(Error::MissingDipole);
    }
    let n = sol.energies.len();
    for table in dipole_tables {
        if table.values.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "dipole table of dimension {} against {} Ritz states",
                table.values.nrows(),
                n
            )));
        }
    }
    let e0 = sol.energies[0];
    Ok((0..n)
        .map(|theta| {
            let delta_e = sol.energies[theta] - e0;
            let mu_sq: f64 = dipole_tables
                .iter()
                .map(|t| t.values[(0, theta)].norm_sqr())
                .sum();
            SpectrumLine {
                delta_e,
                strength: 2.0 / 3.0 * delta_e * mu_sq,
            }
        })
        .collect())
}

/// Sample the Lorentzian-broadened envelope on a uniform energy grid.
///
/// Each line contributes a unit-area profile
/// `strength * (delta / pi) / ((E - delta_e)^2 + delta^2)`.
pub fn lorentzian_spectrum(
    lines: &[SpectrumLine],
    delta: f64,
    e_lo: f64,
    e_hi: f64,
    n_points: usize,
) -> Result<Vec<(f64, f64)>> {
    if delta <= 0.0 {
        return Err(Error::InvalidWidth(delta));
    }
    if n_points < 2 || !(e_hi > e_lo) {
        return Err(Error::InvalidGrid(format!(
            "need e_hi > e_lo and at least 2 points, got [{e_lo}, {e_hi}] with {n_points}"
        )));
    }
    let step = (e_hi - e_lo) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            let e = e_lo + step * i as f64;
            let intensity: f64 = lines
                .iter()
                .map(|line| {
                    line.strength * (delta / std::f64::consts::PI)
                        / ((e - line.delta_e).powi(2) + delta * delta)
                })
                .sum();
            (e, intensity)
        })
        .collect())
}
