//! Spectral-range estimation from Gershgorin disks.
//!
//! A row's disk is `[center - radius, center + radius]` with the center
//! the diagonal element and the radius the absolute off-diagonal row sum.
//! The union of all `2^N` disks contains the spectrum; the two extremal
//! configuration rows (`|00...0>` and `|11...1>`) heuristically dominate
//! for exciton-model Hamiltonians and give the scaling interval at
//! polynomial cost.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// The spectrum-normalization record `(E-, E+, overage, kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    pub e_minus: f64,
    pub e_plus: f64,
    pub overage: f64,
    pub kappa: f64,
}

/// Disk of one Hamiltonian row addressed by a configuration bitstring.
///
/// Cost is `O(terms)`: each Pauli term maps the configuration to a single
/// image column, so the absolute row sum accumulates per flip pattern
/// without ever forming a dense row.
pub fn gershgorin_row(h: &PauliSum, bits: &str) -> Result<(f64, f64)> {
    if bits.len() != h.n_qubits() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidBitstring(bits.to_string()));
    }
    let mut b = 0u64;
    for ch in bits.bytes() {
        b = (b << 1) | u64::from(ch == b'1');
    }
    Ok(gershgorin_row_index(h, b))
}

fn gershgorin_row_index(h: &PauliSum, b: u64) -> (f64, f64) {
    // H[b, b ^ flip] accumulates coeff * phase(b ^ flip) per flip pattern
    let mut images: HashMap<u64, Complex64> = HashMap::new();
    for term in h.terms() {
        let masks = term.string.masks(h.n_qubits());
        let col = b ^ masks.flip;
        *images.entry(masks.flip).or_insert(Complex64::new(0.0, 0.0)) +=
            term.coeff * masks.phase(col);
    }
    let center = images
        .get(&0)
        .map_or(0.0, |z| z.re);
    let radius = images
        .iter()
        .filter(|&(&flip, _)| flip != 0)
        .map(|(_, z)| z.norm())
        .sum();
    (center, radius)
}

/// Heuristic spectral bounds from the two extremal configuration rows.
///
/// The overage is split evenly between both ends of the interval;
/// `kappa = e_plus - e_minus` is the propagation scaling constant.
pub fn heuristic_bounds(h: &PauliSum, overage: f64) -> Result<SpectralBounds> {
    if overage < 0.0 {
        return Err(Error::NegativeOverage(overage));
    }
    let n = h.n_qubits();
    let all_zero = gershgorin_row_index(h, 0);
    let all_one = gershgorin_row_index(h, (1u64 << n) - 1);
    let lo = (all_zero.0 - all_zero.1).min(all_one.0 - all_one.1);
    let hi = (all_zero.0 + all_zero.1).max(all_one.0 + all_one.1);
    let e_minus = lo - overage / 2.0;
    let e_plus = hi + overage / 2.0;
    Ok(SpectralBounds {
        e_minus,
        e_plus,
        overage,
        kappa: e_plus - e_minus,
    })
}

/// Default overage: 10% of the raw two-row Gershgorin width.
pub fn default_overage(h: &PauliSum) -> f64 {
    let raw = heuristic_bounds(h, 0.0).expect("zero overage is valid");
    0.10 * raw.kappa
}

/// All `2^N` disks, for plotting and containment validation.
pub fn full_gershgorin(h: &PauliSum, limit: usize) -> Result<Vec<(f64, f64)>> {
    let n = h.n_qubits();
    if n > limit {
        return Err(Error::DenseLimitExceeded { n_qubits: n, limit });
    }
    Ok((0..1u64 << n).map(|b| gershgorin_row_index(h, b)).collect())
}

/// Whether an interval contains every value in `spectrum` (with slack).
pub fn contains_spectrum(bounds: &SpectralBounds, spectrum: &[f64], slack: f64) -> bool {
    spectrum
        .iter()
        .all(|&e| e >= bounds.e_minus - slack && e <= bounds.e_plus + slack)
}
