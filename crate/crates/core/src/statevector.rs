//! Dense complex statevector engine.
//!
//! States are immutable amplitude vectors over `2^N` basis indices with
//! qubit 0 as the most significant bit. The module provides basis
//! states, inner products, fused single-string Pauli exponentials, the
//! one-ancilla swap-test construction and readout, and seeded shot
//! sampling of Pauli measurements.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

/// A complex amplitude vector over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl State {
    /// Build a state from raw amplitudes; the length must be `2^n_qubits`.
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} qubits (expected {})",
                amps.len(),
                n_qubits,
                1usize << n_qubits
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Internal constructor for intermediates with a checked length.
    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        Self { n_qubits, amps }
    }

    /// Computational basis state from a bitstring, qubit 0 first (MSB).
    pub fn basis_state(bits: &str) -> Result<Self> {
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidBitstring(bits.to_string()));
        }
        let n = bits.len();
        let mut index = 0usize;
        for b in bits.bytes() {
            index = (index << 1) | usize::from(b == b'1');
        }
        Ok(Self::from_index(n, index))
    }

    /// Basis state from a basis index.
    pub fn from_index(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    /// The all-zeros state `|00...0>`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::from_index(n_qubits, 0)
    }

    /// The uniform superposition `|++...+>`.
    pub fn plus(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self {
            n_qubits,
            amps: vec![a; dim],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescale to unit norm.
    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            let inv = Complex64::new(1.0 / n, 0.0);
            for a in &mut self.amps {
                *a *= inv;
            }
        }
        self
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &State) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "inner product between {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// The weighted superposition `ca*|a> + cb*|b>`, unnormalized.
    pub fn superpose(a: &State, ca: Complex64, b: &State, cb: Complex64) -> Result<State> {
        if a.n_qubits != b.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "superposition between {} and {} qubits",
                a.n_qubits, b.n_qubits
            )));
        }
        let amps = a
            .amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| ca * x + cb * y)
            .collect();
        Ok(State::from_raw(a.n_qubits, amps))
    }

    /// Multiply every amplitude by a scalar phase/weight.
    pub(crate) fn scaled(mut self, factor: Complex64) -> Self {
        for a in &mut self.amps {
            *a *= factor;
        }
        self
    }

    /// Debug dump as a JSON array of `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        serde_json::to_string(&pairs).expect("amplitude list serializes")
    }
}

/// Apply `exp(-i * theta * P)` to a state in one fused pass.
///
/// For a Pauli string `P` the exponential is `cos(theta) * I - i * sin(theta) * P`,
/// so each amplitude mixes with its single flip partner.
pub fn apply_pauli_exponential(psi: &State, p: &PauliString, theta: f64) -> State {
    let n = psi.n_qubits();
    let masks = p.masks(n);
    let dim = psi.amplitudes().len() as u64;
    let (c, s) = (theta.cos(), theta.sin());
    let mis = Complex64::new(0.0, -s);
    let amps = psi.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); dim as usize];
    if masks.flip == 0 {
        // diagonal string: pure phase per basis index
        for b in 0..dim {
            let phase = masks.phase(b); // +1 or -1 (real) for Z-type strings
            out[b as usize] = (Complex64::new(c, 0.0) + mis * phase) * amps[b as usize];
        }
    } else {
        for b in 0..dim {
            let partner = b ^ masks.flip;
            // P|partner> = phase(partner)|b>, so (P psi)[b] = phase(partner) psi[partner]
            out[b as usize] =
                c * amps[b as usize] + mis * masks.phase(partner) * amps[partner as usize];
        }
    }
    State::from_raw(n, out)
}

/// The one-ancilla interference state of the extended swap test.
///
/// Holds `(|0> (x) V|Omega> + |1> (x) W|Omega>) / sqrt(2)` on `N + 1`
/// qubits with the ancilla at qubit index 0 (most significant bit).
/// The branch images are supplied already propagated; the controlled
/// unitaries of the circuit are not gate-compiled.
#[derive(Debug, Clone)]
pub struct AncillaState {
    state: State,
}

impl AncillaState {
    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn n_system_qubits(&self) -> usize {
        self.state.n_qubits() - 1
    }
}

/// Build the swap-test state from the two branch images `V|Omega>`, `W|Omega>`.
pub fn swap_test_state(v_image: &State, w_image: &State) -> Result<AncillaState> {
    if v_image.n_qubits() != w_image.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "branch images on {} and {} qubits",
            v_image.n_qubits(),
            w_image.n_qubits()
        )));
    }
    let n = v_image.n_qubits();
    let half = 1usize << n;
    let w = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let mut amps = Vec::with_capacity(2 * half);
    amps.extend(v_image.amplitudes().iter().map(|a| w * a));
    amps.extend(w_image.amplitudes().iter().map(|a| w * a));
    Ok(AncillaState {
        state: State::from_raw(n + 1, amps),
    })
}

/// Extend a system operator to the ancilla register as `A (x) O`.
fn extend_operator(o: &PauliSum, ancilla_axis: crate::pauli::Axis) -> PauliSum {
    let n = o.n_qubits() + 1;
    let terms = o
        .terms()
        .iter()
        .map(|t| {
            let mut factors = vec![(0usize, ancilla_axis)];
            factors.extend(
                t.string
                    .shifted(1)
                    .factors()
                    .iter()
                    .copied(),
            );
            (
                t.coeff,
                PauliString::new(factors).expect("shifted factors stay distinct"),
            )
        })
        .collect();
    PauliSum::new(n, terms).expect("extended operator is valid")
}

/// Exact swap-test readout: `<aleph| X(x)O |aleph> + i <aleph| Y(x)O |aleph>`,
/// which equals the transition element `<A| O |B>` of the branch images.
pub fn ancilla_readout(aleph: &AncillaState, o: &PauliSum) -> Result<Complex64> {
    if o.n_qubits() != aleph.n_system_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "operator on {} qubits, swap-test system register has {}",
            o.n_qubits(),
            aleph.n_system_qubits()
        )));
    }
    let x_ext = extend_operator(o, crate::pauli::Axis::X);
    let y_ext = extend_operator(o, crate::pauli::Axis::Y);
    let ex = x_ext.expectation(aleph.state(), aleph.state())?;
    let ey = y_ext.expectation(aleph.state(), aleph.state())?;
    Ok(Complex64::new(ex.re, ey.re))
}

/// Shot budget and seeding policy for sampled Pauli measurements.
///
/// Outcome streams are keyed by `(seed, circuit id, measurement basis)`,
/// so evaluation order and parallelism cannot change results, and any
/// two estimates sharing a circuit and basis reuse identical outcomes
/// (correlated sampling).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotPlan {
    shots: u64,
    seed: u64,
}

impl ShotPlan {
    pub fn new(shots: u64, seed: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::InvalidShotPlan);
        }
        Ok(Self { shots, seed })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derive the keyed substream for one `(circuit, basis)` measurement.
    fn substream(&self, circuit_id: &str, basis: &str) -> ChaCha8Rng {
        let mut hasher = Sha256::new();
        hasher.update(self.seed.to_le_bytes());
        hasher.update((circuit_id.len() as u64).to_le_bytes());
        hasher.update(circuit_id.as_bytes());
        hasher.update(basis.as_bytes());
        let digest = hasher.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest[..32]);
        ChaCha8Rng::from_seed(key)
    }
}

/// Sample a Pauli-string measurement on `psi`.
///
/// Draws `shots` independent +/-1 outcomes with `P(+1) = (1 + <psi|P|psi>)/2`
/// and returns the sample mean and its standard error. Deterministic for a
/// fixed `(seed, circuit_id, basis)` triple.
pub fn sample_pauli(
    psi: &State,
    p: &PauliString,
    plan: &ShotPlan,
    circuit_id: &str,
) -> Result<(f64, f64)> {
    let as_sum = PauliSum::new(psi.n_qubits(), vec![(1.0, p.clone())])?;
    let exact = as_sum.expectation(psi, psi)?.re;
    let p_plus = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
    let mut rng = plan.substream(circuit_id, &p.dense_label(psi.n_qubits()));
    let shots = plan.shots();
    let mut plus_count = 0u64;
    for _ in 0..shots {
        if rng.random::<f64>() < p_plus {
            plus_count += 1;
        }
    }
    let mean = (2.0 * plus_count as f64 - shots as f64) / shots as f64;
    let std_error = if shots > 1 {
        let var = (1.0 - mean * mean).max(0.0) * shots as f64 / (shots - 1) as f64;
        (var / shots as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, std_error))
}

/// Sampled swap-test readout of a full operator.
///
/// Each Pauli term of `o` is measured in the `X(x)P` and `Y(x)P` bases on
/// the swap-test state and the coefficient-weighted estimates are summed
/// into a complex transition-element estimate.
pub fn sampled_readout(
    aleph: &AncillaState,
    o: &PauliSum,
    plan: &ShotPlan,
    circuit_id: &str,
) -> Result<Complex64> {
    if o.n_qubits() != aleph.n_system_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "operator on {} qubits, swap-test system register has {}",
            o.n_qubits(),
            aleph.n_system_qubits()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for term in o.terms() {
        let mut x_factors = vec![(0usize, crate::pauli::Axis::X)];
        x_factors.extend(term.string.shifted(1).factors().iter().copied());
        let x_string = PauliString::new(x_factors).expect("extended string is valid");
        let mut y_factors = vec![(0usize, crate::pauli::Axis::Y)];
        y_factors.extend(term.string.shifted(1).factors().iter().copied());
        let y_string = PauliString::new(y_factors).expect("extended string is valid");
        let (ex, _) = sample_pauli(aleph.state(), &x_string, plan, circuit_id)?;
        let (ey, _) = sample_pauli(aleph.state(), &y_string, plan, circuit_id)?;
        acc += term.coeff * Complex64::new(ex, ey);
    }
    Ok(acc)
}
