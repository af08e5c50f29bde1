//! Synthetic exciton-chain model generator.
//!
//! Produces a real two-local X/Z Hamiltonian for a linear stack of
//! two-level chromophore sites: one-body Z terms carry the site
//! excitation energies, one-body X terms a weak transverse coupling, and
//! nearest neighbors are coupled through XX (dominant), ZZ, ZX, and XZ
//! terms. Site-to-site disorder is drawn from a seeded stream so every
//! model is reproducible from its spec. Transition dipoles are one-body
//! X operators with per-site orientations, one operator per Cartesian
//! axis.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Axis, PauliString, PauliSum};

/// Parameters of the synthetic exciton chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub n_sites: usize,
    /// Mean site excitation energy.
    pub site_energy: f64,
    /// Half-width of the uniform site-energy disorder.
    pub site_energy_spread: f64,
    /// Nearest-neighbor coupling scale.
    pub coupling_j: f64,
    /// Transition-dipole magnitude per site.
    pub dipole_magnitude: f64,
    /// Seed for the disorder stream.
    pub seed: u64,
}

impl Default for ModelSpec {
    fn default() -> Self {
        Self {
            n_sites: 8,
            site_energy: 1.0,
            site_energy_spread: 0.05,
            coupling_j: 0.1,
            dipole_magnitude: 1.0,
            seed: 7,
        }
    }
}

/// A generated model: Hamiltonian plus up to three dipole components.
#[derive(Debug, Clone)]
pub struct Model {
    pub hamiltonian: PauliSum,
    /// Dipole operator per Cartesian axis `[x, y, z]`.
    pub dipoles: Vec<PauliSum>,
}

/// Build the Hamiltonian and dipole operators for a model spec.
pub fn generate_model(spec: &ModelSpec) -> Result<Model> {
    if spec.n_sites < 2 {
        return Err(Error::InvalidModel(format!(
            "need at least 2 sites, got {}",
            spec.n_sites
        )));
    }
    if !spec.site_energy.is_finite()
        || !spec.site_energy_spread.is_finite()
        || !spec.coupling_j.is_finite()
        || !spec.dipole_magnitude.is_finite()
        || spec.site_energy_spread < 0.0
    {
        return Err(Error::InvalidModel("parameters must be finite, spread >= 0".into()));
    }
    let n = spec.n_sites;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut unit = move || 2.0 * rng.random::<f64>() - 1.0;

    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    let mut offset = 0.0;
    for q in 0..n {
        // site energy eps: |0> at 0, |1> at eps, i.e. eps/2 (I - Z)
        let eps = spec.site_energy + spec.site_energy_spread * unit();
        offset += eps / 2.0;
        terms.push((-eps / 2.0, PauliString::single(q, Axis::Z)));
        terms.push((0.1 * spec.coupling_j * unit(), PauliString::single(q, Axis::X)));
    }
    for q in 0..n - 1 {
        let j = spec.coupling_j * (1.0 + 0.1 * unit());
        terms.push((j, PauliString::two(q, Axis::X, q + 1, Axis::X)?));
        terms.push((
            0.3 * spec.coupling_j * unit(),
            PauliString::two(q, Axis::Z, q + 1, Axis::Z)?,
        ));
        terms.push((
            0.2 * spec.coupling_j * unit(),
            PauliString::two(q, Axis::Z, q + 1, Axis::X)?,
        ));
        terms.push((
            0.2 * spec.coupling_j * unit(),
            PauliString::two(q, Axis::X, q + 1, Axis::Z)?,
        ));
    }
    terms.push((offset, PauliString::identity()));
    let hamiltonian = PauliSum::new(n, terms)?;

    // per-site transition dipoles, mostly aligned with x plus seeded jitter
    let mut axis_terms: [Vec<(f64, PauliString)>; 3] = Default::default();
    for q in 0..n {
        let raw = [1.0 + 0.1 * unit(), 0.2 * unit(), 0.2 * unit()];
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (axis, &component) in raw.iter().enumerate() {
            axis_terms[axis].push((
                spec.dipole_magnitude * component / norm,
                PauliString::single(q, Axis::X),
            ));
        }
    }
    let dipoles = axis_terms
        .into_iter()
        .map(|terms| PauliSum::new(n, terms))
        .collect::<Result<Vec<_>>>()?;

    Ok(Model {
        hamiltonian,
        dipoles,
    })
}
