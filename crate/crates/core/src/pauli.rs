//! Hermitian operators in sparse Pauli form.
//!
//! An operator is a real-weighted sum of Pauli strings,
//! `O = sum_t c_t * P_t`, where each string is a tensor product of
//! single-qubit X/Y/Z factors on distinct qubits. Only the non-identity
//! factors are stored, so the representation stays polynomial in the
//! qubit count.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::State;

/// Maximum register size for which a dense `2^N x 2^N` matrix may be built.
pub const DEFAULT_DENSE_LIMIT: usize = 14;

/// Powers of the imaginary unit, `I_POW[k] = i^k`.
const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// A single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Axis::X),
            "Y" => Ok(Axis::Y),
            "Z" => Ok(Axis::Z),
            other => Err(Error::MalformedAxis(other.to_string())),
        }
    }
}

/// A tensor product of Pauli factors on distinct qubits.
///
/// Factors are kept sorted by qubit index; the empty product is the
/// identity. Qubit 0 is the most significant bit of a basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString {
    factors: Vec<(usize, Axis)>,
}

/// Bit masks describing how a string acts on computational basis indices.
///
/// `P |b> = i^{n_y} * (-1)^{popcount(b & sign)} |b ^ flip>`.
#[derive(Debug, Clone, Copy)]
pub struct StringMasks {
    /// Bits flipped by X and Y factors.
    pub flip: u64,
    /// Bits contributing a (-1) per set bit (Z and Y factors).
    pub sign: u64,
    /// Number of Y factors (fixed i^{n_y} prefactor).
    pub n_y: u32,
}

impl StringMasks {
    /// Phase picked up when the string acts on basis index `b`.
    #[inline]
    pub fn phase(&self, b: u64) -> Complex64 {
        let parity = (b & self.sign).count_ones() & 1;
        let quarter = (self.n_y + 2 * parity) & 3;
        I_POW[quarter as usize]
    }
}

impl PauliString {
    /// Build a string from `(qubit, axis)` factors in any order.
    pub fn new(mut factors: Vec<(usize, Axis)>) -> Result<Self> {
        factors.sort_by_key(|&(q, _)| q);
        for pair in factors.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateQubit { qubit: pair[0].0 });
            }
        }
        Ok(Self { factors })
    }

    /// The identity string.
    pub fn identity() -> Self {
        Self::default()
    }

    /// A single-factor string.
    pub fn single(qubit: usize, axis: Axis) -> Self {
        Self {
            factors: vec![(qubit, axis)],
        }
    }

    /// A two-factor string; the qubits must differ.
    pub fn two(q0: usize, a0: Axis, q1: usize, a1: Axis) -> Result<Self> {
        Self::new(vec![(q0, a0), (q1, a1)])
    }

    pub fn factors(&self) -> &[(usize, Axis)] {
        &self.factors
    }

    /// Number of non-identity factors.
    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.last().map(|&(q, _)| q)
    }

    /// Dense label over a register of `n_qubits`, e.g. `"IXZI"`.
    pub fn dense_label(&self, n_qubits: usize) -> String {
        let mut chars = vec!['I'; n_qubits];
        for &(q, axis) in &self.factors {
            chars[q] = axis.label();
        }
        chars.into_iter().collect()
    }

    /// Same string with every qubit index shifted up by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .map(|&(q, axis)| (q + offset, axis))
                .collect(),
        }
    }

    /// Basis-action masks for a register of `n_qubits`.
    pub fn masks(&self, n_qubits: usize) -> StringMasks {
        let mut flip = 0u64;
        let mut sign = 0u64;
        let mut n_y = 0u32;
        for &(q, axis) in &self.factors {
            let bit = 1u64 << (n_qubits - 1 - q);
            match axis {
                Axis::X => flip |= bit,
                Axis::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                Axis::Z => sign |= bit,
            }
        }
        StringMasks { flip, sign, n_y }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        for (i, &(q, axis)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", axis.label(), q)?;
        }
        Ok(())
    }
}

/// One weighted term of a [`PauliSum`].
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub string: PauliString,
}

/// A Hermitian operator as a canonical real-weighted sum of Pauli strings.
///
/// Construction merges duplicated strings, drops exact zeros, and sorts
/// terms by `(order, factors)` so equal operators serialize identically.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct OperatorDoc {
    n_qubits: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: f64,
    paulis: Vec<(usize, String)>,
}

impl PauliSum {
    /// Build a canonical sum from `(coefficient, string)` pairs.
    pub fn new(n_qubits: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        assert!(n_qubits >= 1, "operator needs at least one qubit");
        let mut merged: BTreeMap<(usize, Vec<(usize, Axis)>), f64> = BTreeMap::new();
        for (coeff, string) in terms {
            if !coeff.is_finite() {
                return Err(Error::NonFiniteCoeff(coeff));
            }
            if let Some(q) = string.max_qubit() {
                if q >= n_qubits {
                    return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
                }
            }
            *merged
                .entry((string.order(), string.factors.clone()))
                .or_insert(0.0) += coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|&(_, coeff)| coeff != 0.0)
            .map(|((_, factors), coeff)| Term {
                coeff,
                string: PauliString { factors },
            })
            .collect();
        Ok(Self { n_qubits, terms })
    }

    /// The zero operator on `n_qubits`.
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
        }
    }

    /// The identity operator scaled by `coeff`.
    pub fn scaled_identity(n_qubits: usize, coeff: f64) -> Self {
        Self::new(n_qubits, vec![(coeff, PauliString::identity())])
            .expect("identity term is always valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity string (the operator's trace part).
    pub fn identity_offset(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| t.string.is_identity())
            .map_or(0.0, |t| t.coeff)
    }

    /// The operator with its identity term removed.
    pub fn without_identity(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .filter(|t| !t.string.is_identity())
                .cloned()
                .collect(),
        }
    }

    /// Parse an operator from its JSON document form.
    ///
    /// Schema: `{"n_qubits": N, "terms": [{"coeff": c, "paulis": [[q, "X"], ...]}, ...]}`
    /// with an empty `paulis` list denoting the identity term.
    pub fn parse(document: &str) -> Result<Self> {
        let doc: OperatorDoc = serde_json::from_str(document)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for term in doc.terms {
            let mut factors = Vec::with_capacity(term.paulis.len());
            for (qubit, label) in term.paulis {
                factors.push((qubit, Axis::from_label(&label)?));
            }
            terms.push((term.coeff, PauliString::new(factors)?));
        }
        Self::new(doc.n_qubits, terms)
    }

    /// Serialize to the canonical JSON document form (round-trip lossless).
    pub fn to_json(&self) -> String {
        let doc = OperatorDoc {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| TermDoc {
                    coeff: t.coeff,
                    paulis: t
                        .string
                        .factors()
                        .iter()
                        .map(|&(q, axis)| (q, axis.label().to_string()))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("operator document serializes")
    }

    /// Apply the operator to a state, returning the unnormalized image `O|psi>`.
    pub fn apply(&self, psi: &State) -> Result<State> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "operator on {} qubits applied to state on {} qubits",
                self.n_qubits,
                psi.n_qubits()
            )));
        }
        let dim = psi.amplitudes().len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for term in &self.terms {
            let masks = term.string.masks(self.n_qubits);
            let c = term.coeff;
            let amps = psi.amplitudes();
            for b in 0..dim as u64 {
                let a = amps[b as usize];
                if a != Complex64::new(0.0, 0.0) {
                    out[(b ^ masks.flip) as usize] += c * masks.phase(b) * a;
                }
            }
        }
        Ok(State::from_raw(self.n_qubits, out))
    }

    /// Transition expectation value `<bra| O |ket>`.
    pub fn expectation(&self, bra: &State, ket: &State) -> Result<Complex64> {
        if bra.n_qubits() != ket.n_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "bra on {} qubits, ket on {} qubits",
                bra.n_qubits(),
                ket.n_qubits()
            )));
        }
        if bra.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "operator on {} qubits, states on {} qubits",
                self.n_qubits,
                bra.n_qubits()
            )));
        }
        let dim = ket.amplitudes().len() as u64;
        let bra_amps = bra.amplitudes();
        let ket_amps = ket.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let masks = term.string.masks(self.n_qubits);
            let mut partial = Complex64::new(0.0, 0.0);
            for b in 0..dim {
                let a = ket_amps[b as usize];
                if a != Complex64::new(0.0, 0.0) {
                    partial += bra_amps[(b ^ masks.flip) as usize].conj() * masks.phase(b) * a;
                }
            }
            acc += term.coeff * partial;
        }
        Ok(acc)
    }

    /// Dense Hermitian matrix of dimension `2^N`, for oracle-grade checks.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        self.to_dense_with_limit(DEFAULT_DENSE_LIMIT)
    }

    pub fn to_dense_with_limit(&self, limit: usize) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > limit {
            return Err(Error::DenseLimitExceeded {
                n_qubits: self.n_qubits,
                limit,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for term in &self.terms {
            let masks = term.string.masks(self.n_qubits);
            for col in 0..dim as u64 {
                let row = col ^ masks.flip;
                m[(row as usize, col as usize)] += term.coeff * masks.phase(col);
            }
        }
        debug_assert!(
            {
                let herm_err = (&m - m.adjoint())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0_f64, f64::max);
                herm_err < 1e-12
            },
            "dense matrix of a real-weighted Pauli sum must be Hermitian"
        );
        Ok(m)
    }

    /// Partition into the four-group X/Z two-local Trotter split.
    ///
    /// One-body X terms join the all-X group and one-body Z terms the
    /// all-Z group; two-body terms are classified by the ordered pair of
    /// axes on their (lower, upper) qubits. Y factors and orders above 2
    /// are rejected; propagation falls back to a term-by-term ordering
    /// for those operators.
    pub fn trotter_groups(&self) -> Result<TrotterGroups> {
        let mut xx = Vec::new();
        let mut xz = Vec::new();
        let mut zz = Vec::new();
        let mut zx = Vec::new();
        let mut identity = 0.0;
        for term in &self.terms {
            let factors = term.string.factors();
            let entry = (term.coeff, term.string.clone());
            match factors {
                [] => identity += term.coeff,
                [(_, Axis::X)] => xx.push(entry),
                [(_, Axis::Z)] => zz.push(entry),
                [(_, a0), (_, a1)] => match (a0, a1) {
                    (Axis::X, Axis::X) => xx.push(entry),
                    (Axis::X, Axis::Z) => xz.push(entry),
                    (Axis::Z, Axis::Z) => zz.push(entry),
                    (Axis::Z, Axis::X) => zx.push(entry),
                    _ => return Err(Error::UnsupportedTermShape(term.string.to_string())),
                },
                _ => return Err(Error::UnsupportedTermShape(term.string.to_string())),
            }
        }
        let n = self.n_qubits;
        Ok(TrotterGroups {
            xx: PauliSum::new(n, xx)?,
            xz: PauliSum::new(n, xz)?,
            zz: PauliSum::new(n, zz)?,
            zx: PauliSum::new(n, zx)?,
            identity,
        })
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:+.6}*({})", term.coeff, term.string)?;
        }
        Ok(())
    }
}

/// The four-way term grouping used by the first-order Trotter split.
///
/// The groups partition the parent operator's non-identity terms; the
/// identity coefficient is carried separately and enters propagation as
/// a global phase.
#[derive(Debug, Clone)]
pub struct TrotterGroups {
    pub xx: PauliSum,
    pub xz: PauliSum,
    pub zz: PauliSum,
    pub zx: PauliSum,
    pub identity: f64,
}

impl TrotterGroups {
    /// Groups in the propagation order of the first-order step.
    pub fn in_order(&self) -> [&PauliSum; 4] {
        [&self.xx, &self.xz, &self.zz, &self.zx]
    }

    /// Re-assemble the parent operator (partition-exactness check).
    pub fn recombine(&self) -> PauliSum {
        let n = self.xx.n_qubits();
        let mut terms: Vec<(f64, PauliString)> = Vec::new();
        for group in self.in_order() {
            terms.extend(group.terms().iter().map(|t| (t.coeff, t.string.clone())));
        }
        if self.identity != 0.0 {
            terms.push((self.identity, PauliString::identity()));
        }
        PauliSum::new(n, terms).expect("recombined groups are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::State;
    use approx::assert_abs_diff_eq;

    fn z0(n: usize) -> PauliSum {
        PauliSum::new(n, vec![(1.0, PauliString::single(0, Axis::Z))]).unwrap()
    }

    #[test]
    fn parse_single_term() {
        let h = PauliSum::parse(r#"{"n_qubits":1,"terms":[{"coeff":1.0,"paulis":[[0,"Z"]]}]}"#)
            .unwrap();
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].coeff, 1.0);
        assert_eq!(h.terms()[0].string, PauliString::single(0, Axis::Z));
    }

    #[test]
    fn parse_merges_duplicate_strings() {
        let h = PauliSum::parse(
            r#"{"n_qubits":1,"terms":[
                {"coeff":0.5,"paulis":[[0,"X"]]},
                {"coeff":0.25,"paulis":[[0,"X"]]}]}"#,
        )
        .unwrap();
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].coeff, 0.75);
    }

    #[test]
    fn parse_rejects_duplicate_qubit() {
        let err = PauliSum::parse(
            r#"{"n_qubits":1,"terms":[{"coeff":0.1,"paulis":[[0,"Z"],[0,"X"]]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateQubit { qubit: 0 }));
    }

    #[test]
    fn parse_rejects_bad_axis() {
        let err =
            PauliSum::parse(r#"{"n_qubits":1,"terms":[{"coeff":0.1,"paulis":[[0,"Q"]]}]}"#)
                .unwrap_err();
        assert!(matches!(err, Error::MalformedAxis(_)));
    }

    #[test]
    fn parse_rejects_out_of_range_qubit() {
        let err =
            PauliSum::parse(r#"{"n_qubits":2,"terms":[{"coeff":0.1,"paulis":[[2,"Z"]]}]}"#)
                .unwrap_err();
        assert!(matches!(
            err,
            Error::QubitOutOfRange {
                qubit: 2,
                n_qubits: 2
            }
        ));
    }

    #[test]
    fn parse_rejects_non_finite_coeff() {
        // serde_json parses 1e999 as +inf
        let err =
            PauliSum::parse(r#"{"n_qubits":1,"terms":[{"coeff":1e999,"paulis":[[0,"Z"]]}]}"#)
                .unwrap_err();
        assert!(matches!(err, Error::NonFiniteCoeff(_)));
    }

    #[test]
    fn apply_z_and_x_on_basis_states() {
        let zero = State::basis_state("0").unwrap();
        let z_img = z0(1).apply(&zero).unwrap();
        assert_abs_diff_eq!(z_img.amplitudes()[0].re, 1.0, epsilon = 1e-15);

        let x = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::X))]).unwrap();
        let x_img = x.apply(&zero).unwrap();
        assert_abs_diff_eq!(x_img.amplitudes()[1].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x_img.amplitudes()[0].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_matches_dense_two_by_two() {
        // (X + Z) |+> = 2|0>/sqrt(2), cross-checked against the dense matrix
        let h = PauliSum::new(
            1,
            vec![
                (1.0, PauliString::single(0, Axis::X)),
                (1.0, PauliString::single(0, Axis::Z)),
            ],
        )
        .unwrap();
        let plus = State::plus(1);
        let img = h.apply(&plus).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(img.amplitudes()[0].re, 2.0 * inv_sqrt2, epsilon = 1e-14);
        assert_abs_diff_eq!(img.amplitudes()[1].norm(), 0.0, epsilon = 1e-14);

        let dense = h.to_dense().unwrap();
        let v = nalgebra::DVector::from_vec(plus.amplitudes().to_vec());
        let dense_img = &dense * v;
        for i in 0..2 {
            assert_abs_diff_eq!(
                (img.amplitudes()[i] - dense_img[i]).norm(),
                0.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn expectation_examples() {
        let zero = State::basis_state("0").unwrap();
        let one = State::basis_state("1").unwrap();
        let plus = State::plus(1);
        assert_abs_diff_eq!(z0(1).expectation(&zero, &zero).unwrap().re, 1.0, epsilon = 1e-15);
        let x = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::X))]).unwrap();
        assert_abs_diff_eq!(x.expectation(&plus, &plus).unwrap().re, 1.0, epsilon = 1e-14);
        let mix = PauliSum::new(
            1,
            vec![
                (0.3, PauliString::single(0, Axis::X)),
                (0.2, PauliString::single(0, Axis::Z)),
            ],
        )
        .unwrap();
        let v = mix.expectation(&zero, &one).unwrap();
        assert_abs_diff_eq!(v.re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn dense_matrices_for_single_qubit_paulis() {
        let z = z0(1).to_dense().unwrap();
        assert_eq!(z[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex64::new(-1.0, 0.0));
        assert_eq!(z[(0, 1)], Complex64::new(0.0, 0.0));

        let x = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::X))])
            .unwrap()
            .to_dense()
            .unwrap();
        assert_eq!(x[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(x[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(x[(0, 0)], Complex64::new(0.0, 0.0));

        let y = PauliSum::new(1, vec![(1.0, PauliString::single(0, Axis::Y))])
            .unwrap()
            .to_dense()
            .unwrap();
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn dense_limit_enforced() {
        let h = z0(3);
        assert!(matches!(
            h.to_dense_with_limit(2),
            Err(Error::DenseLimitExceeded { n_qubits: 3, limit: 2 })
        ));
    }

    #[test]
    fn trotter_grouping_rule() {
        let h = PauliSum::new(
            2,
            vec![
                (0.3, PauliString::single(0, Axis::X)),
                (0.2, PauliString::single(1, Axis::Z)),
                (0.1, PauliString::two(0, Axis::Z, 1, Axis::X).unwrap()),
            ],
        )
        .unwrap();
        let groups = h.trotter_groups().unwrap();
        assert_eq!(groups.xx.terms().len(), 1);
        assert_eq!(groups.xx.terms()[0].coeff, 0.3);
        assert_eq!(groups.zz.terms().len(), 1);
        assert_eq!(groups.zz.terms()[0].coeff, 0.2);
        assert_eq!(groups.zx.terms().len(), 1);
        assert_eq!(groups.xz.terms().len(), 0);
        assert_eq!(groups.recombine(), h);
    }

    #[test]
    fn trotter_grouping_identity_only() {
        let h = PauliSum::scaled_identity(2, 0.7);
        let groups = h.trotter_groups().unwrap();
        assert!(groups.xx.is_empty() && groups.xz.is_empty());
        assert!(groups.zz.is_empty() && groups.zx.is_empty());
        assert_eq!(groups.identity, 0.7);
    }

    #[test]
    fn trotter_grouping_rejects_y() {
        let h = PauliSum::new(2, vec![(1.0, PauliString::single(0, Axis::Y))]).unwrap();
        assert!(matches!(
            h.trotter_groups(),
            Err(Error::UnsupportedTermShape(_))
        ));
    }

    #[test]
    fn xx_term_lands_in_xx_group() {
        let h = PauliSum::new(
            2,
            vec![(0.9, PauliString::two(0, Axis::X, 1, Axis::X).unwrap())],
        )
        .unwrap();
        let groups = h.trotter_groups().unwrap();
        assert_eq!(groups.xx.terms().len(), 1);
        assert!(groups.xz.is_empty() && groups.zz.is_empty() && groups.zx.is_empty());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let h = PauliSum::new(
            3,
            vec![
                (0.1234567890123456789, PauliString::single(0, Axis::X)),
                (-1.0 / 3.0, PauliString::two(1, Axis::Z, 2, Axis::X).unwrap()),
                (7.25, PauliString::identity()),
            ],
        )
        .unwrap();
        let round = PauliSum::parse(&h.to_json()).unwrap();
        assert_eq!(h, round);
        for (a, b) in h.terms().iter().zip(round.terms()) {
            assert_eq!(a.coeff.to_bits(), b.coeff.to_bits());
        }
    }
}
