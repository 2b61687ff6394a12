//! Dense state vectors and the Kronecker/operator algebra acting on them.
//!
//! Bit ordering is big-endian throughout the crate: qubit 0 is the most
//! significant bit of a basis-state index, so `|b₁b₂…bₙ⟩` has index
//! `Σ bₜ·2^(n−t)` and reads left to right like the binary fraction `0.b₁b₂…bₙ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, GateMatrix, UNITARY_TOL};
use crate::ComplexAmp;

/// Position of a qubit in a register; 0 is the most significant bit.
pub type QubitIndex = usize;

/// Largest register for which full `2ⁿ × 2ⁿ` matrices are materialized.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 14;

/// Euclidean norm `√(Σ|aₖ|²)` of an arbitrary amplitude slice.
pub fn norm(amps: &[ComplexAmp]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product of two vectors: element `i·len(b) + j` is `aᵢ·bⱼ`.
pub fn kron_vec(a: &[ComplexAmp], b: &[ComplexAmp]) -> Vec<ComplexAmp> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}

/// Unit vector of `2ⁿ` complex amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<ComplexAmp>,
}

impl StateVector {
    /// Wraps `amps`, which must have power-of-two length ≥ 2 and unit norm within 1e-10.
    pub fn new(amps: Vec<ComplexAmp>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let nrm = norm(&amps);
        if (nrm - 1.0).abs() > UNITARY_TOL || !nrm.is_finite() {
            return Err(Error::NotNormalized { norm: nrm });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Scales `amps` to unit norm.
    pub fn normalized(mut amps: Vec<ComplexAmp>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let nrm = norm(&amps);
        if !nrm.is_finite() {
            return Err(Error::NotNormalized { norm: nrm });
        }
        if nrm < 1e-300 {
            return Err(Error::ZeroVector);
        }
        amps.iter_mut().for_each(|a| *a /= nrm);
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_register(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, bound: dim });
        }
        let mut amps = vec![ComplexAmp::new(0.0, 0.0); dim];
        amps[index] = ComplexAmp::new(1.0, 0.0);
        Ok(Self { n_qubits: n, amps })
    }

    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub(crate) fn from_parts(n_qubits: usize, amps: Vec<ComplexAmp>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<ComplexAmp> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self { n_qubits: self.n_qubits + other.n_qubits, amps: kron_vec(&self.amps, &other.amps) }
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let f = ComplexAmp::from_polar(1.0, phi);
        Self { n_qubits: self.n_qubits, amps: self.amps.iter().map(|a| a * f).collect() }
    }

    /// Largest per-amplitude modulus difference.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch { expected: len.next_power_of_two().max(2), found: len });
    }
    Ok(len.trailing_zeros() as usize)
}

pub(crate) fn check_register(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_QUBITS });
    }
    Ok(())
}

/// `U·s` with `U` spanning the whole register.
pub fn apply_full(gate: &GateMatrix, state: &StateVector) -> Result<StateVector> {
    if gate.arity() != state.n_qubits() {
        return Err(Error::DimensionMismatch { expected: state.n_qubits(), found: gate.arity() });
    }
    Ok(StateVector::from_parts(state.n_qubits(), gate.matrix().mul_vec(state.amps())?))
}

/// Applies `gate` to the listed qubits without building the padded `2ⁿ × 2ⁿ` operator.
///
/// `targets[0]` maps to the most significant bit of the gate's local index.
pub fn apply_local(gate: &GateMatrix, targets: &[QubitIndex], state: &StateVector) -> Result<StateVector> {
    validate_targets(gate.arity(), targets, state.n_qubits())?;
    let amps = apply_matrix_local(gate.matrix(), targets, state.n_qubits(), state.amps());
    Ok(StateVector::from_parts(state.n_qubits(), amps))
}

/// Padded operator `I⊗…⊗U⊗…⊗I` for `gate` placed on `targets` of an `n`-qubit register.
pub fn embed(gate: &GateMatrix, targets: &[QubitIndex], n: usize) -> Result<GateMatrix> {
    validate_targets(gate.arity(), targets, n)?;
    if n > MAX_DENSE_QUBITS {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_DENSE_QUBITS });
    }
    Ok(GateMatrix::from_unitary_unchecked(embed_matrix(gate.matrix(), targets, n)))
}

pub(crate) fn validate_targets(arity: usize, targets: &[QubitIndex], n: usize) -> Result<()> {
    if targets.len() != arity {
        return Err(Error::DimensionMismatch { expected: arity, found: targets.len() });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::IndexOutOfRange { index: t, bound: n });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    Ok(())
}

/// Register offsets of every local basis index, plus the mask of all target bits.
fn local_offsets(targets: &[QubitIndex], n: usize) -> (Vec<usize>, usize) {
    let k = targets.len();
    let bit = |t: usize| 1usize << (n - 1 - t);
    let mask = targets.iter().fold(0, |m, &t| m | bit(t));
    let offsets = (0..1usize << k)
        .map(|l| {
            targets
                .iter()
                .enumerate()
                .filter(|(j, _)| (l >> (k - 1 - j)) & 1 == 1)
                .fold(0, |o, (_, &t)| o | bit(t))
        })
        .collect();
    (offsets, mask)
}

/// Gather/scatter kernel shared by unitary gates and projectors.
pub(crate) fn apply_matrix_local(m: &CMatrix, targets: &[QubitIndex], n: usize, amps: &[ComplexAmp]) -> Vec<ComplexAmp> {
    let (offsets, mask) = local_offsets(targets, n);
    let local = offsets.len();
    let mut out = vec![ComplexAmp::new(0.0, 0.0); amps.len()];
    let mut gathered = vec![ComplexAmp::new(0.0, 0.0); local];
    let entries = m.entries();
    for base in (0..amps.len()).filter(|i| i & mask == 0) {
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let row = &entries[r * local..(r + 1) * local];
            out[base | off] = row.iter().zip(&gathered).map(|(a, b)| a * b).sum();
        }
    }
    out
}

pub(crate) fn embed_matrix(m: &CMatrix, targets: &[QubitIndex], n: usize) -> CMatrix {
    let (offsets, mask) = local_offsets(targets, n);
    let local_of = |i: usize| offsets.iter().position(|&o| o == i & mask).unwrap_or(0);
    CMatrix::from_fn(1 << n, |r, c| {
        if r & !mask != c & !mask {
            ComplexAmp::new(0.0, 0.0)
        } else {
            m.get(local_of(r), local_of(c))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{hadamard, identity_gate, phase};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> ComplexAmp {
        ComplexAmp::new(re, im)
    }

    fn close(a: &[ComplexAmp], b: &[ComplexAmp], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn kron_vec_examples() {
        assert_eq!(kron_vec(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]), vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0)
        ]);
        let (a1, a2, b1, b2) = (c(2.0, 1.0), c(-1.0, 0.5), c(3.0, 0.0), c(0.0, -2.0));
        assert_eq!(kron_vec(&[a1, a2], &[b1, b2]), vec![a1 * b1, a1 * b2, a2 * b1, a2 * b2]);
        let plus = [c(FRAC_1_SQRT_2, 0.0); 2];
        assert!(close(&kron_vec(&plus, &plus), &[c(0.5, 0.0); 4], 1e-15));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(StateVector::zero(1).unwrap().norm(), 1.0);
        assert!((norm(&[c(FRAC_1_SQRT_2, 0.0); 2]) - 1.0).abs() < 1e-15);
        assert!((norm(&[c(0.6, 0.0), c(0.8, 0.0)]) - 1.0).abs() < 1e-15);
        assert_eq!(norm(&[c(3.0, 0.0), c(4.0, 0.0)]), 5.0);
    }

    #[test]
    fn new_rejects_bad_vectors() {
        assert!(matches!(StateVector::new(vec![c(1.0, 0.0); 3]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(StateVector::new(vec![c(3.0, 0.0), c(4.0, 0.0)]), Err(Error::NotNormalized { .. })));
        assert!(matches!(StateVector::normalized(vec![c(0.0, 0.0); 2]), Err(Error::ZeroVector)));
        let s = StateVector::normalized(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!(close(s.amps(), &[c(0.6, 0.0), c(0.8, 0.0)], 1e-15));
    }

    #[test]
    fn apply_full_examples() {
        let s = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert_eq!(apply_full(&identity_gate(), &s).unwrap(), s);
        let h0 = apply_full(&hadamard(), &StateVector::zero(1).unwrap()).unwrap();
        assert!(close(h0.amps(), &[c(FRAC_1_SQRT_2, 0.0); 2], 1e-15));
        let h = hadamard();
        let h4 = h.kron(&h).kron(&h).kron(&h);
        let out = apply_full(&h4, &StateVector::zero(4).unwrap()).unwrap();
        assert!(close(out.amps(), &[c(0.25, 0.0); 16], 1e-15));
        assert!(matches!(apply_full(&h, &StateVector::zero(2).unwrap()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn apply_local_matches_padded_product() {
        let s = StateVector::zero(2).unwrap();
        let local = apply_local(&hadamard(), &[0], &s).unwrap();
        let full = apply_full(&hadamard().kron(&identity_gate()), &s).unwrap();
        assert!(local.max_deviation(&full) < 1e-15);
        // (1/√2)(|00⟩ + |10⟩)
        assert!(close(local.amps(), &[c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn apply_local_is_big_endian() {
        // Qubit 1 is the low bit and is set in both |01⟩ and |11⟩; only qubit 0 separates them.
        let r = FRAC_1_SQRT_2;
        let s = StateVector::new(vec![c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0), c(r, 0.0)]).unwrap();
        let on_q0 = apply_local(&phase(PI), &[0], &s).unwrap();
        assert!(close(on_q0.amps(), &[c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0), c(-r, 0.0)], 1e-15));
        let on_q1 = apply_local(&phase(PI), &[1], &s).unwrap();
        assert!(close(on_q1.amps(), &[c(0.0, 0.0), c(-r, 0.0), c(0.0, 0.0), c(-r, 0.0)], 1e-15));
    }

    #[test]
    fn apply_local_errors() {
        let s = StateVector::zero(2).unwrap();
        let h2 = hadamard().kron(&hadamard());
        assert!(matches!(apply_local(&h2, &[1, 1], &s), Err(Error::DuplicateTarget(1))));
        assert!(matches!(apply_local(&hadamard(), &[0, 1], &s), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(apply_local(&hadamard(), &[2], &s), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(&hadamard(), &[0], 1).unwrap(), hadamard());
        for n in 1..=4 {
            for k in 0..n {
                assert_eq!(embed(&identity_gate(), &[k], n).unwrap().matrix(), &CMatrix::identity(1 << n));
            }
        }
        let phi = 0.7;
        let e = ComplexAmp::from_polar(1.0, phi);
        let want = CMatrix::diagonal(&[c(1.0, 0.0), e, c(1.0, 0.0), e]);
        assert!(embed(&phase(phi), &[1], 2).unwrap().matrix().approx_eq(&want, 1e-15));
        assert!(matches!(embed(&hadamard(), &[0], MAX_DENSE_QUBITS + 1), Err(Error::SizeOutOfRange { .. })));
    }

    #[test]
    fn kron_mat_examples() {
        // P(φ) ⊗ I = diag(1, 1, e^{iφ}, e^{iφ})
        let phi = 1.1;
        let e = ComplexAmp::from_polar(1.0, phi);
        let k = phase(phi).kron(&identity_gate());
        assert_eq!(k.arity(), 2);
        assert!(k.matrix().approx_eq(&CMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), e, e]), 1e-15));
        assert!(k.matrix().is_unitary(1e-10));
    }
}
