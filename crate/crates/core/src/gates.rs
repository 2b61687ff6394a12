//! Gate constructors: H, P(φ), I, SWAP, controlled-U and the measurement projectors.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, GateMatrix};
use crate::state::{embed, QubitIndex};
use crate::ComplexAmp;

/// Rotation angle in radians. Not canonicalized unless asked.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct PhaseAngle(pub f64);

impl PhaseAngle {
    /// Angle of `2π·revolutions`.
    pub fn from_revolutions(revolutions: f64) -> Self {
        Self(TAU * revolutions)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Equivalent angle in `[0, 2π)`.
    pub fn canonical(self) -> Self {
        Self(self.0.rem_euclid(TAU))
    }
}

impl From<f64> for PhaseAngle {
    fn from(radians: f64) -> Self {
        Self(radians)
    }
}

fn c(re: f64, im: f64) -> ComplexAmp {
    ComplexAmp::new(re, im)
}

pub fn hadamard() -> GateMatrix {
    let h = FRAC_1_SQRT_2;
    GateMatrix::from_unitary_unchecked(CMatrix::from_fn(2, |r, col| if r & col == 1 { c(-h, 0.0) } else { c(h, 0.0) }))
}

/// `diag(1, e^{iφ})`.
pub fn phase(angle: impl Into<PhaseAngle>) -> GateMatrix {
    let phi = angle.into().radians();
    GateMatrix::from_unitary_unchecked(CMatrix::diagonal(&[c(1.0, 0.0), ComplexAmp::from_polar(1.0, phi)]))
}

pub fn identity_gate() -> GateMatrix {
    GateMatrix::from_unitary_unchecked(CMatrix::identity(2))
}

/// Bit flip `[[0,1],[1,0]]`.
pub fn pauli_x() -> GateMatrix {
    GateMatrix::from_unitary_unchecked(CMatrix::from_fn(2, |r, col| c((r != col) as u8 as f64, 0.0)))
}

/// Two-qubit SWAP in local form.
pub fn swap_local() -> GateMatrix {
    const PERM: [usize; 4] = [0, 2, 1, 3];
    GateMatrix::from_unitary_unchecked(CMatrix::from_fn(4, |r, col| c((PERM[r] == col) as u8 as f64, 0.0)))
}

/// Two-qubit controlled-U in local form, control first: `|0⟩⟨0|⊗I + |1⟩⟨1|⊗U`.
pub fn controlled_local(gate: &GateMatrix) -> Result<GateMatrix> {
    if gate.arity() != 1 {
        return Err(Error::BadArity { expected: 1, found: gate.arity() });
    }
    let m = CMatrix::from_fn(4, |r, col| match (r >> 1, col >> 1) {
        (0, 0) => c((r == col) as u8 as f64, 0.0),
        (1, 1) => gate.get(r & 1, col & 1),
        _ => c(0.0, 0.0),
    });
    Ok(GateMatrix::from_unitary_unchecked(m))
}

/// Controlled phase `diag(1, 1, 1, e^{iφ})` in local form.
pub fn controlled_phase_local(angle: impl Into<PhaseAngle>) -> GateMatrix {
    let e = ComplexAmp::from_polar(1.0, angle.into().radians());
    GateMatrix::from_unitary_unchecked(CMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), e]))
}

fn check_pair(p: QubitIndex, q: QubitIndex, n: usize) -> Result<()> {
    for idx in [p, q] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, bound: n });
        }
    }
    if p == q {
        return Err(Error::EqualIndices(p));
    }
    Ok(())
}

/// Full-register permutation exchanging qubits `p` and `q`.
pub fn swap_gate(p: QubitIndex, q: QubitIndex, n: usize) -> Result<GateMatrix> {
    check_pair(p, q, n)?;
    embed(&swap_local(), &[p, q], n)
}

/// Full-register controlled-U with single-qubit `gate` on `target`.
pub fn controlled(gate: &GateMatrix, control: QubitIndex, target: QubitIndex, n: usize) -> Result<GateMatrix> {
    if gate.arity() != 1 {
        return Err(Error::BadArity { expected: 1, found: gate.arity() });
    }
    check_pair(control, target, n)?;
    embed(&controlled_local(gate)?, &[control, target], n)
}

/// `|b⟩⟨b|` for `b ∈ {0, 1}`. Idempotent and self-adjoint but not unitary.
pub fn projector(bit: u8) -> Result<CMatrix> {
    match bit {
        0 => Ok(CMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)])),
        1 => Ok(CMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)])),
        b => Err(Error::IndexOutOfRange { index: b as usize, bound: 2 }),
    }
}
