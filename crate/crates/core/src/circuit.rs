//! Exact QFT / inverse-QFT circuits, their execution, and a line-based text form.
//!
//! The QFT here is the `e^{+2πi·jk/N}/√N` transform, i.e. the complex conjugate
//! of [`crate::analysis::dft_matrix`]. A trailing SWAP layer undoes the bit
//! reversal of the rotation ladder so the circuit matrix equals that transform
//! exactly, not up to a qubit permutation.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gates::{controlled_phase_local, hadamard, swap_local, PhaseAngle};
use crate::matrix::{CMatrix, GateMatrix};
use crate::numfmt::format_sig;
use crate::state::{apply_local, check_register, embed_matrix, QubitIndex, StateVector};

/// Largest register for which [`circuit_matrix`] builds the dense operator.
pub const MAX_MATRIX_QUBITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitOp {
    H(QubitIndex),
    ControlledPhase { control: QubitIndex, target: QubitIndex, angle: PhaseAngle },
    Swap(QubitIndex, QubitIndex),
}

impl CircuitOp {
    pub fn targets(&self) -> Vec<QubitIndex> {
        match *self {
            CircuitOp::H(q) => vec![q],
            CircuitOp::ControlledPhase { control, target, .. } => vec![control, target],
            CircuitOp::Swap(p, q) => vec![p, q],
        }
    }

    /// The op's unitary in local form, ordered like [`CircuitOp::targets`].
    pub fn local_gate(&self) -> GateMatrix {
        match *self {
            CircuitOp::H(_) => hadamard(),
            CircuitOp::ControlledPhase { angle, .. } => controlled_phase_local(angle),
            CircuitOp::Swap(..) => swap_local(),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            CircuitOp::ControlledPhase { control, target, angle } => {
                CircuitOp::ControlledPhase { control, target, angle: PhaseAngle(-angle.radians()) }
            }
            op => op,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let targets = self.targets();
        for (i, &t) in targets.iter().enumerate() {
            if t >= n {
                return Err(Error::IndexOutOfRange { index: t, bound: n });
            }
            if targets[..i].contains(&t) {
                return Err(Error::EqualIndices(t));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CircuitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitOp::H(q) => write!(f, "H q{q}"),
            CircuitOp::ControlledPhase { control, target, angle } => {
                write!(f, "CP q{control} q{target} angle={}", format_sig(angle.radians()))
            }
            CircuitOp::Swap(p, q) => write!(f, "SWAP q{p} q{q}"),
        }
    }
}

fn parse_qubit(tok: Option<&str>, line: &str) -> Result<QubitIndex> {
    tok.and_then(|t| t.strip_prefix('q'))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected qubit `qN` in line {line:?}")))
}

impl FromStr for CircuitOp {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut toks = line.split_whitespace();
        let op = match toks.next() {
            Some("H") => CircuitOp::H(parse_qubit(toks.next(), line)?),
            Some("SWAP") => CircuitOp::Swap(parse_qubit(toks.next(), line)?, parse_qubit(toks.next(), line)?),
            Some("CP") => {
                let control = parse_qubit(toks.next(), line)?;
                let target = parse_qubit(toks.next(), line)?;
                let angle = toks
                    .next()
                    .and_then(|t| t.strip_prefix("angle="))
                    .and_then(|t| t.parse::<f64>().ok())
                    .filter(|a| a.is_finite())
                    .ok_or_else(|| Error::Parse(format!("expected `angle=<radians>` in line {line:?}")))?;
                CircuitOp::ControlledPhase { control, target, angle: PhaseAngle(angle) }
            }
            _ => return Err(Error::Parse(format!("unknown op in line {line:?}"))),
        };
        if toks.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in line {line:?}")));
        }
        Ok(op)
    }
}

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_register(n_qubits)?;
        Ok(Self { n_qubits, ops: Vec::new() })
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    /// Reversed circuit with every op inverted.
    pub fn inverse(&self) -> Self {
        Self { n_qubits: self.n_qubits, ops: self.ops.iter().rev().map(CircuitOp::inverse).collect() }
    }

    /// Parses the text form produced by `Display`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let mut c = Self::new(n_qubits)?;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            c.push(line.parse()?)?;
        }
        Ok(c)
    }

    /// Counts of (Hadamard, controlled-phase, swap) ops.
    pub fn gate_counts(&self) -> (usize, usize, usize) {
        self.ops.iter().fold((0, 0, 0), |(h, cp, sw), op| match op {
            CircuitOp::H(_) => (h + 1, cp, sw),
            CircuitOp::ControlledPhase { .. } => (h, cp + 1, sw),
            CircuitOp::Swap(..) => (h, cp, sw + 1),
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Exact QFT on `n` qubits: Hadamard plus controlled-phase ladder per qubit, then bit reversal.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for target in 0..n {
        c.push(CircuitOp::H(target))?;
        for control in target + 1..n {
            // R_k with k = control − target + 1 rotates by 2π/2^k
            let k = (control - target + 1) as i32;
            let angle = PhaseAngle(TAU / 2f64.powi(k));
            c.push(CircuitOp::ControlledPhase { control, target, angle })?;
        }
    }
    for q in 0..n / 2 {
        c.push(CircuitOp::Swap(q, n - 1 - q))?;
    }
    Ok(c)
}

/// Inverse QFT: the QFT steps in reverse order with conjugated rotations.
pub fn iqft_circuit(n: usize) -> Result<Circuit> {
    Ok(qft_circuit(n)?.inverse())
}

pub fn run_circuit(circuit: &Circuit, state: &StateVector) -> Result<StateVector> {
    if circuit.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch { expected: circuit.n_qubits(), found: state.n_qubits() });
    }
    circuit.ops().iter().try_fold(state.clone(), |s, op| apply_local(&op.local_gate(), &op.targets(), &s))
}

/// Dense operator of `circuit`: product of the embedded op matrices in application order.
pub fn circuit_matrix(circuit: &Circuit) -> Result<GateMatrix> {
    let n = circuit.n_qubits();
    if n > MAX_MATRIX_QUBITS {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_MATRIX_QUBITS });
    }
    let m = circuit.ops().iter().try_fold(CMatrix::identity(1 << n), |acc, op| {
        embed_matrix(op.local_gate().matrix(), &op.targets(), n).mul(&acc)
    })?;
    GateMatrix::new(m)
}
