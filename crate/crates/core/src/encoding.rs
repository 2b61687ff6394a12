//! State preparation: uniform superposition, single-phase states, weighted
//! multi-phase signals, and binary-fraction phase arithmetic.
//!
//! Phases come in two units. [`encode_phase`] takes *revolutions per step*
//! (`θ ∈ [0, 1)` is one turn). [`SignalSpec`] components are given in *bins*,
//! `θ·2ⁿ`, so a component at phase `5` on four qubits is `θ = 5/16`.
//! [`SignalSpec::revolutions`] is the single conversion point.

use std::f64::consts::TAU;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfmt::format_sig;
use crate::state::{check_register, StateVector};
use crate::ComplexAmp;

/// Binary fraction `0.b₁b₂…bₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DyadicPhase {
    bits: Vec<u8>,
}

impl DyadicPhase {
    /// Bits `b₁…bₙ`, most significant first. Each must be 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Parse("dyadic phase needs at least one bit".into()));
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parse(format!("bit value {b} is not 0 or 1")));
        }
        Ok(Self { bits: bits.to_vec() })
    }

    /// The `n`-bit phase `m/2ⁿ`.
    pub fn from_outcome(m: usize, n: usize) -> Result<Self> {
        check_register(n)?;
        if m >> n != 0 {
            return Err(Error::IndexOutOfRange { index: m, bound: 1 << n });
        }
        Ok(Self { bits: (0..n).map(|t| ((m >> (n - 1 - t)) & 1) as u8).collect() })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Integer `m` with `value = m/2ⁿ`.
    pub fn numerator(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    /// `Σ bₜ/2ᵗ`.
    pub fn value(&self) -> f64 {
        self.bits.iter().enumerate().map(|(t, &b)| b as f64 / 2f64.powi(t as i32 + 1)).sum()
    }

    /// `2θ mod 1`: shift the bits left, dropping `b₁` and padding with 0.
    pub fn doubled(&self) -> Self {
        let mut bits = self.bits[1..].to_vec();
        bits.push(0);
        Self { bits }
    }
}

pub fn dyadic_from_bits(bits: &[u8]) -> Result<DyadicPhase> {
    DyadicPhase::from_bits(bits)
}

pub fn double_phase(p: &DyadicPhase) -> DyadicPhase {
    p.doubled()
}

/// `⊗H|0⟩^{⊗n}`: every amplitude equals `2^{−n/2}`.
pub fn prepare_uniform(n: usize) -> Result<StateVector> {
    check_register(n)?;
    let a = ComplexAmp::new(2f64.powf(-(n as f64) / 2.0), 0.0);
    Ok(StateVector::from_parts(n, vec![a; 1 << n]))
}

/// `2^{−n/2} Σₖ e^{2πi·θ·k}|k⟩` with `theta` in revolutions per step.
///
/// Only `θ mod 1` enters the amplitudes, and `θ·k` is reduced mod 1 before
/// the exponential, so dyadic phases on the grid are reproduced exactly.
pub fn encode_phase(theta: f64, n: usize) -> Result<StateVector> {
    check_register(n)?;
    if !theta.is_finite() {
        return Err(Error::InvalidSignal(format!("phase {theta} is not finite")));
    }
    let scale = 2f64.powf(-(n as f64) / 2.0);
    let frac = theta.rem_euclid(1.0);
    let amps = (0..1usize << n)
        .map(|k| ComplexAmp::from_polar(scale, TAU * (frac * k as f64).rem_euclid(1.0)))
        .collect();
    Ok(StateVector::from_parts(n, amps))
}

/// One signal term: phase in bins and a positive amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignalComponent {
    pub phase: f64,
    pub amplitude: f64,
}

/// Multi-phase input signal on an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalSpec {
    n_qubits: usize,
    components: Vec<SignalComponent>,
}

impl SignalSpec {
    pub fn new(n_qubits: usize, components: Vec<SignalComponent>) -> Result<Self> {
        check_register(n_qubits)?;
        if components.is_empty() {
            return Err(Error::InvalidSignal("signal has no components".into()));
        }
        for c in &components {
            if !c.phase.is_finite() || c.phase < 0.0 {
                return Err(Error::InvalidSignal(format!("phase {} must be finite and ≥ 0", c.phase)));
            }
            if !c.amplitude.is_finite() || c.amplitude <= 0.0 {
                return Err(Error::InvalidSignal(format!("amplitude {} must be finite and > 0", c.amplitude)));
            }
        }
        Ok(Self { n_qubits, components })
    }

    /// Parses `"3:1,5:2,7:4"` (phase:amplitude pairs). A bare phase means amplitude 1.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let num = |s: &str| {
            s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?} in signal {text:?}")))
        };
        let components = text
            .split(',')
            .filter(|part| !part.trim().is_empty())
            .map(|part| {
                let (phase, amplitude) = match part.split_once(':') {
                    Some((p, a)) => (num(p)?, num(a)?),
                    None => (num(part)?, 1.0),
                };
                Ok(SignalComponent { phase, amplitude })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, components)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn components(&self) -> &[SignalComponent] {
        &self.components
    }

    /// Converts a phase in bins to revolutions per step.
    pub fn revolutions(&self, phase_bins: f64) -> f64 {
        phase_bins / (1u64 << self.n_qubits) as f64
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.components.iter().map(|c| c.amplitude)
    }
}

impl fmt::Display for SignalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", trim_num(c.phase), trim_num(c.amplitude))?;
        }
        Ok(())
    }
}

fn trim_num(x: f64) -> String {
    let s = format_sig(x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `normalize(Σⱼ aⱼ·encode_phase(θⱼ/2ⁿ, n))`. Components at equal phases add coherently.
pub fn encode_signal(spec: &SignalSpec) -> Result<StateVector> {
    let n = spec.n_qubits();
    let mut acc = vec![ComplexAmp::new(0.0, 0.0); 1 << n];
    for c in spec.components() {
        let term = encode_phase(spec.revolutions(c.phase), n)?;
        for (a, t) in acc.iter_mut().zip(term.amps()) {
            *a += t * c.amplitude;
        }
    }
    StateVector::normalized(acc)
}

/// Eigenvalue extremes of a diagonal signal operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenPair {
    lambda_min: f64,
    lambda_max: f64,
}

impl EigenPair {
    pub fn new(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if !(lambda_min.is_finite() && lambda_max.is_finite()) || lambda_min <= 0.0 || lambda_max <= 0.0 {
            return Err(Error::InvalidEigenPair(format!("eigenvalues must be finite and > 0, got {lambda_min}, {lambda_max}")));
        }
        if lambda_min > lambda_max {
            return Err(Error::InvalidEigenPair(format!("λ_min {lambda_min} exceeds λ_max {lambda_max}")));
        }
        Ok(Self { lambda_min, lambda_max })
    }

    /// Orders two positive values into a pair.
    pub fn from_unordered(a: f64, b: f64) -> Result<Self> {
        Self::new(a.min(b), a.max(b))
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn ratio(&self) -> f64 {
        self.lambda_min / self.lambda_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::norm;

    #[test]
    fn uniform_examples() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(prepare_uniform(1).unwrap().amps().iter().all(|a| (a.re - r).abs() < 1e-16 && a.im == 0.0));
        assert!(prepare_uniform(2).unwrap().amps().iter().all(|a| *a == ComplexAmp::new(0.5, 0.0)));
        let u4 = prepare_uniform(4).unwrap();
        assert_eq!(u4.dim(), 16);
        assert!(u4.amps().iter().all(|a| *a == ComplexAmp::new(0.25, 0.0)));
        assert!(matches!(prepare_uniform(0), Err(Error::SizeOutOfRange { .. })));
        assert!(matches!(prepare_uniform(15), Err(Error::SizeOutOfRange { .. })));
    }

    #[test]
    fn encode_phase_basics() {
        for n in 1..=6 {
            assert_eq!(encode_phase(0.0, n).unwrap(), prepare_uniform(n).unwrap());
        }
        assert_eq!(encode_phase(17.0 / 16.0, 4).unwrap(), encode_phase(1.0 / 16.0, 4).unwrap());
        let s = encode_phase(0.3, 5).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-14);
        let k = 7;
        let want = ComplexAmp::from_polar(2f64.powf(-2.5), TAU * 0.3 * k as f64);
        assert!((s.amps()[k] - want).norm() < 1e-14);
        assert!(encode_phase(f64::NAN, 2).is_err());
    }

    #[test]
    fn dyadic_examples() {
        assert_eq!(dyadic_from_bits(&[1]).unwrap().value(), 0.5);
        assert_eq!(dyadic_from_bits(&[0, 1, 0, 1]).unwrap().value(), 0.3125);
        assert_eq!(dyadic_from_bits(&[1, 1, 1, 1]).unwrap().value(), 15.0 / 16.0);
        assert!(dyadic_from_bits(&[]).is_err());
        assert!(dyadic_from_bits(&[2]).is_err());
        assert_eq!(DyadicPhase::from_outcome(5, 4).unwrap().bits(), &[0, 1, 0, 1]);
        assert_eq!(DyadicPhase::from_outcome(5, 4).unwrap().numerator(), 5);
        assert!(DyadicPhase::from_outcome(16, 4).is_err());
    }

    #[test]
    fn doubling() {
        let quarter = dyadic_from_bits(&[0, 1]).unwrap();
        assert_eq!(double_phase(&quarter).value(), 0.5);
        let five = dyadic_from_bits(&[0, 1, 0, 1]).unwrap();
        assert_eq!(double_phase(&five).value(), 0.625);
        let three_q = dyadic_from_bits(&[1, 1]).unwrap();
        assert_eq!(double_phase(&three_q).value(), 0.5);
    }

    #[test]
    fn signal_parse_and_display() {
        let s = SignalSpec::parse("3:1,5:2,7:4", 4).unwrap();
        assert_eq!(s.components().len(), 3);
        assert_eq!(s.components()[1], SignalComponent { phase: 5.0, amplitude: 2.0 });
        assert_eq!(s.to_string(), "3:1,5:2,7:4");
        assert_eq!(SignalSpec::parse("4.5:2", 4).unwrap().to_string(), "4.5:2");
        assert_eq!(SignalSpec::parse("17", 4).unwrap().components()[0].amplitude, 1.0);
        for bad in ["", "3:0", "3:-1", "-1:1", "x:1", "3:1:2", "nan:1"] {
            assert!(SignalSpec::parse(bad, 4).is_err(), "{bad:?} should fail");
        }
        assert!(SignalSpec::parse("1:1", 0).is_err());
    }

    #[test]
    fn single_component_signal_is_phase_state() {
        let spec = SignalSpec::parse("5:1", 4).unwrap();
        let s = encode_signal(&spec).unwrap();
        assert!(s.max_deviation(&encode_phase(5.0 / 16.0, 4).unwrap()) < 1e-15);
    }

    #[test]
    fn duplicate_phases_add_coherently() {
        let a = encode_signal(&SignalSpec::parse("3:1,3:2", 3).unwrap()).unwrap();
        let b = encode_signal(&SignalSpec::parse("3:1", 3).unwrap()).unwrap();
        assert!(a.max_deviation(&b) < 1e-14);
        assert!((norm(a.amps()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_pair_validation() {
        assert!(EigenPair::new(1.0, 2.0).is_ok());
        assert!(EigenPair::new(2.0, 1.0).is_err());
        assert!(EigenPair::new(0.0, 1.0).is_err());
        assert_eq!(EigenPair::from_unordered(8.0, 1.0).unwrap().ratio(), 0.125);
    }
}
