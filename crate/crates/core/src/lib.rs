//! Gate-level quantum Fourier transform simulation with classical DFT oracles
//! and spectral-accuracy analysis.
//!
//! Registers are dense state vectors with big-endian qubit order (qubit 0 is
//! the most significant bit). The QFT built in [`circuit`] is the
//! `e^{+2πi·jk/N}` transform; [`analysis::dft`] is the `e^{−2πi·jk/N}`
//! classical DFT, so one is the complex conjugate of the other.

pub mod analysis;
pub mod circuit;
pub mod encoding;
pub mod error;
pub mod experiment;
pub mod gates;
pub mod matrix;
pub mod measure;
pub mod numfmt;
pub mod state;

/// One complex amplitude.
pub type ComplexAmp = num_complex::Complex64;

pub use analysis::{
    check_theorem1, check_theorem2, dft, dft_matrix, discrete_leakage, empirical_resolution, leakage_integral,
    leakage_report, sinc_reconstruct, LeakageIntegral, LeakageReport, SampledSignal, Theorem1Report, Theorem2Verdict,
};
pub use circuit::{circuit_matrix, iqft_circuit, qft_circuit, run_circuit, Circuit, CircuitOp};
pub use encoding::{
    double_phase, dyadic_from_bits, encode_phase, encode_signal, prepare_uniform, DyadicPhase, EigenPair,
    SignalComponent, SignalSpec,
};
pub use error::{Error, Result};
pub use experiment::{
    render_histogram, run_experiment, run_preset, run_preset_with, ExperimentConfig, ExperimentReport, OutputFormat,
    Preset, PresetReport,
};
pub use gates::{controlled, hadamard, identity_gate, phase, projector, swap_gate, PhaseAngle};
pub use matrix::{CMatrix, GateMatrix};
pub use measure::{decode_phase, distribution, sample, OutcomeDistribution, ShotCounts};
pub use state::{apply_full, apply_local, embed, kron_vec, norm, QubitIndex, StateVector};
