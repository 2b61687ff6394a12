//! Classical reference transforms and the accuracy theory for QFT-based
//! phase estimation: DFT, sinc reconstruction, continuous and discrete
//! spectral leakage, and the minimal-amplitude / eigenvalue-ratio checks.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::circuit::{iqft_circuit, run_circuit, MAX_MATRIX_QUBITS};
use crate::encoding::{encode_phase, EigenPair, SignalSpec};
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, GateMatrix};
use crate::measure::distribution;
use crate::numfmt::ser_sig;
use crate::ComplexAmp;

/// `e^{−2πi·(jk mod N)/N}`, reduced before the exponential so large products stay exact.
fn root_of_unity(jk: usize, n: usize) -> ComplexAmp {
    ComplexAmp::from_polar(1.0, -TAU * (jk % n) as f64 / n as f64)
}

/// Unitary DFT, `Xₖ = (1/√N) Σₙ xₙ e^{−2πi·kn/N}`. Empty input gives empty output.
pub fn dft(x: &[ComplexAmp]) -> Vec<ComplexAmp> {
    let n = x.len();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| x.iter().enumerate().map(|(m, xm)| xm * root_of_unity(k * m, n)).sum::<ComplexAmp>() * scale)
        .collect()
}

/// `F[k,m] = (1/√N) e^{−2πi·km/N}` with `N = 2ⁿ`.
pub fn dft_matrix(n_qubits: usize) -> Result<GateMatrix> {
    if n_qubits == 0 || n_qubits > MAX_MATRIX_QUBITS {
        return Err(Error::SizeOutOfRange { n: n_qubits, min: 1, max: MAX_MATRIX_QUBITS });
    }
    let dim = 1usize << n_qubits;
    let scale = 1.0 / (dim as f64).sqrt();
    GateMatrix::new(CMatrix::from_fn(dim, |k, m| root_of_unity(k * m, dim) * scale))
}

/// Normalized sinc, `sin(πx)/(πx)` with `sinc(0) = 1` and exact zeros at nonzero integers.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x.fract() == 0.0 {
        0.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Uniform samples `x(n/f_s)` for `n = 0, 1, …` of a signal band-limited to `f_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledSignal {
    pub sample_rate: f64,
    pub samples: Vec<f64>,
    pub f_c: f64,
}

impl SampledSignal {
    pub fn new(sample_rate: f64, samples: Vec<f64>, f_c: f64) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::InvalidSignal(format!("sample rate {sample_rate} must be positive")));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidSignal("samples must be finite".into()));
        }
        Ok(Self { sample_rate, samples, f_c })
    }

    /// Samples `f` at `count` points spaced `1/sample_rate` apart, starting at `t = 0`.
    pub fn from_fn(f: impl Fn(f64) -> f64, sample_rate: f64, count: usize, f_c: f64) -> Result<Self> {
        let samples = (0..count).map(|n| f(n as f64 / sample_rate)).collect();
        Self::new(sample_rate, samples, f_c)
    }

    /// `f_s ≥ 2·f_c`.
    pub fn meets_sampling_rate(&self) -> bool {
        self.sample_rate >= 2.0 * self.f_c
    }
}

/// Default truncation half-width for [`sinc_reconstruct`].
pub const DEFAULT_SINC_WINDOW: usize = 500;

/// `Σ x(nT) sinc((t − nT)/T)` over the samples within `window` of `t/T`.
pub fn sinc_reconstruct(sig: &SampledSignal, t: f64, window: usize) -> f64 {
    let u = t * sig.sample_rate;
    let center = u.round() as i64;
    let lo = (center - window as i64).max(0);
    let hi = (center + window as i64).min(sig.samples.len() as i64 - 1);
    (lo..=hi).map(|n| sig.samples[n as usize] * sinc(u - n as f64)).sum()
}

/// Closed-form `∫₀ᵀ a·e^{2πi(ν−ω)t} dt` and its remainder-time bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageIntegral {
    pub value: ComplexAmp,
    /// `|a|·t_jk`.
    pub bound: f64,
    /// `T` minus the whole periods of `1/|ν−ω|`; equals `T` when `ν = ω`.
    pub t_jk: f64,
    pub n_jk: u64,
}

pub fn leakage_integral(a: f64, nu: f64, omega: f64, duration: f64) -> Result<LeakageIntegral> {
    if duration <= 0.0 || !duration.is_finite() {
        return Err(Error::NonpositiveDuration(duration));
    }
    let d = nu - omega;
    if d == 0.0 {
        return Ok(LeakageIntegral { value: ComplexAmp::new(a * duration, 0.0), bound: a.abs() * duration, t_jk: duration, n_jk: 0 });
    }
    let period = 1.0 / d.abs();
    let whole = (duration / period).floor();
    let t_jk = (duration - whole * period).clamp(0.0, period);
    let w = TAU * d;
    // (e^{iwT} − 1)/(iw), with e^{iwT} − 1 = 2i·sin(wT/2)·e^{iwT/2} to avoid cancellation
    let half = w * duration / 2.0;
    let value = ComplexAmp::new(0.0, 2.0 * half.sin()) * ComplexAmp::from_polar(1.0, half) / ComplexAmp::new(0.0, w) * a;
    let bound = a.abs() * t_jk;
    debug_assert!(value.norm() <= bound + 1e-12, "leakage {value} exceeds bound {bound}");
    Ok(LeakageIntegral { value, bound, t_jk, n_jk: whole as u64 })
}

/// Leakage of frequency `nu` into bin `k` over `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageReport {
    #[serde(serialize_with = "ser_sig")]
    pub nu: f64,
    pub k: i64,
    #[serde(serialize_with = "ser_sig")]
    pub magnitude: f64,
    #[serde(serialize_with = "ser_sig")]
    pub bound: f64,
    #[serde(serialize_with = "ser_sig")]
    pub t_jk: f64,
    pub n_jk: u64,
}

pub fn leakage_report(a: f64, nu: f64, k: i64, duration: f64) -> Result<LeakageReport> {
    let li = leakage_integral(a, nu, k as f64, duration)?;
    Ok(LeakageReport { nu, k, magnitude: li.value.norm(), bound: li.bound, t_jk: li.t_jk, n_jk: li.n_jk })
}

/// `X_{jk} = (a/√N) Σₙ e^{2πi(ν−k)n/N}`, summed in closed form.
pub fn discrete_leakage(a: f64, nu: f64, k: i64, n_points: usize) -> ComplexAmp {
    let n = n_points.max(1) as f64;
    let delta = nu - k as f64;
    let per_step = (delta / n).rem_euclid(1.0);
    let sum = if per_step == 0.0 {
        ComplexAmp::new(n, 0.0)
    } else {
        let num = ComplexAmp::from_polar(1.0, TAU * delta.rem_euclid(1.0)) - 1.0;
        let den = ComplexAmp::from_polar(1.0, TAU * per_step) - 1.0;
        num / den
    };
    sum * (a / n.sqrt())
}

/// Minimal-amplitude condition, evaluated with both the `2^{n/2}` and the `2ⁿ` denominators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub n_qubits: usize,
    #[serde(serialize_with = "ser_sig")]
    pub min_amplitude: f64,
    #[serde(serialize_with = "ser_sig")]
    pub sum_amplitudes: f64,
    /// `Σ|aₖ|/2^{n/2}`.
    #[serde(serialize_with = "ser_sig")]
    pub bound_stated: f64,
    /// `Σ|aₖ|/2ⁿ`.
    #[serde(serialize_with = "ser_sig")]
    pub bound_proof: f64,
    pub satisfied_stated: bool,
    pub satisfied_proof: bool,
    /// `min(a)·√N / Σ|a|`; the observability condition wants this ≫ 1.
    #[serde(serialize_with = "ser_sig")]
    pub observability_ratio: f64,
}

pub fn check_theorem1(spec: &SignalSpec) -> Theorem1Report {
    let n = spec.n_qubits();
    let min_amplitude = spec.amplitudes().fold(f64::INFINITY, f64::min);
    let sum_amplitudes: f64 = spec.amplitudes().map(f64::abs).sum();
    let bound_stated = sum_amplitudes / 2f64.powf(n as f64 / 2.0);
    let bound_proof = sum_amplitudes / 2f64.powi(n as i32);
    Theorem1Report {
        n_qubits: n,
        min_amplitude,
        sum_amplitudes,
        bound_stated,
        bound_proof,
        satisfied_stated: min_amplitude >= bound_stated,
        satisfied_proof: min_amplitude >= bound_proof,
        observability_ratio: min_amplitude * 2f64.powf(n as f64 / 2.0) / sum_amplitudes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Verdict {
    pub resolvable: bool,
    #[serde(serialize_with = "ser_sig")]
    pub ratio: f64,
    /// `1/2^{n−1}`.
    #[serde(serialize_with = "ser_sig")]
    pub threshold: f64,
}

/// Eigenvalue-ratio check: resolvable iff `λ_min/λ_max ≥ 1/2^{n−1}`.
pub fn check_theorem2(pair: &EigenPair, n: usize) -> Result<Theorem2Verdict> {
    if n == 0 {
        return Err(Error::SizeOutOfRange { n, min: 1, max: usize::MAX });
    }
    let ratio = pair.ratio();
    let threshold = 1.0 / 2f64.powi(n as i32 - 1);
    Ok(Theorem2Verdict { resolvable: ratio >= threshold, ratio, threshold })
}

/// Most probable bin after inverse QFT of the phase state for `theta` (revolutions).
pub fn peak_bin(theta: f64, n: usize) -> Result<usize> {
    let out = run_circuit(&iqft_circuit(n)?, &encode_phase(theta, n)?)?;
    Ok(distribution(&out).argmax())
}

/// True iff the two phases land on different most-probable bins.
pub fn empirical_resolution(theta_a: f64, theta_b: f64, n: usize) -> Result<bool> {
    Ok(peak_bin(theta_a, n)? != peak_bin(theta_b, n)?)
}
