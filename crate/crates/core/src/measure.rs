//! Projective measurement in the computational basis, seeded shot sampling,
//! and decoding of outcome bins back to phases.
//!
//! Sampling uses ChaCha8 seeded with `seed_from_u64(seed)`. Independent
//! streams for the same seed are obtained with [`sampler_rng`]`(seed, stream)`,
//! which sets the ChaCha stream id; [`sample`] always uses stream 0.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::projector;
use crate::numfmt::{format_prob, ser_sig_vec};
use crate::state::{apply_matrix_local, check_register, norm, StateVector};

/// Probability of each basis outcome `0 … 2ⁿ−1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    n_qubits: usize,
    #[serde(serialize_with = "ser_sig_vec")]
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, outcome: usize) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// Most probable outcome; the lowest index wins ties.
    pub fn argmax(&self) -> usize {
        self.probs.iter().enumerate().fold(0, |best, (i, &p)| if p > self.probs[best] { i } else { best })
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Empirical outcome counts from a finite number of shots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    pub counts: BTreeMap<usize, u64>,
    pub shots: u64,
}

impl ShotCounts {
    pub fn get(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }
}

/// `probs[m] = |⟨m|s⟩|²`.
pub fn distribution(state: &StateVector) -> OutcomeDistribution {
    OutcomeDistribution { n_qubits: state.n_qubits(), probs: state.amps().iter().map(|a| a.norm_sqr()).collect() }
}

/// `‖(⊗ₖ P_{bitₖ(m)}) s‖²`, applying one projector per qubit.
///
/// Same value as [`distribution`]`(s).probability(m)`; kept as the literal
/// projector construction for cross-checking.
pub fn outcome_probability_via_projectors(state: &StateVector, outcome: usize) -> Result<f64> {
    let n = state.n_qubits();
    if outcome >= state.dim() {
        return Err(Error::IndexOutOfRange { index: outcome, bound: state.dim() });
    }
    let mut amps = state.amps().to_vec();
    for q in 0..n {
        let bit = ((outcome >> (n - 1 - q)) & 1) as u8;
        amps = apply_matrix_local(&projector(bit)?, &[q], n, &amps);
    }
    Ok(norm(&amps).powi(2))
}

/// ChaCha8 generator for `seed`, on ChaCha stream `stream`.
pub fn sampler_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `shots` outcomes from `distribution(state)`.
pub fn sample(state: &StateVector, shots: u64, seed: u64) -> ShotCounts {
    sample_distribution(&distribution(state), shots, &mut sampler_rng(seed, 0))
}

pub fn sample_distribution(dist: &OutcomeDistribution, shots: u64, rng: &mut ChaCha8Rng) -> ShotCounts {
    let mut counts = BTreeMap::new();
    if shots > 0 {
        let index = WeightedIndex::new(dist.probs()).expect("distribution has positive total weight");
        for _ in 0..shots {
            *counts.entry(index.sample(rng)).or_insert(0) += 1;
        }
    }
    ShotCounts { counts, shots }
}

/// Phase `outcome/2ⁿ` in revolutions.
pub fn decode_phase(outcome: usize, n: usize) -> Result<f64> {
    check_register(n)?;
    if outcome >> n != 0 {
        return Err(Error::IndexOutOfRange { index: outcome, bound: 1 << n });
    }
    Ok(outcome as f64 / (1u64 << n) as f64)
}

/// Big-endian bit string `b₁…bₙ` of `outcome`.
pub fn binary_label(outcome: usize, n: usize) -> String {
    format!("{outcome:0n$b}")
}

pub const CSV_HEADER: &str = "outcome_binary,outcome_decimal,probability,counts";

/// Histogram CSV, one row per outcome. `counts` is `—` when no shots were taken.
pub fn histogram_csv(dist: &OutcomeDistribution, counts: Option<&ShotCounts>) -> String {
    let n = dist.n_qubits();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (m, &p) in dist.probs().iter().enumerate() {
        let c = counts.map_or_else(|| "—".to_string(), |c| c.get(m).to_string());
        out.push_str(&format!("{},{},{},{}\n", binary_label(m, n), m, format_prob(p), c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::prepare_uniform;
    use crate::ComplexAmp;

    #[test]
    fn basis_state_distribution() {
        let d = distribution(&StateVector::basis(4, 0b0101).unwrap());
        assert_eq!(d.probability(5), 1.0);
        assert_eq!(d.total(), 1.0);
        assert_eq!(d.argmax(), 5);
    }

    #[test]
    fn uniform_distribution() {
        let d = distribution(&prepare_uniform(4).unwrap());
        assert!(d.probs().iter().all(|&p| (p - 1.0 / 16.0).abs() < 1e-15));
        assert_eq!(d.argmax(), 0);
    }

    #[test]
    fn projector_route_agrees() {
        let amps: Vec<_> = (0..8).map(|k| ComplexAmp::new(k as f64 + 1.0, -(k as f64) * 0.5)).collect();
        let s = StateVector::normalized(amps).unwrap();
        let d = distribution(&s);
        for m in 0..8 {
            assert!((outcome_probability_via_projectors(&s, m).unwrap() - d.probability(m)).abs() < 1e-15);
        }
        assert!(outcome_probability_via_projectors(&s, 8).is_err());
    }

    #[test]
    fn sampling_edge_cases() {
        let s = StateVector::basis(4, 5).unwrap();
        assert!(sample(&s, 0, 1).counts.is_empty());
        for seed in [0, 1, 42, u64::MAX] {
            let c = sample(&s, 1000, seed);
            assert_eq!(c.get(5), 1000);
            assert_eq!(c.counts.len(), 1);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let s = prepare_uniform(3).unwrap();
        assert_eq!(sample(&s, 500, 7), sample(&s, 500, 7));
        assert_ne!(sample(&s, 500, 7), sample(&s, 500, 8));
        let d = distribution(&s);
        let a = sample_distribution(&d, 500, &mut sampler_rng(7, 0));
        let b = sample_distribution(&d, 500, &mut sampler_rng(7, 1));
        assert_eq!(a, sample(&s, 500, 7));
        assert_ne!(a, b);
    }

    #[test]
    fn uniform_sampling_within_five_sigma() {
        let shots = 16_000u64;
        let sigma = (shots as f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
        let c = sample(&prepare_uniform(4).unwrap(), shots, 2024);
        assert_eq!(c.counts.values().sum::<u64>(), shots);
        for m in 0..16 {
            assert!((c.get(m) as f64 - 1000.0).abs() < 5.0 * sigma, "bin {m}: {}", c.get(m));
        }
    }

    #[test]
    fn decoding() {
        assert_eq!(decode_phase(0, 4).unwrap(), 0.0);
        assert_eq!(decode_phase(5, 4).unwrap(), 0.3125);
        assert_eq!(decode_phase(1, 4).unwrap(), 1.0 / 16.0);
        assert!(matches!(decode_phase(16, 4), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(binary_label(1, 4), "0001");
        assert_eq!(binary_label(5, 3), "101");
    }

    #[test]
    fn csv_layout() {
        let d = distribution(&StateVector::basis(2, 1).unwrap());
        let csv = histogram_csv(&d, None);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[2], "01,1,1.000000000,—");
        assert_eq!(lines.len(), 5);
        let c = sample(&StateVector::basis(2, 1).unwrap(), 10, 0);
        let sampled = histogram_csv(&d, Some(&c));
        let rows: Vec<_> = sampled.lines().collect();
        assert_eq!(rows[1], "00,0,0.000000000,0");
        assert_eq!(rows[2], "01,1,1.000000000,10");
    }
}
