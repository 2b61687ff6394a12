//! End-to-end experiments: encode a signal, apply the inverse QFT, measure,
//! and attach the accuracy checks. Also the figure presets and histogram renderers.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{check_theorem1, check_theorem2, peak_bin, Theorem1Report, Theorem2Verdict};
use crate::circuit::{iqft_circuit, run_circuit};
use crate::encoding::{encode_signal, EigenPair, SignalSpec};
use crate::error::{Error, Result};
use crate::measure::{
    binary_label, decode_phase, distribution, histogram_csv, sample_distribution, sampler_rng, OutcomeDistribution,
    ShotCounts,
};
use crate::numfmt::{format_prob, format_sig, ser_sig};
use crate::state::MAX_QUBITS;

/// Version tag written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Bins below this probability are left out of the decoded-phase list and the SVG.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
    Text,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Svg => "svg",
            OutputFormat::Text => "text",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Text => "txt",
            f => f.as_str(),
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "text" | "txt" => Ok(OutputFormat::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_qubits: usize,
    pub signal: SignalSpec,
    /// 0 means exact distribution only.
    pub shots: u64,
    pub seed: u64,
    pub outputs: BTreeSet<OutputFormat>,
}

impl ExperimentConfig {
    /// Config with exact probabilities, seed 0 and JSON output.
    pub fn new(signal: SignalSpec) -> Self {
        Self {
            n_qubits: signal.n_qubits(),
            signal,
            shots: 0,
            seed: 0,
            outputs: BTreeSet::from([OutputFormat::Json]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(Error::ConfigInvalid {
                field: "n_qubits".into(),
                message: format!("{} is outside [1, {MAX_QUBITS}]", self.n_qubits),
            });
        }
        if self.signal.n_qubits() != self.n_qubits {
            return Err(Error::ConfigInvalid {
                field: "signal".into(),
                message: format!("signal built for {} qubits, config has {}", self.signal.n_qubits(), self.n_qubits),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub n_qubits: usize,
    pub signal: String,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodedPhase {
    pub bin: usize,
    pub binary: String,
    #[serde(serialize_with = "ser_sig")]
    pub theta: f64,
    #[serde(serialize_with = "ser_sig")]
    pub probability: f64,
}

/// Resolution verdicts for one pair of signal components (phases in bins).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairResolution {
    #[serde(serialize_with = "ser_sig")]
    pub phase_a: f64,
    #[serde(serialize_with = "ser_sig")]
    pub phase_b: f64,
    /// Absent when either phase is 0 (no positive eigenvalue ratio).
    pub theorem2: Option<Theorem2Verdict>,
    pub peak_a: usize,
    pub peak_b: usize,
    pub empirically_resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub config: ConfigEcho,
    pub distribution: OutcomeDistribution,
    pub counts: Option<ShotCounts>,
    /// Sorted by probability, descending; ties by bin.
    pub decoded_phases: Vec<DecodedPhase>,
    pub theorem1: Theorem1Report,
    pub theorem2: Vec<PairResolution>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// encode → inverse QFT → measure, plus the accuracy reports.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let n = cfg.n_qubits;
    let state = run_circuit(&iqft_circuit(n)?, &encode_signal(&cfg.signal)?)?;
    let dist = distribution(&state);
    let counts = (cfg.shots > 0).then(|| sample_distribution(&dist, cfg.shots, &mut sampler_rng(cfg.seed, 0)));

    let mut decoded_phases = dist
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > PROBABILITY_FLOOR)
        .map(|(bin, &probability)| {
            Ok(DecodedPhase { bin, binary: binary_label(bin, n), theta: decode_phase(bin, n)?, probability })
        })
        .collect::<Result<Vec<_>>>()?;
    decoded_phases.sort_by(|a, b| b.probability.total_cmp(&a.probability).then(a.bin.cmp(&b.bin)));

    Ok(ExperimentReport {
        schema: SCHEMA_VERSION,
        config: ConfigEcho { n_qubits: n, signal: cfg.signal.to_string(), shots: cfg.shots, seed: cfg.seed },
        distribution: dist,
        counts,
        decoded_phases,
        theorem1: check_theorem1(&cfg.signal),
        theorem2: pair_resolutions(&cfg.signal)?,
    })
}

/// Theorem-2 verdict and empirical peak comparison for every component pair.
pub fn pair_resolutions(signal: &SignalSpec) -> Result<Vec<PairResolution>> {
    let n = signal.n_qubits();
    let comps = signal.components();
    let peaks = comps.iter().map(|c| peak_bin(signal.revolutions(c.phase), n)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (a, b) = (comps[i].phase, comps[j].phase);
            let theorem2 = match EigenPair::from_unordered(a, b) {
                Ok(pair) => Some(check_theorem2(&pair, n)?),
                Err(_) => None,
            };
            out.push(PairResolution {
                phase_a: a,
                phase_b: b,
                theorem2,
                peak_a: peaks[i],
                peak_b: peaks[j],
                empirically_resolved: peaks[i] != peaks[j],
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig1Left,
    Fig1Right,
    Fig2Left,
    Fig2Right,
    Fig3,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig1Left, Preset::Fig1Right, Preset::Fig2Left, Preset::Fig2Right, Preset::Fig3];
    pub const N_QUBITS: usize = 4;

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1Left => "fig1-left",
            Preset::Fig1Right => "fig1-right",
            Preset::Fig2Left => "fig2-left",
            Preset::Fig2Right => "fig2-right",
            Preset::Fig3 => "fig3",
        }
    }

    /// Signal strings run by this preset, one report each.
    pub fn signals(self) -> Vec<String> {
        match self {
            Preset::Fig1Left => vec!["5:1".into()],
            Preset::Fig1Right => vec![(0..16).map(|p| format!("{p}:1")).collect::<Vec<_>>().join(",")],
            Preset::Fig2Left => vec!["3:1,5:2,7:4".into()],
            Preset::Fig2Right => vec!["2:1,4.5:2,7:4".into()],
            Preset::Fig3 => vec!["15:1".into(), "17:1".into()],
        }
    }

    pub fn configs(self, shots: u64, seed: u64) -> Result<Vec<ExperimentConfig>> {
        self.signals()
            .iter()
            .map(|s| {
                let mut cfg = ExperimentConfig::new(SignalSpec::parse(s, Self::N_QUBITS)?);
                cfg.shots = shots;
                cfg.seed = seed;
                Ok(cfg)
            })
            .collect()
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reports of every run in a preset; `fig3` has two.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetReport {
    pub schema: u32,
    pub preset: String,
    pub runs: Vec<ExperimentReport>,
}

impl PresetReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub fn run_preset(name: &str) -> Result<PresetReport> {
    run_preset_with(name.parse()?, 0, 0)
}

pub fn run_preset_with(preset: Preset, shots: u64, seed: u64) -> Result<PresetReport> {
    let runs = preset.configs(shots, seed)?.iter().map(run_experiment).collect::<Result<Vec<_>>>()?;
    Ok(PresetReport { schema: SCHEMA_VERSION, preset: preset.name().to_string(), runs })
}

const BAR_WIDTH: usize = 40;

/// Histogram of `report` as text, CSV or SVG bytes.
pub fn render_histogram(report: &ExperimentReport, format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Text => Ok(render_text(report).into_bytes()),
        OutputFormat::Csv => Ok(histogram_csv(&report.distribution, report.counts.as_ref()).into_bytes()),
        OutputFormat::Svg => Ok(render_svg(report).into_bytes()),
        OutputFormat::Json => Err(Error::UnsupportedFormat("json is a report format, not a histogram".into())),
    }
}

fn render_text(report: &ExperimentReport) -> String {
    let n = report.distribution.n_qubits();
    let mut out = String::new();
    for (m, &p) in report.distribution.probs().iter().enumerate() {
        let bar = "#".repeat((p * BAR_WIDTH as f64).round() as usize);
        let _ = writeln!(out, "{} {} |{bar}", binary_label(m, n), format_prob(p));
    }
    out
}

fn render_svg(report: &ExperimentReport) -> String {
    const BIN_W: f64 = 24.0;
    const PLOT_H: f64 = 200.0;
    const MARGIN: f64 = 40.0;
    let dist = &report.distribution;
    let n = dist.n_qubits();
    let bins = dist.probs().len();
    let width = 2.0 * MARGIN + BIN_W * bins as f64;
    let height = PLOT_H + 2.0 * MARGIN + 16.0;
    let base = MARGIN + PLOT_H;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        format_sig(width),
        format_sig(height),
        format_sig(width),
        format_sig(height)
    );
    let _ = writeln!(s, "  <title>n={} signal={}</title>", n, xml_escape(&report.config.signal));
    let _ = writeln!(
        s,
        r##"  <line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="#000000" stroke-width="1"/>"##,
        m = format_sig(MARGIN),
        b = format_sig(base),
        r = format_sig(width - MARGIN)
    );
    for (m, &p) in dist.probs().iter().enumerate() {
        let x = MARGIN + BIN_W * m as f64;
        if p > PROBABILITY_FLOOR {
            let h = p * PLOT_H;
            let _ = writeln!(
                s,
                r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="#4878a8"><title>{} {}</title></rect>"##,
                format_sig(x + 2.0),
                format_sig(base - h),
                format_sig(BIN_W - 4.0),
                format_sig(h),
                binary_label(m, n),
                format_prob(p)
            );
        }
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="8" text-anchor="middle" font-family="monospace">{}</text>"#,
            format_sig(x + BIN_W / 2.0),
            format_sig(base + 12.0),
            binary_label(m, n)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
