//! `qftsim`: run QFT phase-estimation experiments and accuracy checks.

mod config;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use qftsim_core::analysis::{discrete_leakage, leakage_report};
use qftsim_core::experiment::pair_resolutions;
use qftsim_core::numfmt::format_sig;
use qftsim_core::{
    check_theorem1, render_histogram, run_experiment, run_preset_with, Error, ExperimentConfig, ExperimentReport,
    OutputFormat, Preset, SignalSpec,
};

use crate::config::FileConfig;

#[derive(Parser)]
#[command(name = "qftsim", version, about = "QFT phase-estimation simulator and accuracy checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a signal, apply the inverse QFT and measure.
    Simulate(SimulateArgs),
    /// Reproduce one of the built-in figure configurations.
    Preset(PresetArgs),
    /// Evaluate the amplitude and eigenvalue-ratio conditions for a signal without simulating.
    Theorems(TheoremArgs),
    /// Scan continuous and discrete leakage over a frequency grid and write CSV.
    Leakage(LeakageArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for report files; nothing is written when omitted.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Comma-separated output formats: json, csv, svg, text.
    #[arg(long, value_delimiter = ',')]
    format: Vec<String>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Key-value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    qubits: Option<usize>,
    /// Phase:amplitude pairs with phases in bins, e.g. "3:1,5:2,7:4".
    #[arg(long)]
    signal: Option<String>,
    /// Number of measurement shots; 0 reports the exact distribution only.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PresetArgs {
    /// fig1-left, fig1-right, fig2-left, fig2-right or fig3.
    name: String,
    #[arg(long, default_value_t = 0)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TheoremArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long)]
    signal: String,
    /// Print JSON instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LeakageArgs {
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Bin index ω_k the frequencies are compared against.
    #[arg(long, default_value_t = 0)]
    bin: i64,
    #[arg(long, default_value_t = -2.0)]
    nu_min: f64,
    #[arg(long, default_value_t = 2.0)]
    nu_max: f64,
    #[arg(long, default_value_t = 81)]
    steps: usize,
    /// Observation time T of the continuous integral.
    #[arg(long, default_value_t = 1.0)]
    duration: f64,
    /// Sample count N of the discrete sum.
    #[arg(long, default_value_t = 16)]
    points: usize,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let user = err.chain().any(|e| e.downcast_ref::<Error>().is_some_and(Error::is_user_error));
            ExitCode::from(if user { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Preset(args) => preset(args),
        Command::Theorems(args) => theorems(args),
        Command::Leakage(args) => leakage(args),
    }
}

fn parse_formats(raw: &[String]) -> Result<BTreeSet<OutputFormat>, Error> {
    raw.iter().filter(|s| !s.trim().is_empty()).map(|s| s.parse()).collect()
}

fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::ConfigInvalid { field: field.into(), message: message.into() }
}

fn simulate(args: SimulateArgs) -> anyhow::Result<()> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let n = args.qubits.or(file.qubits).ok_or_else(|| config_error("qubits", "required"))?;
    let signal_text = args.signal.or(file.signal).ok_or_else(|| config_error("signal", "required"))?;
    let signal = SignalSpec::parse(&signal_text, n)?;
    let mut formats = parse_formats(&args.output.format)?;
    if formats.is_empty() {
        formats = file.formats.unwrap_or_else(|| BTreeSet::from([OutputFormat::Text]));
    }
    let cfg = ExperimentConfig {
        n_qubits: n,
        signal,
        shots: args.shots.or(file.shots).unwrap_or(0),
        seed: args.seed.or(file.seed).unwrap_or(0),
        outputs: formats,
    };
    let report = run_experiment(&cfg)?;
    let out_dir = args.output.out_dir.or(file.out_dir);
    emit(&[report], "simulate", &cfg.outputs, out_dir.as_deref(), None)
}

fn preset(args: PresetArgs) -> anyhow::Result<()> {
    let preset: Preset = args.name.parse()?;
    let mut formats = parse_formats(&args.output.format)?;
    if formats.is_empty() {
        formats.insert(OutputFormat::Text);
    }
    let report = run_preset_with(preset, args.shots, args.seed)?;
    emit(&report.runs, preset.name(), &formats, args.output.out_dir.as_deref(), Some(&report.to_json()?))
}

/// Writes each requested format to `out_dir` (or text to stdout when no directory is given).
fn emit(
    runs: &[ExperimentReport],
    stem: &str,
    formats: &BTreeSet<OutputFormat>,
    out_dir: Option<&Path>,
    combined_json: Option<&str>,
) -> anyhow::Result<()> {
    let Some(dir) = out_dir else {
        for (i, run) in runs.iter().enumerate() {
            if runs.len() > 1 {
                println!("# run {} signal={}", i + 1, run.config.signal);
            }
            print!("{}", String::from_utf8(render_histogram(run, OutputFormat::Text)?)?);
        }
        return Ok(());
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for &format in formats {
        if format == OutputFormat::Json {
            let body = match combined_json {
                Some(json) => json.to_string(),
                None => runs[0].to_json()?,
            };
            write_atomic(&dir.join(format!("{stem}.json")), body.as_bytes())?;
            continue;
        }
        for (i, run) in runs.iter().enumerate() {
            let name = if runs.len() > 1 {
                format!("{stem}_run{}.{}", i + 1, format.extension())
            } else {
                format!("{stem}.{}", format.extension())
            };
            write_atomic(&dir.join(name), &render_histogram(run, format)?)?;
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn theorems(args: TheoremArgs) -> anyhow::Result<()> {
    let signal = SignalSpec::parse(&args.signal, args.qubits)?;
    let t1 = check_theorem1(&signal);
    let pairs = pair_resolutions(&signal)?;
    if args.json {
        #[derive(serde::Serialize)]
        struct Out<'a> {
            schema: u32,
            signal: String,
            theorem1: &'a qftsim_core::Theorem1Report,
            theorem2: &'a [qftsim_core::experiment::PairResolution],
        }
        let out = Out { schema: 1, signal: signal.to_string(), theorem1: &t1, theorem2: &pairs };
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(());
    }
    let verdict = |ok: bool| if ok { "satisfied" } else { "violated" };
    println!("signal {} on {} qubits", signal, args.qubits);
    println!("min amplitude       {}", format_sig(t1.min_amplitude));
    println!("sum of amplitudes   {}", format_sig(t1.sum_amplitudes));
    println!("bound Σ|a|/2^(n/2)  {}  {}", format_sig(t1.bound_stated), verdict(t1.satisfied_stated));
    println!("bound Σ|a|/2^n      {}  {}", format_sig(t1.bound_proof), verdict(t1.satisfied_proof));
    println!("min(a)·√N/Σ|a|      {}", format_sig(t1.observability_ratio));
    for p in &pairs {
        let t2 = match p.theorem2 {
            Some(v) => format!(
                "ratio {} threshold {} {}",
                format_sig(v.ratio),
                format_sig(v.threshold),
                if v.resolvable { "resolvable" } else { "unresolvable" }
            ),
            None => "ratio undefined (zero phase)".to_string(),
        };
        println!(
            "pair {} / {}: {}; peaks {} / {} {}",
            format_sig(p.phase_a),
            format_sig(p.phase_b),
            t2,
            p.peak_a,
            p.peak_b,
            if p.empirically_resolved { "distinct" } else { "merged" }
        );
    }
    Ok(())
}

fn leakage(args: LeakageArgs) -> anyhow::Result<()> {
    if args.steps == 0 {
        return Err(config_error("steps", "must be at least 1").into());
    }
    if args.points == 0 {
        return Err(config_error("points", "must be at least 1").into());
    }
    let mut csv = String::from("nu,k,magnitude,bound,t_jk,n_jk,discrete_magnitude\n");
    for i in 0..args.steps {
        let frac = if args.steps == 1 { 0.0 } else { i as f64 / (args.steps - 1) as f64 };
        let nu = args.nu_min + (args.nu_max - args.nu_min) * frac;
        let r = leakage_report(args.amplitude, nu, args.bin, args.duration)?;
        let discrete = discrete_leakage(args.amplitude, nu, args.bin, args.points).norm();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            format_sig(r.nu),
            r.k,
            format_sig(r.magnitude),
            format_sig(r.bound),
            format_sig(r.t_jk),
            r.n_jk,
            format_sig(discrete)
        ));
    }
    match args.out {
        Some(path) => write_atomic(&path, csv.as_bytes()),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
