// Copyright 2026 The railgauge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `railgauge` command-line tool.
//!
//! Exit codes: 0 on success, 1 on I/O or configuration errors, 2 when a
//! consistency check fails, 3 for an invalid interferometer kind or mode count.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::{
    bs_coherent_success, bs_coherent_success_sim, coherent_fock_simulation, default_cutoff, gm_coherent_success,
    total_loading_probability, CoherentRates, Method,
};
use crate::config::{thread_limit, Command, OutputFormat, RunConfig, Settings};
use crate::error::{Error, Result};
use crate::measurement::{pattern_table, run_measurement_with, run_sweep_with};
use crate::output::{round_sig, write_patterns_csv, write_patterns_json, write_report_json, write_report_text, write_sweep_csv};
use crate::unitaries::{Interferometer, InterferometerKind, UnitaryExport};
use crate::verify::{run_verify, Scope};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_INVALID_INTERFEROMETER: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "railgauge", version, about = "Boosted linear-optical X-basis measurement of single-rail qubits")]
pub struct Cli {
    /// Flat TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Build an interferometer and print its matrix (and mesh, for gm).
    BuildUnitary(UnitaryArgs),
    /// Success and failure rates for one interferometer.
    Measure(MeasureArgs),
    /// Overall success rate against mode count.
    Sweep(SweepArgs),
    /// Coherent-state ancilla rates.
    Coherent(CoherentArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Default)]
pub struct OutputArgs {
    /// json, csv or text.
    #[arg(long)]
    pub format: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UnitaryArgs {
    /// qft, gm or hadamard12.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Read the interferometer from a JSON file written by build-unitary.
    #[arg(long, conflicts_with_all = ["kind", "n"])]
    pub unitary: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Ancilla signs on modes 2..n, e.g. "+-+".
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// auto, float or exact.
    #[arg(long)]
    pub backend: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// relative (default) or absolute (uses --tol).
    #[arg(long)]
    pub zero_test: Option<String>,
    #[arg(long)]
    pub prior_plus: Option<f64>,
    /// Emit the per-pattern table instead of the report.
    #[arg(long)]
    pub patterns: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated kinds, e.g. "qft,gm".
    #[arg(long)]
    pub kinds: Option<String>,
    /// Mode range, e.g. "2..8" (inclusive) or "2,4,8".
    #[arg(long = "n")]
    pub n_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub backend: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub zero_test: Option<String>,
    #[arg(long)]
    pub prior_plus: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// closed-form, series or fock-sim.
    #[arg(long, default_value = "closed-form")]
    pub method: String,
    /// Real signal amplitudes for the loading probability.
    #[arg(long, requires = "xi", allow_hyphen_values = true)]
    pub upsilon: Option<f64>,
    #[arg(long, requires = "upsilon", allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to these scopes (comma-separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub scope: Vec<String>,
    /// Add the QFT runs at n = 9 and 10.
    #[arg(long)]
    pub extended: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidModeCount(_) | Error::NotPowerOfTwo(_) | Error::DimensionMismatch { .. } => {
            EXIT_INVALID_INTERFEROMETER
        }
        Error::InvalidConfig(msg) if msg.contains("interferometer kind") => EXIT_INVALID_INTERFEROMETER,
        _ => EXIT_ERROR,
    }
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn file_settings(cli: &Cli) -> Result<Option<Settings>> {
    cli.config.as_deref().map(Settings::from_file).transpose()
}

fn output_settings(out: &OutputArgs) -> Settings {
    Settings { format: out.format.clone(), output: out.output.clone(), ..Default::default() }
}

/// Runs a parsed command line and returns its exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let file = file_settings(cli)?;
    let file = file.as_ref();
    match &cli.command {
        Cmd::BuildUnitary(a) => {
            let flags = Settings { kind: a.kind.clone(), n: a.n, ..output_settings(&a.out) };
            cmd_build_unitary(&RunConfig::resolve(Command::BuildUnitary, &flags, file)?)
        }
        Cmd::Measure(a) => {
            let flags = Settings {
                kind: a.kind.clone(),
                n: a.n,
                phi: a.phi,
                signs: a.signs.clone(),
                backend: a.backend.clone(),
                tol: a.tol,
                zero_test: a.zero_test.clone(),
                prior_plus: a.prior_plus,
                ..output_settings(&a.out)
            };
            match &a.unitary {
                Some(path) => {
                    let export: UnitaryExport = serde_json::from_reader(File::open(path)?)?;
                    let u = Interferometer::from_export(&export)?;
                    let flags = Settings { kind: Some(u.kind().as_str().into()), n: Some(u.n()), ..flags };
                    let cfg = resolve_custom(&flags, file, &u)?;
                    cmd_measure_with(&cfg, &u, a.patterns)
                }
                None => cmd_measure(&RunConfig::resolve(Command::Measure, &flags, file)?, a.patterns),
            }
        }
        Cmd::Sweep(a) => {
            let flags = Settings {
                kinds: a.kinds.clone(),
                n_range: a.n_range.clone(),
                phi: a.phi,
                backend: a.backend.clone(),
                tol: a.tol,
                zero_test: a.zero_test.clone(),
                prior_plus: a.prior_plus,
                ..output_settings(&a.out)
            };
            cmd_sweep(&RunConfig::resolve(Command::Sweep, &flags, file)?)
        }
        Cmd::Coherent(a) => {
            let flags = Settings { n: a.n, alpha: a.alpha, cutoff: a.cutoff, ..output_settings(&a.out) };
            let mut cfg = RunConfig::resolve(Command::Coherent, &flags, file)?;
            if a.n.is_none() && file.and_then(|f| f.n).is_none() {
                cfg.n = 2;
            }
            cmd_coherent(&cfg, &a.method, a.upsilon.zip(a.xi))
        }
        Cmd::Verify(a) => {
            let cfg = RunConfig::resolve(Command::Verify, &output_settings(&a.out), file)?;
            let scopes = a.scope.iter().map(|s| s.parse()).collect::<Result<Vec<Scope>>>()?;
            cmd_verify(&cfg, &scopes, a.extended)
        }
    }
}

fn resolve_custom(flags: &Settings, file: Option<&Settings>, u: &Interferometer) -> Result<RunConfig> {
    // The file's kind and n do not apply to an imported matrix.
    let flags = Settings { kind: None, n: None, ..flags.clone() };
    let mut cfg = RunConfig::resolve(Command::Measure, &flags, file)?;
    cfg.kind = u.kind();
    cfg.n = u.n();
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_build_unitary(cfg: &RunConfig) -> Result<u8> {
    let u = cfg.kind.build(cfg.n)?;
    let mut out = sink(&cfg.output)?;
    match cfg.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &u.to_export())?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["row", "col", "re", "im"])?;
            for j in 1..=u.n() {
                for k in 1..=u.n() {
                    let z = u.entry(j, k);
                    w.write_record([j.to_string(), k.to_string(), round_sig(z.re).to_string(), round_sig(z.im).to_string()])?;
                }
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "{} n={} unitarity error {:.3e}", u.kind(), u.n(), u.unitarity_error())?;
            for j in 1..=u.n() {
                let row: Vec<String> = (1..=u.n()).map(|k| format_complex(u.entry(j, k))).collect();
                writeln!(out, "{}", row.join("  "))?;
            }
            if let Some(mesh) = u.mesh() {
                writeln!(out, "mesh: {} balanced beam splitters", mesh.len())?;
                for bs in mesh {
                    writeln!(out, "  layer {} ports ({}, {})", bs.layer, bs.port_a, bs.port_b)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:>+9.5}", z.re)
    } else {
        format!("{:>+8.5}{:+.5}i", z.re, z.im)
    }
}

pub fn cmd_measure(cfg: &RunConfig, patterns: bool) -> Result<u8> {
    let u = cfg.kind.build(cfg.n)?;
    cmd_measure_with(cfg, &u, patterns)
}

fn cmd_measure_with(cfg: &RunConfig, u: &Interferometer, patterns: bool) -> Result<u8> {
    let signs = cfg.ancilla_signs();
    let opts = cfg.measure_options();
    let mut out = sink(&cfg.output)?;
    if patterns {
        let rows = pattern_table(u, cfg.phi, &signs, &opts)?;
        match cfg.format {
            OutputFormat::Json => write_patterns_json(&rows, &mut out)?,
            _ => write_patterns_csv(&rows, &mut out)?,
        }
        out.flush()?;
        return Ok(EXIT_OK);
    }
    let report = run_measurement_with(u, cfg.phi, &signs, &opts)?;
    match cfg.format {
        OutputFormat::Json => write_report_json(&report, &mut out)?,
        OutputFormat::Text => write_report_text(&report, &mut out)?,
        OutputFormat::Csv => write_sweep_csv(std::slice::from_ref(&report), &mut out)?,
    }
    out.flush()?;
    Ok(if report.all_checks_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<u8> {
    for (kind, n) in cfg.kinds.iter().flat_map(|k| cfg.n_range.iter().map(move |n| (k, n))) {
        if *kind == InterferometerKind::Custom {
            return Err(Error::InvalidConfig("custom interferometers cannot be swept".into()));
        }
        log::debug!("sweep job {kind} n={n}");
    }
    let reports = run_sweep_with(&cfg.kinds, &cfg.n_range, cfg.phi, &cfg.measure_options());
    let mut out = sink(&cfg.output)?;
    match cfg.format {
        OutputFormat::Csv => write_sweep_csv(&reports, &mut out)?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &reports)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            for r in &reports {
                writeln!(out, "{:<10} n={:<3} overall = {} ({})", r.kind, r.n, r.overall.display(), round_sig(r.overall.value()))?;
            }
        }
    }
    out.flush()?;
    Ok(if reports.iter().all(|r| r.all_checks_pass()) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Serialize)]
struct CoherentJson {
    #[serde(flatten)]
    rates: CoherentRates,
    #[serde(skip_serializing_if = "Option::is_none")]
    loading_probability: Option<f64>,
}

pub fn cmd_coherent(cfg: &RunConfig, method: &str, signal: Option<(f64, f64)>) -> Result<u8> {
    let alpha = cfg.alpha;
    let n = cfg.n;
    let cutoff = cfg.cutoff.unwrap_or_else(|| default_cutoff(alpha));
    let rates = match method {
        "closed-form" | "closed_form" if n == 2 => {
            let p = bs_coherent_success(alpha)?;
            CoherentRates { n, alpha, cutoff, p_plus: p, p_minus: p, average: p, method: Method::ClosedForm }
        }
        "closed-form" | "closed_form" => gm_coherent_success(n, alpha, cutoff)?,
        "series" if n == 2 => {
            let p = bs_coherent_success_sim(alpha, cutoff)?;
            CoherentRates { n, alpha, cutoff, p_plus: p, p_minus: p, average: p, method: Method::Series }
        }
        "series" => return Err(Error::InvalidConfig("the series method is defined for n = 2".into())),
        "fock-sim" | "fock_sim" => coherent_fock_simulation(n, alpha, cutoff)?.rates,
        other => return Err(Error::InvalidConfig(format!("unknown coherent method '{other}'"))),
    };
    let loading_probability = signal
        .map(|(u, x)| total_loading_probability(alpha, Complex64::new(u, 0.0), Complex64::new(x, 0.0), cutoff))
        .transpose()?;
    let mut out = sink(&cfg.output)?;
    match cfg.format {
        OutputFormat::Text => {
            writeln!(out, "n={n} alpha={alpha} cutoff={cutoff} method={}", rates.method.as_str())?;
            writeln!(out, "p_plus  = {:.12}", rates.p_plus)?;
            writeln!(out, "p_minus = {:.12}", rates.p_minus)?;
            writeln!(out, "average = {:.12}", rates.average)?;
            if let Some(p) = loading_probability {
                writeln!(out, "loading = {p:.12}")?;
            }
        }
        _ => {
            serde_json::to_writer_pretty(&mut out, &CoherentJson { rates, loading_probability })?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(cfg: &RunConfig, scopes: &[Scope], extended: bool) -> Result<u8> {
    let report = run_verify(scopes, extended);
    let mut out = sink(&cfg.output)?;
    match cfg.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        _ => write!(out, "{}", report.to_table())?,
    }
    out.flush()?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
}

fn init_threads() {
    if let Some(t) = thread_limit() {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("could not cap threads at {t}: {e}");
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.verbose);
    init_threads();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
