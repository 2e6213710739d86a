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

//! Run configuration shared by the command-line tool and the examples.
//!
//! Settings come from three layers: command-line flags, an optional config
//! file, and built-in defaults, in that order of precedence. The config file
//! is flat TOML, one `key = value` per line:
//!
//! ```toml
//! kind = "gm"
//! n = 8
//! phi = 0.0
//! signs = "+++++++"
//! backend = "exact"
//! tol = 1e-9
//! zero_test = "relative"
//! prior_plus = 0.5
//! kinds = "qft,gm"
//! n_range = "2..8"
//! alpha = 1.0
//! cutoff = 21
//! format = "json"
//! output = "report.json"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fock::Sign;
use crate::measurement::{Backend, MeasureOptions, ZeroTest, DEFAULT_TOL, DEFAULT_ZERO_REL};
use crate::unitaries::InterferometerKind;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "RAILGAUGE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    BuildUnitary,
    Measure,
    Sweep,
    Coherent,
    Verify,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::BuildUnitary => "build-unitary",
            Command::Measure => "measure",
            Command::Sweep => "sweep",
            Command::Coherent => "coherent",
            Command::Verify => "verify",
        }
    }

    fn default_format(&self) -> OutputFormat {
        match self {
            Command::Sweep => OutputFormat::Csv,
            Command::Verify => OutputFormat::Text,
            _ => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" | "txt" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidConfig(format!("unknown output format '{other}'"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

/// One layer of settings. Every field is optional so layers can be merged.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub kind: Option<String>,
    pub n: Option<usize>,
    pub phi: Option<f64>,
    pub signs: Option<String>,
    pub backend: Option<String>,
    pub tol: Option<f64>,
    pub zero_test: Option<String>,
    pub prior_plus: Option<f64>,
    pub kinds: Option<String>,
    pub n_range: Option<String>,
    pub alpha: Option<f64>,
    pub cutoff: Option<usize>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr, $($field:ident),*) => {
        Settings { $($field: $hi.$field.clone().or_else(|| $lo.$field.clone())),* }
    };
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// `self` wins wherever it has a value.
    pub fn over(&self, lower: &Settings) -> Settings {
        overlay!(
            self, lower, kind, n, phi, signs, backend, tol, zero_test, prior_plus, kinds, n_range, alpha, cutoff,
            format, output
        )
    }
}

/// Fully resolved configuration of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub kind: InterferometerKind,
    pub n: usize,
    pub phi: f64,
    /// Ancilla signs on modes `2..n`; `None` means all `+`.
    pub signs: Option<Vec<Sign>>,
    pub backend: Backend,
    pub tol: f64,
    pub zero_test: ZeroTest,
    pub prior_plus: f64,
    pub kinds: Vec<InterferometerKind>,
    pub n_range: Vec<usize>,
    pub alpha: f64,
    pub cutoff: Option<usize>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Merges flags over the file over the defaults and validates the result.
    pub fn resolve(command: Command, flags: &Settings, file: Option<&Settings>) -> Result<RunConfig> {
        let s = match file {
            Some(f) => flags.over(f),
            None => flags.clone(),
        };
        let kind = match &s.kind {
            Some(k) => k.parse()?,
            None => InterferometerKind::GreenMachine,
        };
        let n = s.n.unwrap_or(if kind == InterferometerKind::Hadamard12 { 12 } else { 8 });
        let tol = s.tol.unwrap_or(DEFAULT_TOL);
        let zero_test = match s.zero_test.as_deref().map(str::trim) {
            None | Some("relative") => ZeroTest::Relative(DEFAULT_ZERO_REL),
            Some("absolute") => ZeroTest::Absolute(tol),
            Some(other) => {
                return Err(Error::InvalidConfig(format!(
                    "zero_test must be 'relative' or 'absolute', got '{other}'"
                )))
            }
        };
        let cfg = RunConfig {
            command,
            kind,
            n,
            phi: s.phi.unwrap_or(0.0),
            signs: s.signs.as_deref().map(Sign::parse_many).transpose()?,
            backend: s.backend.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            tol,
            zero_test,
            prior_plus: s.prior_plus.unwrap_or(0.5),
            kinds: match &s.kinds {
                Some(k) => parse_kinds(k)?,
                None => vec![InterferometerKind::Qft, InterferometerKind::GreenMachine],
            },
            n_range: match &s.n_range {
                Some(r) => parse_n_range(r)?,
                None => (2..=8).collect(),
            },
            alpha: s.alpha.unwrap_or(1.0),
            cutoff: s.cutoff,
            format: s.format.as_deref().map(str::parse).transpose()?.unwrap_or(command.default_format()),
            output: s.output.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.backend == Backend::Exact {
            let sign_kind = matches!(self.kind, InterferometerKind::GreenMachine | InterferometerKind::Hadamard12);
            if matches!(self.command, Command::Measure | Command::BuildUnitary) && !sign_kind {
                return Err(Error::InvalidConfig(format!(
                    "the exact backend supports gm and hadamard12, not {}",
                    self.kind
                )));
            }
            if self.command == Command::Sweep && self.kinds.contains(&InterferometerKind::Qft) {
                return Err(Error::InvalidConfig("the exact backend cannot sweep qft".into()));
            }
            if self.phi != 0.0 {
                return Err(Error::InvalidConfig(format!("the exact backend needs phi = 0, got {}", self.phi)));
            }
        }
        if !self.phi.is_finite() {
            return Err(Error::InvalidConfig(format!("phi must be finite, got {}", self.phi)));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be non-negative, got {}", self.tol)));
        }
        if !(0.0..=1.0).contains(&self.prior_plus) {
            return Err(Error::InvalidProbability(self.prior_plus));
        }
        if let Some(signs) = &self.signs {
            if matches!(self.command, Command::Measure) && signs.len() + 1 != self.n {
                return Err(Error::DimensionMismatch { expected: self.n.saturating_sub(1), got: signs.len() });
            }
        }
        Ok(())
    }

    pub fn ancilla_signs(&self) -> Vec<Sign> {
        self.signs.clone().unwrap_or_else(|| vec![Sign::Plus; self.n.saturating_sub(1)])
    }

    pub fn measure_options(&self) -> MeasureOptions {
        MeasureOptions { backend: self.backend, zero_test: self.zero_test, tol: self.tol, prior_plus: self.prior_plus }
    }
}

/// Parses `"qft,gm"`.
pub fn parse_kinds(s: &str) -> Result<Vec<InterferometerKind>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| p.trim().parse()).collect()
}

/// Parses `"2..8"` (inclusive), `"2..=8"`, `"4"` or `"2,4,8"`.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidConfig(format!("cannot parse mode range '{s}'"));
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

/// Thread cap from [`THREADS_ENV`], if set to a positive integer.
pub fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}
