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

//! Report values and file formats.
//!
//! Probabilities are written as decimals rounded to 15 significant digits and,
//! when the exact backend produced them, also as `"num/den"` strings so golden
//! files stay diff-stable.

use std::io::Write;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;
use crate::exact::{fraction_string, ratio_to_f64};
use crate::fock::Sign;
use crate::measurement::{MeasurementReport, PatternVerdict};

/// Significant digits kept in decimal output.
pub const DECIMAL_DIGITS: usize = 15;

/// Rounds to [`DECIMAL_DIGITS`] significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", DECIMAL_DIGITS - 1, v).parse().unwrap_or(v)
}

/// A probability, exact when available.
#[derive(Clone, Debug, PartialEq)]
pub struct Rate {
    value: f64,
    exact: Option<BigRational>,
}

impl Rate {
    pub fn from_exact(r: BigRational) -> Self {
        Self { value: ratio_to_f64(&r), exact: Some(r) }
    }

    pub fn from_float(v: f64) -> Self {
        Self { value: v, exact: None }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact equality when both sides are exact, otherwise `|a − b| ≤ tol`.
    pub fn matches(&self, want: &BigRational, tol: f64) -> bool {
        match &self.exact {
            Some(r) => r == want,
            None => (self.value - ratio_to_f64(want)).abs() <= tol,
        }
    }

    /// Same rule as [`Rate::matches`], between two rates.
    pub fn agrees(&self, other: &Rate, tol: f64) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value - other.value).abs() <= tol,
        }
    }

    pub fn display(&self) -> String {
        match &self.exact {
            Some(r) => fraction_string(r),
            None => format!("{}", round_sig(self.value)),
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rate", 2)?;
        st.serialize_field("value", &round_sig(self.value))?;
        st.serialize_field("exact", &self.exact.as_ref().map(fraction_string))?;
        st.end()
    }
}

/// One row of the sweep CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub kind: String,
    pub n: usize,
    pub s_plus: f64,
    pub s_minus: f64,
    pub overall: f64,
    pub s_plus_exact: String,
    pub s_minus_exact: String,
    pub overall_exact: String,
}

impl SweepRow {
    pub fn from_report(r: &MeasurementReport) -> Self {
        let ex = |rate: &Rate| rate.exact().map(fraction_string).unwrap_or_default();
        Self {
            kind: r.kind.as_str().to_string(),
            n: r.n,
            s_plus: round_sig(r.s_plus.value()),
            s_minus: round_sig(r.s_minus.value()),
            overall: round_sig(r.overall.value()),
            s_plus_exact: ex(&r.s_plus),
            s_minus_exact: ex(&r.s_minus),
            overall_exact: ex(&r.overall),
        }
    }
}

/// Sweep CSV: `kind,n,s_plus,s_minus,overall` followed by the exact columns.
pub fn write_sweep_csv<W: Write>(reports: &[MeasurementReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(SweepRow::from_report(r))?;
    }
    w.flush()?;
    Ok(())
}

/// One row of a click-pattern probability table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternRow {
    pub pattern: String,
    pub total_photons: u32,
    #[serde(rename = "P_plus")]
    pub p_plus: f64,
    #[serde(rename = "P_minus")]
    pub p_minus: f64,
    #[serde(rename = "P_plus_exact")]
    pub p_plus_exact: String,
    #[serde(rename = "P_minus_exact")]
    pub p_minus_exact: String,
    pub verdict: String,
}

impl PatternRow {
    pub fn from_verdict(v: &PatternVerdict) -> Self {
        let ex = |rate: &Rate| rate.exact().map(fraction_string).unwrap_or_default();
        Self {
            pattern: v.pattern.to_field(),
            total_photons: v.pattern.total(),
            p_plus: round_sig(v.p_plus.value()),
            p_minus: round_sig(v.p_minus.value()),
            p_plus_exact: ex(&v.p_plus),
            p_minus_exact: ex(&v.p_minus),
            verdict: v.verdict.as_str().to_string(),
        }
    }
}

pub fn write_patterns_csv<W: Write>(rows: &[PatternVerdict], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for v in rows {
        w.serialize(PatternRow::from_verdict(v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_patterns_json<W: Write>(rows: &[PatternVerdict], mut out: W) -> Result<()> {
    let rows: Vec<_> = rows.iter().map(PatternRow::from_verdict).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_report_json<W: Write>(report: &MeasurementReport, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

/// Plain-text rendering of a report.
pub fn write_report_text<W: Write>(r: &MeasurementReport, mut out: W) -> Result<()> {
    writeln!(
        out,
        "{} n={} phi={} ancillas={} backend={}",
        r.kind,
        r.n,
        round_sig(r.phi),
        Sign::format_many(&r.ancilla_signs),
        r.backend.as_str()
    )?;
    writeln!(out, "{:>3}  {:>24} {:>24} {:>24} {:>24} {:>24}", "I", "s_plus", "s_minus", "f_plus", "f_minus", "P_sector")?;
    for s in &r.sectors {
        writeln!(
            out,
            "{:>3}  {:>24} {:>24} {:>24} {:>24} {:>24}",
            s.photons,
            s.s_plus.display(),
            s.s_minus.display(),
            s.f_plus.display(),
            s.f_minus.display(),
            s.p_sector.display()
        )?;
    }
    writeln!(out, "s_plus  = {} ({})", r.s_plus.display(), round_sig(r.s_plus.value()))?;
    writeln!(out, "s_minus = {} ({})", r.s_minus.display(), round_sig(r.s_minus.value()))?;
    writeln!(out, "f_plus  = {} ({})", r.f_plus.display(), round_sig(r.f_plus.value()))?;
    writeln!(out, "f_minus = {} ({})", r.f_minus.display(), round_sig(r.f_minus.value()))?;
    writeln!(out, "overall = {} ({})", r.overall.display(), round_sig(r.overall.value()))?;
    for c in &r.checks {
        writeln!(out, "[{}] {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rounding_to_fifteen_digits() {
        assert_eq!(round_sig(0.5742187500000003), 0.57421875);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333333);
    }

    #[test]
    fn rate_serialisation() {
        let r = Rate::from_exact(BigRational::new(BigInt::from(147), BigInt::from(256)));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"value":0.57421875,"exact":"147/256"}"#);
        let f = Rate::from_float(0.1 + 0.2);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"value":0.3,"exact":null}"#);
    }

    #[test]
    fn rate_matching() {
        let want = BigRational::new(BigInt::from(9), BigInt::from(16));
        assert!(Rate::from_exact(want.clone()).matches(&want, 0.0));
        assert!(Rate::from_float(0.5625 + 1e-12).matches(&want, 1e-9));
        assert!(!Rate::from_float(0.5626).matches(&want, 1e-9));
    }
}
