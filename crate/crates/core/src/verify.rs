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

//! The verification suite behind `railgauge verify`.
//!
//! Each check compares one computed quantity against an independent value (a
//! closed form, the permanent oracle, a reference table entry, or another
//! backend) and records both sides.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::analytic::{gamma, gamma_bruteforce, overall_formula, s_minus_formula, s_plus_formula, sector_minus_formula};
use crate::coherent::{
    bs_coherent_success, bs_coherent_success_sim, coherent_fock_simulation, default_cutoff, gm_coherent_success,
    max_pattern_deviation,
};
use crate::error::{Error, Result};
use crate::exact::fraction_string;
use crate::fock::{amplitude_oracle, enumerate_patterns, evolve_input, input_state, AncillaSpec, Sign};
use crate::measurement::{hadamard12_report, run_measurement, MeasurementReport};
use crate::output::Rate;
use crate::unitaries::{apply_mesh, build_gm_mesh, build_green_machine, build_hadamard12, build_qft, UNITARITY_TOL};

/// Float tolerance for rates that have a closed form.
pub const RATE_TOL: f64 = 1e-9;
/// Oracle agreement tolerance on amplitudes.
pub const ORACLE_TOL: f64 = 1e-10;
/// Tolerance for the extended QFT runs.
pub const EXTENDED_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Unitaries,
    Fock,
    Measurement,
    Analytic,
    Hadamard12,
    Coherent,
}

impl Scope {
    pub const ALL: [Scope; 6] =
        [Scope::Unitaries, Scope::Fock, Scope::Measurement, Scope::Analytic, Scope::Hadamard12, Scope::Coherent];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::Unitaries => "unitaries",
            Scope::Fock => "fock",
            Scope::Measurement => "measurement",
            Scope::Analytic => "analytic",
            Scope::Hadamard12 => "hadamard12",
            Scope::Coherent => "coherent",
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scope::ALL
            .into_iter()
            .find(|sc| sc.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidConfig(format!("unknown verify scope '{s}'")))
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub scope: Scope,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Fixed-width table of name, expected, got, pass.
    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<w$}  {:>28}  {:>28}  pass\n", "name", "expected", "got");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<w$}  {:>28}  {:>28}  {}\n",
                c.name,
                c.expected,
                c.got,
                if c.pass { "yes" } else { "NO" }
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} failed, {:.1} s\n",
            self.checks.len(),
            failed,
            self.elapsed_seconds
        ));
        out
    }
}

struct Collector {
    scope: Scope,
    checks: Vec<Check>,
}

impl Collector {
    fn push(&mut self, name: impl Into<String>, expected: impl Into<String>, got: impl Into<String>, pass: bool) {
        self.checks.push(Check { scope: self.scope, name: name.into(), expected: expected.into(), got: got.into(), pass });
    }

    fn error(&mut self, name: impl Into<String>, e: Error) {
        self.push(name, "no error", e.to_string(), false);
    }

    fn rate(&mut self, name: impl Into<String>, want: &BigRational, got: &Rate, tol: f64) {
        self.push(name, fraction_string(want), got.display(), got.matches(want, tol));
    }

    fn close(&mut self, name: impl Into<String>, want: f64, got: f64, tol: f64) {
        self.push(name, format!("{want:.10} ± {tol:e}"), format!("{got:.12}"), (want - got).abs() <= tol);
    }

    fn at_most(&mut self, name: impl Into<String>, limit: f64, got: f64) {
        self.push(name, format!("≤ {limit:e}"), format!("{got:.3e}"), got <= limit);
    }
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn all_plus(n: usize) -> Vec<Sign> {
    vec![Sign::Plus; n - 1]
}

/// Runs the requested scopes (all when empty). `extended` adds the QFT
/// runs at `n = 9, 10`.
pub fn run_verify(scopes: &[Scope], extended: bool) -> VerifyReport {
    let start = Instant::now();
    let wanted: Vec<Scope> = if scopes.is_empty() { Scope::ALL.to_vec() } else { scopes.to_vec() };
    let mut checks = Vec::new();
    for scope in wanted {
        let mut c = Collector { scope, checks: Vec::new() };
        match scope {
            Scope::Unitaries => verify_unitaries(&mut c),
            Scope::Fock => verify_fock(&mut c),
            Scope::Measurement => verify_measurement(&mut c, extended),
            Scope::Analytic => verify_analytic(&mut c),
            Scope::Hadamard12 => verify_hadamard12(&mut c),
            Scope::Coherent => verify_coherent(&mut c),
        }
        checks.extend(c.checks);
    }
    VerifyReport { checks, elapsed_seconds: start.elapsed().as_secs_f64() }
}

fn verify_unitaries(c: &mut Collector) {
    for n in [2usize, 4, 8, 16] {
        match build_green_machine(n) {
            Ok(u) => {
                c.push(format!("gm{n}.exactly_unitary"), "true", format!("{:?}", u.is_exactly_unitary()), u.is_exactly_unitary() == Some(true));
                c.at_most(format!("gm{n}.unitarity_error"), UNITARITY_TOL, u.unitarity_error());
                match build_gm_mesh(n).and_then(|mesh| {
                    let count = mesh.len();
                    apply_mesh(&mesh, n).map(|m| (count, m))
                }) {
                    Ok((count, m)) => {
                        let want = n / 2 * n.trailing_zeros() as usize;
                        c.push(format!("gm{n}.mesh_splitters"), want.to_string(), count.to_string(), count == want);
                        c.push(format!("gm{n}.mesh_equals_matrix"), "identical", if m.entries() == u.entries() { "identical" } else { "different" }, m.entries() == u.entries());
                    }
                    Err(e) => c.error(format!("gm{n}.mesh"), e),
                }
            }
            Err(e) => c.error(format!("gm{n}.build"), e),
        }
    }
    for n in 2..=8 {
        match build_qft(n) {
            Ok(u) => c.at_most(format!("qft{n}.unitarity_error"), UNITARITY_TOL, u.unitarity_error()),
            Err(e) => c.error(format!("qft{n}.build"), e),
        }
    }
    let h = build_hadamard12();
    c.push("hadamard12.exactly_unitary", "true", format!("{:?}", h.is_exactly_unitary()), h.is_exactly_unitary() == Some(true));
    c.at_most("hadamard12.unitarity_error", UNITARITY_TOL, h.unitarity_error());
    match build_gm_mesh(6) {
        Err(Error::NotPowerOfTwo(6)) => c.push("gm6.rejected", "NotPowerOfTwo", "NotPowerOfTwo", true),
        other => c.push("gm6.rejected", "NotPowerOfTwo", format!("{other:?}"), false),
    }
}

fn oracle_deviation(u: &crate::Interferometer, signal: Sign) -> Result<f64> {
    let n = u.n();
    let spec = AncillaSpec::hypothesis(signal, &all_plus(n), 0.0)?;
    let poly = evolve_input(&input_state(&spec), u)?;
    let mut worst = 0.0f64;
    for p in enumerate_patterns(n, n as u32) {
        let want = amplitude_oracle(u, &spec, &p)?;
        worst = worst.max((poly.amplitude(p.monomial()) - want).norm());
    }
    Ok(worst)
}

fn verify_fock(c: &mut Collector) {
    let mut cases: Vec<(String, crate::Result<crate::Interferometer>)> = Vec::new();
    for n in [2usize, 4] {
        cases.push((format!("gm{n}"), build_green_machine(n)));
    }
    for n in 2..=6 {
        cases.push((format!("qft{n}"), build_qft(n)));
    }
    for (label, u) in cases {
        let u = match u {
            Ok(u) => u,
            Err(e) => {
                c.error(format!("{label}.build"), e);
                continue;
            }
        };
        for signal in [Sign::Plus, Sign::Minus] {
            let name = format!("{label}.oracle_{}", if signal == Sign::Plus { "plus" } else { "minus" });
            match oracle_deviation(&u, signal) {
                Ok(d) => c.at_most(name, ORACLE_TOL, d),
                Err(e) => c.error(name, e),
            }
        }
    }
}

fn compare_with_formulas(c: &mut Collector, label: &str, r: &MeasurementReport, tol: f64) {
    let n = r.n;
    let pairs = [
        ("s_plus", s_plus_formula(n), &r.s_plus),
        ("s_minus", s_minus_formula(n), &r.s_minus),
        ("overall", overall_formula(n), &r.overall),
    ];
    for (what, want, got) in pairs {
        match want {
            Ok(w) => c.rate(format!("{label}.{what}"), &w, got, tol),
            Err(e) => c.error(format!("{label}.{what}"), e),
        }
    }
    let mut bad = Vec::new();
    for s in &r.sectors {
        match sector_minus_formula(n, s.photons) {
            Ok(w) if !s.s_minus.matches(&w, tol) => bad.push(s.photons),
            Ok(_) => {}
            Err(e) => c.error(format!("{label}.sector_minus"), e),
        }
    }
    c.push(format!("{label}.sector_minus"), "all sectors match", format!("mismatch at {bad:?}"), bad.is_empty());
    let failed: Vec<&str> = r.failed_checks().map(|x| x.name.as_str()).collect();
    c.push(format!("{label}.consistency"), "all pass", if failed.is_empty() { "all pass".to_string() } else { failed.join(",") }, failed.is_empty());
}

fn measure(c: &mut Collector, label: &str, u: Result<crate::Interferometer>, phi: f64, signs: &[Sign]) -> Option<MeasurementReport> {
    match u.and_then(|u| run_measurement(&u, phi, signs)) {
        Ok(r) => Some(r),
        Err(e) => {
            c.error(label, e);
            None
        }
    }
}

fn reports_agree(a: &MeasurementReport, b: &MeasurementReport, tol: f64) -> bool {
    let totals = a.s_plus.agrees(&b.s_plus, tol)
        && a.s_minus.agrees(&b.s_minus, tol)
        && a.f_plus.agrees(&b.f_plus, tol)
        && a.f_minus.agrees(&b.f_minus, tol);
    totals
        && a.sectors.iter().zip(&b.sectors).all(|(x, y)| {
            x.s_plus.agrees(&y.s_plus, tol)
                && x.s_minus.agrees(&y.s_minus, tol)
                && x.f_plus.agrees(&y.f_plus, tol)
                && x.f_minus.agrees(&y.f_minus, tol)
        })
}

fn verify_measurement(c: &mut Collector, extended: bool) {
    let mut gm = Vec::new();
    for n in [2usize, 4, 8] {
        if let Some(r) = measure(c, &format!("gm{n}"), build_green_machine(n), 0.0, &all_plus(n)) {
            c.push(format!("gm{n}.backend"), "exact", r.backend.as_str(), r.is_exact());
            compare_with_formulas(c, &format!("gm{n}"), &r, 0.0);
            gm.push(r);
        }
    }
    let mut qft = Vec::new();
    let top = if extended { 10 } else { 8 };
    for n in 2..=top {
        let tol = if n > 8 { EXTENDED_TOL } else { RATE_TOL };
        if let Some(r) = measure(c, &format!("qft{n}"), build_qft(n), 0.0, &all_plus(n)) {
            compare_with_formulas(c, &format!("qft{n}"), &r, tol);
            qft.push(r);
        }
    }
    for g in &gm {
        if let Some(q) = qft.iter().find(|q| q.n == g.n) {
            let ok = reports_agree(g, q, RATE_TOL);
            c.push(format!("gm{}.equals_qft", g.n), "agree", if ok { "agree" } else { "differ" }, ok);
        }
    }
    for (n, (sp, sm)) in [(4usize, (frac(3, 8), frac(3, 4)))] {
        if let Some(r) = gm.iter().find(|r| r.n == n) {
            c.rate(format!("gm{n}.decomposition.s_plus"), &sp, &r.s_plus, 0.0);
            c.rate(format!("gm{n}.decomposition.s_minus"), &sm, &r.s_minus, 0.0);
            for (i, want) in [(1, frac(3, 16)), (2, frac(3, 8)), (3, frac(3, 16))] {
                c.rate(format!("gm{n}.s_{i}_minus"), &want, &r.sectors[i].s_minus, 0.0);
            }
            c.rate(format!("gm{n}.s_2_plus"), &frac(3, 8), &r.sectors[2].s_plus, 0.0);
        }
    }
    for g in &gm {
        let n = g.n;
        if let Some(m) = measure(c, &format!("gm{n}.all_minus"), build_green_machine(n), 0.0, &vec![Sign::Minus; n - 1]) {
            let ok = m.s_plus == g.s_minus && m.s_minus == g.s_plus && m.f_plus == g.f_minus && m.f_minus == g.f_plus;
            c.push(format!("gm{n}.ancilla_swap"), "exchanged exactly", format!("{} / {}", m.s_plus.display(), m.s_minus.display()), ok);
        }
    }
    let base = measure(c, "qft4.phi0", build_qft(4), 0.0, &all_plus(4));
    for phi in [std::f64::consts::FRAC_PI_4, 1.234] {
        if let (Some(b), Some(r)) = (&base, measure(c, &format!("qft4.phi{phi}"), build_qft(4), phi, &all_plus(4))) {
            let ok = reports_agree(b, &r, 1e-10);
            c.push(format!("qft4.phi_independence({phi:.4})"), "agree to 1e-10", if ok { "agree" } else { "differ" }, ok);
        }
    }
    for r in gm.iter().chain(&qft) {
        let label = format!("{}{}", r.kind, r.n);
        let even = r.n % 2 == 0;
        let mut ok = r.sectors.iter().filter(|s| s.photons * 2 != r.n).all(|s| s.s_plus.value().abs() < RATE_TOL);
        if even {
            let half = &r.sectors[r.n / 2];
            ok &= half.s_plus.agrees(&half.p_sector, RATE_TOL) && half.s_minus.agrees(&half.p_sector, RATE_TOL);
        }
        c.push(format!("{label}.plus_only_at_half"), "s_I+ = 0 off I=n/2", if ok { "holds" } else { "violated" }, ok);
    }
}

fn verify_analytic(c: &mut Collector) {
    let mut bad = Vec::new();
    for n in 2..=12 {
        for i in 0..=n {
            match (gamma(n, i), gamma_bruteforce(n, i)) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => bad.push((n, i)),
            }
        }
    }
    c.push("gamma.bruteforce_n2_12", "equal", format!("mismatch at {bad:?}"), bad.is_empty());
    for (n, want) in [(2, frac(1, 2)), (3, frac(1, 3)), (4, frac(9, 16)), (5, frac(2, 5)), (6, frac(55, 96)), (7, frac(3, 7)), (8, frac(147, 256))] {
        match overall_formula(n) {
            Ok(got) => c.push(format!("overall_formula({n})"), fraction_string(&want), fraction_string(&got), got == want),
            Err(e) => c.error(format!("overall_formula({n})"), e),
        }
    }
}

/// Reference per-sector rates of the 12-mode Hadamard interferometer.
pub const HADAMARD12_TABLE: [(&str, &str); 13] = [
    ("0", "0"),
    ("0", "11/12288"),
    ("0", "55/6144"),
    ("0", "1375/36864"),
    ("0", "605/6912"),
    ("0", "7535/55296"),
    ("121385/884736", "16093/110592"),
    ("0", "210595/1990656"),
    ("0", "3685/73728"),
    ("774455/214990848", "2291245/143327232"),
    ("9295/143327232", "1817585/573308928"),
    ("6325/214990848", "3182113/10319560704"),
    ("0", "0"),
];
pub const HADAMARD12_S_PLUS: &str = "6731395/47775744";
pub const HADAMARD12_S_MINUS: &str = "6106045627/10319560704";

fn verify_hadamard12(c: &mut Collector) {
    let r = match hadamard12_report() {
        Ok(r) => r,
        Err(e) => return c.error("hadamard12.report", e),
    };
    let parse = |s: &str| crate::exact::parse_fraction(s).expect("table entries are fractions");
    c.rate("hadamard12.s_plus", &parse(HADAMARD12_S_PLUS), &r.s_plus, 0.0);
    c.rate("hadamard12.s_minus", &parse(HADAMARD12_S_MINUS), &r.s_minus, 0.0);
    for (i, (plus, minus)) in HADAMARD12_TABLE.iter().enumerate() {
        c.rate(format!("hadamard12.s_{i}_plus"), &parse(plus), &r.sectors[i].s_plus, 0.0);
        c.rate(format!("hadamard12.s_{i}_minus"), &parse(minus), &r.sectors[i].s_minus, 0.0);
    }
    let differs = r.sectors.iter().any(|s| sector_minus_formula(12, s.photons).map(|w| !s.s_minus.matches(&w, 0.0)).unwrap_or(true));
    c.push("hadamard12.differs_from_gm_formula", "differs", if differs { "differs" } else { "matches" }, differs);
    let failed: Vec<&str> = r.failed_checks().map(|x| x.name.as_str()).collect();
    c.push("hadamard12.consistency", "all pass", if failed.is_empty() { "all pass".to_string() } else { failed.join(",") }, failed.is_empty());
}

fn verify_coherent(c: &mut Collector) {
    let bs = match bs_coherent_success(1.0) {
        Ok(v) => v,
        Err(e) => return c.error("coherent.bs_alpha1", e),
    };
    c.close("coherent.bs_alpha1", 0.41578, bs, 5e-5);
    for a in [1.0, 2.0, 3.0] {
        match (bs_coherent_success(a), bs_coherent_success_sim(a, default_cutoff(a))) {
            (Ok(x), Ok(y)) => c.close(format!("coherent.bs_series_alpha{a}"), x, y, 1e-10),
            (Err(e), _) | (_, Err(e)) => c.error(format!("coherent.bs_series_alpha{a}"), e),
        }
    }
    let mono: Vec<f64> = (1..=4).filter_map(|a| bs_coherent_success(a as f64).ok()).collect();
    let decreasing = mono.windows(2).all(|w| w[1] < w[0]);
    c.push("coherent.bs_decreasing_alpha1_4", "strictly decreasing", format!("{mono:.5?}"), decreasing);
    match gm_coherent_success(2, 1.0, 40) {
        Ok(r) => {
            c.close("coherent.gm2_reduces_plus", bs, r.p_plus, 1e-12);
            c.close("coherent.gm2_reduces_minus", bs, r.p_minus, 1e-12);
        }
        Err(e) => c.error("coherent.gm2_reduces", e),
    }
    match gm_coherent_success(4, 1.0 / 3.0, 30) {
        Ok(r) => {
            c.close("coherent.gm4_third_plus", 0.358, r.p_plus, 5e-3);
            c.close("coherent.gm4_third_minus", 0.0037, r.p_minus, 5e-4);
            c.close("coherent.gm4_third_average", 0.1810, r.average, 5e-4);
        }
        Err(e) => c.error("coherent.gm4_third", e),
    }
    for (n, alpha, cutoff) in [(2usize, 1.0, default_cutoff(1.0)), (4, 1.0 / 3.0, 16), (4, 1.0, 24)] {
        let label = format!("coherent.fock_n{n}_alpha{alpha:.3}");
        match coherent_fock_simulation(n, alpha, cutoff).and_then(|s| {
            let d = max_pattern_deviation(&s)?;
            let lattice = gm_coherent_success(n, alpha, cutoff)?;
            Ok((s, d, lattice))
        }) {
            Ok((s, d, lattice)) => {
                c.at_most(format!("{label}.pattern_deviation"), 1e-9, d);
                c.close(format!("{label}.p_plus"), lattice.p_plus, s.rates.p_plus, 1e-9);
                c.close(format!("{label}.p_minus"), lattice.p_minus, s.rates.p_minus, 1e-9);
            }
            Err(e) => c.error(label, e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_parsing() {
        assert_eq!("unitaries".parse::<Scope>().unwrap(), Scope::Unitaries);
        assert!("everything".parse::<Scope>().is_err());
    }

    #[test]
    fn unitaries_scope_passes() {
        let r = run_verify(&[Scope::Unitaries], false);
        assert!(r.all_pass(), "{}", r.to_table());
        assert!(r.checks.iter().all(|c| c.scope == Scope::Unitaries));
    }

    #[test]
    fn analytic_and_coherent_scopes_pass() {
        let r = run_verify(&[Scope::Analytic, Scope::Coherent], false);
        assert!(r.all_pass(), "{}", r.to_table());
    }
}
