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

//! Success and failure rates of the boosted X-basis measurement.
//!
//! Both hypotheses (signal in `|+_φ⟩` or `|−_φ⟩`, same ancillas) are evolved
//! through the interferometer, and every click pattern with `1 ≤ I ≤ n−1`
//! photons is classified. A pattern is a success for one hypothesis when it
//! has zero probability under the other. The vacuum and the all-photon
//! sectors never discriminate and are booked as failure wholesale.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fraction_string, sector_weight};
use crate::fock::{
    enumerate_patterns, evolve_input, expand_exact, input_state, magnitude_bound, AncillaSpec,
    ClickPattern, ExactPolynomial, FockPolynomial, Monomial, Polynomial, Sign,
};
use crate::output::Rate;
use crate::unitaries::{build_hadamard12, Interferometer, InterferometerKind};

/// Absolute tolerance used by [`classify`] and the float consistency checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative amplitude threshold of the float zero test.
pub const DEFAULT_ZERO_REL: f64 = 1e-9;

/// Largest mode count whose integer numerators (at most n^n) fit in i64.
pub const MAX_EXACT_MODES: usize = 12;

/// Largest total mass that may be discarded as unreachable.
pub const UNREACHABLE_MASS_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SuccessPlus,
    SuccessMinus,
    Failure,
    Unreachable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SuccessPlus => "success_plus",
            Verdict::SuccessMinus => "success_minus",
            Verdict::Failure => "failure",
            Verdict::Unreachable => "unreachable",
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Verdict::SuccessPlus | Verdict::SuccessMinus)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies one click pattern from its probabilities under both hypotheses.
pub fn classify(p_plus: f64, p_minus: f64, tol: f64) -> Result<Verdict> {
    for p in [p_plus, p_minus] {
        if !(p >= 0.0) {
            return Err(Error::InvalidProbability(p));
        }
    }
    Ok(match (p_plus > tol, p_minus > tol) {
        (true, true) => Verdict::Failure,
        (true, false) => Verdict::SuccessPlus,
        (false, true) => Verdict::SuccessMinus,
        (false, false) => Verdict::Unreachable,
    })
}

fn classify_exact(plus: u128, minus: u128) -> Verdict {
    match (plus != 0, minus != 0) {
        (true, true) => Verdict::Failure,
        (true, false) => Verdict::SuccessPlus,
        (false, true) => Verdict::SuccessMinus,
        (false, false) => Verdict::Unreachable,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternVerdict {
    pub pattern: ClickPattern,
    pub p_plus: Rate,
    pub p_minus: Rate,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Exact for sign interferometers at `φ = 0`, float otherwise.
    #[default]
    Auto,
    Float,
    Exact,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::Auto => "auto",
            Backend::Float => "float",
            Backend::Exact => "exact",
        }
    }

    /// Resolves `Auto` and rejects `Exact` where it cannot apply.
    pub fn resolve(self, u: &Interferometer, phi: f64) -> Result<Backend> {
        let exact_ok = u.sign_matrix().is_some() && phi == 0.0 && u.n() <= MAX_EXACT_MODES;
        match self {
            Backend::Auto if exact_ok => Ok(Backend::Exact),
            Backend::Auto => Ok(Backend::Float),
            Backend::Exact if !exact_ok => Err(Error::InvalidConfig(format!(
                "the exact backend needs a sign interferometer (gm or hadamard12) with at most {MAX_EXACT_MODES} modes and phi = 0, got {} n={} with phi = {phi}",
                u.kind(),
                u.n()
            ))),
            b => Ok(b),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(Backend::Auto),
            "float" => Ok(Backend::Float),
            "exact" | "dyadic" => Ok(Backend::Exact),
            other => Err(Error::InvalidConfig(format!("unknown backend '{other}'"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Float zero test for click probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum ZeroTest {
    /// A coefficient is zero when `|c| ≤ rel·B`, with `B` the magnitude bound
    /// of that coefficient (the expansion with all moduli).
    Relative(f64),
    /// A probability is zero when it is `≤ tol`.
    Absolute(f64),
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest::Relative(DEFAULT_ZERO_REL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureOptions {
    pub backend: Backend,
    pub zero_test: ZeroTest,
    /// Tolerance of the float consistency checks.
    pub tol: f64,
    /// Prior probability of the `|+⟩` hypothesis used for `overall`.
    pub prior_plus: f64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self { backend: Backend::Auto, zero_test: ZeroTest::default(), tol: DEFAULT_TOL, prior_plus: 0.5 }
    }
}

impl MeasureOptions {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.prior_plus) {
            return Err(Error::InvalidProbability(self.prior_plus));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance must be non-negative, got {}", self.tol)));
        }
        match self.zero_test {
            ZeroTest::Relative(t) | ZeroTest::Absolute(t) if !(t >= 0.0) => {
                Err(Error::InvalidConfig(format!("zero threshold must be non-negative, got {t}")))
            }
            _ => Ok(()),
        }
    }
}

/// Rates of one photon-number sector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectorRates {
    #[serde(rename = "I")]
    pub photons: usize,
    pub s_plus: Rate,
    pub s_minus: Rate,
    pub f_plus: Rate,
    pub f_minus: Rate,
    #[serde(rename = "P_sector")]
    pub p_sector: Rate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Self { name: name.to_string(), pass, detail }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementReport {
    pub n: usize,
    pub kind: InterferometerKind,
    pub phi: f64,
    /// Signs of the ancillas on modes `2..n`.
    pub ancilla_signs: Vec<Sign>,
    pub backend: Backend,
    pub prior_plus: f64,
    /// One entry per photon number `0..=n`.
    pub sectors: Vec<SectorRates>,
    pub s_plus: Rate,
    pub s_minus: Rate,
    pub f_plus: Rate,
    pub f_minus: Rate,
    pub overall: Rate,
    /// Mass discarded as unreachable (zero under the exact backend).
    pub unreachable_mass: f64,
    pub checks: Vec<CheckOutcome>,
}

impl MeasurementReport {
    pub fn sector(&self, photons: usize) -> Option<&SectorRates> {
        self.sectors.get(photons)
    }

    pub fn is_exact(&self) -> bool {
        self.backend == Backend::Exact
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Serialize)]
struct ReportTotals<'a> {
    s_plus: &'a Rate,
    s_minus: &'a Rate,
    f_plus: &'a Rate,
    f_minus: &'a Rate,
    overall: &'a Rate,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: usize,
    kind: InterferometerKind,
    phi: f64,
    signs: String,
    backend: Backend,
    prior_plus: f64,
    sectors: &'a [SectorRates],
    totals: ReportTotals<'a>,
    unreachable_mass: f64,
    checks: &'a [CheckOutcome],
}

impl Serialize for MeasurementReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            n: self.n,
            kind: self.kind,
            phi: crate::output::round_sig(self.phi),
            signs: Sign::format_many(&self.ancilla_signs),
            backend: self.backend,
            prior_plus: self.prior_plus,
            sectors: &self.sectors,
            totals: ReportTotals {
                s_plus: &self.s_plus,
                s_minus: &self.s_minus,
                f_plus: &self.f_plus,
                f_minus: &self.f_minus,
                overall: &self.overall,
            },
            unreachable_mass: crate::output::round_sig(self.unreachable_mass),
            checks: &self.checks,
        }
        .serialize(s)
    }
}

/// Output states of both hypotheses.
enum Hypotheses {
    Exact { plus: ExactPolynomial, minus: ExactPolynomial },
    Float { plus: FockPolynomial, minus: FockPolynomial, bound: Polynomial<f64>, zero: ZeroTest },
}

impl Hypotheses {
    fn build(u: &Interferometer, phi: f64, ancillas: &[Sign], backend: Backend, zero: ZeroTest) -> Result<Self> {
        let n = u.n();
        if ancillas.len() + 1 != n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: ancillas.len() });
        }
        let plus_spec = AncillaSpec::hypothesis(Sign::Plus, ancillas, phi)?;
        let minus_spec = AncillaSpec::hypothesis(Sign::Minus, ancillas, phi)?;
        match backend {
            Backend::Exact => {
                let m = u.sign_matrix().expect("backend resolved to exact");
                let (plus, minus) =
                    rayon::join(|| expand_exact(plus_spec.signs(), m), || expand_exact(minus_spec.signs(), m));
                Ok(Hypotheses::Exact { plus: plus?, minus: minus? })
            }
            _ => {
                let plus_in = input_state(&plus_spec);
                let minus_in = input_state(&minus_spec);
                let ((plus, minus), bound) = rayon::join(
                    || rayon::join(|| evolve_input(&plus_in, u), || evolve_input(&minus_in, u)),
                    || magnitude_bound(&plus_in, u, n as u32),
                );
                Ok(Hypotheses::Float { plus: plus?, minus: minus?, bound, zero })
            }
        }
    }

    fn float_probs(plus: &FockPolynomial, minus: &FockPolynomial, m: Monomial) -> (f64, f64) {
        (plus.probability(m), minus.probability(m))
    }

    /// Zero threshold on the probability of pattern `m`.
    fn float_threshold(bound: &Polynomial<f64>, zero: ZeroTest, m: Monomial) -> f64 {
        match zero {
            ZeroTest::Absolute(t) => t,
            ZeroTest::Relative(rel) => {
                let b = rel * bound.coefficient(m);
                b * b * m.factorial_product()
            }
        }
    }

    fn verdict(&self, m: Monomial) -> PatternVerdict {
        let n = match self {
            Hypotheses::Exact { plus, .. } => plus.n(),
            Hypotheses::Float { plus, .. } => plus.n(),
        };
        let pattern = ClickPattern::from_monomial(m, n);
        match self {
            Hypotheses::Exact { plus, minus } => PatternVerdict {
                pattern,
                p_plus: Rate::from_exact(plus.probability(m)),
                p_minus: Rate::from_exact(minus.probability(m)),
                verdict: classify_exact(plus.probability_numerator(m), minus.probability_numerator(m)),
            },
            Hypotheses::Float { plus, minus, bound, zero } => {
                let (pp, pm) = Self::float_probs(plus, minus, m);
                let tol = Self::float_threshold(bound, *zero, m);
                PatternVerdict {
                    pattern,
                    p_plus: Rate::from_float(pp),
                    p_minus: Rate::from_float(pm),
                    verdict: classify(pp, pm, tol).expect("probabilities are squared moduli"),
                }
            }
        }
    }
}

/// Visits every pattern with `1 ≤ I ≤ n−1`, splitting the work on the
/// occupancy of the first mode. Partial results are merged in a fixed order so
/// float sums do not depend on scheduling.
fn scan_patterns<A, M, V>(n: usize, make: M, visit: V) -> Vec<A>
where
    A: Send,
    M: Fn() -> A + Sync,
    V: Fn(&mut A, Monomial) + Sync,
{
    let budget = n as u32 - 1;
    (0..=budget)
        .into_par_iter()
        .map(|first| {
            let mut acc = make();
            let mut occ = vec![0u32; n];
            occ[0] = first;
            for rest in enumerate_patterns(n - 1, budget - first) {
                if first + rest.total() == 0 {
                    continue;
                }
                occ[1..].copy_from_slice(rest.occupancies());
                visit(&mut acc, Monomial::from_occupancies(&occ));
            }
            acc
        })
        .collect()
}

#[derive(Clone)]
struct ExactAcc {
    s_plus: Vec<u128>,
    s_minus: Vec<u128>,
    f_plus: Vec<u128>,
    f_minus: Vec<u128>,
}

impl ExactAcc {
    fn new(n: usize) -> Self {
        Self { s_plus: vec![0; n + 1], s_minus: vec![0; n + 1], f_plus: vec![0; n + 1], f_minus: vec![0; n + 1] }
    }

    fn merge(&mut self, o: &ExactAcc) {
        for i in 0..self.s_plus.len() {
            self.s_plus[i] += o.s_plus[i];
            self.s_minus[i] += o.s_minus[i];
            self.f_plus[i] += o.f_plus[i];
            self.f_minus[i] += o.f_minus[i];
        }
    }
}

#[derive(Clone)]
struct FloatAcc {
    s_plus: Vec<f64>,
    s_minus: Vec<f64>,
    f_plus: Vec<f64>,
    f_minus: Vec<f64>,
    unreachable: f64,
}

impl FloatAcc {
    fn new(n: usize) -> Self {
        Self {
            s_plus: vec![0.0; n + 1],
            s_minus: vec![0.0; n + 1],
            f_plus: vec![0.0; n + 1],
            f_minus: vec![0.0; n + 1],
            unreachable: 0.0,
        }
    }

    fn merge(&mut self, o: &FloatAcc) {
        for i in 0..self.s_plus.len() {
            self.s_plus[i] += o.s_plus[i];
            self.s_minus[i] += o.s_minus[i];
            self.f_plus[i] += o.f_plus[i];
            self.f_minus[i] += o.f_minus[i];
        }
        self.unreachable += o.unreachable;
    }
}

/// Per-sector rates, before totals and checks.
struct Sectors {
    s_plus: Vec<Rate>,
    s_minus: Vec<Rate>,
    f_plus: Vec<Rate>,
    f_minus: Vec<Rate>,
    unreachable_mass: f64,
}

fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

fn exact_sectors(n: usize, plus: &ExactPolynomial, minus: &ExactPolynomial) -> Sectors {
    let parts = scan_patterns(
        n,
        || ExactAcc::new(n),
        |acc, m| {
            let pp = plus.probability_numerator(m);
            let pm = minus.probability_numerator(m);
            let i = m.degree() as usize;
            match classify_exact(pp, pm) {
                Verdict::Failure => {
                    acc.f_plus[i] += pp;
                    acc.f_minus[i] += pm;
                }
                Verdict::SuccessPlus => acc.s_plus[i] += pp,
                Verdict::SuccessMinus => acc.s_minus[i] += pm,
                Verdict::Unreachable => {}
            }
        },
    );
    let mut acc = ExactAcc::new(n);
    for p in &parts {
        acc.merge(p);
    }
    let rate = |num: u128, i: usize| Rate::from_exact(BigRational::new(big(num), big(plus.denominator(i as u32))));
    let mut out = Sectors { s_plus: vec![], s_minus: vec![], f_plus: vec![], f_minus: vec![], unreachable_mass: 0.0 };
    for i in 0..=n {
        if i == 0 || i == n {
            let w = Rate::from_exact(sector_weight(n, i));
            out.s_plus.push(Rate::from_exact(BigRational::zero()));
            out.s_minus.push(Rate::from_exact(BigRational::zero()));
            out.f_plus.push(w.clone());
            out.f_minus.push(w);
        } else {
            out.s_plus.push(rate(acc.s_plus[i], i));
            out.s_minus.push(rate(acc.s_minus[i], i));
            out.f_plus.push(rate(acc.f_plus[i], i));
            out.f_minus.push(rate(acc.f_minus[i], i));
        }
    }
    out
}

fn float_sectors(
    n: usize,
    plus: &FockPolynomial,
    minus: &FockPolynomial,
    bound: &Polynomial<f64>,
    zero: ZeroTest,
) -> Sectors {
    let parts = scan_patterns(
        n,
        || FloatAcc::new(n),
        |acc, m| {
            let (pp, pm) = Hypotheses::float_probs(plus, minus, m);
            let tol = Hypotheses::float_threshold(bound, zero, m);
            let i = m.degree() as usize;
            match classify(pp, pm, tol).expect("probabilities are squared moduli") {
                Verdict::Failure => {
                    acc.f_plus[i] += pp;
                    acc.f_minus[i] += pm;
                }
                Verdict::SuccessPlus => acc.s_plus[i] += pp,
                Verdict::SuccessMinus => acc.s_minus[i] += pm,
                Verdict::Unreachable => acc.unreachable += pp + pm,
            }
        },
    );
    let mut acc = FloatAcc::new(n);
    for p in &parts {
        acc.merge(p);
    }
    let mut out = Sectors {
        s_plus: vec![],
        s_minus: vec![],
        f_plus: vec![],
        f_minus: vec![],
        unreachable_mass: acc.unreachable,
    };
    for i in 0..=n {
        if i == 0 || i == n {
            let w = Rate::from_float(crate::exact::ratio_to_f64(&sector_weight(n, i)));
            out.s_plus.push(Rate::from_float(0.0));
            out.s_minus.push(Rate::from_float(0.0));
            out.f_plus.push(w.clone());
            out.f_minus.push(w);
        } else {
            out.s_plus.push(Rate::from_float(acc.s_plus[i]));
            out.s_minus.push(Rate::from_float(acc.s_minus[i]));
            out.f_plus.push(Rate::from_float(acc.f_plus[i]));
            out.f_minus.push(Rate::from_float(acc.f_minus[i]));
        }
    }
    out
}

fn sum_rates(rates: &[Rate]) -> Rate {
    if rates.iter().all(Rate::is_exact) {
        Rate::from_exact(rates.iter().fold(BigRational::zero(), |a, r| a + r.exact().unwrap()))
    } else {
        Rate::from_float(rates.iter().map(Rate::value).sum())
    }
}

fn add_rates(a: &Rate, b: &Rate) -> Rate {
    sum_rates(&[a.clone(), b.clone()])
}

fn weighted_overall(prior: f64, s_plus: &Rate, s_minus: &Rate) -> Rate {
    match (s_plus.exact(), s_minus.exact(), BigRational::from_f64(prior)) {
        (Some(a), Some(b), Some(p)) => Rate::from_exact(&p * a + (BigRational::one() - &p) * b),
        _ => Rate::from_float(prior * s_plus.value() + (1.0 - prior) * s_minus.value()),
    }
}

fn describe(rate: &Rate) -> String {
    match rate.exact() {
        Some(r) => fraction_string(r),
        None => format!("{:.15e}", rate.value()),
    }
}

/// Total probability of each hypothesis summed over its whole support, and
/// the classification of the endpoint sectors.
fn support_checks(h: &Hypotheses, n: usize, tol: f64, checks: &mut Vec<CheckOutcome>) {
    match h {
        Hypotheses::Exact { plus, minus } => {
            for (label, poly) in [("plus", plus), ("minus", minus)] {
                let mut per_degree = vec![0u128; n + 1];
                for (m, _) in poly.numerators().terms() {
                    per_degree[m.degree() as usize] += poly.probability_numerator(m);
                }
                let total = per_degree.iter().enumerate().fold(BigRational::zero(), |acc, (d, &num)| {
                    acc + BigRational::new(big(num), big(poly.denominator(d as u32)))
                });
                checks.push(CheckOutcome::new(
                    &format!("normalization_{label}"),
                    total.is_one(),
                    format!("sum of P = {}", fraction_string(&total)),
                ));
            }
            let endpoints = endpoint_monomials(plus.numerators().terms().chain(minus.numerators().terms()).map(|t| t.0), n);
            let bad = endpoints.iter().filter(|&&m| h.verdict(m).verdict.is_success()).count();
            checks.push(endpoint_check(bad, endpoints.len()));
        }
        Hypotheses::Float { plus, minus, .. } => {
            for (label, poly) in [("plus", plus), ("minus", minus)] {
                let total: f64 = poly.terms().map(|(m, c)| c.norm_sqr() * m.factorial_product()).sum();
                checks.push(CheckOutcome::new(
                    &format!("normalization_{label}"),
                    (total - 1.0).abs() <= tol,
                    format!("sum of P = {total:.15e}"),
                ));
            }
            let endpoints = endpoint_monomials(plus.terms().chain(minus.terms()).map(|t| t.0), n);
            let bad = endpoints.iter().filter(|&&m| h.verdict(m).verdict.is_success()).count();
            checks.push(endpoint_check(bad, endpoints.len()));
        }
    }
}

fn endpoint_monomials(support: impl Iterator<Item = Monomial>, n: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = support.filter(|m| m.degree() == 0 || m.degree() as usize == n).collect();
    out.sort_unstable_by_key(|m| ClickPattern::from_monomial(*m, n));
    out.dedup();
    out
}

fn endpoint_check(bad: usize, total: usize) -> CheckOutcome {
    CheckOutcome::new(
        "endpoint_sectors_fail",
        bad == 0,
        format!("{bad} of {total} patterns with 0 or n photons discriminate"),
    )
}

/// Runs the measurement with default options.
pub fn run_measurement(u: &Interferometer, phi: f64, ancilla_signs: &[Sign]) -> Result<MeasurementReport> {
    run_measurement_with(u, phi, ancilla_signs, &MeasureOptions::default())
}

pub fn run_measurement_with(
    u: &Interferometer,
    phi: f64,
    ancilla_signs: &[Sign],
    opts: &MeasureOptions,
) -> Result<MeasurementReport> {
    opts.validate()?;
    let n = u.n();
    let phi_norm = AncillaSpec::all_plus(n, phi)?.phi();
    let backend = opts.backend.resolve(u, phi_norm)?;
    let h = Hypotheses::build(u, phi_norm, ancilla_signs, backend, opts.zero_test)?;
    log::debug!("{} n={n}: evolved both hypotheses with the {backend} backend", u.kind());

    let sectors = match &h {
        Hypotheses::Exact { plus, minus } => exact_sectors(n, plus, minus),
        Hypotheses::Float { plus, minus, bound, zero } => float_sectors(n, plus, minus, bound, *zero),
    };

    let s_plus = sum_rates(&sectors.s_plus);
    let s_minus = sum_rates(&sectors.s_minus);
    let f_plus = sum_rates(&sectors.f_plus);
    let f_minus = sum_rates(&sectors.f_minus);
    let overall = weighted_overall(opts.prior_plus, &s_plus, &s_minus);
    let tol = opts.tol;

    let mut checks = Vec::new();
    support_checks(&h, n, tol, &mut checks);

    let mut rows = Vec::with_capacity(n + 1);
    let mut worst = Vec::new();
    for i in 0..=n {
        let weight = sector_weight(n, i);
        let plus_sum = add_rates(&sectors.s_plus[i], &sectors.f_plus[i]);
        let minus_sum = add_rates(&sectors.s_minus[i], &sectors.f_minus[i]);
        for (sign, sum) in [('+', &plus_sum), ('-', &minus_sum)] {
            if !sum.matches(&weight, tol) {
                worst.push(format!("I={i}{sign}: {} vs {}", describe(sum), fraction_string(&weight)));
            }
        }
        rows.push(SectorRates {
            photons: i,
            s_plus: sectors.s_plus[i].clone(),
            s_minus: sectors.s_minus[i].clone(),
            f_plus: sectors.f_plus[i].clone(),
            f_minus: sectors.f_minus[i].clone(),
            p_sector: Rate::from_exact(weight),
        });
    }
    checks.push(CheckOutcome::new(
        "sector_identity",
        worst.is_empty(),
        if worst.is_empty() {
            format!("s + f = C({n},I)/2^{n} for all {} sectors", n + 1)
        } else {
            worst.join("; ")
        },
    ));

    let one = BigRational::one();
    let tp = add_rates(&s_plus, &f_plus);
    let tm = add_rates(&s_minus, &f_minus);
    checks.push(CheckOutcome::new(
        "totals_identity",
        tp.matches(&one, tol) && tm.matches(&one, tol),
        format!("s_plus + f_plus = {}, s_minus + f_minus = {}", describe(&tp), describe(&tm)),
    ));
    if backend != Backend::Exact {
        checks.push(CheckOutcome::new(
            "unreachable_mass",
            sectors.unreachable_mass < UNREACHABLE_MASS_LIMIT,
            format!("{:.3e} discarded (limit {UNREACHABLE_MASS_LIMIT:e})", sectors.unreachable_mass),
        ));
    }
    for c in checks.iter().filter(|c| !c.pass) {
        log::warn!("{} n={n}: check {} failed: {}", u.kind(), c.name, c.detail);
    }

    Ok(MeasurementReport {
        n,
        kind: u.kind(),
        phi: phi_norm,
        ancilla_signs: ancilla_signs.to_vec(),
        backend,
        prior_plus: opts.prior_plus,
        sectors: rows,
        s_plus,
        s_minus,
        f_plus,
        f_minus,
        overall,
        unreachable_mass: sectors.unreachable_mass,
        checks,
    })
}

/// Every click pattern that is reachable under at least one hypothesis, in
/// canonical order, with its probabilities and verdict.
pub fn pattern_table(
    u: &Interferometer,
    phi: f64,
    ancilla_signs: &[Sign],
    opts: &MeasureOptions,
) -> Result<Vec<PatternVerdict>> {
    opts.validate()?;
    let n = u.n();
    let phi_norm = AncillaSpec::all_plus(n, phi)?.phi();
    let backend = opts.backend.resolve(u, phi_norm)?;
    let h = Hypotheses::build(u, phi_norm, ancilla_signs, backend, opts.zero_test)?;
    let patterns: Vec<ClickPattern> = enumerate_patterns(n, n as u32).collect();
    let mut rows: Vec<PatternVerdict> = patterns
        .par_iter()
        .map(|p| h.verdict(p.monomial()))
        .filter(|v| v.verdict != Verdict::Unreachable)
        .collect();
    rows.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    Ok(rows)
}

/// Measurement reports for every valid `(kind, n)` pair, ordered by `n` and
/// then by the order of `kinds`. Invalid pairs are skipped with a warning.
pub fn run_sweep(kinds: &[InterferometerKind], n_range: &[usize], phi: f64) -> Vec<MeasurementReport> {
    run_sweep_with(kinds, n_range, phi, &MeasureOptions::default())
}

pub fn run_sweep_with(
    kinds: &[InterferometerKind],
    n_range: &[usize],
    phi: f64,
    opts: &MeasureOptions,
) -> Vec<MeasurementReport> {
    let mut ns = n_range.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let jobs: Vec<(usize, InterferometerKind)> =
        ns.iter().flat_map(|&n| kinds.iter().map(move |&k| (n, k))).collect();
    let results: Vec<Option<MeasurementReport>> = jobs
        .par_iter()
        .map(|&(n, kind)| {
            let run = kind.build(n).and_then(|u| {
                let signs = vec![Sign::Plus; n.saturating_sub(1)];
                run_measurement_with(&u, phi, &signs, opts)
            });
            match run {
                Ok(r) => Some(r),
                Err(e) => {
                    log::warn!("skipping {kind} n={n}: {e}");
                    None
                }
            }
        })
        .collect();
    results.into_iter().flatten().collect()
}

/// Measurement with an arbitrary ancilla sign pattern. Exploratory: nothing is
/// asserted about the resulting rates.
pub fn mixed_ancilla_experiment(u: &Interferometer, phi: f64, signs: &[Sign]) -> Result<MeasurementReport> {
    run_measurement(u, phi, signs)
}

/// Report for the 12-mode Hadamard interferometer with `|+⟩` ancillas.
pub fn hadamard12_report() -> Result<MeasurementReport> {
    run_measurement(&build_hadamard12(), 0.0, &[Sign::Plus; 11])
}

/// Amplitude of the `|+⟩` hypothesis for `pattern`, for cross-checks.
pub fn plus_amplitude(u: &Interferometer, phi: f64, ancilla_signs: &[Sign], pattern: &ClickPattern) -> Result<Complex64> {
    let spec = AncillaSpec::hypothesis(Sign::Plus, ancilla_signs, phi)?;
    let poly = evolve_input(&input_state(&spec), u)?;
    Ok(poly.coefficient(pattern.monomial()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitaries::{build_green_machine, build_qft};
    use num_bigint::BigInt;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn plus_ancillas(n: usize) -> Vec<Sign> {
        vec![Sign::Plus; n - 1]
    }

    #[test]
    fn classify_rules() {
        assert_eq!(classify(0.5, 0.0, 1e-9).unwrap(), Verdict::SuccessPlus);
        assert_eq!(classify(0.25, 0.25, 1e-9).unwrap(), Verdict::Failure);
        assert_eq!(classify(0.0, 0.5, 1e-9).unwrap(), Verdict::SuccessMinus);
        assert_eq!(classify(1e-12, 0.0, 1e-9).unwrap(), Verdict::Unreachable);
        assert!(matches!(classify(-0.1, 0.0, 1e-9), Err(Error::InvalidProbability(_))));
        assert!(classify(f64::NAN, 0.0, 1e-9).is_err());
    }

    #[test]
    fn gm2_pattern_zero_one_is_minus() {
        let u = build_green_machine(2).unwrap();
        let rows = pattern_table(&u, 0.0, &plus_ancillas(2), &MeasureOptions::default()).unwrap();
        let row = rows.iter().find(|r| r.pattern.occupancies() == [0, 1]).unwrap();
        assert_eq!(row.verdict, Verdict::SuccessMinus);
        assert!(row.p_plus.exact().unwrap().is_zero());
        assert_eq!(row.p_minus.exact().unwrap(), &frac(1, 2));
    }

    #[test]
    fn gm4_decomposition() {
        let r = run_measurement(&build_green_machine(4).unwrap(), 0.0, &plus_ancillas(4)).unwrap();
        assert_eq!(r.backend, Backend::Exact);
        assert_eq!(r.s_plus.exact().unwrap(), &frac(3, 8));
        assert_eq!(r.s_minus.exact().unwrap(), &frac(3, 4));
        assert_eq!(r.overall.exact().unwrap(), &frac(9, 16));
        assert_eq!(r.sectors[1].s_minus.exact().unwrap(), &frac(3, 16));
        assert_eq!(r.sectors[2].s_plus.exact().unwrap(), &frac(3, 8));
        assert_eq!(r.sectors[2].s_minus.exact().unwrap(), &frac(3, 8));
        assert_eq!(r.sectors[3].s_minus.exact().unwrap(), &frac(3, 16));
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }

    #[test]
    fn qft3_odd_case() {
        let r = run_measurement(&build_qft(3).unwrap(), 0.0, &plus_ancillas(3)).unwrap();
        assert_eq!(r.backend, Backend::Float);
        assert!(r.s_plus.value().abs() < 1e-12);
        assert!((r.s_minus.value() - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.overall.value() - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }

    #[test]
    fn float_backend_on_gm_matches_exact() {
        let u = build_green_machine(8).unwrap();
        let exact = run_measurement(&u, 0.0, &plus_ancillas(8)).unwrap();
        let opts = MeasureOptions { backend: Backend::Float, ..Default::default() };
        let float = run_measurement_with(&u, 0.0, &plus_ancillas(8), &opts).unwrap();
        for (a, b) in exact.sectors.iter().zip(&float.sectors) {
            assert!(b.s_plus.agrees(&a.s_plus, 1e-12));
            assert!(b.s_minus.agrees(&a.s_minus, 1e-12));
            assert!((a.s_plus.value() - b.s_plus.value()).abs() < 1e-12);
        }
        assert_eq!(exact.overall.exact().unwrap(), &frac(147, 256));
    }

    #[test]
    fn exact_backend_rejected_for_qft() {
        let opts = MeasureOptions { backend: Backend::Exact, ..Default::default() };
        let err = run_measurement_with(&build_qft(4).unwrap(), 0.0, &plus_ancillas(4), &opts);
        assert!(matches!(err, Err(Error::InvalidConfig(_))));
        let err = run_measurement_with(&build_green_machine(4).unwrap(), 0.3, &plus_ancillas(4), &opts);
        assert!(matches!(err, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn wrong_ancilla_count() {
        let err = run_measurement(&build_green_machine(4).unwrap(), 0.0, &plus_ancillas(3));
        assert!(matches!(err, Err(Error::DimensionMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn all_minus_swaps_rates() {
        let u = build_green_machine(4).unwrap();
        let r = mixed_ancilla_experiment(&u, 0.0, &[Sign::Minus; 3]).unwrap();
        assert_eq!(r.s_plus.exact().unwrap(), &frac(3, 4));
        assert_eq!(r.s_minus.exact().unwrap(), &frac(3, 8));
    }

    #[test]
    fn prior_override() {
        let opts = MeasureOptions { prior_plus: 1.0, ..Default::default() };
        let r = run_measurement_with(&build_green_machine(4).unwrap(), 0.0, &plus_ancillas(4), &opts).unwrap();
        assert_eq!(r.overall.exact().unwrap(), &frac(3, 8));
        let bad = MeasureOptions { prior_plus: 1.5, ..Default::default() };
        assert!(run_measurement_with(&build_green_machine(4).unwrap(), 0.0, &plus_ancillas(4), &bad).is_err());
    }

    #[test]
    fn sweep_skips_invalid_pairs() {
        let reports = run_sweep(&[InterferometerKind::GreenMachine], &[2, 3, 4, 5, 6], 0.0);
        let ns: Vec<usize> = reports.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![2, 4]);
        assert!(run_sweep(&[InterferometerKind::Qft], &[], 0.0).is_empty());
    }

    #[test]
    fn sweep_order_is_by_n_then_kind() {
        let kinds = [InterferometerKind::Qft, InterferometerKind::GreenMachine];
        let reports = run_sweep(&kinds, &[4, 2], 0.0);
        let keys: Vec<(usize, &str)> = reports.iter().map(|r| (r.n, r.kind.as_str())).collect();
        assert_eq!(keys, vec![(2, "qft"), (2, "gm"), (4, "qft"), (4, "gm")]);
    }

    #[test]
    fn report_json_shape() {
        let r = run_measurement(&build_green_machine(2).unwrap(), 0.0, &plus_ancillas(2)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["n", "kind", "phi", "signs", "sectors", "totals", "checks"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["kind"], "gm");
        assert_eq!(v["totals"]["overall"]["exact"], "1/2");
        assert_eq!(v["sectors"][1]["I"], 1);
        assert_eq!(v["sectors"][1]["P_sector"]["exact"], "1/2");
    }
}
