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

//! X-basis measurement with coherent-state ancillas.
//!
//! The signal qubit enters mode 1 and `|α⟩` enters every other mode. A click
//! pattern `(i_1, …, i_n)` discriminates when
//! `D = i_1/(n−1) − i_2 − … − i_n` equals `±α`: at `D = α` the `|−⟩` amplitude
//! vanishes (a `|+⟩` success) and at `D = −α` the `|+⟩` amplitude does.
//! Closed forms are cross-checked by a truncated Fock-space simulation.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{enumerate_patterns, magnitude_bound, ClickPattern, ProductInput, Sign, MAX_OCCUPANCY};
use crate::measurement::{classify, Verdict, DEFAULT_ZERO_REL};
use crate::unitaries::{build_green_machine, build_qft, Interferometer};

/// Relative truncation of the Bessel series.
const SERIES_REL: f64 = 1e-18;

/// Largest lattice scanned by [`gm_coherent_success`].
pub const MAX_LATTICE_POINTS: u64 = 200_000_000;

/// Tolerance on `|υ|² + |ξ|² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// `ceil(α² + 10|α| + 10)`, which leaves a Poisson tail below `1e-12`.
pub fn default_cutoff(alpha: f64) -> usize {
    (alpha * alpha + 10.0 * alpha.abs() + 10.0).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherentConfig {
    pub alpha: f64,
    pub n: usize,
    pub cutoff: usize,
    pub upsilon: Option<Complex64>,
    pub xi: Option<Complex64>,
}

impl CoherentConfig {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if n < 2 {
            return Err(Error::InvalidModeCount(n));
        }
        Ok(Self { alpha, n, cutoff: default_cutoff(alpha), upsilon: None, xi: None })
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_signal(mut self, upsilon: Complex64, xi: Complex64) -> Result<Self> {
        check_signal(upsilon, xi)?;
        self.upsilon = Some(upsilon);
        self.xi = Some(xi);
        Ok(self)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::InvalidAmplitude(format!("alpha must be finite, got {alpha}")));
    }
    Ok(())
}

fn check_signal(upsilon: Complex64, xi: Complex64) -> Result<()> {
    let norm = upsilon.norm_sqr() + xi.norm_sqr();
    if !((norm - 1.0).abs() <= NORMALIZATION_TOL) {
        return Err(Error::InvalidAmplitude(format!("|upsilon|^2 + |xi|^2 = {norm}, expected 1")));
    }
    Ok(())
}

/// How a [`CoherentRates`] value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Series,
    FockSim,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::FockSim => "fock_sim",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherentRates {
    pub n: usize,
    pub alpha: f64,
    pub cutoff: usize,
    pub p_plus: f64,
    pub p_minus: f64,
    pub average: f64,
    pub method: Method,
}

impl CoherentRates {
    fn new(n: usize, alpha: f64, cutoff: usize, p_plus: f64, p_minus: f64, method: Method) -> Self {
        Self { n, alpha, cutoff, p_plus, p_minus, average: 0.5 * (p_plus + p_minus), method }
    }
}

/// Modified Bessel function `I_order(x)` from its ascending series.
pub fn bessel_i(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    // (x/2)^order / order!
    let mut term = (1..=order).fold(1.0, |t, k| t * half / k as f64);
    let mut sum = term;
    let q = half * half;
    let mut m = 1u32;
    loop {
        term *= q / (m as f64 * (m + order) as f64);
        sum += term;
        if term <= SERIES_REL * sum || m > 10_000 {
            return sum;
        }
        m += 1;
    }
}

fn integer_alpha(alpha: f64) -> Result<i64> {
    check_alpha(alpha)?;
    let r = alpha.round();
    if r == 0.0 || (alpha - r).abs() > 1e-12 {
        return Err(Error::NotDiscriminating(alpha));
    }
    Ok(r as i64)
}

/// `2e^{−α²}·I_{|α|}(α²)`, the success rate of each hypothesis on a balanced
/// beam splitter with one coherent ancilla. Needs a nonzero integer `α`.
pub fn bs_coherent_success(alpha: f64) -> Result<f64> {
    let a = integer_alpha(alpha)?;
    let x = (a * a) as f64;
    Ok(2.0 * (-x).exp() * bessel_i(a.unsigned_abs() as u32, x))
}

/// The same rate summed pattern by pattern, `i = |α| … cutoff`.
pub fn bs_coherent_success_sim(alpha: f64, cutoff: usize) -> Result<f64> {
    let a = integer_alpha(alpha)?.unsigned_abs() as usize;
    let x = (a * a) as f64;
    let ln_half = (0.5 * x).ln();
    let mut sum = 0.0;
    for i in a..=cutoff {
        let ln_term = std::f64::consts::LN_2 - x + (2 * i - a) as f64 * ln_half - ln_factorial(i) - ln_factorial(i - a);
        sum += ln_term.exp();
    }
    Ok(sum)
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

fn ln_factorials(max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=max {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Rates of an `n`-mode Green Machine (or QFT) with `n−1` coherent ancillas,
/// from the constrained lattice sum. Each of `i_2 … i_n` runs over
/// `0..=cutoff` and `i_1` is solved from the constraint.
pub fn gm_coherent_success(n: usize, alpha: f64, cutoff: usize) -> Result<CoherentRates> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    if alpha == 0.0 {
        return Err(Error::InvalidAmplitude("alpha must be nonzero".into()));
    }
    let m = (n - 1) as f64;
    let points = (cutoff as u64 + 1).checked_pow(n as u32 - 1).unwrap_or(u64::MAX);
    if points > MAX_LATTICE_POINTS {
        return Err(Error::InvalidConfig(format!(
            "lattice of {points} points for n={n}, cutoff={cutoff} is too large"
        )));
    }
    let i1_max = (m * (cutoff as f64 + alpha.abs())).floor() as usize;
    let lnf = ln_factorials(i1_max.max(cutoff));
    let ln_scale = (alpha * alpha / n as f64).ln();
    let ln_pref = std::f64::consts::LN_2 - m * alpha * alpha;
    let ln_m2 = 2.0 * m.ln();

    // The outermost index is split across threads; each chunk is summed in
    // a fixed order.
    let sums: Vec<(f64, f64, u64, u64)> = (0..=cutoff)
        .into_par_iter()
        .map(|first| {
            let mut acc = (0.0, 0.0, 0u64, 0u64);
            let mut rest = vec![0usize; n - 2];
            loop {
                let s = first + rest.iter().sum::<usize>();
                let ln_rest = lnf[first] + rest.iter().map(|&k| lnf[k]).sum::<f64>();
                for (sign, plus) in [(1.0, true), (-1.0, false)] {
                    let i1 = m * (sign * alpha + s as f64);
                    let r = i1.round();
                    if r < 0.0 || (i1 - r).abs() > 1e-9 || r as usize > i1_max {
                        continue;
                    }
                    let i1 = r as usize;
                    let ln_term = ln_pref + i1 as f64 * ln_m2 - lnf[i1] - ln_rest + (i1 + s) as f64 * ln_scale;
                    if plus {
                        acc.0 += ln_term.exp();
                        acc.2 += 1;
                    } else {
                        acc.1 += ln_term.exp();
                        acc.3 += 1;
                    }
                }
                if !odometer(&mut rest, cutoff) {
                    break;
                }
            }
            acc
        })
        .collect();
    let (mut p_plus, mut p_minus, mut n_plus, mut n_minus) = (0.0, 0.0, 0, 0);
    for (a, b, c, d) in sums {
        p_plus += a;
        p_minus += b;
        n_plus += c;
        n_minus += d;
    }
    for (label, count) in [("|+>", n_plus), ("|->", n_minus)] {
        if count == 0 {
            log::warn!("n={n}, alpha={alpha}: no click pattern within cutoff {cutoff} discriminates {label}");
        }
    }
    Ok(CoherentRates::new(n, alpha, cutoff, p_plus, p_minus, Method::ClosedForm))
}

/// Advances `digits` as a base-`(max+1)` counter; false after wrapping.
fn odometer(digits: &mut [usize], max: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < max {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Probability of `pattern` under hypothesis `signal`, from the closed form
/// `e^{−(n−1)α²}/(2Π i!)·(n−1)^{2i_1}(α²/n)^{Σi}·(1 ± D/α)²`.
pub fn coherent_pattern_probability(alpha: f64, signal: Sign, pattern: &ClickPattern) -> Result<f64> {
    check_alpha(alpha)?;
    let n = pattern.n();
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    if alpha == 0.0 {
        return Err(Error::InvalidAmplitude("alpha must be nonzero".into()));
    }
    let occ = pattern.occupancies();
    let m = (n - 1) as f64;
    let d = occ[0] as f64 / m - occ[1..].iter().map(|&k| k as f64).sum::<f64>();
    let bracket = 1.0 + signal.value() as f64 * d / alpha;
    if bracket == 0.0 {
        return Ok(0.0);
    }
    let total = pattern.total() as f64;
    let ln = -m * alpha * alpha - std::f64::consts::LN_2 - occ.iter().map(|&k| ln_factorial(k as usize)).sum::<f64>()
        + 2.0 * occ[0] as f64 * m.ln()
        + total * (alpha * alpha / n as f64).ln();
    Ok(ln.exp() * bracket * bracket)
}

/// One click pattern of the Fock simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentPattern {
    pub pattern: ClickPattern,
    pub p_plus: f64,
    pub p_minus: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherentSimulation {
    pub rates: CoherentRates,
    /// Every pattern with at most `cutoff` photons, in canonical order.
    pub patterns: Vec<CoherentPattern>,
    /// Probability mass above the photon cutoff, per hypothesis.
    pub truncated_plus: f64,
    pub truncated_minus: f64,
}

/// Interferometer used by the Fock simulation: the Green Machine for powers of
/// two, the QFT otherwise. Both route the ancilla amplitudes identically.
pub fn coherent_interferometer(n: usize) -> Result<Interferometer> {
    if n.is_power_of_two() {
        build_green_machine(n)
    } else {
        build_qft(n)
    }
}

fn coherent_input(n: usize, alpha: f64, signal: Sign, cutoff: usize) -> Result<ProductInput<Complex64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut factors = vec![vec![Complex64::new(h, 0.0), Complex64::new(signal.value() as f64 * h, 0.0)]];
    let mut coherent = Vec::with_capacity(cutoff + 1);
    let mut c = (-0.5 * alpha * alpha).exp();
    for k in 0..=cutoff {
        if k > 0 {
            c *= alpha / k as f64;
        }
        coherent.push(Complex64::new(c, 0.0));
    }
    factors.extend(std::iter::repeat(coherent).take(n - 1));
    ProductInput::new(factors)
}

/// Truncated Fock-space simulation: both hypotheses are evolved through
/// [`coherent_interferometer`] keeping every pattern with at most `cutoff`
/// photons (exact for those patterns, since photon number is conserved), and
/// each pattern is classified as in the qubit-ancilla measurement.
pub fn coherent_fock_simulation(n: usize, alpha: f64, cutoff: usize) -> Result<CoherentSimulation> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    if cutoff > MAX_OCCUPANCY as usize {
        return Err(Error::InvalidConfig(format!("cutoff {cutoff} exceeds {MAX_OCCUPANCY}")));
    }
    let u = coherent_interferometer(n)?;
    let plus_in = coherent_input(n, alpha, Sign::Plus, cutoff)?;
    let minus_in = coherent_input(n, alpha, Sign::Minus, cutoff)?;
    let d = cutoff as u32;
    let ((plus, minus), bound) = rayon::join(
        || {
            rayon::join(
                || crate::fock::evolve_input_bounded(&plus_in, &u, d),
                || crate::fock::evolve_input_bounded(&minus_in, &u, d),
            )
        },
        || magnitude_bound(&plus_in, &u, d),
    );
    let (plus, minus) = (plus?, minus?);

    let mut patterns = Vec::new();
    let (mut s_plus, mut s_minus, mut mass_plus, mut mass_minus) = (0.0, 0.0, 0.0, 0.0);
    for pattern in enumerate_patterns(n, d) {
        let mono = pattern.monomial();
        let pp = plus.probability(mono);
        let pm = minus.probability(mono);
        let b = DEFAULT_ZERO_REL * bound.coefficient(mono);
        let verdict = classify(pp, pm, b * b * mono.factorial_product())?;
        match verdict {
            Verdict::SuccessPlus => s_plus += pp,
            Verdict::SuccessMinus => s_minus += pm,
            _ => {}
        }
        mass_plus += pp;
        mass_minus += pm;
        patterns.push(CoherentPattern { pattern, p_plus: pp, p_minus: pm, verdict });
    }
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    Ok(CoherentSimulation {
        rates: CoherentRates::new(n, alpha, cutoff, s_plus, s_minus, Method::FockSim),
        patterns,
        truncated_plus: (1.0 - mass_plus).max(0.0),
        truncated_minus: (1.0 - mass_minus).max(0.0),
    })
}

/// Largest deviation between simulated and closed-form pattern probabilities.
pub fn max_pattern_deviation(sim: &CoherentSimulation) -> Result<f64> {
    let alpha = sim.rates.alpha;
    let mut worst = 0.0f64;
    for p in &sim.patterns {
        let want_plus = coherent_pattern_probability(alpha, Sign::Plus, &p.pattern)?;
        let want_minus = coherent_pattern_probability(alpha, Sign::Minus, &p.pattern)?;
        worst = worst.max((p.p_plus - want_plus).abs()).max((p.p_minus - want_minus).abs());
    }
    Ok(worst)
}

/// Outcome of one loading click pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoadingOutcome {
    pub probability: f64,
    /// Normalized memory state `[c_0, c_1]`, absent when the pattern has zero
    /// probability.
    pub state: Option<[Complex64; 2]>,
}

/// Probability of click pattern `(i, j)` when loading `υ|0⟩ + ξ|1⟩` with a
/// coherent ancilla, and the memory state it leaves behind.
pub fn loading_probability(alpha: f64, i: u32, j: u32, upsilon: Complex64, xi: Complex64) -> Result<LoadingOutcome> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Err(Error::InvalidAmplitude("alpha must be nonzero".into()));
    }
    check_signal(upsilon, xi)?;
    let a2 = alpha * alpha;
    let diff = i as f64 - j as f64;
    let c0 = upsilon * alpha;
    let c1 = xi * diff;
    let weight = c0.norm_sqr() + c1.norm_sqr();
    let ln = -a2 - a2.ln() - ln_factorial(i as usize) - ln_factorial(j as usize) + (i + j) as f64 * (0.5 * a2).ln();
    let probability = ln.exp() * weight;
    let state = (weight > 0.0).then(|| {
        let norm = weight.sqrt();
        [c0 / norm, c1 / norm]
    });
    Ok(LoadingOutcome { probability, state })
}

/// `Σ_{i=1}^{cutoff} 2·P(i, i−1)`, the probability that loading succeeds.
pub fn total_loading_probability(alpha: f64, upsilon: Complex64, xi: Complex64, cutoff: usize) -> Result<f64> {
    check_signal(upsilon, xi)?;
    let mut sum = 0.0;
    for i in 1..=cutoff as u32 {
        sum += 2.0 * loading_probability(alpha, i, i - 1, upsilon, xi)?.probability;
    }
    Ok(sum)
}
