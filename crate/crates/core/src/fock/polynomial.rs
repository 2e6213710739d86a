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

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{AncillaSpec, ClickPattern, Monomial, MAX_MODES, MAX_OCCUPANCY};
use crate::error::{Error, Result};
use crate::unitaries::{Interferometer, SignMatrix};

/// Ring the expansion engine works over.
pub trait Coefficient: Copy + Zero + One + Add<Output = Self> + Mul<Output = Self> + Send + Sync {}

impl Coefficient for Complex64 {}
impl Coefficient for f64 {}
impl Coefficient for i64 {}

/// Sparse polynomial in `n` creation operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    n: usize,
    terms: FxHashMap<Monomial, C>,
}

/// Floating-point state polynomial.
pub type FockPolynomial = Polynomial<Complex64>;

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: FxHashMap::default() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut terms = FxHashMap::default();
        terms.insert(Monomial::ONE, c);
        Self { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> C {
        self.terms.get(&m).copied().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, C)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Terms in canonical pattern order.
    pub fn sorted_terms(&self) -> Vec<(ClickPattern, C)> {
        let mut v: Vec<_> =
            self.terms.iter().map(|(m, c)| (ClickPattern::from_monomial(*m, self.n), *c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        let slot = self.terms.entry(m).or_insert_with(C::zero);
        *slot = *slot + c;
    }

    pub fn scale(&self, s: C) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, *c * s)).collect() }
    }

    /// Multiplies by the linear form `Σ_k form[k].1 · b_{form[k].0}†`, dropping
    /// products above `max_degree`.
    pub fn mul_linear(&self, form: &[(usize, C)], max_degree: u32) -> Self {
        let mut out = FxHashMap::with_capacity_and_hasher(self.terms.len() * form.len().max(1), Default::default());
        for (&m, &c) in &self.terms {
            if m.degree() >= max_degree {
                continue;
            }
            for &(mode, u) in form {
                let slot = out.entry(m.bump(mode)).or_insert_with(C::zero);
                *slot = *slot + c * u;
            }
        }
        Self { n: self.n, terms: out }
    }

    /// Multiplies by `f(L) = Σ_e factor[e]·L^e`, with `L` the linear form.
    ///
    /// The powers of `L` are applied one at a time, pruning at `max_degree`;
    /// a monomial never loses degree, so pruned terms cannot come back.
    pub fn mul_factor(&self, factor: &[C], form: &[(usize, C)], max_degree: u32) -> Self {
        let mut acc = match factor.first() {
            Some(c0) => self.scale(*c0),
            None => return Self::zero(self.n),
        };
        let mut power = self.clone();
        for &c in &factor[1..] {
            power = power.mul_linear(form, max_degree);
            if power.is_empty() {
                break;
            }
            if c.is_zero() {
                continue;
            }
            for (&m, &v) in &power.terms {
                acc.add_term(m, v * c);
            }
        }
        acc
    }

    fn retain_nonzero(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }
}

impl FockPolynomial {
    /// Drops coefficients below `rel · max|c|`.
    pub fn cleanup(&mut self, rel: f64) {
        let max = self.terms.values().map(|c| c.norm()).fold(0.0, f64::max);
        let cut = rel * max;
        self.terms.retain(|_, c| c.norm() >= cut && !c.is_zero());
    }

    /// `Σ |c|²·Π m_k!`, the squared norm of the state.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|(m, c)| c.norm_sqr() * m.factorial_product()).sum()
    }

    /// Probability of click pattern `m`.
    pub fn probability(&self, m: Monomial) -> f64 {
        self.coefficient(m).norm_sqr() * m.factorial_product()
    }

    /// Amplitude `⟨m|ψ⟩ = c·√(Π m_k!)` on the normalized Fock state.
    pub fn amplitude(&self, m: Monomial) -> Complex64 {
        self.coefficient(m) * m.factorial_product().sqrt()
    }
}

/// Product-form input state `Π_j f_j(a_j†) |0⟩`, one univariate factor per mode.
///
/// Every input this crate deals with (qubits in `|±_φ⟩`, truncated coherent
/// states) has this form, and keeping it factored is what makes evolution
/// through an interferometer cheap.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductInput<C> {
    factors: Vec<Vec<C>>,
}

impl<C: Coefficient> ProductInput<C> {
    pub fn new(factors: Vec<Vec<C>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidModeCount(0));
        }
        if factors.len() > MAX_MODES {
            return Err(Error::InvalidConfig(format!("at most {MAX_MODES} modes are supported")));
        }
        Ok(Self { factors })
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<C>] {
        &self.factors
    }

    /// Highest total photon number the product can carry.
    pub fn degree_bound(&self) -> u32 {
        self.factors.iter().map(|f| f.len().saturating_sub(1) as u32).sum()
    }

    /// Multiplies the factors out in the input creation operators.
    pub fn expand(&self) -> Polynomial<C> {
        let n = self.n();
        let bound = self.degree_bound();
        let mut poly = Polynomial::constant(n, C::one());
        for (mode, factor) in self.factors.iter().enumerate() {
            poly = poly.mul_factor(factor, &[(mode, C::one())], bound);
        }
        poly.retain_nonzero();
        poly
    }

    /// Substitutes `a_j† ↦ Σ_k rows[j][k]·b_k†` factor by factor.
    pub fn evolve_rows(&self, rows: &[Vec<(usize, C)>], max_degree: u32) -> Polynomial<C> {
        let n = self.n();
        debug_assert_eq!(rows.len(), n);
        let mut poly = Polynomial::constant(n, C::one());
        for (factor, form) in self.factors.iter().zip(rows) {
            poly = poly.mul_factor(factor, form, max_degree);
        }
        poly
    }
}

/// `2^{-n/2}·Π_j (1 + s_j e^{iφ} a_j†)`, still factored.
pub fn input_state(spec: &AncillaSpec) -> ProductInput<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phase = Complex64::from_polar(1.0, spec.phi());
    let factors = spec
        .signs()
        .iter()
        .map(|s| vec![Complex64::new(h, 0.0), phase * (s.value() as f64 * h)])
        .collect();
    ProductInput { factors }
}

/// The input state of `spec` expanded into its `2^n` monomials.
pub fn input_polynomial(spec: &AncillaSpec) -> FockPolynomial {
    input_state(spec).expand()
}

fn float_rows(u: &Interferometer) -> Vec<Vec<(usize, Complex64)>> {
    let n = u.n();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| (k, u.entries()[(j, k)]))
                .filter(|(_, z)| !z.is_zero())
                .collect()
        })
        .collect()
}

/// Relative cleanup threshold applied after floating-point expansion.
pub const CLEANUP_REL: f64 = 1e-14;

/// Evolves a product input through `u` (the fast path).
pub fn evolve_input(input: &ProductInput<Complex64>, u: &Interferometer) -> Result<FockPolynomial> {
    evolve_input_bounded(input, u, input.degree_bound())
}

pub(crate) fn evolve_input_bounded(
    input: &ProductInput<Complex64>,
    u: &Interferometer,
    max_degree: u32,
) -> Result<FockPolynomial> {
    if input.n() != u.n() {
        return Err(Error::DimensionMismatch { expected: u.n(), got: input.n() });
    }
    check_degree(max_degree)?;
    let mut out = input.evolve_rows(&float_rows(u), max_degree);
    out.cleanup(CLEANUP_REL);
    Ok(out)
}

/// Real magnitude bound for every output coefficient: the same expansion with
/// all entries replaced by their moduli. Round-off in a coefficient is a small
/// multiple of machine epsilon times this bound.
pub(crate) fn magnitude_bound(
    input: &ProductInput<Complex64>,
    u: &Interferometer,
    max_degree: u32,
) -> Polynomial<f64> {
    let abs_input = ProductInput {
        factors: input.factors.iter().map(|f| f.iter().map(|c| c.norm()).collect()).collect(),
    };
    let rows: Vec<Vec<(usize, f64)>> =
        float_rows(u).into_iter().map(|r| r.into_iter().map(|(k, z)| (k, z.norm())).collect()).collect();
    abs_input.evolve_rows(&rows, max_degree)
}

fn check_degree(max_degree: u32) -> Result<()> {
    if max_degree > MAX_OCCUPANCY {
        return Err(Error::InvalidConfig(format!(
            "total photon number {max_degree} exceeds the supported {MAX_OCCUPANCY}"
        )));
    }
    Ok(())
}

/// Evolves an arbitrary polynomial through `u` by substituting every input
/// creation operator monomial by monomial. Slower than [`evolve_input`] but
/// makes no assumption about the input.
pub fn evolve(poly: &FockPolynomial, u: &Interferometer) -> Result<FockPolynomial> {
    if poly.n() != u.n() {
        return Err(Error::DimensionMismatch { expected: u.n(), got: poly.n() });
    }
    let n = poly.n();
    let bound = poly.max_degree();
    check_degree(bound)?;
    let rows = float_rows(u);
    let mut out = FockPolynomial::zero(n);
    for (m, c) in poly.terms() {
        let mut term = FockPolynomial::constant(n, c);
        for (mode, form) in rows.iter().enumerate() {
            for _ in 0..m.get(mode) {
                term = term.mul_linear(form, bound);
            }
        }
        for (mm, cc) in term.terms() {
            out.add_term(mm, cc);
        }
    }
    out.cleanup(CLEANUP_REL);
    Ok(out)
}

/// Click-pattern probabilities `|c|²·Π m_k!` in canonical order. Zero
/// coefficients are skipped.
pub fn pattern_probabilities(poly: &FockPolynomial) -> BTreeMap<ClickPattern, f64> {
    poly.terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (ClickPattern::from_monomial(m, poly.n()), c.norm_sqr() * m.factorial_product()))
        .collect()
}

/// Total probability per photon number `0..=max`.
pub fn sector_masses(probabilities: &BTreeMap<ClickPattern, f64>) -> Vec<f64> {
    let max = probabilities.keys().map(|p| p.total() as usize).max().unwrap_or(0);
    let mut out = vec![0.0; max + 1];
    for (p, v) in probabilities {
        out[p.total() as usize] += v;
    }
    out
}

/// Output polynomial of the exact backend.
///
/// For a sign interferometer `U = H/√m` and an input `2^{-n/2}·Π(1 + s_j a_j†)`
/// every degree-`d` coefficient is an integer times `m^{-d/2}·2^{-n/2}`. Only
/// the integers are stored, so click probabilities come out as exact rationals
/// `N²·Π k! / (m^d·2^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPolynomial {
    numerators: Polynomial<i64>,
    matrix_scale: u64,
}

impl ExactPolynomial {
    pub fn n(&self) -> usize {
        self.numerators.n()
    }

    pub fn numerators(&self) -> &Polynomial<i64> {
        &self.numerators
    }

    /// The integer `N` such that the coefficient is `N·m^{-d/2}·2^{-n/2}`.
    pub fn numerator(&self, m: Monomial) -> i64 {
        self.numerators.coefficient(m)
    }

    /// `N²·Π k!`, the probability numerator over [`Self::denominator`].
    pub fn probability_numerator(&self, m: Monomial) -> u128 {
        let num = self.numerator(m).unsigned_abs() as u128;
        num * num * m.factorial_product_int()
    }

    /// `m^d·2^n` for photon number `d`.
    pub fn denominator(&self, degree: u32) -> u128 {
        (self.matrix_scale as u128).pow(degree) << self.n()
    }

    pub fn probability(&self, m: Monomial) -> BigRational {
        BigRational::new(
            BigInt::from(self.probability_numerator(m)),
            BigInt::from(self.denominator(m.degree())),
        )
    }

    /// Floating-point view of the same state.
    pub fn to_float(&self) -> FockPolynomial {
        let n = self.n();
        let global = 2f64.powf(-(n as f64) / 2.0);
        let inv = 1.0 / (self.matrix_scale as f64).sqrt();
        FockPolynomial::from_terms(
            n,
            self.numerators.terms().map(|(m, k)| {
                (m, Complex64::new(k as f64 * inv.powi(m.degree() as i32) * global, 0.0))
            }),
        )
    }
}

/// Exact expansion of `Π_j (1 + s_j a_j†)` through a sign interferometer, with
/// `φ = 0`.
pub fn expand_exact(signs: &[super::Sign], matrix: &SignMatrix) -> Result<ExactPolynomial> {
    let n = matrix.n();
    if signs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: signs.len() });
    }
    let input = ProductInput::new(signs.iter().map(|s| vec![1i64, s.value()]).collect())?;
    let rows: Vec<Vec<(usize, i64)>> =
        (0..n).map(|j| matrix.row(j).iter().enumerate().map(|(k, &s)| (k, s as i64)).collect()).collect();
    let mut numerators = input.evolve_rows(&rows, n as u32);
    numerators.retain_nonzero();
    Ok(ExactPolynomial { numerators, matrix_scale: n as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Sign;
    use crate::unitaries::{build_green_machine, build_qft};
    use approx::assert_abs_diff_eq;

    fn mono(occ: &[u32]) -> Monomial {
        Monomial::from_occupancies(occ)
    }

    #[test]
    fn two_mode_input_polynomials() {
        let plus = input_polynomial(&AncillaSpec::new(vec![Sign::Plus, Sign::Plus], 0.0).unwrap());
        assert_eq!(plus.len(), 4);
        for occ in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert_abs_diff_eq!(plus.coefficient(mono(&occ)).re, 0.5, epsilon = 1e-15);
        }
        let minus = input_polynomial(&AncillaSpec::new(vec![Sign::Minus, Sign::Plus], 0.0).unwrap());
        let want = [([0, 0], 0.5), ([1, 0], -0.5), ([0, 1], 0.5), ([1, 1], -0.5)];
        for (occ, v) in want {
            assert_abs_diff_eq!(minus.coefficient(mono(&occ)).re, v, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_mode_input_is_normalised() {
        for phi in [0.0, 1.0, 4.0] {
            for s in [Sign::Plus, Sign::Minus] {
                let p = input_polynomial(&AncillaSpec::new(vec![s], phi).unwrap());
                assert_abs_diff_eq!(p.norm_sqr(), 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn balanced_splitter_output() {
        let spec = AncillaSpec::all_plus(2, 0.0).unwrap();
        let u = build_green_machine(2).unwrap();
        let out = evolve_input(&input_state(&spec), &u).unwrap();
        // (1/2)(1 + √2 b1 + (b1² − b2²)/2)
        assert_abs_diff_eq!(out.coefficient(mono(&[0, 0])).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(out.coefficient(mono(&[1, 0])).re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(out.coefficient(mono(&[2, 0])).re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(out.coefficient(mono(&[0, 2])).re, -0.25, epsilon = 1e-15);
        assert_eq!(out.len(), 4, "b2 and b1·b2 terms cancel and are cleaned up");

        let probs = pattern_probabilities(&out);
        let p = |occ: [u32; 2]| probs.get(&ClickPattern::new(occ.to_vec())).copied().unwrap_or(0.0);
        assert_abs_diff_eq!(p([1, 0]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p([2, 0]), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(p([0, 2]), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(p([0, 0]), 0.25, epsilon = 1e-15);
        assert_eq!(p([0, 1]), 0.0);
    }

    #[test]
    fn minus_hypothesis_through_splitter() {
        // (1/2)(1 − √2 b2 − (b1² − b2²)/2)
        let spec = AncillaSpec::new(vec![Sign::Minus, Sign::Plus], 0.0).unwrap();
        let out = evolve_input(&input_state(&spec), &build_green_machine(2).unwrap()).unwrap();
        assert_abs_diff_eq!(out.coefficient(mono(&[0, 1])).re, -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(out.coefficient(mono(&[2, 0])).re, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(out.coefficient(mono(&[0, 2])).re, 0.25, epsilon = 1e-15);
        assert_eq!(out.coefficient(mono(&[1, 0])), Complex64::zero());
    }

    #[test]
    fn identity_leaves_polynomial_unchanged() {
        let spec = AncillaSpec::new(vec![Sign::Minus, Sign::Plus, Sign::Plus], 0.3).unwrap();
        let input = input_polynomial(&spec);
        let out = evolve(&input, &Interferometer::identity(3)).unwrap();
        assert_eq!(out.len(), input.len());
        for (m, c) in input.terms() {
            assert!((out.coefficient(m) - c).norm() < 1e-15);
        }
    }

    #[test]
    fn gm4_minus_cubic_terms() {
        // the d1³, d1·d_k², d2·d3·d4 part of the |−+++⟩ output shared with |++++⟩
        let spec = AncillaSpec::new(vec![Sign::Minus, Sign::Plus, Sign::Plus, Sign::Plus], 0.0).unwrap();
        let plus = AncillaSpec::all_plus(4, 0.0).unwrap();
        let u = build_green_machine(4).unwrap();
        let out = evolve_input(&input_state(&spec), &u).unwrap();
        let out_plus = evolve_input(&input_state(&plus), &u).unwrap();
        let q = |p: &FockPolynomial, occ: [u32; 4]| p.coefficient(mono(&occ)).re;
        assert_abs_diff_eq!(q(&out, [3, 0, 0, 0]), -1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out, [1, 2, 0, 0]), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out, [1, 0, 2, 0]), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out, [1, 0, 0, 2]), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out, [0, 1, 1, 1]), -1.0 / 8.0, epsilon = 1e-15);
        // and the |++++⟩ cubic part is exactly twice (with opposite sign)
        assert_abs_diff_eq!(q(&out_plus, [3, 0, 0, 0]), 1.0 / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out_plus, [1, 2, 0, 0]), -1.0 / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q(&out_plus, [0, 1, 1, 1]), 1.0 / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn general_and_product_evolution_agree() {
        for n in 2..=5 {
            let signs: Vec<Sign> = (0..n).map(|j| if j % 2 == 0 { Sign::Minus } else { Sign::Plus }).collect();
            let spec = AncillaSpec::new(signs, 0.9).unwrap();
            let u = build_qft(n).unwrap();
            let fast = evolve_input(&input_state(&spec), &u).unwrap();
            let slow = evolve(&input_polynomial(&spec), &u).unwrap();
            for (m, c) in fast.terms().chain(slow.terms()) {
                let d = (fast.coefficient(m) - slow.coefficient(m)).norm();
                assert!(d < 1e-13 || d < 1e-13 * c.norm(), "n={n} diff {d}");
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let spec = AncillaSpec::all_plus(3, 0.0).unwrap();
        let u = build_green_machine(4).unwrap();
        assert!(matches!(evolve_input(&input_state(&spec), &u), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(evolve(&input_polynomial(&spec), &u), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_polynomial_has_no_patterns() {
        assert!(pattern_probabilities(&FockPolynomial::zero(3)).is_empty());
    }

    #[test]
    fn gm4_two_photon_sector() {
        let u = build_green_machine(4).unwrap();
        let out = evolve_input(&input_state(&AncillaSpec::all_plus(4, 0.0).unwrap()), &u).unwrap();
        let masses = sector_masses(&pattern_probabilities(&out));
        assert_abs_diff_eq!(masses[2], 3.0 / 8.0, epsilon = 1e-14);
    }

    #[test]
    fn exact_matches_float() {
        for n in [2usize, 4, 8] {
            let u = build_green_machine(n).unwrap();
            let mut signs = vec![Sign::Plus; n];
            signs[0] = Sign::Minus;
            let exact = expand_exact(&signs, u.sign_matrix().unwrap()).unwrap();
            let float = evolve_input(&input_state(&AncillaSpec::new(signs, 0.0).unwrap()), &u).unwrap();
            let as_float = exact.to_float();
            for (m, c) in float.terms() {
                assert!((as_float.coefficient(m) - c).norm() < 1e-14);
            }
            for (m, c) in as_float.terms() {
                assert!((float.coefficient(m) - c).norm() < 1e-14);
            }
            let total: BigRational = exact.numerators().terms().map(|(m, _)| exact.probability(m)).sum();
            assert_eq!(total, BigRational::from_integer(1.into()), "n={n}");
        }
    }

    #[test]
    fn coherent_factor_expansion() {
        // higher-degree factors: (1 + a + a²/2) in one mode through identity
        let input = ProductInput::new(vec![vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]])
            .unwrap();
        let p = input.expand();
        assert_eq!(p.len(), 3);
        assert_abs_diff_eq!(p.coefficient(mono(&[2])).re, 0.5);
        let out = evolve_input(&input, &Interferometer::identity(1)).unwrap();
        assert_abs_diff_eq!(out.norm_sqr(), 1.0 + 1.0 + 0.25 * 2.0);
    }
}
