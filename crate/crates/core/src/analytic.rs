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

//! Closed-form success rates, in exact rational arithmetic.
//!
//! These are the conjectured general-`n` expressions for QFT and Green Machine
//! interferometers with `|+⟩` ancillas at `φ = 0`. They are independent of the
//! Fock engine and serve as its cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, sector_weight};

/// Largest `n` accepted by [`gamma_bruteforce`].
pub const MAX_BRUTEFORCE_MODES: usize = 16;

/// Which closed form a [`RateFormulaResult`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    SPlus,
    SMinus,
    Overall,
    SectorMinus,
    Gamma,
    SectorProbability,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateFormulaResult {
    pub quantity: Quantity,
    pub n: usize,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    pub photons: Option<usize>,
    #[serde(serialize_with = "ser_fraction")]
    pub value: BigRational,
}

fn ser_fraction<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::fraction_string(r))
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    Ok(())
}

fn check_sector(n: usize, i: usize) -> Result<()> {
    check_n(n)?;
    if i > n {
        return Err(Error::InvalidConfig(format!("photon number {i} exceeds mode count {n}")));
    }
    Ok(())
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `n!/(2^n·((n/2)!)²)` for even `n`, zero for odd `n`.
pub fn s_plus_formula(n: usize) -> Result<BigRational> {
    check_n(n)?;
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let half = factorial(n as u64 / 2);
    Ok(BigRational::new(factorial(n as u64), (BigInt::one() << n) * &half * &half))
}

/// `(n−1)/n`.
pub fn s_minus_formula(n: usize) -> Result<BigRational> {
    check_n(n)?;
    Ok(ratio(n as i64 - 1, n as i64))
}

/// Equal-prior average of [`s_plus_formula`] and [`s_minus_formula`].
/// For odd `n` this is `(n−1)/(2n)`.
pub fn overall_formula(n: usize) -> Result<BigRational> {
    Ok((s_plus_formula(n)? + s_minus_formula(n)?) / BigInt::from(2))
}

/// `4(n−I)·I·C(n,I)/(2^n·n²)`.
pub fn sector_minus_formula(n: usize, i: usize) -> Result<BigRational> {
    check_sector(n, i)?;
    let num = BigInt::from(4 * (n - i) * i) * binomial(n as u64, i as u64);
    Ok(BigRational::new(num, (BigInt::one() << n) * BigInt::from(n * n)))
}

/// Overlap `⟨+_I|−_I⟩ = (n−2I)/n` of the two hypotheses projected on sector `I`.
pub fn gamma(n: usize, i: usize) -> Result<BigRational> {
    check_sector(n, i)?;
    Ok(ratio(n as i64 - 2 * i as i64, n as i64))
}

/// `C(n,I)/2^n`.
pub fn sector_probability(n: usize, i: usize) -> Result<BigRational> {
    check_sector(n, i)?;
    Ok(sector_weight(n, i))
}

/// [`gamma`] by enumerating the `C(n,I)` occupation vectors of sector `I`.
/// The two projected states share every amplitude except for the factor
/// `(−1)^{i_1}` from the signal mode.
pub fn gamma_bruteforce(n: usize, i: usize) -> Result<BigRational> {
    check_sector(n, i)?;
    if n > MAX_BRUTEFORCE_MODES {
        return Err(Error::InvalidConfig(format!(
            "brute-force enumeration supports at most {MAX_BRUTEFORCE_MODES} modes, got {n}"
        )));
    }
    let mut overlap = 0i64;
    let mut count = 0i64;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        count += 1;
        overlap += if mask & 1 == 1 { -1 } else { 1 };
    }
    Ok(ratio(overlap, count))
}

/// Every closed form for mode count `n`.
pub fn formula_summary(n: usize) -> Result<Vec<RateFormulaResult>> {
    let total = |quantity, value| RateFormulaResult { quantity, n, photons: None, value };
    let mut out = vec![
        total(Quantity::SPlus, s_plus_formula(n)?),
        total(Quantity::SMinus, s_minus_formula(n)?),
        total(Quantity::Overall, overall_formula(n)?),
    ];
    for i in 0..=n {
        let sector = |quantity, value| RateFormulaResult { quantity, n, photons: Some(i), value };
        out.push(sector(Quantity::SectorProbability, sector_probability(n, i)?));
        out.push(sector(Quantity::SectorMinus, sector_minus_formula(n, i)?));
        out.push(sector(Quantity::Gamma, gamma(n, i)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn totals() {
        assert_eq!(s_plus_formula(8).unwrap(), ratio(35, 128));
        assert_eq!(s_plus_formula(5).unwrap(), BigRational::zero());
        assert_eq!(s_plus_formula(2).unwrap(), ratio(1, 2));
        assert_eq!(s_minus_formula(4).unwrap(), ratio(3, 4));
        assert_eq!(s_minus_formula(10).unwrap(), ratio(9, 10));
        assert_eq!(overall_formula(8).unwrap(), ratio(147, 256));
        assert_eq!(overall_formula(6).unwrap(), ratio(55, 96));
        assert_eq!(overall_formula(7).unwrap(), ratio(3, 7));
    }

    #[test]
    fn sectors() {
        assert_eq!(sector_minus_formula(4, 1).unwrap(), ratio(3, 16));
        assert_eq!(sector_minus_formula(4, 2).unwrap(), ratio(3, 8));
        assert_eq!(sector_minus_formula(4, 0).unwrap(), BigRational::zero());
        assert_eq!(sector_probability(4, 1).unwrap(), ratio(1, 4));
        assert_eq!(sector_probability(2, 0).unwrap(), ratio(1, 4));
        assert_eq!(gamma(4, 2).unwrap(), BigRational::zero());
        assert_eq!(gamma(4, 1).unwrap(), ratio(1, 2));
        assert_eq!(gamma(12, 3).unwrap(), ratio(1, 2));
        assert_eq!(gamma_bruteforce(2, 1).unwrap(), BigRational::zero());
        assert_eq!(gamma_bruteforce(3, 1).unwrap(), ratio(1, 3));
    }

    #[test]
    fn s_minus_is_sum_of_sectors() {
        for n in 2..=14 {
            let sum = (0..=n).fold(BigRational::zero(), |a, i| a + sector_minus_formula(n, i).unwrap());
            assert_eq!(sum, s_minus_formula(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(matches!(s_plus_formula(1), Err(Error::InvalidModeCount(1))));
        assert!(gamma(4, 5).is_err());
        assert!(gamma_bruteforce(17, 3).is_err());
    }

    #[test]
    fn summary_has_every_sector() {
        let s = formula_summary(4).unwrap();
        assert_eq!(s.len(), 3 + 3 * 5);
        assert_eq!(serde_json::to_value(&s[2]).unwrap()["value"], "9/16");
    }

    proptest! {
        #[test]
        fn gamma_matches_enumeration(n in 2usize..=12, frac in 0.0f64..=1.0) {
            let i = (frac * n as f64).round() as usize;
            prop_assert_eq!(gamma(n, i).unwrap(), gamma_bruteforce(n, i).unwrap());
        }

        #[test]
        fn half_sector_is_perfect(k in 1usize..=10) {
            let n = 2 * k;
            prop_assert_eq!(sector_minus_formula(n, k).unwrap(), sector_probability(n, k).unwrap());
        }

        #[test]
        fn sector_probabilities_sum_to_one(n in 2usize..=20) {
            let sum = (0..=n).fold(BigRational::zero(), |a, i| a + sector_probability(n, i).unwrap());
            prop_assert!(sum.is_one());
        }
    }
}
