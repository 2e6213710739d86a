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

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported mode count.
pub const MAX_MODES: usize = 16;
/// Largest photon number a single mode can hold in a [`Monomial`].
pub const MAX_OCCUPANCY: u32 = 255;

const BITS: usize = 8;
const MASK: u128 = 0xff;

/// Exponent vector of a creation-operator monomial, packed one byte per mode.
///
/// The packing makes a monomial a single `u128`, so collecting like terms is
/// one hash lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    /// The empty monomial (vacuum).
    pub const ONE: Monomial = Monomial(0);

    /// Occupancy of 0-based `mode`.
    #[inline]
    pub fn get(self, mode: usize) -> u32 {
        ((self.0 >> (BITS * mode)) & MASK) as u32
    }

    /// Multiplies by one more creation operator on 0-based `mode`.
    #[inline]
    pub fn bump(self, mode: usize) -> Self {
        Monomial(self.0 + (1u128 << (BITS * mode)))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0.to_le_bytes().iter().map(|b| *b as u32).sum()
    }

    pub fn from_occupancies(occ: &[u32]) -> Self {
        assert!(occ.len() <= MAX_MODES, "at most {MAX_MODES} modes");
        let mut packed = 0u128;
        for (mode, &k) in occ.iter().enumerate() {
            assert!(k <= MAX_OCCUPANCY, "occupancy {k} exceeds {MAX_OCCUPANCY}");
            packed |= (k as u128) << (BITS * mode);
        }
        Monomial(packed)
    }

    pub fn occupancies(self, n: usize) -> Vec<u32> {
        (0..n).map(|m| self.get(m)).collect()
    }

    /// `Π_k m_k!` as a float.
    pub fn factorial_product(self) -> f64 {
        self.0
            .to_le_bytes()
            .iter()
            .map(|&b| (2..=b as u32).map(f64::from).product::<f64>())
            .product()
    }

    /// `Π_k m_k!` as an integer; exact for total degree up to 34.
    pub fn factorial_product_int(self) -> u128 {
        self.0
            .to_le_bytes()
            .iter()
            .map(|&b| (2..=b as u128).product::<u128>())
            .product()
    }
}

/// A click pattern: the photon count detected at each output mode.
///
/// Patterns sort by total photon number first, then lexicographically, which
/// is the order every report uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClickPattern {
    occupancies: Vec<u32>,
}

impl ClickPattern {
    pub fn new(occupancies: Vec<u32>) -> Self {
        Self { occupancies }
    }

    pub fn vacuum(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.occupancies.len()
    }

    pub fn occupancies(&self) -> &[u32] {
        &self.occupancies
    }

    pub fn total(&self) -> u32 {
        self.occupancies.iter().sum()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_occupancies(&self.occupancies)
    }

    pub fn from_monomial(m: Monomial, n: usize) -> Self {
        Self::new(m.occupancies(n))
    }

    /// Space-separated occupancies, e.g. `"1 0 2"`.
    pub fn to_field(&self) -> String {
        self.occupancies.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl Ord for ClickPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.occupancies.cmp(&other.occupancies))
    }
}

impl PartialOrd for ClickPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClickPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩", self.to_field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packing_basics() {
        let m = Monomial::ONE.bump(0).bump(3).bump(3);
        assert_eq!(m.get(0), 1);
        assert_eq!(m.get(3), 2);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.factorial_product(), 2.0);
        assert_eq!(m.occupancies(4), vec![1, 0, 0, 2]);
    }

    #[test]
    fn pattern_order_is_by_total_then_lex() {
        let mut v = vec![
            ClickPattern::new(vec![2, 0]),
            ClickPattern::new(vec![0, 1]),
            ClickPattern::new(vec![1, 0]),
            ClickPattern::new(vec![0, 0]),
        ];
        v.sort();
        let fields: Vec<_> = v.iter().map(|p| p.to_field()).collect();
        assert_eq!(fields, vec!["0 0", "0 1", "1 0", "2 0"]);
    }

    proptest! {
        #[test]
        fn pack_unpack(occ in proptest::collection::vec(0u32..=4, 1..=8)) {
            let m = Monomial::from_occupancies(&occ);
            prop_assert_eq!(m.occupancies(occ.len()), occ.clone());
            prop_assert_eq!(m.degree(), occ.iter().sum::<u32>());
            let fact: u128 = occ.iter().map(|&k| (2..=k as u128).product::<u128>()).product();
            prop_assert_eq!(m.factorial_product_int(), fact);
        }
    }
}
