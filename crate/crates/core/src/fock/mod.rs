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

//! Multimode Fock states as creation-operator polynomials.
//!
//! A state `Σ c_m Π_k (b_k†)^{m_k} |0⟩` is stored as a sparse map from the
//! exponent vector `m` to `c`. The probability of detecting the click pattern
//! `m` is `|c_m|²·Π m_k!`.

mod monomial;
mod oracle;
mod patterns;
mod permanent;
mod polynomial;

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use monomial::{ClickPattern, Monomial, MAX_MODES, MAX_OCCUPANCY};
pub use oracle::amplitude_oracle;
pub use patterns::{enumerate_patterns, PatternIter};
pub(crate) use polynomial::{evolve_input_bounded, magnitude_bound};
pub use permanent::{permanent, permanent_naive, MAX_PERMANENT_DIM};
pub use polynomial::{
    evolve, evolve_input, expand_exact, input_polynomial, input_state, pattern_probabilities,
    sector_masses, Coefficient, ExactPolynomial, FockPolynomial, Polynomial, ProductInput,
};

/// Sign of a `|±_φ⟩` single-rail qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Parses a run of `+`/`-` characters, e.g. `"+-++"`.
    pub fn parse_many(s: &str) -> Result<Vec<Sign>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::InvalidConfig(format!("invalid sign '{other}'"))),
            })
            .collect()
    }

    pub fn format_many(signs: &[Sign]) -> String {
        signs.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::InvalidConfig(format!("invalid sign '{other}'"))),
        }
    }
}

/// Input configuration: one `|±_φ⟩` qubit per input mode.
///
/// `signs[0]` is the signal qubit under the hypothesis being simulated; the
/// rest are the ancillas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AncillaSpec {
    signs: Vec<Sign>,
    phi: f64,
}

impl AncillaSpec {
    /// `phi` is reduced into `[0, 2π)`.
    pub fn new(signs: Vec<Sign>, phi: f64) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidModeCount(0));
        }
        if signs.len() > MAX_MODES {
            return Err(Error::InvalidConfig(format!("at most {MAX_MODES} modes are supported")));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidConfig(format!("phi must be finite, got {phi}")));
        }
        let phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        let phi = if phi >= TAU { 0.0 } else { phi };
        Ok(Self { signs, phi })
    }

    /// Signal qubit with sign `signal`, followed by `ancillas`.
    pub fn hypothesis(signal: Sign, ancillas: &[Sign], phi: f64) -> Result<Self> {
        let mut signs = Vec::with_capacity(ancillas.len() + 1);
        signs.push(signal);
        signs.extend_from_slice(ancillas);
        Self::new(signs, phi)
    }

    pub fn all_plus(n: usize, phi: f64) -> Result<Self> {
        Self::new(vec![Sign::Plus; n], phi)
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn flipped(&self) -> Self {
        Self { signs: self.signs.iter().map(|s| s.flipped()).collect(), phi: self.phi }
    }
}
