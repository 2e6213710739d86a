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

//! Exact arithmetic helpers shared by the exact backends.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

/// An element `a + b·√2` of the field ℚ(√2).
///
/// Products of balanced beam splitters stay inside this field, which is what
/// lets a beam splitter mesh be composed without rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootTwo {
    pub rational: Rational64,
    pub surd: Rational64,
}

impl RootTwo {
    pub fn new(rational: Rational64, surd: Rational64) -> Self {
        Self { rational, surd }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::new(Rational64::from_integer(v), Rational64::zero())
    }

    /// `1/√2 = √2/2`.
    pub fn frac_1_sqrt_2() -> Self {
        Self::new(Rational64::zero(), Rational64::new(1, 2))
    }

    /// `2^(-k/2)`.
    pub fn inv_sqrt_pow2(k: u32) -> Self {
        let half = Rational64::new(1, 1i64 << (k / 2));
        if k % 2 == 0 {
            Self::new(half, Rational64::zero())
        } else {
            Self::new(Rational64::zero(), half / 2)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let s = self.surd.to_f64().unwrap_or(f64::NAN);
        r + s * std::f64::consts::SQRT_2
    }
}

impl Zero for RootTwo {
    fn zero() -> Self {
        Self::from_integer(0)
    }

    fn is_zero(&self) -> bool {
        RootTwo::is_zero(self)
    }
}

impl One for RootTwo {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl Add for RootTwo {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rational + rhs.rational, self.surd + rhs.surd)
    }
}

impl Sub for RootTwo {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rational - rhs.rational, self.surd - rhs.surd)
    }
}

impl Neg for RootTwo {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational, -self.surd)
    }
}

impl Mul for RootTwo {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.rational * rhs.rational + self.surd * rhs.surd * 2,
            self.rational * rhs.surd + self.surd * rhs.rational,
        )
    }
}

impl fmt::Display for RootTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.surd.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}√2", self.surd),
            (false, false) => write!(f, "{} + {}√2", self.rational, self.surd),
        }
    }
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * v)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k) / 2^n`, the probability that exactly `k` of `n` single-rail
/// qubits in `|±⟩` carry a photon.
pub fn sector_weight(n: usize, k: usize) -> BigRational {
    BigRational::new(binomial(n as u64, k as u64), BigInt::one() << n)
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `"num/den"` (or just `"num"` when the denominator is 1).
pub fn fraction_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"num/den"` or `"num"` back into a rational.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
