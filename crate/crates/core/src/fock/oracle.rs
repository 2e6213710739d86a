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

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::{permanent, AncillaSpec, ClickPattern};
use crate::error::{Error, Result};
use crate::unitaries::Interferometer;

/// Amplitude `⟨pattern|U|input⟩` computed from permanents, independently of
/// the polynomial expansion.
///
/// Each subset `S` of input modes with `|S| = I` photons contributes
/// `Π_{j∈S} s_j e^{iφ} · Perm(U[S → pattern])`, where the submatrix takes rows
/// `S` and repeats output column `k` `i_k` times. The sum is scaled by
/// `2^{-n/2}/√(Π i_k!)`.
pub fn amplitude_oracle(u: &Interferometer, spec: &AncillaSpec, pattern: &ClickPattern) -> Result<Complex64> {
    let n = u.n();
    if pattern.n() > n {
        return Err(Error::DimensionMismatch { expected: n, got: pattern.n() });
    }
    if spec.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: spec.n() });
    }
    let photons = pattern.total() as usize;
    if photons > n {
        return Ok(Complex64::zero());
    }
    let columns: Vec<usize> = pattern
        .occupancies()
        .iter()
        .enumerate()
        .flat_map(|(k, &count)| std::iter::repeat(k).take(count as usize))
        .collect();
    let phase = Complex64::from_polar(1.0, spec.phi() * photons as f64);
    let mut sum = Complex64::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != photons {
            continue;
        }
        let rows: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let sign: i64 = rows.iter().map(|&j| spec.signs()[j].value()).product();
        let sub = DMatrix::from_fn(photons, photons, |a, b| u.entries()[(rows[a], columns[b])]);
        sum += permanent(&sub)? * sign as f64;
    }
    let norm = 2f64.powf(-(n as f64) / 2.0) / pattern.monomial().factorial_product().sqrt();
    Ok(sum * phase * norm)
}
