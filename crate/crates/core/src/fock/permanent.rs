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
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const MAX_PERMANENT_DIM: usize = 20;

/// Permanent by Ryser's formula, visiting column subsets in Gray-code order so
/// each step updates the row sums with a single column: `O(2^m·m)`.
///
/// The empty matrix has permanent 1.
pub fn permanent(m: &DMatrix<Complex64>) -> Result<Complex64> {
    let dim = m.nrows();
    if m.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: m.ncols() });
    }
    if dim == 0 {
        return Ok(Complex64::one());
    }
    if dim > MAX_PERMANENT_DIM {
        return Err(Error::MatrixTooLarge(dim));
    }
    let mut row_sums = vec![Complex64::zero(); dim];
    let mut total = Complex64::zero();
    let mut gray = 0usize;
    for k in 1usize..(1 << dim) {
        let col = k.trailing_zeros() as usize;
        gray ^= 1 << col;
        let adding = gray & (1 << col) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if adding {
                *s += m[(i, col)];
            } else {
                *s -= m[(i, col)];
            }
        }
        let prod: Complex64 = row_sums.iter().product();
        if gray.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if dim % 2 == 0 { total } else { -total })
}

/// Permanent straight from the definition, summing over all permutations.
/// Only for cross-checking small matrices.
pub fn permanent_naive(m: &DMatrix<Complex64>) -> Complex64 {
    fn go(m: &DMatrix<Complex64>, row: usize, used: &mut [bool]) -> Complex64 {
        let n = m.nrows();
        if row == n {
            return Complex64::one();
        }
        let mut acc = Complex64::zero();
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                acc += m[(row, col)] * go(m, row + 1, used);
                used[col] = false;
            }
        }
        acc
    }
    let mut used = vec![false; m.ncols()];
    go(m, 0, &mut used)
}
