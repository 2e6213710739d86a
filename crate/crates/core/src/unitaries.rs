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

//! Interferometer unitaries.
//!
//! An interferometer maps input creation operators to output ones,
//! `a_j† ↦ Σ_k U[j][k] b_k†`, so row `j` of the matrix describes where a
//! photon entering port `j` goes. Ports are 1-based on every public surface;
//! the dense matrix itself is indexed from 0.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::RootTwo;

/// Unitarity tolerance for the floating-point backend.
pub const UNITARITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InterferometerKind {
    #[serde(rename = "qft")]
    Qft,
    #[serde(rename = "gm")]
    GreenMachine,
    #[serde(rename = "hadamard12")]
    Hadamard12,
    #[serde(rename = "custom")]
    Custom,
}

impl InterferometerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Qft => "qft",
            Self::GreenMachine => "gm",
            Self::Hadamard12 => "hadamard12",
            Self::Custom => "custom",
        }
    }

    /// Builds the interferometer of this kind with `n` modes.
    pub fn build(&self, n: usize) -> Result<Interferometer> {
        match self {
            Self::Qft => build_qft(n),
            Self::GreenMachine => build_green_machine(n),
            Self::Hadamard12 if n == 12 => Ok(build_hadamard12()),
            Self::Hadamard12 => Err(Error::DimensionMismatch { expected: 12, got: n }),
            Self::Custom => Err(Error::InvalidConfig(
                "custom interferometers cannot be built from a mode count".into(),
            )),
        }
    }
}

impl fmt::Display for InterferometerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InterferometerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qft" => Ok(Self::Qft),
            "gm" | "green-machine" | "greenmachine" | "hadamard" => Ok(Self::GreenMachine),
            "hadamard12" | "h12" => Ok(Self::Hadamard12),
            "custom" => Ok(Self::Custom),
            other => Err(Error::InvalidConfig(format!("unknown interferometer kind '{other}'"))),
        }
    }
}

/// A balanced beam splitter acting on two ports (1-based).
///
/// `a_a† ↦ (b_a† + b_b†)/√2`, `a_b† ↦ (b_a† − b_b†)/√2`. The block is real;
/// the recursive Green Machine construction relies on that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BeamSplitter {
    pub layer: usize,
    pub port_a: usize,
    pub port_b: usize,
}

impl BeamSplitter {
    pub fn new(layer: usize, port_a: usize, port_b: usize) -> Self {
        Self { layer, port_a, port_b }
    }

    fn check(&self, n: usize) -> Result<()> {
        for port in [self.port_a, self.port_b] {
            if port == 0 || port > n {
                return Err(Error::InvalidPort { port, n });
            }
        }
        if self.port_a == self.port_b {
            return Err(Error::InvalidPort { port: self.port_b, n });
        }
        Ok(())
    }
}

/// Entries of a Hadamard-type interferometer: `U[j][k] = sign[j][k] / √n`.
///
/// This is the form the exact backend consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    n: usize,
    signs: Vec<i8>,
}

impl SignMatrix {
    pub fn new(n: usize, signs: Vec<i8>) -> Self {
        assert_eq!(signs.len(), n * n);
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        Self { n, signs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self, row: usize, col: usize) -> i8 {
        self.signs[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.signs[row * self.n..(row + 1) * self.n]
    }

    /// `H·Hᵀ = n·I`, checked in integers.
    pub fn is_hadamard(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: i64 = (0..n).map(|k| (self.sign(i, k) * self.sign(j, k)) as i64).sum();
                dot == if i == j { n as i64 } else { 0 }
            })
        })
    }
}

/// A linear-optical interferometer: a dense `n×n` unitary plus, when it was
/// built from one, the beam splitter mesh that realises it.
#[derive(Clone, Debug)]
pub struct Interferometer {
    kind: InterferometerKind,
    entries: DMatrix<Complex64>,
    signs: Option<SignMatrix>,
    mesh: Option<Vec<BeamSplitter>>,
}

impl Interferometer {
    /// Wraps an arbitrary square matrix. Unitarity is not enforced here; see
    /// [`Interferometer::unitarity_error`].
    pub fn custom(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), got: entries.ncols() });
        }
        if entries.nrows() == 0 {
            return Err(Error::InvalidModeCount(0));
        }
        Ok(Self { kind: InterferometerKind::Custom, entries, signs: None, mesh: None })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kind: InterferometerKind::Custom,
            entries: DMatrix::identity(n, n),
            signs: None,
            mesh: None,
        }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn kind(&self) -> InterferometerKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Entry for 1-based input port `j` and output port `k`.
    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j - 1, k - 1)]
    }

    pub fn sign_matrix(&self) -> Option<&SignMatrix> {
        self.signs.as_ref()
    }

    pub fn mesh(&self) -> Option<&[BeamSplitter]> {
        self.mesh.as_deref()
    }

    /// `max |(U·U†) − I|` over all entries.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.n();
        let prod = &self.entries * self.entries.adjoint();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { Complex64::one() } else { Complex64::zero() };
                worst = worst.max((prod[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Exact unitarity check, available for sign matrices.
    pub fn is_exactly_unitary(&self) -> Option<bool> {
        self.signs.as_ref().map(SignMatrix::is_hadamard)
    }

    pub fn to_export(&self) -> UnitaryExport {
        let n = self.n();
        UnitaryExport {
            n,
            kind: self.kind,
            entries_re: (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)].re).collect()).collect(),
            entries_im: (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)].im).collect()).collect(),
        }
    }

    pub fn from_export(export: &UnitaryExport) -> Result<Self> {
        let n = export.n;
        let rows_ok = |m: &Vec<Vec<f64>>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !rows_ok(&export.entries_re) || !rows_ok(&export.entries_im) {
            return Err(Error::InvalidConfig(format!("unitary export is not {n}x{n}")));
        }
        let entries = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(export.entries_re[i][j], export.entries_im[i][j])
        });
        let mut u = Self::custom(entries)?;
        u.kind = export.kind;
        u.signs = detect_sign_matrix(&u.entries);
        Ok(u)
    }
}

/// JSON shape of an exported unitary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryExport {
    pub n: usize,
    pub kind: InterferometerKind,
    pub entries_re: Vec<Vec<f64>>,
    pub entries_im: Vec<Vec<f64>>,
}

fn inv_sqrt(n: usize) -> f64 {
    1.0 / (n as f64).sqrt()
}

/// Recognises matrices whose entries are all `±1/√n` (bitwise, as produced by
/// this module) so they can use the exact backend.
fn detect_sign_matrix(m: &DMatrix<Complex64>) -> Option<SignMatrix> {
    let n = m.nrows();
    let scale = gm_scale(n);
    let mut signs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if z.im != 0.0 {
                return None;
            }
            if z.re == scale {
                signs.push(1);
            } else if z.re == -scale {
                signs.push(-1);
            } else {
                return None;
            }
        }
    }
    Some(SignMatrix::new(n, signs))
}

/// `1/√n` as a float. For powers of two this goes through [`RootTwo`] so the
/// value is the same whichever route produced it.
fn gm_scale(n: usize) -> f64 {
    if n.is_power_of_two() {
        RootTwo::inv_sqrt_pow2(n.trailing_zeros()).to_f64()
    } else {
        inv_sqrt(n)
    }
}

fn from_signs(kind: InterferometerKind, signs: SignMatrix, mesh: Option<Vec<BeamSplitter>>) -> Interferometer {
    let n = signs.n();
    let scale = gm_scale(n);
    let entries = DMatrix::from_fn(n, n, |i, j| Complex64::new(signs.sign(i, j) as f64 * scale, 0.0));
    Interferometer { kind, entries, signs: Some(signs), mesh }
}

/// `U[j][k] = ω^{jk}/√n` (0-based) with `ω = exp(2πi/n)`.
pub fn build_qft(n: usize) -> Result<Interferometer> {
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    let scale = inv_sqrt(n);
    let entries = DMatrix::from_fn(n, n, |j, k| {
        // reduce the exponent first so large n keeps full phase precision
        let e = (j * k) % n;
        Complex64::from_polar(scale, 2.0 * PI * e as f64 / n as f64)
    });
    Ok(Interferometer { kind: InterferometerKind::Qft, entries, signs: None, mesh: None })
}

/// Sylvester sign pattern: `H_1 = [1]`, `H_{2m} = [[H_m, H_m], [H_m, −H_m]]`.
pub fn sylvester_signs(n: usize) -> Result<SignMatrix> {
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut size = 1;
    let mut signs = vec![1i8];
    while size < n {
        let next = size * 2;
        let mut grown = vec![0i8; next * next];
        for i in 0..size {
            for j in 0..size {
                let s = signs[i * size + j];
                grown[i * next + j] = s;
                grown[i * next + j + size] = s;
                grown[(i + size) * next + j] = s;
                grown[(i + size) * next + j + size] = -s;
            }
        }
        signs = grown;
        size = next;
    }
    Ok(SignMatrix::new(n, signs))
}

/// The power-of-two Green Machine, `U_{GM,n} = (1/√2)[[U_{n/2}, U_{n/2}], [U_{n/2}, −U_{n/2}]]`.
pub fn build_green_machine(n: usize) -> Result<Interferometer> {
    let signs = sylvester_signs(n)?;
    let mesh = build_gm_mesh(n)?;
    Ok(from_signs(InterferometerKind::GreenMachine, signs, Some(mesh)))
}

/// Beam splitter mesh realising the `n`-mode Green Machine.
///
/// Layer `ℓ` (1-based) pairs port `b + j` with `b + 2^{ℓ-1} + j` inside blocks
/// of size `2^ℓ`, which is the recursive construction unrolled: both halves
/// get a Green Machine of half the size, then port `j` is mixed with port
/// `n/2 + j`. The mesh has `(n/2)·log2(n)` splitters.
pub fn build_gm_mesh(n: usize) -> Result<Vec<BeamSplitter>> {
    if n < 2 {
        return Err(Error::InvalidModeCount(n));
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let layers = n.trailing_zeros() as usize;
    let mut mesh = Vec::with_capacity(n / 2 * layers);
    for layer in 1..=layers {
        let stride = 1usize << (layer - 1);
        for block in (0..n).step_by(2 * stride) {
            for j in 0..stride {
                mesh.push(BeamSplitter::new(layer, block + j + 1, block + stride + j + 1));
            }
        }
    }
    Ok(mesh)
}

/// Composes a mesh onto the identity in exact ℚ(√2) arithmetic. Splitters act
/// in order, so the total is `B_1·B_2·…·B_m`.
pub fn compose_mesh_exact(mesh: &[BeamSplitter], n: usize) -> Result<Vec<Vec<RootTwo>>> {
    for bs in mesh {
        bs.check(n)?;
    }
    let mut m: Vec<Vec<RootTwo>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { RootTwo::one() } else { RootTwo::zero() }).collect())
        .collect();
    let h = RootTwo::frac_1_sqrt_2();
    for bs in mesh {
        let (a, b) = (bs.port_a - 1, bs.port_b - 1);
        // right-multiplying by the splitter mixes columns a and b
        for row in m.iter_mut() {
            let (x, y) = (row[a], row[b]);
            row[a] = (x + y) * h;
            row[b] = (x - y) * h;
        }
    }
    Ok(m)
}

/// Dense interferometer realised by a beam splitter mesh.
///
/// Composition is exact; when the result is a `±1/√n` sign matrix it carries
/// that structure so it can feed the exact backend, and its float entries are
/// then bitwise identical to [`build_green_machine`].
pub fn apply_mesh(mesh: &[BeamSplitter], n: usize) -> Result<Interferometer> {
    if n == 0 {
        return Err(Error::InvalidModeCount(n));
    }
    let exact = compose_mesh_exact(mesh, n)?;
    let signs = if n.is_power_of_two() {
        let scale = RootTwo::inv_sqrt_pow2(n.trailing_zeros());
        let mut signs = Vec::with_capacity(n * n);
        for row in &exact {
            for v in row {
                if *v == scale {
                    signs.push(1);
                } else if *v == -scale {
                    signs.push(-1);
                } else {
                    break;
                }
            }
        }
        (signs.len() == n * n).then(|| SignMatrix::new(n, signs))
    } else {
        None
    };
    let mut u = match signs {
        Some(signs) => from_signs(InterferometerKind::Custom, signs, None),
        None => {
            let entries = DMatrix::from_fn(n, n, |i, j| Complex64::new(exact[i][j].to_f64(), 0.0));
            Interferometer::custom(entries)?
        }
    };
    u.mesh = Some(mesh.to_vec());
    Ok(u)
}

const HADAMARD12: [[i8; 12]; 12] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1],
    [1, -1, -1, 1, -1, 1, 1, 1, -1, -1, -1, 1],
    [1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1],
    [1, -1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1],
    [1, -1, -1, -1, 1, -1, -1, 1, -1, 1, 1, 1],
    [1, 1, -1, -1, -1, 1, -1, -1, 1, -1, 1, 1],
    [1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1],
    [1, -1, 1, 1, 1, -1, -1, -1, 1, -1, -1, 1],
    [1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1, -1],
];

/// The fixed 12-mode Hadamard interferometer (not symmetric; no mesh).
pub fn build_hadamard12() -> Interferometer {
    let signs = SignMatrix::new(12, HADAMARD12.iter().flatten().copied().collect());
    from_signs(InterferometerKind::Hadamard12, signs, None)
}
