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

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mode count {0}: at least 2 modes are required")]
    InvalidModeCount(usize),

    #[error("mode count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("beam splitter port {port} out of range for {n} modes")]
    InvalidPort { port: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid probability {0}")]
    InvalidProbability(f64),

    /// Closed-form coherent-ancilla success only exists for integer amplitudes.
    #[error("coherent amplitude {0} does not give unambiguous click patterns on a balanced beam splitter")]
    NotDiscriminating(f64),

    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),

    #[error("permanent of a {0}x{0} matrix exceeds the supported size")]
    MatrixTooLarge(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
