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

//! Simulation and analysis of boosted linear-optical measurements on
//! single-rail photonic qubits.
//!
//! A single-rail qubit lives in the span of the vacuum and the one-photon Fock
//! state of one optical mode. Measuring it in the `|±_φ⟩` basis is done here by
//! feeding it into the first port of an `n`-mode interferometer together with
//! `n - 1` single-rail ancillas, and counting photons at every output.
//!
//! The crate is organised as
//!
//! * [`unitaries`]: QFT, power-of-two Green Machine (dense and as a beam
//!   splitter mesh) and the fixed 12-mode Hadamard interferometer.
//! * [`fock`]: sparse creation-operator polynomials, their evolution through an
//!   interferometer, click-pattern probabilities and a permanent-based
//!   amplitude oracle.
//! * [`measurement`]: classification of click patterns into unambiguous
//!   successes and failures, aggregated per photon-number sector.
//! * [`analytic`]: closed-form success rates in exact rational arithmetic.
//! * [`coherent`]: coherent-state ancillas, Bessel-series success rates and
//!   quantum-memory loading probabilities.
//! * [`verify`] and [`cli`]: the check suite and the command-line front end.

pub mod analytic;
pub mod cli;
pub mod coherent;
pub mod config;
pub mod error;
pub mod exact;
pub mod fock;
pub mod measurement;
pub mod output;
pub mod unitaries;
pub mod verify;

pub use error::{Error, Result};
pub use measurement::{run_measurement, MeasurementReport};
pub use fock::{AncillaSpec, ClickPattern, FockPolynomial, Sign};

pub use unitaries::{BeamSplitter, Interferometer, InterferometerKind};
