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

//! The 8-mode measurement: per-sector rates and the 147/256 total, from the
//! exact backend and from the QFT in floating point.
//!
//! `cargo run --release --example measure_gm8`

use std::io;

use railgauge::measurement::run_measurement;
use railgauge::output::write_report_text;
use railgauge::unitaries::{build_green_machine, build_qft};
use railgauge::Sign;

fn main() -> railgauge::Result<()> {
    let ancillas = [Sign::Plus; 7];
    let gm = run_measurement(&build_green_machine(8)?, 0.0, &ancillas)?;
    write_report_text(&gm, io::stdout().lock())?;
    let qft = run_measurement(&build_qft(8)?, 0.0, &ancillas)?;
    println!();
    println!("qft n=8 overall = {:.15}", qft.overall.value());
    println!("|gm − qft| = {:.2e}", (gm.overall.value() - qft.overall.value()).abs());
    Ok(())
}
