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

//! Success probability against mode count for the QFT and Green Machine
//! interferometers, written as CSV to stdout.
//!
//! `cargo run --release --example sweep -- 2 10` sweeps `n = 2..=10`.

use std::io;

use railgauge::measurement::run_sweep;
use railgauge::output::write_sweep_csv;
use railgauge::InterferometerKind;

fn main() -> railgauge::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let lo = args.first().copied().unwrap_or(2);
    let hi = args.get(1).copied().unwrap_or(8);
    let ns: Vec<usize> = (lo..=hi).collect();
    let reports = run_sweep(&[InterferometerKind::Qft, InterferometerKind::GreenMachine], &ns, 0.0);
    for r in reports.iter().filter(|r| !r.all_checks_pass()) {
        eprintln!("{} n={}: consistency checks failed", r.kind, r.n);
    }
    write_sweep_csv(&reports, io::stdout().lock())
}
