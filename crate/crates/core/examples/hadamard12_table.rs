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

//! Per-sector success rates of the 12-mode Hadamard interferometer, exact.
//!
//! Run with `cargo run --release --example hadamard12_table`.

use std::time::Instant;

use railgauge::measurement::hadamard12_report;

fn main() -> railgauge::Result<()> {
    let start = Instant::now();
    let r = hadamard12_report()?;
    println!("{:>3}  {:>22} {:>22}", "I", "s_12,I+", "s_12,I-");
    for s in &r.sectors {
        println!("{:>3}  {:>22} {:>22}", s.photons, s.s_plus.display(), s.s_minus.display());
    }
    println!("s_plus  = {} ~ {:.6}", r.s_plus.display(), r.s_plus.value());
    println!("s_minus = {} ~ {:.6}", r.s_minus.display(), r.s_minus.value());
    println!("overall = {} ~ {:.6}", r.overall.display(), r.overall.value());
    for c in &r.checks {
        println!("[{}] {} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
