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

//! Closed-form rates in exact arithmetic, with the sector overlap checked by
//! enumeration.
//!
//! `cargo run --example analytic_formulas`

use railgauge::analytic::{gamma, gamma_bruteforce, overall_formula, s_minus_formula, s_plus_formula, sector_minus_formula};
use railgauge::exact::fraction_string;

fn main() -> railgauge::Result<()> {
    println!("{:>3} {:>14} {:>8} {:>14}", "n", "s_plus", "s_minus", "overall");
    for n in 2..=16 {
        println!(
            "{n:>3} {:>14} {:>8} {:>14}",
            fraction_string(&s_plus_formula(n)?),
            fraction_string(&s_minus_formula(n)?),
            fraction_string(&overall_formula(n)?)
        );
    }
    println!();
    let n = 8;
    for i in 0..=n {
        println!(
            "n={n} I={i}: s_I- = {:<8} gamma = {:<5} (enumerated {})",
            fraction_string(&sector_minus_formula(n, i)?),
            fraction_string(&gamma(n, i)?),
            fraction_string(&gamma_bruteforce(n, i)?)
        );
    }
    Ok(())
}
