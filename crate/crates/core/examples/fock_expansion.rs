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

//! Expands `|+⟩|+⟩` through a balanced beam splitter and prints the output
//! polynomial and its click-pattern probabilities.
//!
//! `cargo run --example fock_expansion`

use railgauge::fock::{evolve_input, input_state, pattern_probabilities, sector_masses};
use railgauge::unitaries::build_green_machine;
use railgauge::{AncillaSpec, Sign};

fn main() -> railgauge::Result<()> {
    let u = build_green_machine(2)?;
    for signal in [Sign::Plus, Sign::Minus] {
        let spec = AncillaSpec::hypothesis(signal, &[Sign::Plus], 0.0)?;
        let out = evolve_input(&input_state(&spec), &u)?;
        println!("signal |{signal}>, ancilla |+>:");
        for (pattern, c) in out.sorted_terms() {
            println!("  {pattern}  {:+.6}", c.re);
        }
        let probs = pattern_probabilities(&out);
        for (pattern, p) in &probs {
            println!("  P({pattern}) = {p:.6}");
        }
        println!("  per sector: {:?}", sector_masses(&probs));
    }
    Ok(())
}
