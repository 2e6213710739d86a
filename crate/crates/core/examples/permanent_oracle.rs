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

//! Cross-checks the sparse expansion against amplitudes built from matrix
//! permanents, for every click pattern.
//!
//! `cargo run --release --example permanent_oracle`

use railgauge::fock::{amplitude_oracle, enumerate_patterns, evolve_input, input_state, permanent};
use railgauge::unitaries::{build_green_machine, build_qft};
use railgauge::{AncillaSpec, Interferometer, Sign};

fn worst_gap(u: &Interferometer, signal: Sign) -> railgauge::Result<(usize, f64)> {
    let n = u.n();
    let spec = AncillaSpec::hypothesis(signal, &vec![Sign::Plus; n - 1], 0.3)?;
    let poly = evolve_input(&input_state(&spec), u)?;
    let mut worst = 0.0f64;
    let mut count = 0;
    for p in enumerate_patterns(n, n as u32) {
        let gap = (poly.amplitude(p.monomial()) - amplitude_oracle(u, &spec, &p)?).norm();
        worst = worst.max(gap);
        count += 1;
    }
    Ok((count, worst))
}

fn main() -> railgauge::Result<()> {
    println!("perm(QFT_4) = {:.6}", permanent(build_qft(4)?.entries())?);
    for n in 2..=6 {
        let mut cases = vec![("qft", build_qft(n)?)];
        if n.is_power_of_two() {
            cases.push(("gm", build_green_machine(n)?));
        }
        for (name, u) in cases {
            for signal in [Sign::Plus, Sign::Minus] {
                let (count, gap) = worst_gap(&u, signal)?;
                println!("{name} n={n} signal {signal}: {count} patterns, max |Δ| = {gap:.2e}");
            }
        }
    }
    Ok(())
}
