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

//! Effect of `|−⟩` ancillas on a 4-mode Green Machine. Flipping every
//! ancilla exchanges the `|+⟩` and `|−⟩` rates; mixed patterns are listed
//! without any claim about them.
//!
//! `cargo run --example ancilla_signs`

use railgauge::measurement::mixed_ancilla_experiment;
use railgauge::unitaries::build_green_machine;
use railgauge::Sign;

fn main() -> railgauge::Result<()> {
    let u = build_green_machine(4)?;
    println!("{:<8} {:>8} {:>8} {:>8}", "signs", "s_plus", "s_minus", "overall");
    for code in 0..8u32 {
        let signs: Vec<Sign> = (0..3).map(|b| if code >> (2 - b) & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
        let r = mixed_ancilla_experiment(&u, 0.0, &signs)?;
        println!(
            "{:<8} {:>8} {:>8} {:>8}",
            Sign::format_many(&signs),
            r.s_plus.display(),
            r.s_minus.display(),
            r.overall.display()
        );
    }
    Ok(())
}
