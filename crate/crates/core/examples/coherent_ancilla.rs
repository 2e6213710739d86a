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

//! Coherent-state ancillas: balanced beam splitter, 4-mode Green Machine and
//! state loading.
//!
//! `cargo run --release --example coherent_ancilla`

use num_complex::Complex64;
use railgauge::coherent::{
    bs_coherent_success, bs_coherent_success_sim, coherent_fock_simulation, default_cutoff, gm_coherent_success,
    loading_probability, max_pattern_deviation, total_loading_probability,
};

fn main() -> railgauge::Result<()> {
    for a in 1..=4 {
        let a = a as f64;
        println!(
            "beam splitter, alpha={a}: closed form {:.10}, series {:.10}",
            bs_coherent_success(a)?,
            bs_coherent_success_sim(a, default_cutoff(a))?
        );
    }
    let sim = coherent_fock_simulation(2, 1.0, default_cutoff(1.0))?;
    println!(
        "Fock simulation n=2: p+ {:.10}, p- {:.10}, max pattern deviation {:.1e}",
        sim.rates.p_plus,
        sim.rates.p_minus,
        max_pattern_deviation(&sim)?
    );

    println!();
    for (alpha, cutoff) in [(1.0 / 3.0, 30), (0.5, 30), (1.0, 30)] {
        let r = gm_coherent_success(4, alpha, cutoff)?;
        let s = coherent_fock_simulation(4, alpha, 24)?;
        println!(
            "GM n=4, alpha={alpha:.4}: lattice p+ {:.6} p- {:.6} avg {:.6} | Fock p+ {:.6} p- {:.6}",
            r.p_plus, r.p_minus, r.average, s.rates.p_plus, s.rates.p_minus
        );
    }

    println!();
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for (i, j) in [(1, 0), (0, 1), (2, 1), (2, 2)] {
        let out = loading_probability(1.1, i, j, h, h)?;
        let state = out.state.map(|s| format!("{:+.4} |0> {:+.4} |1>", s[0].re, s[1].re)).unwrap_or_default();
        println!("loading alpha=1.1, click ({i},{j}): P = {:.6}, memory {state}", out.probability);
    }
    println!("total loading probability {:.10}", total_loading_probability(1.1, h, h, 40)?);
    Ok(())
}
