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

//! Builds the three interferometer families and checks them.
//!
//! `cargo run --example unitaries`

use railgauge::unitaries::{apply_mesh, build_gm_mesh, build_hadamard12, build_qft};
use railgauge::InterferometerKind;

fn main() -> railgauge::Result<()> {
    let qft = build_qft(3)?;
    println!("QFT n=3 (entries ω^(jk)/√3):");
    for j in 1..=3 {
        let row: Vec<String> = (1..=3).map(|k| format!("{:+.4}{:+.4}i", qft.entry(j, k).re, qft.entry(j, k).im)).collect();
        println!("  {}", row.join("  "));
    }
    println!("  unitarity error {:.2e}", qft.unitarity_error());

    // The Green Machine is both a Sylvester matrix and a mesh of 50-50 splitters.
    for n in [2, 4, 8, 16] {
        let gm = InterferometerKind::GreenMachine.build(n)?;
        let mesh = build_gm_mesh(n)?;
        let from_mesh = apply_mesh(&mesh, n)?;
        println!(
            "GM n={n:<2}: {} splitters, mesh == matrix: {}, exactly unitary: {:?}",
            mesh.len(),
            from_mesh.entries() == gm.entries(),
            gm.is_exactly_unitary()
        );
    }

    let h12 = build_hadamard12();
    let signs = h12.sign_matrix().expect("hadamard12 is a sign matrix");
    println!("Hadamard n=12: H·Hᵀ = 12·I exactly: {}", signs.is_hadamard());
    for r in 0..12 {
        let row: String = signs.row(r).iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        println!("  {row}");
    }

    match InterferometerKind::GreenMachine.build(6) {
        Err(e) => println!("GM n=6: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
