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

//! Runs the verification suite, optionally limited to some scopes.
//!
//! `cargo run --release --example verify_suite -- unitaries analytic`

use railgauge::verify::{run_verify, Scope};

fn main() -> railgauge::Result<()> {
    let scopes = std::env::args().skip(1).map(|s| s.parse()).collect::<railgauge::Result<Vec<Scope>>>()?;
    let report = run_verify(&scopes, false);
    print!("{}", report.to_table());
    if !report.all_pass() {
        std::process::exit(2);
    }
    Ok(())
}
