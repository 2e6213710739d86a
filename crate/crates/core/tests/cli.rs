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

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn railgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_railgauge")).args(args).output().expect("spawn railgauge")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn measure_gm8_reports_headline_fraction() {
    let out = railgauge(&["measure", "--kind", "gm", "--n", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["totals"]["overall"]["exact"], "147/256");
    assert_eq!(v["backend"], "exact");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn gm4_report_matches_golden_bytes() {
    let out = railgauge(&["measure", "--kind", "gm", "--n", "4", "--format", "json"]);
    assert_eq!(stdout(&out), golden("gm4_report.json"));
}

#[test]
fn gm2_pattern_table_matches_golden_bytes() {
    let out = railgauge(&["measure", "--kind", "gm", "--n", "2", "--patterns", "--format", "csv"]);
    assert_eq!(stdout(&out), golden("gm2_patterns.csv"));
}

#[test]
fn gm_sweep_matches_golden_bytes() {
    let out = railgauge(&["sweep", "--kinds", "gm", "--n", "2..8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("sweep_gm.csv"));
}

#[test]
fn output_is_deterministic_across_runs() {
    let args = ["sweep", "--kinds", "qft,gm", "--n", "2..6", "--format", "json"];
    assert_eq!(railgauge(&args).stdout, railgauge(&args).stdout);
}

#[test]
fn non_power_of_two_green_machine_exits_3() {
    let out = railgauge(&["measure", "--kind", "gm", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("power of two"));
}

#[test]
fn unknown_kind_exits_3() {
    let out = railgauge(&["measure", "--kind", "nope", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exact_backend_rejects_qft() {
    let out = railgauge(&["measure", "--kind", "qft", "--n", "4", "--backend", "exact"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn qft_sweep_rows_follow_formulas() {
    let out = railgauge(&["sweep", "--kinds", "qft", "--n", "2..8", "--format", "csv"]);
    let want = [1.0 / 2.0, 1.0 / 3.0, 9.0 / 16.0, 2.0 / 5.0, 55.0 / 96.0, 3.0 / 7.0, 147.0 / 256.0];
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), want.len());
    for (row, w) in rows.iter().zip(want) {
        let overall: f64 = row[4].parse().unwrap();
        assert!((overall - w).abs() < 1e-9, "n={} overall {overall}", &row[1]);
    }
}

#[test]
fn phi_does_not_change_totals() {
    let run = |phi: &str| {
        let out = railgauge(&["measure", "--kind", "qft", "--n", "5", "--phi", phi, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        v["totals"]["overall"]["value"].as_f64().unwrap()
    };
    assert!((run("0") - run("0.7853981633974483")).abs() < 1e-10);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "kind = \"gm\"\nn = 2\nformat = \"json\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = railgauge(&["--config", cfg, "measure"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v["n"], 2);

    let flagged = railgauge(&["--config", cfg, "measure", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&flagged)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["totals"]["overall"]["exact"], "9/16");
}

#[test]
fn unknown_config_key_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "modes = 4\n").unwrap();
    let out = railgauge(&["--config", cfg.to_str().unwrap(), "measure"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn build_unitary_round_trips_through_measure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gm4.json");
    let p = path.to_str().unwrap();
    let built = railgauge(&["build-unitary", "--kind", "gm", "--n", "4", "--format", "json", "-o", p]);
    assert_eq!(built.status.code(), Some(0));
    let out = railgauge(&["measure", "--unitary", p, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["totals"]["overall"]["value"].as_f64().unwrap() - 0.5625).abs() < 1e-12);
}

#[test]
fn coherent_beam_splitter_value() {
    let out = railgauge(&["coherent", "--n", "2", "--alpha", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let p = v["p_plus"].as_f64().or_else(|| v["rates"]["p_plus"].as_f64()).unwrap();
    assert!((p - 0.41578).abs() < 5e-5);
}

#[test]
fn verify_analytic_scope_passes() {
    let out = railgauge(&["verify", "--scope", "analytic"]);
    assert_eq!(out.status.code(), Some(0));
}
