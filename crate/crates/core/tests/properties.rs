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

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use railgauge::fock::{amplitude_oracle, enumerate_patterns, evolve_input, input_state, permanent, permanent_naive};
use railgauge::measurement::{classify, run_measurement, MeasureOptions, Verdict};
use railgauge::unitaries::{build_green_machine, build_qft};
use railgauge::{AncillaSpec, Interferometer, Sign};

fn signs(n: usize) -> impl Strategy<Value = Vec<Sign>> {
    proptest::collection::vec(prop_oneof![Just(Sign::Plus), Just(Sign::Minus)], n)
}

/// Haar-ish random unitary from the QR factor of a Gaussian-like matrix.
fn random_unitary(n: usize, entries: &[f64]) -> Interferometer {
    let m = DMatrix::from_fn(n, n, |j, k| Complex64::new(entries[2 * (j * n + k)], entries[2 * (j * n + k) + 1]));
    let q = m.qr().q();
    Interferometer::custom(q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flipping_every_ancilla_swaps_rates(s in signs(3)) {
        let u = build_green_machine(4).unwrap();
        let a = run_measurement(&u, 0.0, &s).unwrap();
        let flipped: Vec<Sign> = s.iter().map(|x| x.flipped()).collect();
        let b = run_measurement(&u, 0.0, &flipped).unwrap();
        prop_assert_eq!(&a.s_plus, &b.s_minus);
        prop_assert_eq!(&a.s_minus, &b.s_plus);
    }

    #[test]
    fn every_report_satisfies_its_checks(s in signs(7)) {
        let u = build_green_machine(8).unwrap();
        let r = run_measurement(&u, 0.0, &s).unwrap();
        prop_assert_eq!(r.failed_checks().count(), 0);
    }

    #[test]
    fn random_unitary_conserves_probability(
        n in 2usize..=4,
        entries in proptest::collection::vec(-1.0f64..1.0, 32),
        phi in 0.0f64..6.28,
        s in signs(3),
    ) {
        prop_assume!(entries.iter().take(2 * n * n).any(|x| x.abs() > 1e-3));
        let u = random_unitary(n, &entries);
        let r = railgauge::measurement::run_measurement_with(&u, phi, &s[..n - 1], &MeasureOptions::default()).unwrap();
        prop_assert_eq!(r.failed_checks().count(), 0);
    }

    #[test]
    fn expansion_agrees_with_permanents_on_random_unitaries(
        n in 2usize..=3,
        entries in proptest::collection::vec(-1.0f64..1.0, 18),
        phi in 0.0f64..6.28,
        s in signs(3),
    ) {
        let u = random_unitary(n, &entries);
        let spec = AncillaSpec::new(s[..n].to_vec(), phi).unwrap();
        let poly = evolve_input(&input_state(&spec), &u).unwrap();
        for p in enumerate_patterns(n, n as u32) {
            let want = amplitude_oracle(&u, &spec, &p).unwrap();
            prop_assert!((poly.amplitude(p.monomial()) - want).norm() < 1e-10);
        }
    }

    #[test]
    fn permanent_algorithms_agree(entries in proptest::collection::vec(-1.0f64..1.0, 50)) {
        let m = DMatrix::from_fn(5, 5, |j, k| Complex64::new(entries[2 * (j * 5 + k)], entries[2 * (j * 5 + k) + 1]));
        prop_assert!((permanent(&m).unwrap() - permanent_naive(&m)).norm() < 1e-10);
    }

    #[test]
    fn qft_totals_do_not_depend_on_phi(phi in 0.0f64..6.28) {
        let u = build_qft(4).unwrap();
        let s = vec![Sign::Plus; 3];
        let a = run_measurement(&u, 0.0, &s).unwrap();
        let b = run_measurement(&u, phi, &s).unwrap();
        prop_assert!((a.overall.value() - b.overall.value()).abs() < 1e-10);
    }

    #[test]
    fn classify_is_symmetric(p in 0.0f64..1.0, q in 0.0f64..1.0, tol in 0.0f64..0.1) {
        let a = classify(p, q, tol).unwrap();
        let b = classify(q, p, tol).unwrap();
        let mirrored = match a {
            Verdict::SuccessPlus => Verdict::SuccessMinus,
            Verdict::SuccessMinus => Verdict::SuccessPlus,
            other => other,
        };
        prop_assert_eq!(b, mirrored);
        prop_assert_eq!(a == Verdict::Failure, p > tol && q > tol);
    }
}
