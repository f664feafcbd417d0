//! Property tests: structural invariants over random parameters.

use num_complex::Complex64;
use proptest::prelude::*;

use gkcs::kernels::{kernel_eval, phase_average};
use gkcs::spectrum::{DegeneracySequence, EnergySpectrum};
use gkcs::states::{bcs, degenerate_state, evolve, gk_state};

fn linear() -> EnergySpectrum {
    EnergySpectrum::linear(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_monotone_and_anchored(j1 in 0.0f64..15.0, j2 in 0.0f64..15.0) {
        let spec = linear();
        let (lo, hi) = if j1 <= j2 { (j1, j2) } else { (j2, j1) };
        let n_lo = spec.normalization(lo, 1e-12).unwrap().value;
        let n_hi = spec.normalization(hi, 1e-12).unwrap().value;
        prop_assert!(n_lo <= n_hi * (1.0 + 1e-12));
        prop_assert_eq!(spec.normalization(0.0, 1e-12).unwrap().value, 1.0);
    }

    #[test]
    fn eps_factorial_recursion(deltas in proptest::collection::vec(0.05f64..3.0, 1..40)) {
        // strictly increasing spectrum from positive gaps
        let mut levels = vec![0.0f64];
        for d in &deltas {
            levels.push(levels.last().unwrap() + d);
        }
        let n = levels.len() - 1;
        let spec = EnergySpectrum::explicit(1.0, levels.clone());
        let mut prev = spec.eps_factorial(0).unwrap().value();
        for k in 1..=n {
            let f = spec.eps_factorial(k).unwrap().value();
            let expect = levels[k] * prev;
            prop_assert!((f - expect).abs() <= 4.0 * f64::EPSILON * expect.abs().max(1e-300));
            prev = f;
        }
    }

    #[test]
    fn shift_to_zero_idempotent_and_order_preserving(
        base in -5.0f64..5.0,
        deltas in proptest::collection::vec(0.05f64..2.0, 1..20),
    ) {
        let mut levels = vec![base];
        for d in &deltas {
            levels.push(levels.last().unwrap() + d);
        }
        let spec = EnergySpectrum::explicit(1.0, levels.clone()).shift_to_zero();
        prop_assert_eq!(spec.eps(0), 0.0);
        spec.check_monotone(levels.len() - 1).unwrap();
        let twice = spec.shift_to_zero();
        prop_assert_eq!(twice.recorded_shift(), spec.recorded_shift());
        for k in 0..levels.len() {
            prop_assert_eq!(twice.eps(k), spec.eps(k));
        }
    }

    #[test]
    fn temporal_stability_random_parameters(
        j in 0.0f64..4.0,
        gamma in 0.0f64..std::f64::consts::TAU,
        t in 0.0f64..10.0,
    ) {
        let spec = linear();
        let ket = gk_state(&spec, j, gamma, 1e-13).unwrap();
        let evolved = evolve(&ket, &spec, t).unwrap();
        let direct = gk_state(&spec, j, gamma + t, 1e-13).unwrap();
        prop_assert!(evolved.max_coeff_distance(&direct) <= 1e-13);
    }

    #[test]
    fn evolution_preserves_norm(
        j in 0.0f64..3.0,
        j2 in 0.0f64..3.0,
        t in 0.0f64..20.0,
    ) {
        let spec = linear();
        let ket = bcs(&spec, j, 0.4, j2, 1.1, 1e-12).unwrap();
        let ev = evolve(&ket, &spec, t).unwrap();
        prop_assert!((ev.norm2() - ket.norm2()).abs() <= 1e-13 * ket.norm2().max(1e-30));
    }

    #[test]
    fn degenerate_states_normalized(
        j in 0.0f64..4.0,
        gamma in 0.0f64..std::f64::consts::TAU,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let spec = linear();
        let deg = DegeneracySequence::triangular();
        let ket = degenerate_state(&spec, &deg, j, gamma, theta, 1e-12).unwrap();
        prop_assert!(ket.norm2() <= 1.0 + 1e-11);
        prop_assert!(ket.norm2() + ket.tail_bound >= 1.0 - 1e-11);
    }

    #[test]
    fn kernel_hermitian_and_diagonal(
        j1 in 0.0f64..4.0,
        j2 in 0.0f64..4.0,
        g1 in 0.0f64..std::f64::consts::TAU,
        g2 in 0.0f64..std::f64::consts::TAU,
    ) {
        let spec = linear();
        let kxy = kernel_eval(&spec, (j1, g1), (j2, g2), 1e-13).unwrap();
        let kyx = kernel_eval(&spec, (j2, g2), (j1, g1), 1e-13).unwrap();
        prop_assert!((kxy.value - kyx.value.conj()).norm() <= 1e-12 * kxy.value.norm().max(1.0));
        // diagonal equals the normalization series with the same truncation
        let diag = kernel_eval(&spec, (j1, g1), (j1, g1), 1e-13).unwrap();
        let n = spec.normalization(j1, 1e-13).unwrap();
        prop_assert_eq!(diag.value, Complex64::new(n.value, 0.0));
    }

    #[test]
    fn phase_average_symmetric_idempotent(a in -20.0f64..20.0, b in -20.0f64..20.0) {
        let ab = phase_average(a, b);
        prop_assert_eq!(ab, phase_average(b, a));
        prop_assert!(ab == 0.0 || ab == 1.0);
        prop_assert_eq!(ab * ab, ab);
    }

    #[test]
    fn ket_serialization_round_trips(j in 0.0f64..5.0, gamma in 0.0f64..std::f64::consts::TAU) {
        let spec = linear();
        let ket = gk_state(&spec, j, gamma, 1e-12).unwrap();
        let json = serde_json::to_string(&ket).unwrap();
        let back: gkcs::states::LabeledKet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, ket);
    }
}
