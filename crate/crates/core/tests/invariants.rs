use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::forward::{build_w, compute_spectrum, eval_delta_det, eval_delta_fundrep, eval_delta_periodic_factored};
use frozen_hill::io::{read_potential, read_spectrum, write_potential, write_spectrum};
use frozen_hill::samples::trig_potential;
use frozen_hill::spectral_core::{shift_to_zero, unshift, FrozenConfig};

fn config() -> impl Strategy<Value = (f64, Complex64)> {
    let a = (0usize..=8).prop_map(|k| k as f64 / 8.0);
    let g = (0.3f64..3.0, -1.0f64..1.0).prop_map(|(r, i)| Complex64::new(r, i));
    (a, g).prop_filter("nondegenerate", |(_, g)| (g - 1.0).norm() > 0.1 && (g + 1.0).norm() > 0.1)
}

fn lambda() -> impl Strategy<Value = Complex64> {
    (-200.0f64..2000.0, -50.0f64..50.0).prop_map(|(r, i)| Complex64::new(r, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_and_kernel_routes_agree(seed in 0u64..1000, (a, g) in config(), lam in lambda()) {
        let q = trig_potential(&mut ChaCha8Rng::seed_from_u64(seed), 3, 512).unwrap();
        let cfg = FrozenConfig::new(a, g).unwrap();
        let det = eval_delta_det(lam, &q, &cfg).unwrap();
        let fund = eval_delta_fundrep(lam, &build_w(&q, &cfg).unwrap(), g);
        prop_assert!((det - fund).norm() <= 1e-7 * (1.0 + det.norm()));
    }

    #[test]
    fn shift_preserves_the_spectrum(seed in 0u64..1000, (a, g) in config()) {
        let q = trig_potential(&mut ChaCha8Rng::seed_from_u64(seed), 3, 512).unwrap();
        let cfg = FrozenConfig::new(a, g).unwrap();
        let qa = shift_to_zero(&q, &cfg).unwrap();
        let s = compute_spectrum(&q, &cfg, 12).unwrap();
        let t = compute_spectrum(&qa, &cfg.with_a(0.0).unwrap(), 12).unwrap();
        for (x, y) in s.values().iter().zip(t.values()) {
            prop_assert!((x - y).norm() <= 1e-7 * (1.0 + x.norm()));
        }
        let back = unshift(&qa, &cfg).unwrap();
        prop_assert!(back.l2_distance(&q).unwrap() <= 1e-12 * (1.0 + q.l2_norm()));
    }

    #[test]
    fn periodic_factorization_holds(seed in 0u64..1000, k in 0usize..=4, lam in lambda()) {
        let q = trig_potential(&mut ChaCha8Rng::seed_from_u64(seed), 3, 512).unwrap();
        let cfg = FrozenConfig::new(k as f64 / 4.0, Complex64::new(1.0, 0.0)).unwrap();
        let w = build_w(&q, &cfg).unwrap();
        let direct = eval_delta_fundrep(lam, &w, cfg.gamma());
        let factored = eval_delta_periodic_factored(lam, &w);
        prop_assert!((direct - factored).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn files_round_trip(seed in 0u64..1000, (a, g) in config()) {
        let q = trig_potential(&mut ChaCha8Rng::seed_from_u64(seed), 2, 64).unwrap();
        let file = read_potential(&write_potential(&q, a, g)).unwrap();
        prop_assert_eq!(&file.potential, &q);
        prop_assert_eq!(file.gamma, g);
        let cfg = FrozenConfig::new(a, g).unwrap();
        let s = compute_spectrum(&q, &cfg, 6).unwrap();
        let back = read_spectrum(&write_spectrum(&s), a).unwrap();
        prop_assert_eq!(back.values(), s.values());
    }
}
