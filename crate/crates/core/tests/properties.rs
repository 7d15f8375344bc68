//! Randomized properties over the closed-form layers: special functions,
//! geometry averages, the golden-section search and the config round-trip.

use ee_mimo::config::{parse_config, render_config, ExperimentConfig};
use ee_mimo::optim::{golden_section_max, optimal_rho};
use ee_mimo::power::Scheme;
use ee_mimo::rates::{evaluate_ee, DesignPoint, Regime};
use ee_mimo::scenario::{average_inverse_attenuation, Geometry, PropagationScenario};
use ee_mimo::specfun::{lambert_w0, real_positive_roots_auto, QuarticCoeffs};
use proptest::prelude::*;

fn disc() -> PropagationScenario {
    PropagationScenario::new(
        Geometry::Disc {
            d_min: 35.0,
            d_max: 250.0,
        },
        3.76,
        10f64.powf(-3.53),
    )
    .unwrap()
}

proptest! {
    // W(w e^w) = w on the principal branch, including near the branch point.
    #[test]
    fn lambert_inverts_w_exp_w(w in -0.995f64..15.0) {
        let x = w * w.exp();
        let back = lambert_w0(x).unwrap();
        prop_assert!((back - w).abs() < 1e-7 * (1.0 + w.abs()), "w = {w}, back = {back}");
    }

    // Forward residual: W(x) e^{W(x)} = x across twenty orders of magnitude.
    #[test]
    fn lambert_forward_residual(log_x in -8.0f64..12.0) {
        let x = 10f64.powf(log_x);
        let w = lambert_w0(x).unwrap();
        prop_assert!((w * w.exp() / x - 1.0).abs() < 1e-10);
    }

    // A quartic assembled from four known positive roots gives them back.
    #[test]
    fn quartic_recovers_planted_roots(
        seed in proptest::array::uniform4(0.05f64..1.0),
    ) {
        // Spread the draws into well-separated roots in [0.3, 45].
        let mut r = [0.0f64; 4];
        let mut lo = 0.3;
        for (ri, s) in r.iter_mut().zip(seed) {
            *ri = lo + s * 10.0;
            lo = *ri + 0.5;
        }
        let e1 = r.iter().sum::<f64>();
        let e2 = r[0] * (r[1] + r[2] + r[3]) + r[1] * (r[2] + r[3]) + r[2] * r[3];
        let e3 = r[0] * r[1] * (r[2] + r[3]) + (r[0] + r[1]) * r[2] * r[3];
        let e4 = r[0] * r[1] * r[2] * r[3];
        let q = QuarticCoeffs::new(1.0, -e1, e2, -e3, e4).unwrap();
        let found = real_positive_roots_auto(&q);
        prop_assert_eq!(found.len(), 4, "found {:?} for planted {:?}", &found, &r);
        let mut sorted = found.clone();
        sorted.sort_by(f64::total_cmp);
        for (a, b) in sorted.iter().zip(r.iter()) {
            prop_assert!((a / b - 1.0).abs() < 1e-6, "root {a} vs planted {b}");
        }
    }

    // Closed-form disc average of the inverse attenuation vs. plain Simpson
    // integration of the radial density.
    #[test]
    fn disc_average_matches_quadrature(
        kappa in 2.1f64..6.0,
        d_min in 1.0f64..50.0,
        span in 50.0f64..450.0,
    ) {
        let d_max = d_min + span;
        let dbar = 10f64.powf(-3.53);
        let geometry = Geometry::Disc { d_min, d_max };
        let closed = average_inverse_attenuation(&geometry, kappa, dbar).unwrap();
        let n = 20_000usize;
        let h = (d_max - d_min) / n as f64;
        let f = |d: f64| 2.0 * d * d.powf(kappa);
        let mut acc = f(d_min) + f(d_max);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(d_min + i as f64 * h);
        }
        let numeric = acc * h / 3.0 / (dbar * (d_max * d_max - d_min * d_min));
        prop_assert!((closed / numeric - 1.0).abs() < 1e-9);
    }

    // Golden-section search in log-space locates the peak of a smooth
    // unimodal function anywhere inside the bracket.
    #[test]
    fn golden_section_finds_unimodal_peak(log_peak in -2.0f64..2.0, width in 0.2f64..3.0) {
        let peak = 10f64.powf(log_peak);
        let f = |x: f64| -((x.ln() - peak.ln()) / width).powi(2);
        let (x, fx) = golden_section_max(f, 1e-3, 1e3, 1e-9);
        prop_assert!((x / peak - 1.0).abs() < 1e-6, "found {x}, planted {peak}");
        prop_assert!(fx <= 0.0);
    }

    // Every config file the renderer writes parses back to the same
    // experiment (the dBm and W-per-Gbit/s fields go through unit
    // conversions, hence the relative tolerance there).
    #[test]
    fn config_round_trip(
        bw in 1e6f64..1e9,
        noise in 1e-15f64..1e-10,
        p_fix in 0.5f64..100.0,
        p_cod in 1e-11f64..1e-8,
        trials in 1usize..100_000,
        seed in 0u64..u64::MAX,
        reuse in prop::sample::select(vec![1u32, 2, 4]),
    ) {
        let mut cfg = ExperimentConfig::default();
        cfg.profile.bandwidth_hz = bw;
        cfg.profile.noise_power_w = noise;
        cfg.profile.p_fix = p_fix;
        cfg.profile.p_cod = p_cod;
        cfg.scheme = Scheme::Mrt;
        cfg.regime_name = "multicell".into();
        cfg.reuse_factor = reuse;
        cfg.trials = trials;
        cfg.seed = seed;
        let parsed = parse_config(&render_config(&cfg)).unwrap();
        prop_assert!((parsed.profile.bandwidth_hz - bw).abs() <= bw * 1e-15);
        prop_assert!((parsed.profile.noise_power_w / noise - 1.0).abs() < 1e-12);
        prop_assert!((parsed.profile.p_fix - p_fix).abs() <= p_fix * 1e-15);
        prop_assert!((parsed.profile.p_cod / p_cod - 1.0).abs() < 1e-12);
        prop_assert_eq!(parsed.scheme, Scheme::Mrt);
        prop_assert_eq!(parsed.reuse_factor, reuse);
        prop_assert_eq!(parsed.trials, trials);
        prop_assert_eq!(parsed.seed, seed);
    }

    // The closed-form rho maximizer beats nearby perturbations of itself.
    #[test]
    fn optimal_rho_is_a_local_maximum(m in 6usize..300, frac in 0.1f64..0.9, eps in 0.01f64..0.3) {
        let p = ee_mimo::power::HardwareProfile::default();
        let sc = disc();
        let k = ((m as f64 * frac) as usize).max(1).min(m - 2);
        let rho = optimal_rho(&p, &sc, m, k).unwrap();
        let ee = |r: f64| {
            evaluate_ee(
                &p,
                &sc,
                Scheme::Zf,
                Regime::PerfectCsi,
                None,
                DesignPoint::new(m, k, r).unwrap(),
            )
            .unwrap()
            .ee
        };
        let at = ee(rho);
        prop_assert!(at >= ee(rho * (1.0 + eps)) - at.abs() * 1e-12);
        prop_assert!(at >= ee(rho * (1.0 - eps)) - at.abs() * 1e-12);
    }

    // Raising the fixed site power can only lower the energy efficiency.
    #[test]
    fn ee_monotone_in_fixed_power(extra in 1.0f64..200.0) {
        let sc = disc();
        let point = DesignPoint::new(165, 104, 0.8747).unwrap();
        let base = ee_mimo::power::HardwareProfile::default();
        let mut bumped = base.clone();
        bumped.p_fix += extra;
        let e0 = evaluate_ee(&base, &sc, Scheme::Zf, Regime::PerfectCsi, None, point).unwrap();
        let e1 = evaluate_ee(&bumped, &sc, Scheme::Zf, Regime::PerfectCsi, None, point).unwrap();
        prop_assert!(e1.ee < e0.ee);
        prop_assert!((e1.gross_rate - e0.gross_rate).abs() < 1e-9 * e0.gross_rate);
    }
}
