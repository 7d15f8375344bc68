//! Energy-efficiency maximizers: closed forms for the number of users,
//! the number of antennas and the power parameter, the alternating
//! algorithm cycling them, and exhaustive grid sweeps with numeric
//! fallbacks for the regimes without closed forms.

use crate::error::{Error, Result};
use crate::power::{CircuitCoefficients, HardwareProfile, Scheme};
use crate::rates::{evaluate_ee, DesignPoint, Regime};
use crate::scenario::{MulticellScenario, PropagationScenario};
use crate::specfun::{lambert_w0, real_positive_roots_auto, QuarticCoeffs};
use rayon::prelude::*;
use std::f64::consts::E;
use std::ops::RangeInclusive;

/// EE of a ZF perfect-CSI design point, or 0 when infeasible, so argmax
/// logic stays total.
fn ee_or_zero(p: &HardwareProfile, sc: &PropagationScenario, m: usize, k: usize, rho: f64) -> f64 {
    let Ok(point) = DesignPoint::new(m, k, rho) else {
        return 0.0;
    };
    evaluate_ee(p, sc, Scheme::Zf, Regime::PerfectCsi, None, point)
        .map(|r| r.ee)
        .unwrap_or(0.0)
}

/// Resolve a fractional optimizer output to an integer by comparing the
/// EE at floor and ceiling; ties break toward the smaller integer.
fn round_by_ee<F: Fn(usize) -> f64>(x: f64, min: usize, ee_of: F) -> usize {
    let lo = (x.floor() as i64).max(min as i64) as usize;
    let hi = (x.ceil() as i64).max(min as i64) as usize;
    if lo == hi {
        return lo;
    }
    if ee_of(hi) > ee_of(lo) {
        hi
    } else {
        lo
    }
}

/// C' = sum_i C_i K^i / K and D' = sum_i D_i K^i / K.
fn per_user_coefficients(co: &CircuitCoefficients, k: usize) -> (f64, f64) {
    let kf = k as f64;
    (co.c_poly(kf) / kf, co.d_poly(kf) / kf)
}

/// The quartic in K whose positive real roots are the EE-stationary user
/// loads at fixed beta_bar = M/K and rho_bar = rho * K.
pub fn users_quartic(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    beta_bar: f64,
    rho_bar: f64,
) -> QuarticCoeffs {
    let co = CircuitCoefficients::from_profile(p);
    let u = p.coherence_block;
    let tau = p.tau_sum();
    let denom = co.c[3] + beta_bar * co.d[2];
    let mu1 = ((u / tau) * (co.c[2] + beta_bar * co.d[1]) + co.c[1] + beta_bar * co.d[0]) / denom;
    let mu0 = (co.c[0] + p.noise_power_w * sc.s_x() * rho_bar / p.eta()) / denom;
    QuarticCoeffs::new(1.0, -2.0 * u / tau, -mu1, -2.0 * mu0, u * mu0 / tau).unwrap()
}

/// EE-optimal number of users at fixed antenna ratio beta_bar = M/K and
/// total power proxy rho_bar = rho * K, via the stationary quartic.
/// Falls back to a grid scan when the quartic has no usable root.
pub fn optimal_users(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    beta_bar: f64,
    rho_bar: f64,
) -> Result<usize> {
    if !(beta_bar > 1.0) || !(rho_bar > 0.0) {
        return Err(Error::Scenario(format!(
            "optimal_users needs beta_bar > 1 and rho_bar > 0 (got {beta_bar}, {rho_bar})"
        )));
    }
    let k_max = p.max_users();
    let ee_at = |k: usize| -> f64 {
        if k == 0 || k > k_max {
            return 0.0;
        }
        let m = ((beta_bar * k as f64).round() as usize).max(k + 1);
        ee_or_zero(p, sc, m, k, rho_bar / k as f64)
    };
    let roots = real_positive_roots_auto(&users_quartic(p, sc, beta_bar, rho_bar));
    let mut best: Option<(usize, f64)> = None;
    for r in roots {
        if !(r >= 1.0 && r < p.coherence_block / p.tau_sum()) {
            continue;
        }
        // Rounding M = round(beta_bar K) makes the discrete EE a sawtooth
        // around the stationary point, so scan a window of integers
        // around the root rather than just floor/ceil.
        let lo = (r.floor() as i64 - 8).max(1) as usize;
        let hi = (r.ceil() as i64 + 8).max(1) as usize;
        for k in lo..=hi.min(k_max) {
            let ee = ee_at(k);
            if ee > 0.0 && best.map_or(true, |(bk, be)| ee > be || (ee == be && k < bk)) {
                best = Some((k, ee));
            }
        }
    }
    if let Some((k, _)) = best {
        return Ok(k);
    }
    // No positive real root in range: scan the full feasible set.
    let k = (1..=k_max)
        .map(|k| (k, ee_at(k)))
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(k, _)| k)
        .ok_or(Error::BadQuartic)?;
    Ok(k)
}

/// Closed-form approximation of the optimal number of users, valid when
/// channel estimation and processing powers are negligible.
pub fn optimal_users_approx(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    beta_bar: f64,
    rho_bar: f64,
) -> usize {
    let co = CircuitCoefficients::from_profile(p);
    let mu =
        (co.c[0] + p.noise_power_w * sc.s_x() * rho_bar / p.eta()) / (co.c[1] + beta_bar * co.d[0]);
    let u = p.coherence_block;
    let tau = p.tau_sum();
    let k_frac = mu * ((1.0 + u / (tau * mu)).sqrt() - 1.0);
    if k_frac < 1.0 {
        return 1;
    }
    round_by_ee(k_frac, 1, |k| {
        let m = ((beta_bar * k as f64).round() as usize).max(k + 1);
        ee_or_zero(p, sc, m, k, rho_bar / k as f64)
    })
}

/// Fractional EE-optimal antenna count at fixed (K, rho), perfect CSI.
fn antennas_fractional(p: &HardwareProfile, sc: &PropagationScenario, k: usize, rho: f64) -> Result<f64> {
    let co = CircuitCoefficients::from_profile(p);
    let (c1, d1) = per_user_coefficients(&co, k);
    let kf = k as f64;
    let alpha = p.noise_power_w * sc.s_x() / p.eta();
    let arg = rho * (alpha * rho + c1) / (d1 * E) + (rho * kf - 1.0) / E;
    let w = lambert_w0(arg)?;
    Ok(((w + 1.0).exp() + rho * kf - 1.0) / rho)
}

/// EE-optimal number of BS antennas at fixed (K, rho) with perfect CSI.
pub fn optimal_antennas(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    k: usize,
    rho: f64,
) -> Result<usize> {
    let m_frac = antennas_fractional(p, sc, k, rho)?;
    Ok(round_by_ee(m_frac, k + 1, |m| ee_or_zero(p, sc, m, k, rho)))
}

/// EE-optimal number of BS antennas under pilot-based channel estimation
/// with relative pilot length tau_ul.
pub fn optimal_antennas_imperfect(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    k: usize,
    rho: f64,
    tau_ul: f64,
) -> Result<usize> {
    let co = CircuitCoefficients::from_profile(p);
    let (c1, d1) = per_user_coefficients(&co, k);
    let kf = k as f64;
    let f = 1.0 + 1.0 / tau_ul + 1.0 / (rho * kf * tau_ul);
    let alpha = p.noise_power_w * sc.s_x() / p.eta();
    let arg = rho * (alpha * rho + c1) / (d1 * E * f) + (rho * kf - 1.0) / (E * f);
    let w = lambert_w0(arg)?;
    let m_frac = f * ((w + 1.0).exp() + rho * kf - 1.0) / rho;
    let mut eff = p.clone();
    eff.tau_ul = tau_ul;
    let ee_at = |m: usize| -> f64 {
        let Ok(point) = DesignPoint::new(m, k, rho) else {
            return 0.0;
        };
        evaluate_ee(&eff, sc, Scheme::Zf, Regime::ImperfectCsi, None, point)
            .map(|r| r.ee)
            .unwrap_or(0.0)
    };
    Ok(round_by_ee(m_frac, k + 1, ee_at))
}

/// EE-optimal power parameter rho at fixed (M, K), perfect CSI.
pub fn optimal_rho(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    m: usize,
    k: usize,
) -> Result<f64> {
    if m <= k {
        return Err(Error::ZfDimensions { m, k });
    }
    let co = CircuitCoefficients::from_profile(p);
    let (c1, d1) = per_user_coefficients(&co, k);
    let mk = (m - k) as f64;
    let alpha = p.noise_power_w * sc.s_x() / p.eta();
    let arg = p.eta() * mk * (c1 + m as f64 * d1) / (p.noise_power_w * sc.s_x() * E) - 1.0 / E;
    let _ = alpha;
    let w = lambert_w0(arg)?;
    Ok(((w + 1.0).exp() - 1.0) / mk)
}

/// Closed-form lower bounds on the optimal antenna count and power
/// parameter; `None` when the validity condition of the bound is unmet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingBounds {
    pub m_lower: Option<f64>,
    pub rho_lower: Option<f64>,
}

pub fn scaling_bounds(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    m: usize,
    k: usize,
    rho: f64,
) -> ScalingBounds {
    let co = CircuitCoefficients::from_profile(p);
    let (c1, d1) = per_user_coefficients(&co, k);
    let kf = k as f64;
    let alpha = p.noise_power_w * sc.s_x() / p.eta();

    // Antenna bound: sandwich on e^{W(x)+1} applied to the closed-form M rule.
    let x_m = (alpha / d1) * rho * rho + (c1 / d1) * rho + kf * rho - 1.0;
    let m_lower = if x_m >= E * E {
        Some(kf - 1.0 / rho + x_m / (rho * (x_m.ln() - 1.0)))
    } else {
        None
    };

    // Power bound: same sandwich on the closed-form rho rule.
    let mk = (m - k) as f64;
    let y = p.eta() * mk * (c1 + m as f64 * d1) / (p.noise_power_w * sc.s_x()) - 1.0;
    let rho_lower = if y >= E * E {
        Some((y / (y.ln() - 1.0) - 1.0) / mk)
    } else {
        None
    };

    ScalingBounds { m_lower, rho_lower }
}

/// One iterate of the alternating algorithm, with its EE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStep {
    pub iteration: usize,
    pub point: DesignPoint,
    pub ee: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingOutcome {
    pub point: DesignPoint,
    pub trajectory: Vec<TrajectoryStep>,
    pub converged: bool,
    pub iterations: usize,
}

/// Alternating EE maximization: update K at fixed (M/K, rho K), then M at
/// fixed (K, rho), then rho at fixed (M, K). Converged when the integers
/// (M, K) survive an iteration unchanged.
pub fn alternating_optimize(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    start: DesignPoint,
    max_iter: usize,
) -> Result<AlternatingOutcome> {
    let mut cur = start;
    let mut trajectory = vec![TrajectoryStep {
        iteration: 0,
        point: cur,
        ee: ee_or_zero(p, sc, cur.m, cur.k, cur.rho),
    }];
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        let beta_bar = cur.m as f64 / cur.k as f64;
        let rho_bar = cur.rho * cur.k as f64;
        let k = optimal_users(p, sc, beta_bar.max(1.0 + 1e-9), rho_bar)?;
        let rho_k = rho_bar / k as f64;
        let m = optimal_antennas(p, sc, k, rho_k)?;
        let rho = optimal_rho(p, sc, m, k)?;
        let next = DesignPoint::new(m, k, rho)?;
        trajectory.push(TrajectoryStep {
            iteration: it,
            point: next,
            ee: ee_or_zero(p, sc, m, k, rho),
        });
        if next.m == cur.m && next.k == cur.k {
            cur = next;
            converged = true;
            break;
        }
        cur = next;
    }
    Ok(AlternatingOutcome {
        point: cur,
        trajectory,
        converged,
        iterations,
    })
}

/// Golden-section maximization of a unimodal function on [lo, hi], run in
/// log-space since the bracket spans ten decades.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let g = |t: f64| f(t.exp());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    while (b - a) > rel_tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d);
        }
    }
    let x = ((a + b) / 2.0).exp();
    (x, f(x))
}

/// Default rho bracket and tolerance for the numeric regimes.
pub const RHO_BRACKET: (f64, f64) = (1e-6, 1e4);
pub const RHO_REL_TOL: f64 = 1e-8;

/// One cell of an exhaustive EE sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub m: usize,
    pub k: usize,
    pub rho: f64,
    pub gross_rate: f64,
    pub ee: f64,
    pub pa_power: f64,
    pub circuit_power: f64,
}

/// Grid search over (M, K), optimizing rho per cell: closed form for ZF
/// with perfect CSI, golden-section otherwise. Returns the argmax
/// (lexicographic (M, K) tie-break) and the full surface.
pub fn exhaustive_search(
    p: &HardwareProfile,
    sc: &PropagationScenario,
    regime: Regime,
    scheme: Scheme,
    m_range: RangeInclusive<usize>,
    k_range: RangeInclusive<usize>,
    multicell: Option<&MulticellScenario>,
) -> Result<(DesignPoint, Vec<SweepCell>)> {
    let tau_sum = regime.effective_tau_ul(p) + p.tau_dl;
    let k_cap = ((p.coherence_block / tau_sum).floor() as usize).saturating_sub(1);
    let ks: Vec<usize> = k_range.filter(|&k| k >= 1 && k <= k_cap).collect();
    let ms: Vec<usize> = m_range.collect();
    if ks.is_empty() || ms.is_empty() {
        return Err(Error::EmptyRange);
    }

    let eval = |m: usize, k: usize, rho: f64| -> f64 {
        let Ok(point) = DesignPoint::new(m, k, rho) else {
            return 0.0;
        };
        evaluate_ee(p, sc, scheme, regime, multicell, point)
            .map(|r| r.ee)
            .unwrap_or(0.0)
    };

    let surface: Vec<SweepCell> = ks
        .par_iter()
        .flat_map_iter(|&k| {
            let ms = &ms;
            ms.iter().filter(move |&&m| m > k).map(move |&m| {
                let rho = match regime {
                    Regime::PerfectCsi => optimal_rho(p, sc, m, k).unwrap_or(1.0),
                    _ => {
                        golden_section_max(
                            |r| eval(m, k, r),
                            RHO_BRACKET.0,
                            RHO_BRACKET.1,
                            RHO_REL_TOL,
                        )
                        .0
                    }
                };
                let point = DesignPoint::new(m, k, rho).expect("m > k and rho > 0");
                match evaluate_ee(p, sc, scheme, regime, multicell, point) {
                    Ok(r) => SweepCell {
                        m,
                        k,
                        rho,
                        gross_rate: r.gross_rate,
                        ee: r.ee,
                        pa_power: r.pa_power,
                        circuit_power: r.circuit.total(),
                    },
                    Err(_) => SweepCell {
                        m,
                        k,
                        rho,
                        gross_rate: 0.0,
                        ee: 0.0,
                        pa_power: 0.0,
                        circuit_power: 0.0,
                    },
                }
            })
        })
        .collect();

    let best = surface
        .iter()
        .max_by(|a, b| {
            a.ee.total_cmp(&b.ee)
                .then_with(|| (b.m, b.k).cmp(&(a.m, a.k)))
        })
        .ok_or(Error::EmptyRange)?;
    Ok((DesignPoint::new(best.m, best.k, best.rho)?, surface))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Geometry;

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

    #[test]
    fn antennas_at_reference_operating_point() {
        let p = HardwareProfile::default();
        let sc = disc();
        assert_eq!(optimal_antennas(&p, &sc, 104, 0.8747).unwrap(), 165);
    }

    #[test]
    fn rho_at_reference_operating_point() {
        let p = HardwareProfile::default();
        let sc = disc();
        let rho = optimal_rho(&p, &sc, 165, 104).unwrap();
        assert!((rho - 0.8747).abs() < 1e-3, "rho = {rho}");
    }

    #[test]
    fn users_at_reference_operating_point() {
        let p = HardwareProfile::default();
        let sc = disc();
        let rho = optimal_rho(&p, &sc, 165, 104).unwrap();
        let k = optimal_users(&p, &sc, 165.0 / 104.0, rho * 104.0).unwrap();
        assert_eq!(k, 104);
    }

    #[test]
    fn approx_matches_quartic_without_processing_power() {
        let mut p = HardwareProfile::default();
        // Infinite computational efficiency kills the K^2/K^3 and M*K
        // terms, which is the regime the approximation is exact in.
        p.l_bs = 1e30;
        p.l_ue = 1e30;
        let sc = disc();
        for (beta, rho_bar) in [(2.0, 10.0), (1.6, 91.0), (4.0, 50.0)] {
            let exact = optimal_users(&p, &sc, beta, rho_bar).unwrap();
            let approx = optimal_users_approx(&p, &sc, beta, rho_bar);
            assert!(
                exact.abs_diff(approx) <= 1,
                "beta={beta} rho_bar={rho_bar}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn approx_guard_returns_one_for_tiny_mu() {
        let mut p = HardwareProfile::default();
        p.p_fix = 0.0;
        p.p_syn = 0.0;
        p.p_ue = 1e6;
        let sc = disc();
        assert_eq!(optimal_users_approx(&p, &sc, 2.0, 1e-9), 1);
    }

    #[test]
    fn antenna_rule_lambert_zero_case() {
        // With the W argument at 0, M^(o) = (e + rho K - 1) / rho.
        let p = HardwareProfile::default();
        let sc = disc();
        let k = 10usize;
        // Choose rho so the argument vanishes: alpha rho^2 + C' rho + K rho - 1 = 0.
        // Zero condition: alpha rho^2 + C' rho + D'(K rho - 1) = 0.
        let co = CircuitCoefficients::from_profile(&p);
        let (c1, d1) = per_user_coefficients(&co, k);
        let alpha = p.noise_power_w * sc.s_x() / p.eta();
        let b = c1 + d1 * k as f64;
        let rho = (-b + (b * b + 4.0 * alpha * d1).sqrt()) / (2.0 * alpha);
        let m_frac = antennas_fractional(&p, &sc, k, rho).unwrap();
        let expect = (E + rho * k as f64 - 1.0) / rho;
        assert!((m_frac / expect - 1.0).abs() < 1e-9);
    }

    #[test]
    fn power_rule_lambert_zero_case() {
        // Tuned so eta (M-K)(C' + M D') / (B sigma^2 S_x) = 1.
        let p = HardwareProfile::default();
        let sc = disc();
        let (m, k) = (20usize, 10usize);
        let co = CircuitCoefficients::from_profile(&p);
        let (c1, d1) = per_user_coefficients(&co, k);
        let mut q = p.clone();
        q.noise_power_w = q.eta() * (m - k) as f64 * (c1 + m as f64 * d1) / sc.s_x();
        // Coefficients depend only on the profile's power entries, so the
        // noise rescale does not move C'/D'.
        let rho = optimal_rho(&q, &sc, m, k).unwrap();
        assert!((rho - (E - 1.0) / (m - k) as f64).abs() < 1e-12);
    }

    #[test]
    fn antennas_match_grid_oracle() {
        let p = HardwareProfile::default();
        let sc = disc();
        for (k, rho) in [(10usize, 0.3), (40, 1.2), (104, 0.8747), (200, 0.05)] {
            let closed = optimal_antennas(&p, &sc, k, rho).unwrap();
            let grid = (k + 1..=10 * k + 1000)
                .map(|m| (m, ee_or_zero(&p, &sc, m, k, rho)))
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap()
                .0;
            assert_eq!(closed, grid, "k={k} rho={rho}");
        }
    }

    #[test]
    fn imperfect_antennas_exceed_perfect() {
        let p = HardwareProfile::default();
        let sc = disc();
        let perfect = optimal_antennas(&p, &sc, 104, 0.8747).unwrap();
        let imperfect = optimal_antennas_imperfect(&p, &sc, 104, 0.8747, 1.0).unwrap();
        assert!(imperfect >= perfect);
        let long_pilots = optimal_antennas_imperfect(&p, &sc, 104, 0.8747, 1e12).unwrap();
        assert_eq!(long_pilots, perfect);
    }

    #[test]
    fn rho_matches_golden_section() {
        let p = HardwareProfile::default();
        let sc = disc();
        for (m, k) in [(50usize, 10usize), (165, 104), (300, 120)] {
            let closed = optimal_rho(&p, &sc, m, k).unwrap();
            let (num, _) = golden_section_max(
                |r| ee_or_zero(&p, &sc, m, k, r),
                RHO_BRACKET.0,
                1e3,
                1e-10,
            );
            assert!(
                (closed / num - 1.0).abs() < 1e-6,
                "(M,K)=({m},{k}): {closed} vs {num}"
            );
        }
    }

    #[test]
    fn bounds_sit_below_exact_optimizers() {
        let p = HardwareProfile::default();
        let sc = disc();
        let b = scaling_bounds(&p, &sc, 165, 104, 0.8747);
        let m_star = optimal_antennas(&p, &sc, 104, 0.8747).unwrap() as f64;
        let rho_star = optimal_rho(&p, &sc, 165, 104).unwrap();
        assert!(b.m_lower.unwrap() <= m_star + 1.0);
        assert!(b.rho_lower.unwrap() <= rho_star);
    }

    #[test]
    fn antenna_bound_asymptotically_linear_in_rho() {
        let p = HardwareProfile::default();
        let sc = disc();
        let (k, rho) = (104usize, 1e3);
        let co = CircuitCoefficients::from_profile(&p);
        let (_, d1) = per_user_coefficients(&co, k);
        let m_frac = antennas_fractional(&p, &sc, k, rho).unwrap();
        let asym = p.noise_power_w * sc.s_x() / (2.0 * p.eta() * d1) * rho / rho.ln();
        assert!((m_frac / asym - 1.0).abs() < 0.25, "{m_frac} vs {asym}");
    }

    #[test]
    fn alternating_reaches_reference_optimum() {
        let p = HardwareProfile::default();
        let sc = disc();
        let start = DesignPoint::new(3, 1, 1.0).unwrap();
        let out = alternating_optimize(&p, &sc, start, 10).unwrap();
        assert!(out.converged, "did not converge: {:?}", out.trajectory);
        assert_eq!((out.point.m, out.point.k), (165, 104));
        for w in out.trajectory.windows(2) {
            assert!(w[1].ee >= w[0].ee - 1e-9 * w[0].ee.abs());
        }
    }

    #[test]
    fn alternating_fixed_point() {
        let p = HardwareProfile::default();
        let sc = disc();
        let rho = optimal_rho(&p, &sc, 165, 104).unwrap();
        let start = DesignPoint::new(165, 104, rho).unwrap();
        let out = alternating_optimize(&p, &sc, start, 10).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 1);
        assert_eq!((out.point.m, out.point.k), (165, 104));
    }

    #[test]
    fn golden_section_finds_quadratic_peak() {
        let (x, fx) = golden_section_max(|t| -(t - 3.0) * (t - 3.0) + 5.0, 0.1, 100.0, 1e-10);
        assert!((x - 3.0).abs() < 1e-6);
        assert!((fx - 5.0).abs() < 1e-10);
    }

    #[test]
    fn small_sweep_is_consistent() {
        let p = HardwareProfile::default();
        let sc = disc();
        let (best, surface) = exhaustive_search(
            &p,
            &sc,
            Regime::PerfectCsi,
            Scheme::Zf,
            150..=180,
            95..=115,
            None,
        )
        .unwrap();
        assert_eq!((best.m, best.k), (165, 104));
        // Every column of the surface is unimodal in M.
        for k in [95usize, 104, 115] {
            let col: Vec<f64> = surface
                .iter()
                .filter(|c| c.k == k)
                .map(|c| c.ee)
                .collect();
            let mut falls = 0;
            for w in col.windows(2) {
                if w[1] < w[0] {
                    falls += 1;
                } else {
                    assert_eq!(falls, 0, "EE rose after falling in column k={k}");
                }
            }
        }
    }

    #[test]
    fn empty_range_rejected() {
        let p = HardwareProfile::default();
        let sc = disc();
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=1;
        let r = exhaustive_search(&p, &sc, Regime::PerfectCsi, Scheme::Zf, 10..=20, empty, None);
        assert!(r.is_err());
    }
}
