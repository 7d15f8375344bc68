//! Link-level Monte Carlo engine: random user drops, Rayleigh channels,
//! MRC/ZF/MMSE combining, equal-rate power allocation and empirical EE.
//! This is the validation path for the closed forms and the only path to
//! MRT/MMSE operating points.

use crate::error::{Error, Result};
use crate::power::{circuit_power, HardwareProfile, Scheme};
use crate::scenario::PropagationScenario;
use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

type CMatrix = DMatrix<Complex<f64>>;

/// CSI available to the transceiver when forming combiners/precoders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CsiMode {
    Perfect,
    /// Pilot-based MMSE estimation with relative pilot length tau_ul at
    /// power parameter rho.
    Imperfect { rho: f64, tau_ul: f64 },
}

/// One coherence block: user drop, channel realization, and (in the
/// imperfect mode) the MMSE channel estimate.
#[derive(Debug, Clone)]
pub struct ChannelBlock {
    /// M x K channel matrix, one column per user.
    pub h: CMatrix,
    /// Average attenuation l(x_k) per user.
    pub attenuations: Vec<f64>,
    /// MMSE estimate of `h`, present in imperfect mode.
    pub h_hat: Option<CMatrix>,
}

/// Mean with a 95% normal-approximation confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub half_width_95: f64,
    pub trials: usize,
}

impl McEstimate {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
            / (n as f64 - 1.0).max(1.0);
        Self {
            mean,
            half_width_95: 1.96 * var.sqrt() / (n as f64).sqrt(),
            trials: n,
        }
    }
}

/// Full outcome of a Monte Carlo EE run.
#[derive(Debug, Clone, PartialEq)]
pub struct McOutcome {
    pub ee: McEstimate,
    /// Consumed PA power (radiated scaled by the amplifier efficiencies).
    pub pa_power_w: McEstimate,
    /// Mean radiated downlink power per BS antenna [W].
    pub dl_radiated_per_antenna_w: f64,
    /// Net sum rate sustained on feasible blocks [bit/s].
    pub net_sum_rate_bps: f64,
    /// Fraction of blocks where the target rates were feasible.
    pub feasibility: f64,
}

/// Per-block RNG keyed by (seed, block index): reproducible regardless of
/// the parallel schedule.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex<f64> {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(s * re, s * im)
}

/// Draw a coherence block: user positions, Rayleigh channel, and the MMSE
/// channel estimate when pilots are imperfect.
pub fn generate_block<R: Rng + ?Sized>(
    scenario: &PropagationScenario,
    m: usize,
    k: usize,
    rng: &mut R,
    mode: CsiMode,
) -> ChannelBlock {
    let attenuations: Vec<f64> = (0..k)
        .map(|_| scenario.attenuation(scenario.sample_user_location(rng)))
        .collect();
    let h = CMatrix::from_fn(m, k, |_, j| complex_gaussian(rng, attenuations[j]));
    let h_hat = match mode {
        CsiMode::Perfect => None,
        CsiMode::Imperfect { rho, tau_ul } => {
            // Despread pilot observation y = h_k + e with estimation SNR
            // rho K tau_ul, then the MMSE scaling.
            let pilot_snr = rho * k as f64 * tau_ul;
            let scale = Complex::new(1.0 / (1.0 + 1.0 / pilot_snr), 0.0);
            let mut hh = h.clone();
            for j in 0..k {
                let noise_var = attenuations[j] / pilot_snr;
                for i in 0..m {
                    hh[(i, j)] = (hh[(i, j)] + complex_gaussian(rng, noise_var)) * scale;
                }
            }
            Some(hh)
        }
    };
    ChannelBlock {
        h,
        attenuations,
        h_hat,
    }
}

/// Receive combiner (equivalently, the downlink precoder directions).
/// MRC: G = H. ZF: G = H (H^H H)^-1. MMSE: G = (H P H^H + s I)^-1 H,
/// computed through the equivalent K x K system H (P H^H H + s I)^-1.
pub fn combiner(
    h: &CMatrix,
    scheme: Scheme,
    uplink_powers: Option<&DVector<f64>>,
    sigma2: f64,
) -> Result<CMatrix> {
    let (m, k) = h.shape();
    match scheme {
        Scheme::Mrt => Ok(h.clone()),
        Scheme::Zf => {
            if m < k + 1 {
                return Err(Error::ZfDimensions { m, k });
            }
            let gram = h.adjoint() * h;
            let inv = gram
                .cholesky()
                .ok_or(Error::ZfDimensions { m, k })?
                .inverse();
            Ok(h * inv)
        }
        Scheme::Mmse => {
            let p = uplink_powers
                .ok_or_else(|| Error::Scenario("MMSE combiner needs uplink powers".into()))?;
            let mut a = h.adjoint() * h;
            // Left-multiply by diag(p) row-wise, then add the noise ridge.
            for i in 0..k {
                for j in 0..k {
                    a[(i, j)] *= Complex::new(p[i], 0.0);
                }
            }
            for i in 0..k {
                a[(i, i)] += Complex::new(sigma2, 0.0);
            }
            let inv = a
                .lu()
                .try_inverse()
                .ok_or_else(|| Error::Scenario("singular MMSE system".into()))?;
            Ok(h * inv)
        }
    }
}

/// Directed link the power allocation is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Uplink,
    Downlink,
}

/// Normalized coupling of combiner k to channel l:
/// coupling[(k, l)] = |g_k^H h_l|^2 / ||g_k||^2.
pub fn coupling_matrix(g: &CMatrix, h: &CMatrix) -> DMatrix<f64> {
    let k = h.ncols();
    let cross = g.adjoint() * h;
    DMatrix::from_fn(k, k, |i, j| {
        cross[(i, j)].norm_sqr() / g.column(i).norm_squared()
    })
}

/// Equal-rate powers from a precomputed coupling matrix at a given SINR
/// target: solves D p = sigma2 * 1 with D_kk = coupling_kk / target and
/// D_kl = -coupling_kl. Returns None when the target is infeasible
/// (negative powers or interference spectral radius >= 1).
pub fn equal_rate_powers_from_coupling(
    coupling: &DMatrix<f64>,
    sinr_target: f64,
    sigma2: f64,
) -> Option<DVector<f64>> {
    let k = coupling.nrows();
    let mut d = -coupling.clone();
    for i in 0..k {
        d[(i, i)] = coupling[(i, i)] / sinr_target;
    }
    let p = d.clone().lu().solve(&DVector::from_element(k, sigma2))?;
    if p.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return None;
    }
    // Feasibility certificate: rho(Delta^-1 N) < 1 for D = Delta - N.
    let mut ratio = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if i != j {
                ratio[(i, j)] = coupling[(i, j)] * sinr_target / coupling[(i, i)];
            }
        }
    }
    if spectral_radius(&ratio) >= 1.0 {
        return None;
    }
    Some(p)
}

/// Spectral radius of a nonnegative matrix by power iteration.
fn spectral_radius(a: &DMatrix<f64>) -> f64 {
    let k = a.nrows();
    let mut x = DVector::from_element(k, 1.0 / (k as f64).sqrt());
    let mut lambda = 0.0;
    for _ in 0..200 {
        let y = a * &x;
        let norm = y.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm / x.norm();
        let done = (next - lambda).abs() <= 1e-12 * next;
        lambda = next;
        x = y / norm;
        if done {
            break;
        }
    }
    lambda
}

/// Solve the equal-rate condition for the transmit powers that give every
/// user the same gross rate `target_rate_bps`.
pub fn equal_rate_power_allocation(
    g: &CMatrix,
    h: &CMatrix,
    target_rate_bps: f64,
    bandwidth_hz: f64,
    sigma2: f64,
    direction: Direction,
) -> Option<DVector<f64>> {
    let sinr = (2f64).powf(target_rate_bps / bandwidth_hz) - 1.0;
    let c = coupling_matrix(g, h);
    let c = match direction {
        Direction::Uplink => c,
        // Downlink roles swap: D^(dl) = (D^(ul))^T when V = G.
        Direction::Downlink => c.transpose(),
    };
    equal_rate_powers_from_coupling(&c, sinr, sigma2)
}

/// How the target gross rate of a run is parameterized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateTarget {
    /// The analytic ZF parameterization: target = B log2(1 + rho (M - K))
    /// (with the CSI-dependent SINR loss in imperfect mode).
    Rho(f64),
    /// Explicit gross rate in bit/s.
    GrossRate(f64),
}

struct BlockSample {
    pa_consumed_w: f64,
    dl_radiated_w: f64,
}

/// Empirical EE at an (M, K) operating point: equal-rate allocation per
/// block, rate fixed at the target, powers and feasibility averaged over
/// `trials` independent blocks. Deterministic for a fixed seed.
pub fn estimate_ee(
    profile: &HardwareProfile,
    scenario: &PropagationScenario,
    scheme: Scheme,
    m: usize,
    k: usize,
    target: RateTarget,
    trials: usize,
    seed: u64,
    mode: CsiMode,
) -> Result<McOutcome> {
    if trials < 2 {
        return Err(Error::Scenario("Monte Carlo needs trials >= 2".into()));
    }
    let b = profile.bandwidth_hz;
    let sigma2 = profile.sigma2();
    // Effective noise and pilot length depend on the CSI mode; estimation
    // error is treated as channel-averaged extra noise.
    let (sigma2_eff, tau_ul) = match mode {
        CsiMode::Perfect => (sigma2, profile.tau_ul),
        CsiMode::Imperfect { rho, tau_ul } => {
            let kf = k as f64;
            (
                sigma2 * (1.0 + kf * rho / (1.0 + rho * kf * tau_ul)),
                tau_ul,
            )
        }
    };
    let gross = match target {
        RateTarget::GrossRate(r) => r,
        RateTarget::Rho(rho) => match mode {
            CsiMode::Perfect => b * (1.0 + rho * (m as f64 - k as f64)).log2(),
            CsiMode::Imperfect { tau_ul, .. } => {
                crate::rates::gross_rate_zf_imperfect(b, m, k, rho, tau_ul)
            }
        },
    };
    let sinr_target = (2f64).powf(gross / b) - 1.0;

    let samples: Vec<Option<BlockSample>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = block_rng(seed, i);
            let block = generate_block(scenario, m, k, &mut rng, mode);
            simulate_block(profile, scheme, &block, sinr_target, sigma2_eff).ok()
        })
        .collect();

    let feasible: Vec<&BlockSample> = samples.iter().flatten().collect();
    let feasibility = feasible.len() as f64 / trials as f64;
    if feasibility < 0.5 {
        return Err(Error::InfeasibleSinr);
    }

    let tau_sum = tau_ul + profile.tau_dl;
    let payload = 1.0 - tau_sum * k as f64 / profile.coherence_block;
    if payload <= 0.0 {
        return Err(Error::PilotOverhead {
            overhead: tau_sum * k as f64,
            block: profile.coherence_block,
        });
    }
    let net_sum_rate = k as f64 * payload * gross;
    let mut eff = profile.clone();
    eff.tau_ul = tau_ul;
    let cp = circuit_power(&eff, scheme, m, k, net_sum_rate)?.total();

    let pa_samples: Vec<f64> = feasible.iter().map(|s| s.pa_consumed_w).collect();
    let ee_samples: Vec<f64> = pa_samples.iter().map(|&pa| net_sum_rate / (pa + cp)).collect();
    let pa = McEstimate::from_samples(&pa_samples);
    let mut ee = McEstimate::from_samples(&ee_samples);
    // Headline figure is the ratio of averages, not the average ratio.
    ee.mean = net_sum_rate / (pa.mean + cp);
    let dl_mean =
        feasible.iter().map(|s| s.dl_radiated_w).sum::<f64>() / feasible.len() as f64;

    Ok(McOutcome {
        ee,
        pa_power_w: pa,
        dl_radiated_per_antenna_w: dl_mean / m as f64,
        net_sum_rate_bps: net_sum_rate,
        feasibility,
    })
}

fn simulate_block(
    profile: &HardwareProfile,
    scheme: Scheme,
    block: &ChannelBlock,
    sinr_target: f64,
    sigma2: f64,
) -> Result<BlockSample> {
    let h = block.h_hat.as_ref().unwrap_or(&block.h);
    let (p_ul, coupling) = match scheme {
        Scheme::Mmse => {
            // Fixed point between combiner and powers, seeded by ZF.
            let g = combiner(h, Scheme::Zf, None, sigma2)?;
            let c = coupling_matrix(&g, h);
            let mut p = equal_rate_powers_from_coupling(&c, sinr_target, sigma2)
                .ok_or(Error::InfeasibleSinr)?;
            let mut c_last = c;
            for _ in 0..profile.mmse_iterations {
                let g = combiner(h, Scheme::Mmse, Some(&p), sigma2)?;
                c_last = coupling_matrix(&g, h);
                p = equal_rate_powers_from_coupling(&c_last, sinr_target, sigma2)
                    .ok_or(Error::InfeasibleSinr)?;
            }
            (p, c_last)
        }
        _ => {
            let g = combiner(h, scheme, None, sigma2)?;
            let c = coupling_matrix(&g, h);
            let p = equal_rate_powers_from_coupling(&c, sinr_target, sigma2)
                .ok_or(Error::InfeasibleSinr)?;
            (p, c)
        }
    };
    let p_dl = equal_rate_powers_from_coupling(&coupling.transpose(), sinr_target, sigma2)
        .ok_or(Error::InfeasibleSinr)?;
    let b = profile.bandwidth_hz;
    let pa_consumed_w = b
        * (profile.zeta_ul / profile.pa_eff_ul * p_ul.sum()
            + profile.zeta_dl / profile.pa_eff_dl * p_dl.sum());
    let dl_radiated_w = b * profile.zeta_dl * p_dl.sum();
    Ok(BlockSample {
        pa_consumed_w,
        dl_radiated_w,
    })
}

/// Empirical vs. analytic E{tr((H^H H)^-1)} for one fixed user drop:
/// the Wishart inverse-moment identity tr(Lambda^-1)/(M - K).
pub fn wishart_inverse_trace_check(
    scenario: &PropagationScenario,
    m: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if m < k + 1 {
        return Err(Error::ZfDimensions { m, k });
    }
    let mut rng = block_rng(seed, 0);
    let attenuations: Vec<f64> = (0..k)
        .map(|_| scenario.attenuation(scenario.sample_user_location(&mut rng)))
        .collect();
    let analytic = attenuations.iter().map(|l| 1.0 / l).sum::<f64>() / (m - k) as f64;
    let total: f64 = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = block_rng(seed, i + 1);
            let h = CMatrix::from_fn(m, k, |_, j| complex_gaussian(&mut rng, attenuations[j]));
            let gram = h.adjoint() * h;
            let inv = gram.cholesky().expect("Wishart matrix is PD a.s.").inverse();
            (0..k).map(|d| inv[(d, d)].re).sum::<f64>()
        })
        .sum();
    Ok((total / trials as f64, analytic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::pa_power_zf;
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
    fn channel_column_variance_matches_attenuation() {
        let sc = disc();
        let mut rng = block_rng(42, 0);
        let block = generate_block(&sc, 400, 3, &mut rng, CsiMode::Perfect);
        for j in 0..3 {
            let var = block.h.column(j).norm_squared() / 400.0;
            assert!(
                (var / block.attenuations[j] - 1.0).abs() < 0.25,
                "column {j}: {var} vs {}",
                block.attenuations[j]
            );
        }
    }

    #[test]
    fn estimate_variance_shrinks_by_pilot_snr() {
        let sc = disc();
        let (m, k, rho, tau) = (2000usize, 4usize, 0.5, 1.0);
        let mut rng = block_rng(7, 0);
        let block = generate_block(&sc, m, k, &mut rng, CsiMode::Imperfect { rho, tau_ul: tau });
        let hh = block.h_hat.as_ref().unwrap();
        let shrink = 1.0 / (1.0 + 1.0 / (rho * k as f64 * tau));
        for j in 0..k {
            let var = hh.column(j).norm_squared() / m as f64;
            let expect = block.attenuations[j] * shrink;
            assert!((var / expect - 1.0).abs() < 0.2, "column {j}");
        }
    }

    #[test]
    fn zf_combiner_inverts_channel() {
        let sc = disc();
        let mut rng = block_rng(1, 0);
        let block = generate_block(&sc, 30, 10, &mut rng, CsiMode::Perfect);
        let g = combiner(&block.h, Scheme::Zf, None, 1e-13).unwrap();
        let prod = g.adjoint() * &block.h;
        for i in 0..10 {
            for j in 0..10 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)].re - expect).abs() < 1e-10);
                assert!(prod[(i, j)].im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mmse_tends_to_mrc_at_high_noise() {
        let sc = disc();
        let mut rng = block_rng(2, 0);
        let block = generate_block(&sc, 20, 5, &mut rng, CsiMode::Perfect);
        let p = DVector::from_element(5, 1.0);
        let sigma2 = 1e8 * block.h.norm_squared();
        let g = combiner(&block.h, Scheme::Mmse, Some(&p), sigma2).unwrap();
        // G ~ H / sigma2 in the noise-dominated limit.
        let scaled = &g * Complex::new(sigma2, 0.0);
        let rel = (&scaled - &block.h).norm() / block.h.norm();
        assert!(rel < 1e-6, "rel = {rel}");
    }

    #[test]
    fn equal_rate_allocation_hits_target_sinr() {
        let sc = disc();
        let p = HardwareProfile::default();
        let mut rng = block_rng(3, 0);
        let block = generate_block(&sc, 24, 8, &mut rng, CsiMode::Perfect);
        let sigma2 = p.sigma2();
        for scheme in [Scheme::Mrt, Scheme::Zf] {
            let g = combiner(&block.h, scheme, None, sigma2).unwrap();
            let target = 2e6 * p.bandwidth_hz / p.bandwidth_hz; // 2 bit/symbol
            let _ = target;
            let rate = 2.0 * p.bandwidth_hz;
            let pv = equal_rate_power_allocation(
                &g,
                &block.h,
                rate,
                p.bandwidth_hz,
                sigma2,
                Direction::Uplink,
            )
            .unwrap();
            let want = (2f64).powf(rate / p.bandwidth_hz) - 1.0;
            let cross = g.adjoint() * &block.h;
            for kk in 0..8 {
                let sig = pv[kk] * cross[(kk, kk)].norm_sqr();
                let mut interf = sigma2 * block.h.ncols() as f64 * 0.0;
                for l in 0..8 {
                    if l != kk {
                        interf += pv[l] * cross[(kk, l)].norm_sqr();
                    }
                }
                let sinr = sig / (interf + sigma2 * g.column(kk).norm_squared());
                assert!(
                    (sinr / want - 1.0).abs() < 1e-9,
                    "{scheme:?} user {kk}: {sinr} vs {want}"
                );
            }
        }
    }

    #[test]
    fn scalar_mrc_power_closed_form() {
        let sc = disc();
        let mut rng = block_rng(4, 0);
        let block = generate_block(&sc, 16, 1, &mut rng, CsiMode::Perfect);
        let sigma2 = 1e-13;
        let rate = 3.0 * 20e6;
        let g = combiner(&block.h, Scheme::Mrt, None, sigma2).unwrap();
        let p = equal_rate_power_allocation(&g, &block.h, rate, 20e6, sigma2, Direction::Uplink)
            .unwrap();
        let expect = sigma2 * ((2f64).powf(3.0) - 1.0) / block.h.column(0).norm_squared();
        assert!((p[0] / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uplink_downlink_duality_of_total_power() {
        let sc = disc();
        let sigma2 = 1e-13;
        for seed in 0..20 {
            let mut rng = block_rng(seed, 0);
            let block = generate_block(&sc, 20, 6, &mut rng, CsiMode::Perfect);
            let g = combiner(&block.h, Scheme::Mrt, None, sigma2).unwrap();
            let rate = 1.5 * 20e6;
            let pu =
                equal_rate_power_allocation(&g, &block.h, rate, 20e6, sigma2, Direction::Uplink)
                    .unwrap();
            let pd =
                equal_rate_power_allocation(&g, &block.h, rate, 20e6, sigma2, Direction::Downlink)
                    .unwrap();
            assert!(
                (pu.sum() / pd.sum() - 1.0).abs() < 1e-9,
                "seed {seed}: {} vs {}",
                pu.sum(),
                pd.sum()
            );
        }
    }

    #[test]
    fn infeasible_target_returns_none() {
        let sc = disc();
        let mut rng = block_rng(5, 0);
        let block = generate_block(&sc, 9, 8, &mut rng, CsiMode::Perfect);
        let g = combiner(&block.h, Scheme::Mrt, None, 1e-13).unwrap();
        // 12 bit/symbol through MRC with K near M is far beyond feasibility.
        let p = equal_rate_power_allocation(&g, &block.h, 12.0 * 20e6, 20e6, 1e-13, Direction::Uplink);
        assert!(p.is_none());
    }

    #[test]
    fn wishart_identity_small_case() {
        let sc = disc();
        let (emp, ana) = wishart_inverse_trace_check(&sc, 20, 10, 20_000, 13).unwrap();
        assert!((emp / ana - 1.0).abs() < 0.02, "{emp} vs {ana}");
    }

    #[test]
    fn zf_pa_power_matches_closed_form() {
        let sc = disc();
        let p = HardwareProfile::default();
        let (m, k, rho) = (60, 20, 0.6);
        let out = estimate_ee(
            &p,
            &sc,
            Scheme::Zf,
            m,
            k,
            RateTarget::Rho(rho),
            4000,
            17,
            CsiMode::Perfect,
        )
        .unwrap();
        let closed = pa_power_zf(&p, &sc, k, rho);
        assert!(
            (out.pa_power_w.mean - closed).abs() < 3.0 * out.pa_power_w.half_width_95,
            "MC {} +/- {} vs closed {}",
            out.pa_power_w.mean,
            out.pa_power_w.half_width_95,
            closed
        );
    }

    #[test]
    fn determinism_for_fixed_seed() {
        let sc = disc();
        let p = HardwareProfile::default();
        let run = || {
            estimate_ee(
                &p,
                &sc,
                Scheme::Zf,
                40,
                12,
                RateTarget::Rho(0.5),
                200,
                99,
                CsiMode::Perfect,
            )
            .unwrap()
        };
        let (a, b) = (run(), run());
        assert_eq!(a.ee.mean.to_bits(), b.ee.mean.to_bits());
        assert_eq!(a.pa_power_w.mean.to_bits(), b.pa_power_w.mean.to_bits());
    }

    #[test]
    fn mmse_needs_no_more_power_than_zf() {
        let sc = disc();
        let p = HardwareProfile::default();
        let zf = estimate_ee(
            &p,
            &sc,
            Scheme::Zf,
            40,
            12,
            RateTarget::Rho(0.5),
            500,
            23,
            CsiMode::Perfect,
        )
        .unwrap();
        let mmse = estimate_ee(
            &p,
            &sc,
            Scheme::Mmse,
            40,
            12,
            RateTarget::Rho(0.5),
            500,
            23,
            CsiMode::Perfect,
        )
        .unwrap();
        assert!(mmse.pa_power_w.mean <= zf.pa_power_w.mean * 1.001);
    }
}
