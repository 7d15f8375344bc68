//! Hardware power model: transceiver chains, channel estimation, signal
//! processing, coding/decoding and backhaul, plus the polynomial
//! coefficients that make the model tractable for the optimizers.

use crate::error::{Error, Result};

/// Linear processing scheme at the base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Mrt,
    Zf,
    Mmse,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Mrt => "mrt",
            Scheme::Zf => "zf",
            Scheme::Mmse => "mmse",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mrt" | "mrc" => Ok(Scheme::Mrt),
            "zf" => Ok(Scheme::Zf),
            "mmse" => Ok(Scheme::Mmse),
            _ => Err(Error::ConfigInvalid(format!("unknown scheme '{s}'"))),
        }
    }
}

/// Hardware characterization of one cell. Defaults reproduce the baseline
/// measurements used throughout the reference curves.
#[derive(Debug, Clone, PartialEq)]
pub struct HardwareProfile {
    /// Transmission bandwidth [Hz].
    pub bandwidth_hz: f64,
    /// Coherence block length U = Bc * Tc [symbols].
    pub coherence_block: f64,
    /// Relative uplink pilot length (>= 1).
    pub tau_ul: f64,
    /// Relative downlink pilot length (>= 1).
    pub tau_dl: f64,
    /// Total noise power B * sigma^2 [W].
    pub noise_power_w: f64,
    /// Fraction of data transmission spent on uplink / downlink.
    pub zeta_ul: f64,
    pub zeta_dl: f64,
    /// Power amplifier efficiency at the UE / BS.
    pub pa_eff_ul: f64,
    pub pa_eff_dl: f64,
    /// Computational efficiency at BS / UE [flops/W].
    pub l_bs: f64,
    pub l_ue: f64,
    /// Fixed site power (control, backhaul infrastructure, cooling) [W].
    pub p_fix: f64,
    /// Local oscillator power [W].
    pub p_syn: f64,
    /// Per-BS-antenna and per-UE circuit power [W].
    pub p_bs: f64,
    pub p_ue: f64,
    /// Coding, decoding and backhaul traffic powers [W per bit/s].
    pub p_cod: f64,
    pub p_dec: f64,
    pub p_bt: f64,
    /// Iterations of the MMSE fixed-point update.
    pub mmse_iterations: u32,
}

impl Default for HardwareProfile {
    fn default() -> Self {
        Self {
            bandwidth_hz: 20e6,
            coherence_block: 1800.0,
            tau_ul: 1.0,
            tau_dl: 1.0,
            noise_power_w: 10f64.powf((-96.0 - 30.0) / 10.0),
            zeta_ul: 0.4,
            zeta_dl: 0.6,
            pa_eff_ul: 0.3,
            pa_eff_dl: 0.39,
            l_bs: 12.8e9,
            l_ue: 5e9,
            p_fix: 18.0,
            p_syn: 2.0,
            p_bs: 1.0,
            p_ue: 0.1,
            p_cod: 0.1e-9,
            p_dec: 0.8e-9,
            p_bt: 0.25e-9,
            mmse_iterations: 3,
        }
    }
}

impl HardwareProfile {
    /// Effective PA efficiency of the UL/DL mix:
    /// eta = (zeta_ul / eta_ul + zeta_dl / eta_dl)^-1.
    pub fn eta(&self) -> f64 {
        1.0 / (self.zeta_ul / self.pa_eff_ul + self.zeta_dl / self.pa_eff_dl)
    }

    /// Per-symbol noise variance sigma^2 [W].
    pub fn sigma2(&self) -> f64 {
        self.noise_power_w / self.bandwidth_hz
    }

    pub fn tau_sum(&self) -> f64 {
        self.tau_ul + self.tau_dl
    }

    /// Largest K with a positive payload fraction 1 - tau_sum * K / U.
    pub fn max_users(&self) -> usize {
        let k = (self.coherence_block / self.tau_sum()).floor() as usize;
        k.saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("bandwidth_hz", self.bandwidth_hz),
            ("coherence_block", self.coherence_block),
            ("noise_power_w", self.noise_power_w),
            ("l_bs", self.l_bs),
            ("l_ue", self.l_ue),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Profile(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.tau_ul >= 1.0 && self.tau_dl >= 1.0) {
            return Err(Error::Profile(format!(
                "pilot lengths tau_ul = {}, tau_dl = {} must be >= 1",
                self.tau_ul, self.tau_dl
            )));
        }
        for (name, v) in [
            ("zeta_ul", self.zeta_ul),
            ("zeta_dl", self.zeta_dl),
            ("pa_eff_ul", self.pa_eff_ul),
            ("pa_eff_dl", self.pa_eff_dl),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Profile(format!("{name} = {v} must be in (0, 1]")));
            }
        }
        if (self.zeta_ul + self.zeta_dl - 1.0).abs() > 1e-9 {
            return Err(Error::Profile(format!(
                "zeta_ul + zeta_dl = {} must equal 1",
                self.zeta_ul + self.zeta_dl
            )));
        }
        for (name, v) in [
            ("p_fix", self.p_fix),
            ("p_syn", self.p_syn),
            ("p_bs", self.p_bs),
            ("p_ue", self.p_ue),
            ("p_cod", self.p_cod),
            ("p_dec", self.p_dec),
            ("p_bt", self.p_bt),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Profile(format!("{name} = {v} must be >= 0")));
            }
        }
        if self.mmse_iterations == 0 {
            return Err(Error::Profile("mmse_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

/// Circuit power collapsed onto the polynomial form
/// sum_i C_i K^i + M sum_i D_i K^i + A * total_rate,
/// valid for zero-forcing processing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitCoefficients {
    pub c: [f64; 4],
    pub d: [f64; 3],
    pub a: f64,
}

impl CircuitCoefficients {
    pub fn from_profile(p: &HardwareProfile) -> Self {
        let b = p.bandwidth_hz;
        let u = p.coherence_block;
        Self {
            c: [
                p.p_fix + p.p_syn,
                p.p_ue,
                4.0 * b * p.tau_dl / (u * p.l_ue),
                b / (3.0 * u * p.l_bs),
            ],
            d: [
                p.p_bs,
                (b / p.l_bs) * (2.0 + 1.0 / u),
                (b / (u * p.l_bs)) * (3.0 - 2.0 * p.tau_dl),
            ],
            a: p.p_cod + p.p_dec + p.p_bt,
        }
    }

    /// sum_i C_i K^i
    pub fn c_poly(&self, k: f64) -> f64 {
        self.c[0] + k * (self.c[1] + k * (self.c[2] + k * self.c[3]))
    }

    /// sum_i D_i K^i
    pub fn d_poly(&self, k: f64) -> f64 {
        self.d[0] + k * (self.d[1] + k * self.d[2])
    }
}

/// Itemized circuit power consumption [W].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBreakdown {
    pub fixed: f64,
    pub transceiver_chains: f64,
    pub channel_estimation: f64,
    pub coding_decoding: f64,
    pub backhaul: f64,
    pub linear_processing: f64,
}

impl PowerBreakdown {
    pub fn total(&self) -> f64 {
        self.fixed
            + self.transceiver_chains
            + self.channel_estimation
            + self.coding_decoding
            + self.backhaul
            + self.linear_processing
    }
}

/// Circuit power for an (M, K) deployment sustaining `total_rate_bps` of
/// net traffic under the given processing scheme.
pub fn circuit_power(
    p: &HardwareProfile,
    scheme: Scheme,
    m: usize,
    k: usize,
    total_rate_bps: f64,
) -> Result<PowerBreakdown> {
    let (mf, kf) = (m as f64, k as f64);
    let b = p.bandwidth_hz;
    let u = p.coherence_block;
    let payload = 1.0 - p.tau_sum() * kf / u;
    if payload <= 0.0 {
        return Err(Error::PilotOverhead {
            overhead: p.tau_sum() * kf,
            block: u,
        });
    }
    Ok(PowerBreakdown {
        fixed: p.p_fix,
        transceiver_chains: mf * p.p_bs + p.p_syn + kf * p.p_ue,
        channel_estimation: (b / u) * (2.0 * p.tau_ul * mf * kf * kf / p.l_bs)
            + (b / u) * (4.0 * p.tau_dl * kf * kf / p.l_ue),
        coding_decoding: total_rate_bps * (p.p_cod + p.p_dec),
        backhaul: total_rate_bps * p.p_bt,
        linear_processing: b * payload * 2.0 * mf * kf / p.l_bs
            + precoder_update_flops(p, scheme, mf, kf) / p.l_bs,
    })
}

/// Flop rate of recomputing the precoder/combiner each coherence block.
fn precoder_update_flops(p: &HardwareProfile, scheme: Scheme, mf: f64, kf: f64) -> f64 {
    let per_block = match scheme {
        Scheme::Mrt => 3.0 * mf * kf,
        Scheme::Zf => kf * kf * kf / 3.0 + 3.0 * mf * kf * kf + mf * kf,
        Scheme::Mmse => {
            p.mmse_iterations as f64 * (kf * kf * kf / 3.0 + 3.0 * mf * kf * kf + mf * kf)
        }
    };
    p.bandwidth_hz * per_block / p.coherence_block
}

/// Total computation rate [flops/s] of running the transceiver: matched
/// filtering of the payload, channel estimation at both ends, and the
/// per-block precoder update.
pub fn complexity_flops(p: &HardwareProfile, scheme: Scheme, m: usize, k: usize) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    let b = p.bandwidth_hz;
    let u = p.coherence_block;
    let payload = (1.0 - p.tau_sum() * kf / u).max(0.0);
    b * payload * 2.0 * mf * kf
        + (b / u) * 2.0 * p.tau_ul * mf * kf * kf
        + (b / u) * 4.0 * p.tau_dl * kf * kf
        + precoder_update_flops(p, scheme, mf, kf)
}
