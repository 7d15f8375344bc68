//! Gross/net rate models for the three CSI regimes and the headline
//! energy-efficiency functional evaluated at a design point.

use crate::error::{Error, Result};
use crate::power::{circuit_power, HardwareProfile, PowerBreakdown, Scheme};
use crate::scenario::{MulticellScenario, PropagationScenario};

/// Channel-knowledge regime the analytic rate model is evaluated under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Genie-aided CSI; the tractable baseline.
    PerfectCsi,
    /// Single cell, pilot-based MMSE estimation.
    ImperfectCsi,
    /// Symmetric multi-cell with pilot contamination.
    Multicell { reuse_factor: u32 },
}

impl Regime {
    /// Relative uplink pilot length the regime needs: pilot reuse forces
    /// tau_ul >= reuse factor; otherwise the profile value stands.
    pub fn effective_tau_ul(&self, profile: &HardwareProfile) -> f64 {
        match self {
            Regime::Multicell { reuse_factor } => profile.tau_ul.max(*reuse_factor as f64),
            _ => profile.tau_ul,
        }
    }
}

/// One candidate operating point of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignPoint {
    pub m: usize,
    pub k: usize,
    /// Power control parameter: per-user SNR slack, so received SNR is
    /// rho * (M - K) under ZF with perfect CSI.
    pub rho: f64,
}

impl DesignPoint {
    pub fn new(m: usize, k: usize, rho: f64) -> Result<Self> {
        if k == 0 || m <= k {
            return Err(Error::ZfDimensions { m, k });
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Scenario(format!("rho = {rho} must be positive")));
        }
        Ok(Self { m, k, rho })
    }
}

/// Full evaluation of the EE functional at one design point.
#[derive(Debug, Clone, PartialEq)]
pub struct EeResult {
    pub point: DesignPoint,
    /// Energy efficiency [bit/Joule].
    pub ee: f64,
    /// Gross per-user rate [bit/s].
    pub gross_rate: f64,
    /// Net per-user rate after pilot overhead [bit/s].
    pub net_rate: f64,
    /// Net sum rate of the cell [bit/s].
    pub total_rate: f64,
    /// Average total PA (radiated, efficiency-scaled) power [W].
    pub pa_power: f64,
    pub circuit: PowerBreakdown,
    /// Area throughput [bit/s/m^2].
    pub area_throughput: f64,
}

impl EeResult {
    pub fn total_power(&self) -> f64 {
        self.pa_power + self.circuit.total()
    }
}

/// ZF gross rate with perfect CSI: B log2(1 + rho (M - K)).
pub fn gross_rate_zf_perfect(b: f64, m: usize, k: usize, rho: f64) -> f64 {
    b * (1.0 + rho * (m - k) as f64).log2()
}

/// ZF gross rate with MMSE channel estimates from pilots of relative
/// length tau_ul.
pub fn gross_rate_zf_imperfect(b: f64, m: usize, k: usize, rho: f64, tau_ul: f64) -> f64 {
    let loss = 1.0 + 1.0 / tau_ul + 1.0 / (rho * k as f64 * tau_ul);
    b * (1.0 + rho * (m - k) as f64 / loss).log2()
}

/// ZF gross rate in a symmetric multi-cell system with pilot
/// contamination, through precomputed interference aggregates.
pub fn gross_rate_zf_multicell(
    b: f64,
    m: usize,
    k: usize,
    rho: f64,
    tau_ul: f64,
    mc: &MulticellScenario,
) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    let denom = mc.i_pc
        + (1.0 + mc.i_pc + 1.0 / (rho * kf * tau_ul)) * (1.0 + kf * rho * mc.i_total)
            / (rho * (mf - kf))
        - kf * (1.0 + mc.i_pc2) / (mf - kf);
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    b * (1.0 + 1.0 / denom).log2()
}

/// Average total PA power B sigma^2 rho S_x K / eta sustaining the ZF rate.
pub fn pa_power_zf(profile: &HardwareProfile, scenario: &PropagationScenario, k: usize, rho: f64) -> f64 {
    profile.noise_power_w * rho * scenario.s_x() * k as f64 / profile.eta()
}

/// Evaluate the EE functional (net throughput over PA + circuit power) at
/// one design point, under the given scheme and CSI regime.
///
/// The analytic rates are ZF rates; MRT/MMSE only change the
/// linear-processing circuit term, which is what the scheme argument
/// controls here. Monte Carlo evaluation handles the scheme-specific
/// rates.
pub fn evaluate_ee(
    profile: &HardwareProfile,
    scenario: &PropagationScenario,
    scheme: Scheme,
    regime: Regime,
    multicell: Option<&MulticellScenario>,
    point: DesignPoint,
) -> Result<EeResult> {
    let b = profile.bandwidth_hz;
    let tau_ul = regime.effective_tau_ul(profile);
    let tau_sum = tau_ul + profile.tau_dl;
    let kf = point.k as f64;
    let payload = 1.0 - tau_sum * kf / profile.coherence_block;
    if payload <= 0.0 {
        return Err(Error::PilotOverhead {
            overhead: tau_sum * kf,
            block: profile.coherence_block,
        });
    }
    let gross = match regime {
        Regime::PerfectCsi => gross_rate_zf_perfect(b, point.m, point.k, point.rho),
        Regime::ImperfectCsi => gross_rate_zf_imperfect(b, point.m, point.k, point.rho, tau_ul),
        Regime::Multicell { .. } => {
            let mc = multicell.ok_or_else(|| {
                Error::Scenario("multi-cell regime requires a MulticellScenario".into())
            })?;
            gross_rate_zf_multicell(b, point.m, point.k, point.rho, tau_ul, mc)
        }
    };
    let net_rate = payload * gross;
    let total_rate = kf * net_rate;

    // Circuit power must see the same effective pilot length as the rate.
    let mut eff = profile.clone();
    eff.tau_ul = tau_ul;
    let circuit = circuit_power(&eff, scheme, point.m, point.k, total_rate)?;
    let pa_power = pa_power_zf(profile, scenario, point.k, point.rho);
    let total_power = pa_power + circuit.total();
    Ok(EeResult {
        point,
        ee: total_rate / total_power,
        gross_rate: gross,
        net_rate,
        total_rate,
        pa_power,
        circuit,
        area_throughput: total_rate / scenario.cell_area_m2(),
    })
}
