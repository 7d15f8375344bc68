//! Experiment configuration: a small line-oriented `key = value` format
//! with `[profile]`, `[scenario]` and `[experiment]` sections, `#`
//! comments, and baseline defaults for every key.

use crate::error::{Error, Result};
use crate::power::{HardwareProfile, Scheme};
use crate::rates::Regime;
use crate::scenario::{Geometry, PropagationScenario};
use std::path::Path;

/// Scenario-geometry knobs as written in a config file. The geometry kind
/// is optional: sweeps default to the disc cell, multi-cell runs to the
/// square grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: Option<String>,
    pub d_min: f64,
    pub d_max: f64,
    pub side: f64,
    pub kappa: f64,
    pub dbar: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            geometry: None,
            d_min: 35.0,
            d_max: 250.0,
            side: 500.0,
            kappa: 3.76,
            dbar: 10f64.powf(-3.53),
        }
    }
}

impl ScenarioConfig {
    /// Resolve the geometry and build the propagation scenario. Without an
    /// explicit geometry, multi-cell regimes get the square cell and
    /// everything else the disc.
    pub fn build(&self, regime: Regime) -> Result<PropagationScenario> {
        let kind = match &self.geometry {
            Some(k) => k.clone(),
            None => match regime {
                Regime::Multicell { .. } => "square".to_string(),
                _ => "disc".to_string(),
            },
        };
        let geometry = match kind.as_str() {
            "disc" => Geometry::Disc {
                d_min: self.d_min,
                d_max: self.d_max,
            },
            "square" => Geometry::Square {
                side: self.side,
                d_min: self.d_min,
            },
            other => {
                return Err(Error::ConfigInvalid(format!(
                    "geometry must be 'disc' or 'square', got '{other}'"
                )))
            }
        };
        PropagationScenario::new(geometry, self.kappa, self.dbar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub profile: HardwareProfile,
    pub scenario: ScenarioConfig,
    pub scheme: Scheme,
    pub regime_name: String,
    pub reuse_factor: u32,
    pub m_min: usize,
    pub m_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            profile: HardwareProfile::default(),
            scenario: ScenarioConfig::default(),
            scheme: Scheme::Zf,
            regime_name: "perfect".into(),
            reuse_factor: 1,
            m_min: 1,
            m_max: 400,
            k_min: 1,
            k_max: 300,
            trials: 10_000,
            seed: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn regime(&self) -> Result<Regime> {
        match self.regime_name.as_str() {
            "perfect" => Ok(Regime::PerfectCsi),
            "imperfect" => Ok(Regime::ImperfectCsi),
            "multicell" => Ok(Regime::Multicell {
                reuse_factor: self.reuse_factor,
            }),
            other => Err(Error::ConfigInvalid(format!("unknown regime '{other}'"))),
        }
    }

    /// K sweep cap: the configured bound clipped to the pilot-feasible set.
    pub fn k_cap(&self) -> usize {
        let regime = self.regime().unwrap_or(Regime::PerfectCsi);
        let tau_sum = regime.effective_tau_ul(&self.profile) + self.profile.tau_dl;
        let cap = ((self.profile.coherence_block / tau_sum).floor() as usize).saturating_sub(1);
        self.k_max.min(cap)
    }

    pub fn validate(&self) -> Result<()> {
        self.profile.validate()?;
        if !matches!(self.reuse_factor, 1 | 2 | 4) {
            return Err(Error::ReuseFactor(self.reuse_factor));
        }
        self.regime()?;
        if self.m_min < 1 || self.m_min > self.m_max || self.k_min < 1 || self.k_min > self.k_max {
            return Err(Error::ConfigInvalid(format!(
                "sweep ranges M in [{}, {}], K in [{}, {}] are malformed",
                self.m_min, self.m_max, self.k_min, self.k_max
            )));
        }
        if self.trials < 2 {
            return Err(Error::ConfigInvalid("trials must be >= 2".into()));
        }
        // Geometry invariants surface through construction.
        self.scenario.build(self.regime()?)?;
        Ok(())
    }
}

fn watts_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Per-Gbit/s figures are the natural config unit; internally W per bit/s.
const GBIT: f64 = 1e9;

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = line[1..line.len() - 1].trim().to_string();
            if !matches!(section.as_str(), "profile" | "scenario" | "experiment") {
                return Err(Error::ConfigParse {
                    line: line_no,
                    msg: format!("unknown section '[{section}]'"),
                });
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::ConfigParse {
                line: line_no,
                msg: format!("expected 'key = value', got '{line}'"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        apply_key(&mut cfg, &section, key, value).map_err(|e| match e {
            Error::ConfigParse { .. } => e,
            other => Error::ConfigParse {
                line: line_no,
                msg: other.to_string(),
            },
        })?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn num(value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::ConfigInvalid(format!("'{value}' is not a number")))
}

fn int(value: &str) -> Result<u64> {
    value
        .parse::<u64>()
        .map_err(|_| Error::ConfigInvalid(format!("'{value}' is not an integer")))
}

fn apply_key(cfg: &mut ExperimentConfig, section: &str, key: &str, value: &str) -> Result<()> {
    let p = &mut cfg.profile;
    match (section, key) {
        ("profile", "bandwidth_hz") => p.bandwidth_hz = num(value)?,
        ("profile", "coherence_block") => p.coherence_block = num(value)?,
        ("profile", "tau_ul") => p.tau_ul = num(value)?,
        ("profile", "tau_dl") => p.tau_dl = num(value)?,
        ("profile", "noise_power_dbm") => p.noise_power_w = dbm_to_watts(num(value)?),
        ("profile", "zeta_ul") => p.zeta_ul = num(value)?,
        ("profile", "zeta_dl") => p.zeta_dl = num(value)?,
        ("profile", "pa_eff_ul") => p.pa_eff_ul = num(value)?,
        ("profile", "pa_eff_dl") => p.pa_eff_dl = num(value)?,
        ("profile", "l_bs_flops_per_w") => p.l_bs = num(value)?,
        ("profile", "l_ue_flops_per_w") => p.l_ue = num(value)?,
        ("profile", "p_fix_w") => p.p_fix = num(value)?,
        ("profile", "p_syn_w") => p.p_syn = num(value)?,
        ("profile", "p_bs_w") => p.p_bs = num(value)?,
        ("profile", "p_ue_w") => p.p_ue = num(value)?,
        ("profile", "p_cod_w_per_gbit") => p.p_cod = num(value)? / GBIT,
        ("profile", "p_dec_w_per_gbit") => p.p_dec = num(value)? / GBIT,
        ("profile", "p_bt_w_per_gbit") => p.p_bt = num(value)? / GBIT,
        ("profile", "mmse_iterations") => p.mmse_iterations = int(value)? as u32,
        ("scenario", "geometry") => cfg.scenario.geometry = Some(value.to_string()),
        ("scenario", "d_min") => cfg.scenario.d_min = num(value)?,
        ("scenario", "d_max") => cfg.scenario.d_max = num(value)?,
        ("scenario", "side") => cfg.scenario.side = num(value)?,
        ("scenario", "kappa") => cfg.scenario.kappa = num(value)?,
        ("scenario", "dbar") => cfg.scenario.dbar = num(value)?,
        ("experiment", "scheme") => cfg.scheme = value.parse()?,
        ("experiment", "regime") => cfg.regime_name = value.to_string(),
        ("experiment", "reuse") => cfg.reuse_factor = int(value)? as u32,
        ("experiment", "m_min") => cfg.m_min = int(value)? as usize,
        ("experiment", "m_max") => cfg.m_max = int(value)? as usize,
        ("experiment", "k_min") => cfg.k_min = int(value)? as usize,
        ("experiment", "k_max") => cfg.k_max = int(value)? as usize,
        ("experiment", "trials") => cfg.trials = int(value)? as usize,
        ("experiment", "seed") => cfg.seed = int(value)?,
        _ => {
            return Err(Error::ConfigInvalid(format!(
                "unknown key '{key}' in section '[{section}]'"
            )))
        }
    }
    Ok(())
}

pub fn save_config(cfg: &ExperimentConfig, path: &Path) -> Result<()> {
    std::fs::write(path, render_config(cfg))?;
    Ok(())
}

pub fn render_config(cfg: &ExperimentConfig) -> String {
    let p = &cfg.profile;
    let s = &cfg.scenario;
    let mut out = String::new();
    out.push_str("[profile]\n");
    out.push_str(&format!("bandwidth_hz = {}\n", p.bandwidth_hz));
    out.push_str(&format!("coherence_block = {}\n", p.coherence_block));
    out.push_str(&format!("tau_ul = {}\n", p.tau_ul));
    out.push_str(&format!("tau_dl = {}\n", p.tau_dl));
    out.push_str(&format!(
        "noise_power_dbm = {}\n",
        watts_to_dbm(p.noise_power_w)
    ));
    out.push_str(&format!("zeta_ul = {}\n", p.zeta_ul));
    out.push_str(&format!("zeta_dl = {}\n", p.zeta_dl));
    out.push_str(&format!("pa_eff_ul = {}\n", p.pa_eff_ul));
    out.push_str(&format!("pa_eff_dl = {}\n", p.pa_eff_dl));
    out.push_str(&format!("l_bs_flops_per_w = {}\n", p.l_bs));
    out.push_str(&format!("l_ue_flops_per_w = {}\n", p.l_ue));
    out.push_str(&format!("p_fix_w = {}\n", p.p_fix));
    out.push_str(&format!("p_syn_w = {}\n", p.p_syn));
    out.push_str(&format!("p_bs_w = {}\n", p.p_bs));
    out.push_str(&format!("p_ue_w = {}\n", p.p_ue));
    out.push_str(&format!("p_cod_w_per_gbit = {}\n", p.p_cod * GBIT));
    out.push_str(&format!("p_dec_w_per_gbit = {}\n", p.p_dec * GBIT));
    out.push_str(&format!("p_bt_w_per_gbit = {}\n", p.p_bt * GBIT));
    out.push_str(&format!("mmse_iterations = {}\n", p.mmse_iterations));
    out.push_str("\n[scenario]\n");
    if let Some(g) = &s.geometry {
        out.push_str(&format!("geometry = {g}\n"));
    }
    out.push_str(&format!("d_min = {}\n", s.d_min));
    out.push_str(&format!("d_max = {}\n", s.d_max));
    out.push_str(&format!("side = {}\n", s.side));
    out.push_str(&format!("kappa = {}\n", s.kappa));
    out.push_str(&format!("dbar = {}\n", s.dbar));
    out.push_str("\n[experiment]\n");
    out.push_str(&format!("scheme = {}\n", cfg.scheme.as_str()));
    out.push_str(&format!("regime = {}\n", cfg.regime_name));
    out.push_str(&format!("reuse = {}\n", cfg.reuse_factor));
    out.push_str(&format!("m_min = {}\n", cfg.m_min));
    out.push_str(&format!("m_max = {}\n", cfg.m_max));
    out.push_str(&format!("k_min = {}\n", cfg.k_min));
    out.push_str(&format!("k_max = {}\n", cfg.k_max));
    out.push_str(&format!("trials = {}\n", cfg.trials));
    out.push_str(&format!("seed = {}\n", cfg.seed));
    out
}
