//! Energy-efficiency-optimal design of multi-user MIMO cells.
//!
//! The library models a single cell (or a symmetric multi-cell grid) in
//! which a base station with `M` antennas serves `K` single-antenna users
//! at a transmit-power parameter `rho`, under a circuit-power model
//! covering transceiver chains, channel estimation, linear processing,
//! coding/decoding and backhaul. It provides:
//!
//! * closed-form EE maximizers for each of `M`, `K` and `rho` with the
//!   others fixed, built on the Lambert W function and a quartic solver
//!   ([`optim`], [`specfun`]);
//! * an alternating optimization algorithm and exhaustive sweeps over
//!   `(M, K)` for the regimes without closed forms ([`optim`]);
//! * analytic zero-forcing rate/power models for perfect CSI, pilot-based
//!   CSI and pilot-contaminated multi-cell operation ([`rates`],
//!   [`power`], [`scenario`]);
//! * a link-level Monte Carlo simulator with MRC/ZF/MMSE processing and
//!   equal-rate power allocation for validating the closed forms and for
//!   locating the MRT/MMSE optima ([`montecarlo`]).

pub mod config;
pub mod error;
pub mod montecarlo;
pub mod optim;
pub mod power;
pub mod rates;
pub mod scenario;
pub mod specfun;

pub use config::{load_config, parse_config, save_config, ExperimentConfig};
pub use error::{Error, Result};
pub use montecarlo::{estimate_ee, CsiMode, McEstimate, McOutcome, RateTarget};
pub use optim::{
    alternating_optimize, exhaustive_search, golden_section_max, optimal_antennas,
    optimal_antennas_imperfect, optimal_rho, optimal_users, optimal_users_approx, scaling_bounds,
};
pub use power::{circuit_power, complexity_flops, CircuitCoefficients, HardwareProfile, Scheme};
pub use rates::{evaluate_ee, DesignPoint, EeResult, Regime};
pub use scenario::{Geometry, MulticellScenario, PropagationScenario};
