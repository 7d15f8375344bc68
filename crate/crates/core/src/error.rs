//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lambert_w0: argument {0} is below the branch point -1/e")]
    LambertDomain(f64),

    #[error("quartic: leading coefficient must be nonzero and finite")]
    BadQuartic,

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("invalid hardware profile: {0}")]
    Profile(String),

    #[error("pilot overhead tau_sum * K = {overhead} exceeds coherence block U = {block}")]
    PilotOverhead { overhead: f64, block: f64 },

    #[error("zero-forcing requires M >= K + 1 (got M = {m}, K = {k})")]
    ZfDimensions { m: usize, k: usize },

    #[error("multi-cell SINR denominator is non-positive (infeasible operating point)")]
    InfeasibleSinr,

    #[error("invalid pilot reuse factor {0} (expected 1, 2, or 4)")]
    ReuseFactor(u32),

    #[error("empty search range")]
    EmptyRange,

    #[error("config parse error at line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("config: {0}")]
    ConfigInvalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
