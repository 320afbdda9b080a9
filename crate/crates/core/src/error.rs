use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("oracle out of range: modulus {modulus} exceeds enumeration bound {bound}")]
    OracleOutOfRange { modulus: u128, bound: u64 },

    #[error("zeta has a pole at s = 1 (|s - 1| = {distance:e})")]
    PoleAtOne { distance: f64 },

    #[error("zero table line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("zero table is empty")]
    EmptyTable,

    #[error("zero table is not strictly ascending at entry {index} ({previous} then {current})")]
    NotAscending {
        index: usize,
        previous: f64,
        current: f64,
    },

    #[error("zero verification failed for ordinate {gamma}: {reason}")]
    Verification { gamma: f64, reason: String },

    #[error("Newton refinement from {seed} did not converge: {reason}")]
    NonConvergence { seed: f64, reason: String },

    #[error("requested {requested} zeros but the table holds {available}")]
    TableTooSmall { requested: usize, available: usize },

    #[error("series did not converge: {0}")]
    Divergence(String),

    #[error("zeta({s}) is too close to zero (|zeta| = {magnitude:e})")]
    NearZetaZero { s: String, magnitude: f64 },

    #[error("z = {z} lies within {distance:e} of the pole at log {q}")]
    PoleProximity { z: String, q: u64, distance: f64 },

    #[error("integral tail estimate {estimate:e} exceeds tolerance {tolerance:e}; raise t_cut")]
    TailTooLarge { estimate: f64, tolerance: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (last change {change:e})")]
    Quadrature { tolerance: f64, change: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves (pole proximity,
    /// non-convergence, tolerance misses) as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::PoleAtOne { .. }
                | Error::Verification { .. }
                | Error::NonConvergence { .. }
                | Error::Divergence(_)
                | Error::NearZetaZero { .. }
                | Error::PoleProximity { .. }
                | Error::TailTooLarge { .. }
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
