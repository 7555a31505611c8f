use thiserror::Error;

/// The density-matrix property that failed validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityViolation {
    /// `|tr ρ - 1|`
    Trace(f64),
    /// `max |ρ - ρ†|`
    Hermiticity(f64),
    /// Most negative eigenvalue.
    NegativeEigenvalue(f64),
}

impl std::fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DensityViolation::Trace(d) => write!(f, "trace deviates from 1 by {d:e}"),
            DensityViolation::Hermiticity(d) => write!(f, "not Hermitian (max |m - m†| = {d:e})"),
            DensityViolation::NegativeEigenvalue(e) => write!(f, "negative eigenvalue {e:e}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m†| = {asymmetry:e}")]
    NonHermitian { asymmetry: f64 },

    #[error("matrix function undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("non-finite entry in matrix")]
    NonFinite,

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(DensityViolation),

    #[error("matrix is not X-shaped: off-X entry of magnitude {max_off:e}")]
    NotXShaped { max_off: f64 },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
