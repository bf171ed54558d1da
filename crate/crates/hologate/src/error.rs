//! Crate-wide error type.

use thiserror::Error;

/// Validation and solver failures surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be 2 or 4, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian: max |A - A†| = {defect:.3e}")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unitary: max |U†U - 1| = {defect:.3e}")]
    NotUnitary { defect: f64 },

    #[error("entry count {got} does not match dimension {dim} (need {dim}x{dim})")]
    BadEntryCount { dim: usize, got: usize },

    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("drive frequency must be positive, got {0}")]
    NonPositiveDrive(f64),

    #[error("Rabi amplitude must be non-negative, got {0}")]
    NegativeRabi(f64),

    #[error("beta must lie strictly inside (0, pi/2), got {0}")]
    BetaOutOfRange(f64),

    #[error("|J/omega| must be < 1/2 for a real Rabi amplitude, got {0}")]
    RatioOutOfRange(f64),

    #[error("waveform must cover one period {expected:.6} s, durations sum to {got:.6}")]
    WaveformCoverage { expected: f64, got: f64 },

    #[error("waveform segment {index} has non-positive duration {duration}")]
    WaveformSegment { index: usize, duration: f64 },

    #[error("parameters violate the vanishing-phase condition: residual {residual:.3e}")]
    PhaseConditionViolated { residual: f64 },

    #[error("time interval is empty: t0 = {t0}, t1 = {t1}")]
    EmptyInterval { t0: f64, t1: f64 },

    #[error("need at least {min} steps, got {got}")]
    TooFewSteps { got: usize, min: usize },

    #[error("time step dt must be positive, got {0}")]
    NonPositiveDt(f64),

    #[error("state vector is not normalized: ‖ψ‖ = {norm}")]
    UnnormalizedState { norm: f64 },

    #[error("no eigenvector with index {index}; system has {count} modes")]
    NoSuchMode { index: usize, count: usize },

    #[error("no sign change of the constraint on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("bracket [{lo}, {hi}] must lie inside (0, 1/2)")]
    BadBracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
