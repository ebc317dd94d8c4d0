use thiserror::Error;

/// Errors across the series, evaluator and Floquet modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Series/formula order outside the supported set {2, 4, 6, 8}.
    #[error("order must be one of 2, 4, 6, 8 (got {0})")]
    InvalidOrder(u32),

    /// Physical parameters failed validation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Leading radicand coefficient is not positive, so no strong-driving
    /// asymptote exists.
    #[error("leading radicand coefficient must be positive")]
    NonPositiveLeading,

    /// Floquet matrix dimension exceeds the configured cap.
    #[error("Floquet matrix dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    /// Jacobi eigensolver failed to annihilate the off-diagonal part.
    #[error("eigensolver did not converge: off-diagonal residual {residual:e}")]
    EigenNoConvergence { residual: f64 },

    /// Transition-probability peak sits on the search bracket boundary even
    /// after widening once.
    #[error("no interior transition-probability peak in bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    /// Resonance frequency did not settle under photon-space enlargement.
    #[error("resonance not converged at n_photon = {n_photon} (last change {last_change:e})")]
    TruncationNoConvergence { n_photon: usize, last_change: f64 },

    /// Halving the propagation step still changes the time average too much.
    #[error("propagation step not converged: halving changed the average by {change:e}")]
    StepSize { change: f64 },

    /// Propagator lost unitarity beyond tolerance.
    #[error("propagator norm drift {drift:e} exceeds tolerance")]
    NormDrift { drift: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
