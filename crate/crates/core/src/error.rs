use thiserror::Error;

/// Errors raised by domain operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert the zero octonion")]
    ZeroInverse,

    #[error("cannot project the zero twistor")]
    ZeroTwistor,

    #[error("chirality or duality mismatch: {0}")]
    ChiralityMismatch(&'static str),

    #[error("quaternion subalgebra precondition failed: {0}")]
    InvalidSubalgebra(&'static str),

    #[error("quaternionic matrix entry outside the subalgebra span (residual {residual:.3e})")]
    OutsideSpan { residual: f64 },

    #[error("near-singular point: |det rho| = {det:.3e} below floor {floor:.3e}")]
    NearSingular { det: f64, floor: f64 },

    #[error("retraction requires det rho > 0, got {det:.3e}")]
    NonPositiveDet { det: f64 },

    #[error("duality needs a non-null vector, got L(v,v) = {lvv:.3e}")]
    NullVector { lvv: f64 },

    #[error("restricted signature on an empty subspace")]
    EmptySubspace,
}

pub type Result<T> = std::result::Result<T, Error>;
