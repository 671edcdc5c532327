use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial degree too small for this operation")]
    DegreeTooSmall,
    #[error("interval endpoint is a root of the polynomial")]
    EndpointRoot,
    #[error("interval is empty (lo >= hi)")]
    EmptyInterval,
    #[error("polynomial is not self-reciprocal of even degree")]
    NotSelfReciprocal,
    #[error("polynomial has repeated roots")]
    RepeatedRoots,
    #[error("a root modulus lies within tolerance of the unit circle")]
    CircleBoundaryUnresolved,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("form is not a nondegenerate skew-symmetric matrix")]
    BadForm,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("characteristic polynomial has repeated roots")]
    NotSimpleSpectrum,
    #[error("automorphism is not partially hyperbolic")]
    NotPartiallyHyperbolic,
    #[error("selected spectrum part is empty")]
    EmptyPart,
    #[error("z-root is real; use the real-branch formula")]
    RealRoot,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("automorphism is not ergodic; the orbit may not be periodic")]
    MayBeNonPeriodic,
    #[error("denominator {0} exceeds the supported bound")]
    DenominatorTooLarge(String),
    #[error("period search exceeded {0} iterations")]
    PeriodBudgetExceeded(u64),
    #[error("unstable subspace has dimension {0}, expected 2")]
    WrongUnstableDim(usize),
    #[error("samples must be at least resolution^n = {0}")]
    InsufficientSamples(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search budget of {0} evaluations exhausted without witness or obstruction")]
    BudgetExhausted(u64),
    #[error("floating eigenvector residual {0:e} above tolerance")]
    EigenvectorResidual(f64),
    #[error("parse error: {0}")]
    Parse(String),
}
