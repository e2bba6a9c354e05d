use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("point is off the unit sphere: |z|^2+|w|^2-1 = {defect:e}")]
    OffSphere { defect: f64 },

    #[error("frame matrix is singular: |det A| = {det:e}")]
    SingularFrame { det: f64 },

    #[error("structure matrix is not symmetric: defect {defect:e}")]
    AsymmetricStructure { defect: f64 },

    #[error("structure matrix is singular: |det C| = {det:e}")]
    SingularStructure { det: f64 },

    #[error("structure matrix is indefinite (eigenvalues {eigenvalues:?}); no left-invariant metric on SU(2) has it")]
    IndefiniteStructure { eigenvalues: [f64; 3] },

    #[error("lift is not of unit norm: max coefficient defect {defect:e}")]
    NotUnit { defect: f64 },

    #[error("left-invariant field has zero coefficients")]
    ZeroField,

    #[error("vector field is not horizontal against the lift: defect {defect:e}")]
    NotHorizontal { defect: f64 },

    #[error("tangent vectors are based at different points")]
    BaseMismatch,

    #[error("tangent map has rank {rank} < 3 (smallest Gram eigenvalue {min_eigenvalue:e}); not an immersion")]
    DegenerateRank { rank: usize, min_eigenvalue: f64 },

    #[error(
        "pointwise data is not constant across samples (max deviation {max_deviation:e}); lift is not equivariant"
    )]
    Inconsistent { max_deviation: f64 },

    #[error("could not align the Kähler form pullback: residual {residual:e}")]
    Alignment { residual: f64 },

    #[error("immersion is not of CR type (J23 = {j23})")]
    NotCr { j23: f64 },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("sample set too small: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
