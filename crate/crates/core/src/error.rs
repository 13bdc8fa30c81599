use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a complex structure: {0}")]
    NotComplex(String),

    #[error("not skew-symmetric: {0}")]
    NotSkew(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("basis is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("inconsistent basis: {0}")]
    InconsistentBasis(String),

    #[error("chart singularity: {0}")]
    ChartSingular(String),

    #[error("structure invariant failed at sample point: {0}")]
    InvariantViolation(String),

    #[error("probe set does not span at {0}")]
    NonSpanningProbes(String),

    #[error("not a vertical (fibre-tangent) endomorphism: {0}")]
    NotVertical(String),

    #[error("connection has torsion: {0}")]
    Torsion(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
