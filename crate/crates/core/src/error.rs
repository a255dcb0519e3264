use thiserror::Error;

/// Errors raised by the scenario builders, evaluators and optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector cannot be normalized (norm {norm:e})")]
    ZeroVector { norm: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (only 2, 3 and 4 are supported)")]
    UnsupportedDimension(usize),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("state is not normalized (norm deviation {deviation:e})")]
    NotNormalized { deviation: f64 },
    #[error("state has an antisymmetric component of magnitude {antisymmetric:e}")]
    NotSymmetric { antisymmetric: f64 },
    #[error("direction is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("directions {first} and {second} are not orthogonal (dot product {dot:e})")]
    NotOrthogonal { first: usize, second: usize, dot: f64 },
    #[error("concurrence {0} is outside [0, 1]")]
    InvalidConcurrence(f64),
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("observables do not commute (commutator norm {norm:e})")]
    NotCommuting { norm: f64 },
    #[error("observable eigenvalue {value} is not a dichotomic outcome")]
    NotDichotomic { value: f64 },
    #[error("shot count must be at least 1")]
    NoShots,
    #[error("invalid optimizer parameters: {0}")]
    InvalidParams(&'static str),
    #[error("optimizer did not converge: {reason} (best value {best})")]
    ConvergenceFailure { reason: &'static str, best: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
