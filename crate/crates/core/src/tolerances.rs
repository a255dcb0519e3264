//! Numerical tolerances shared by every module.
//!
//! The constants are the defaults; [`Tolerances`] bundles them so callers that
//! gate on them (the reproduction report, the CLI) can override a subset.

/// Unit-norm check applied after normalization.
pub const NORM: f64 = 1e-12;
/// Norm below which a vector is treated as zero.
pub const ZERO_NORM: f64 = 1e-300;
/// Entrywise Hermiticity check.
pub const HERMITIAN: f64 = 1e-12;
/// Allowed imaginary residue of an expectation value.
pub const EXPECTATION_IMAG: f64 = 1e-10;
/// Accepted norm deviation for user-supplied "normalized" amplitudes.
pub const INPUT_NORM: f64 = 1e-9;
/// Jacobi off-diagonal threshold.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;
/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this share one projector.
pub const DEGENERACY_GAP: f64 = 1e-9;
/// Negative concurrence round-off clamped to zero above this.
pub const CONCURRENCE_CLAMP: f64 = 1e-12;
/// Default antisymmetric-component tolerance for symmetric projection.
pub const SYMMETRIC_PROJECTION: f64 = 1e-9;
/// Orthogonality of adjacent pentagram directions.
pub const ORTHOGONALITY: f64 = 1e-12;
/// Commutation check before a sequential joint measurement.
pub const COMMUTING: f64 = 1e-9;
/// Concurrence constraint residual accepted from the KCBS oracle.
pub const CONCURRENCE_CONSTRAINT: f64 = 1e-10;
/// Agreement required between the KCBS oracle and the affine law on a grid.
pub const SMIN_GRID: f64 = 1e-3;
/// Agreement required at the C = 0 and C = 1 endpoints.
pub const SMIN_ENDPOINT: f64 = 1e-6;
/// Tsirelson-bound slack.
pub const TSIRELSON_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub norm: f64,
    pub hermitian: f64,
    pub degeneracy_gap: f64,
    pub symmetric_projection: f64,
    pub commuting: f64,
    pub smin_grid: f64,
    pub smin_endpoint: f64,
    /// Fast-path versus closed form for CHSH maxima.
    pub beta_closed: f64,
    /// Direct optimizer versus fast path / closed form for CHSH maxima.
    pub beta_optimizer: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        norm: NORM,
        hermitian: HERMITIAN,
        degeneracy_gap: DEGENERACY_GAP,
        symmetric_projection: SYMMETRIC_PROJECTION,
        commuting: COMMUTING,
        smin_grid: SMIN_GRID,
        smin_endpoint: SMIN_ENDPOINT,
        beta_closed: 1e-6,
        beta_optimizer: 1e-4,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
