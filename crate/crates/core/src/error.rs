//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller broke a documented precondition (empty input, bad dimensions…).
    #[error("usage error: {0}")]
    Usage(String),

    /// `‖P‖ > 1 + tol`, so defect data cannot be formed.
    #[error("not a contraction: operator norm {norm} exceeds 1 + {tol}")]
    NotAContraction { norm: f64, tol: f64 },

    /// Matrices declared as a commuting tuple do not commute within tolerance.
    #[error("tuple does not commute: worst commutator norm {defect} > {tol}")]
    NotCommuting { defect: f64, tol: f64 },

    /// An iterative kernel failed to reach its residual budget.
    #[error("numerical failure in {what}: residual {residual}")]
    NumericalFailure { what: String, residual: f64 },

    /// `|p|` too close to 1 for the interior recursion; use the boundary test.
    #[error("|p| = {p_abs} lies in the boundary band; interior recursion is singular")]
    BoundaryBand { p_abs: f64 },

    /// Fundamental-equation residual exceeded tolerance.
    #[error("fundamental equation not representable: residual {residual} > {tol}")]
    NotRepresentable { residual: f64, tol: f64 },

    /// Pencil data fed to the pure-tuple generator failed validation.
    #[error("invalid fundamental data: {0}")]
    InvalidFundamentalData(String),

    /// Pencil matrices violate a representation condition.
    #[error("invalid variety data ({condition}): defect {defect}")]
    InvalidVarietyData { condition: String, defect: f64 },

    /// The projected pencil matrix has numerical radius ≥ 1.
    #[error("projection failure: numerical radius {radius} ≥ 1")]
    ProjectionFailure { radius: f64 },

    /// Von Neumann hypothesis wiring mismatch between tuple and variety.
    #[error("hypothesis violation: {what} (distance {distance})")]
    HypothesisViolation { what: String, distance: f64 },

    /// Operation requires a pure contraction.
    #[error("purity required: spectral radius {spectral_radius} ≥ 1")]
    PurityRequired { spectral_radius: f64 },

    /// A resolvent evaluation was requested too close to the spectrum.
    #[error("evaluation failure: condition number {condition:.3e} too large")]
    EvaluationFailure { condition: f64 },

    /// Dilation intertwining residuals exceeded the truncation budget.
    #[error("dilation failure: worst residual {residual} > budget {budget}")]
    DilationFailure { residual: f64, budget: f64 },

    /// Model space dimension is inconsistent with the source space.
    #[error("model failure: model dimension {got}, expected {expected} (band allowance {band})")]
    ModelFailure {
        expected: usize,
        got: usize,
        band: usize,
    },

    /// Every separating determinant vanished: the point is on the variety.
    #[error("no separation certificate: all pencil determinants vanish at the point")]
    NoCertificate,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
