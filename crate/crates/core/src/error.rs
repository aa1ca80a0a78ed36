use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambiguous isometry class: |trace| = {abs_trace} is within tolerance of 2 and the element is within tolerance of the identity")]
    AmbiguousClass { abs_trace: f64 },
    #[error("rotation center must lie in the open upper half-plane, got imaginary part {0}")]
    InvalidCenter(f64),
    #[error("degenerate geodesic: endpoints coincide")]
    DegenerateGeodesic,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("product relation violated: residual {residual:e}")]
    RelationViolated { residual: f64 },
    #[error("inconsistent winding: sample points disagree on the deck power ({0:?})")]
    InconsistentWinding(Vec<f64>),
    #[error("Milnor-Wood violation: {lower} <= {euler} <= {upper} fails")]
    MWViolation { euler: i64, lower: i64, upper: i64 },
    #[error("invalid angles: {0}")]
    InvalidAngles(String),
    #[error("action coordinates outside the open polytope: {0}")]
    PolytopeViolation(String),
    #[error("gluing failure: conjugated pants boundary misses its target by {0:e}")]
    GluingFailure(f64),
    #[error("empty polytope: angle sum {sum} not in the open interval ({lower}, {upper})")]
    EmptyPolytope { sum: f64, lower: f64, upper: f64 },
    #[error("degenerate simplex: determinant {0:e}")]
    DegenerateSimplex(f64),
    #[error("pants curve {index} is not mapped to an elliptic element")]
    NonEllipticPantsCurve { index: usize },
    #[error("invalid curve range ({i}, {j}) for n = {n}")]
    InvalidRange { n: usize, i: usize, j: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AmbiguousClass { .. } => "ambiguous_class",
            Error::InvalidCenter(_) => "invalid_center",
            Error::DegenerateGeodesic => "degenerate_geodesic",
            Error::NotElliptic => "not_elliptic",
            Error::RelationViolated { .. } => "relation_violated",
            Error::InconsistentWinding(_) => "inconsistent_winding",
            Error::MWViolation { .. } => "mw_violation",
            Error::InvalidAngles(_) => "invalid_angles",
            Error::PolytopeViolation(_) => "polytope_violation",
            Error::GluingFailure(_) => "gluing_failure",
            Error::EmptyPolytope { .. } => "empty_polytope",
            Error::DegenerateSimplex(_) => "degenerate_simplex",
            Error::NonEllipticPantsCurve { .. } => "non_elliptic_pants_curve",
            Error::InvalidRange { .. } => "invalid_range",
            Error::InvalidInput(_) => "invalid_input",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// Errors that signal a mathematical inconsistency rather than bad input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::MWViolation { .. } | Error::GluingFailure(_) | Error::InconsistentWinding(_)
        )
    }
}
