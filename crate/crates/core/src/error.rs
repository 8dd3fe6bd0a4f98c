use thiserror::Error;

/// Errors surfaced by the geometry and lift layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point must lie in the open upper half-space (z > 0), got z = {0}")]
    NotUpperHalfSpace(f64),

    #[error("isometry data is singular: |ad - bc| = {0}")]
    SingularIsometry(f64),

    #[error("duplicate points in input (indices {0} and {1})")]
    DuplicatePoints(usize, usize),

    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("evaluation at a monopole point")]
    Singularity,

    #[error("invalid monopole configuration: {0}")]
    BadConfig(String),

    #[error("operation requires a toric (collinear) configuration")]
    NotToric,

    #[error("chart {chart} does not contain the requested point")]
    OutsideChart { chart: usize },

    #[error("coordinate frame degenerates on the axis (r = 0)")]
    AxisDegenerate,

    #[error("{0}")]
    Domain(String),

    #[error("isometry does not preserve the monopole set (mismatch {0:.3e})")]
    SetNotPreserved(f64),

    #[error("configuration is not symmetric about a midpoint")]
    NotSymmetric,

    #[error("gauge potential is path dependent (residual {0:.3e})")]
    PathDependence(f64),

    #[error("base point is not fixed by the isometry (moved by {0:.3e})")]
    BaseNotFixed(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
