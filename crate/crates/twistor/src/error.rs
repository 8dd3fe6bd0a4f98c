use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the modulus must satisfy 3/2 < λ < 2, got {0}")]
    LambdaOutOfRange(f64),

    #[error("matrix does not permute the divisor cones: {0}")]
    NotAnAutomorphism(String),

    #[error("{0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("exact arithmetic unavailable: {0}")]
    Exact(String),

    #[error(transparent)]
    Core(#[from] selfdual::Error),
}
