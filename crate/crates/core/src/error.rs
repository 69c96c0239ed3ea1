use thiserror::Error;

/// Errors raised by evaluation, quadrature, and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("function is not finite at probe point t = {at}")]
    Evaluation { at: f64 },

    #[error(
        "quadrature did not converge: coarse estimate {coarse:e}, refined estimate {refined:e}"
    )]
    Convergence { coarse: f64, refined: f64 },

    #[error("degree {degree} is not supported (maximum {max})")]
    UnsupportedDegree { degree: u32, max: u32 },

    #[error("conformable order must satisfy 0 < alpha <= 1, got {0}")]
    InvalidAlpha(f64),

    #[error("invalid quantum numbers (n = {n}, l = {l}, m = {m})")]
    InvalidQuantumNumbers { n: u32, l: u32, m: i32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }
}
