use thiserror::Error;

use crate::photon_dist::Classification;

/// Errors produced by the special-function, distribution and entropy layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("overflow in {what} (n = {n}); use the log-domain routine")]
    Overflow { what: &'static str, n: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular denominator in {0}")]
    SingularDenominator(&'static str),

    #[error("pole in hypergeometric series: (c)_j vanishes at j = {0}")]
    Pole(usize),

    #[error("n1 + n2 must be even, got n1 = {n1}, n2 = {n2}")]
    Parity { n1: usize, n2: usize },

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("distribution is classified {0:?}; a probability distribution is required")]
    NotProbability(Classification),

    #[error("normalization series diverges (term ratio {ratio:.6} at n = {n})")]
    DivergentNormalization { ratio: f64, n: usize },

    #[error("distribution tail does not pass the ratio test (tail bound {0})")]
    DivergentTail(f64),

    #[error("invalid deformation spec: {0}")]
    InvalidSpec(String),

    #[error("joint distribution not normalized (total mass {0})")]
    Unnormalized(f64),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
}

impl Error {
    /// Short machine-readable reason code, stable across releases.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Overflow { .. } => "overflow",
            Error::Domain(_) => "domain",
            Error::SingularDenominator(_) => "singular_denominator",
            Error::Pole(_) => "pole",
            Error::Parity { .. } => "parity",
            Error::DivisionByZero(_) => "division_by_zero",
            Error::NotProbability(_) => "not_probability",
            Error::DivergentNormalization { .. } => "divergent_normalization",
            Error::DivergentTail(_) => "divergent_tail",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Unnormalized(_) => "unnormalized",
            Error::NonFinite(_) => "non_finite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
