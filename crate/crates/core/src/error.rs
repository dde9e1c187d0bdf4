use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid evaluation parameters: {0}")]
    InvalidParams(String),

    #[error("argument {0} is outside the domain: {1}")]
    Domain(f64, &'static str),

    #[error("log-gamma evaluated at a pole: s = {0}")]
    GammaPole(Complex64),

    #[error("argument increment requested for a zero operand")]
    ZeroOperand,

    #[error("zeta evaluated within the pole guard of s = 1: s = {0}")]
    ZetaPole(Complex64),

    #[error("series failed to reach tolerance within {terms} terms (estimated error {est_err:e})")]
    NonConvergence { terms: usize, est_err: f64 },

    #[error("Z(t) rotation left an imaginary residue of {residue:e} at t = {t}")]
    RotationResidue { t: f64, residue: f64 },

    #[error("invalid contour: {0}")]
    InvalidPath(String),

    #[error("contour passes within the pole guard of s = 1")]
    PoleGuard,

    #[error("function vanishes on the contour near s = {at} (|f| = {abs:e})")]
    ZeroOnPath { at: Complex64, abs: f64 },

    #[error("refinement depth exhausted near s = {at}")]
    RefinementBudget { at: Complex64 },

    #[error("argument change {value} is not within 0.1 of an integer")]
    Quantization { value: f64 },

    #[error("no (delta, epsilon) candidate avoids zeros on the contour at T = {t_center}")]
    LadderExhausted { t_center: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
