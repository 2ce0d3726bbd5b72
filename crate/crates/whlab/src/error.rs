//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by algebra construction, state building, and certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The deformation parameters violate the admissible sign patterns:
    /// either all `kappa_i >= 0`, or `kappa_1 < 0` with `kappa_i >= 0` for `i >= 2`.
    #[error("inadmissible kappa sign pattern {0:?}")]
    InvalidSignPattern(Vec<f64>),

    /// `kappa_1 < 0` but `-1/kappa_1` is not a positive integer within snap tolerance.
    #[error("-1/kappa_1 = {0} is not a positive integer")]
    NonIntegerDimension(f64),

    /// An operator, vector, or space was used with an incompatible dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Classification is defined only for a single deformation parameter.
    #[error("classification requires r = 1, got r = {0}")]
    NotSingleParameter(usize),

    /// The oscillator/Poschl-Teller/Morse case constraints are violated.
    #[error("invalid potential case: {0}")]
    InvalidCase(String),

    /// A basis or quantization index fell outside `0..dim`.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Quadrature grid too coarse to integrate the closure kernel exactly.
    #[error("quadrature grid of {got} points is below the required {required}")]
    InsufficientGrid { got: usize, required: usize },

    /// Klauder-Perelomov states on a truncated infinite space exist only for r = 1.
    #[error("type-I coherent states on a truncated space require r = 1, got r = {0}")]
    TypeIUndefined(usize),

    /// `z` lies outside the convergence disc of the type-I series.
    #[error("|z| = {z_abs} is outside the convergence domain |z| < {radius}")]
    OutsideDomain { z_abs: f64, radius: f64 },

    /// Barut-Girardello eigenstates do not exist for complex `z != 0` in finite dimension.
    #[error("no Barut-Girardello state for complex z != 0 in finite dimension {0}")]
    BgFiniteComplexUndefined(usize),

    /// A truncated two-mode space contains labels with a negative structure function.
    #[error("truncation admits a negative structure function at {0}")]
    InvalidTruncation(String),

    /// A matrix or vector entry was NaN or infinite.
    #[error("non-finite entry in {0}")]
    NonFiniteEntry(&'static str),

    /// Catch-all for invalid scalar arguments.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
