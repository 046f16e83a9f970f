//! Exact scalars and univariate rational functions.
//!
//! Everything downstream is generic over [`Field`] so the same localization
//! code runs over plain rationals (numeric torus weights) and over
//! [`TFunction`] (weights or the dilation parameter kept symbolic), or over
//! truncated [`Series`] when only a limit is wanted.

mod field;
mod poly;
mod series;
mod tfunction;

pub use field::{rational, Field, Rational};
pub use poly::Poly;
pub use series::{Series, DEFAULT_PRECISION};
pub use tfunction::TFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("function has a pole at t = 0")]
    PoleAtZero,
    #[error("valuation of the zero function is undefined")]
    ZeroFunction,
    #[error("series truncated before the requested term")]
    PrecisionLoss,
}
