//! Independent numerical oracle: finite differences on the second-order
//! radial equation, a banded eigensolver, and operator-algebra checks.
//! Nothing here evaluates the closed-form spectra or Jacobi polynomials.

pub mod algebra;
pub mod band;
pub mod discretize;
pub mod energy;
pub mod report;

use thiserror::Error;

use crate::coords::DomainError;
use crate::params::ParamsError;
use crate::roots::RootError;
use crate::spectra::SpectraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("grid of {intervals} intervals is below the minimum of {min}")]
    GridTooCoarse { intervals: usize, min: usize },
    #[error("the oracle needs λ > 0, got λ = {0}")]
    NotAdS(f64),
    #[error("inverting the eigenvalue gives E² = {0} <= 0")]
    InversionNegative(f64),
    #[error("unnatural-parity states need J >= 1")]
    JZero,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Params(#[from] ParamsError),
}
