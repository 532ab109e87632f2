//! Energy spectra and radial eigenfunctions of the 3D DKP oscillator with an
//! extended uncertainty principle (anti-de Sitter λ > 0, de Sitter λ < 0),
//! together with an independent finite-difference oracle.
//!
//! The numerical code is generic over [`scalar::Real`]; the Nikiforov–Uvarov
//! reducer in [`nu`] also runs on exact rationals. The aliases below fix the
//! scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coords;
pub mod fd;
pub mod jacobi;
pub mod nu;
pub mod oracle;
pub mod params;
pub mod polynomial;
pub mod quadrature;
pub mod quantum;
pub mod roots;
pub mod scalar;
pub mod spectra;
pub mod wavefunctions;

pub use params::{make_params, Params, ParamsError, Space, UnitSystem};
pub use quantum::{Branch, QuantumState, Sector};

pub type Params64 = params::Params<f64>;
pub type EnergyResult64 = spectra::EnergyResult<f64>;
pub type RadialComponents64 = wavefunctions::RadialComponents<f64>;
pub type ComponentModel64 = wavefunctions::ComponentModel<f64>;
pub type DiscretizedOperator64 = oracle::discretize::DiscretizedOperator<f64>;
pub type OracleEnergy64 = oracle::energy::OracleEnergy<f64>;

/// Exact rational scalar of the NU reducer and the polynomial energy kernels.
pub type Rational = num_rational::BigRational;
pub type NuProblemQ = nu::NuProblem<Rational>;
pub type NuSolutionQ = nu::NuSolution<Rational>;
pub type QuantizationQ = nu::Quantization<Rational>;
pub type ModelConstantsQ = spectra::ModelConstants<Rational>;
