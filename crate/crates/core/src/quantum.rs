//! Quantum numbers, sectors and the angular coupling coefficients.

use thiserror::Error;

use crate::scalar::Real;

/// Which radial system a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Spin0,
    Spin1Natural,
    Spin1UnnaturalPlus,
    Spin1UnnaturalMinus,
}

impl Sector {
    pub const ALL: [Sector; 4] = [
        Sector::Spin0,
        Sector::Spin1Natural,
        Sector::Spin1UnnaturalPlus,
        Sector::Spin1UnnaturalMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Sector::Spin0 => "spin0",
            Sector::Spin1Natural => "natural",
            Sector::Spin1UnnaturalPlus => "unnatural+",
            Sector::Spin1UnnaturalMinus => "unnatural-",
        }
    }

    pub fn branch(self) -> Option<Branch> {
        match self {
            Sector::Spin1UnnaturalPlus => Some(Branch::Plus),
            Sector::Spin1UnnaturalMinus => Some(Branch::Minus),
            _ => None,
        }
    }

    pub fn unnatural(branch: Branch) -> Sector {
        match branch {
            Branch::Plus => Sector::Spin1UnnaturalPlus,
            Branch::Minus => Sector::Spin1UnnaturalMinus,
        }
    }
}

/// Sign of the spin-orbit splitting in the unnatural-parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("unnatural-parity states need J >= 1")]
    UnnaturalJZero,
    #[error("shell N = {n_shell} cannot hold J = {j} (need N >= J and N - J even)")]
    IncompatibleShell { n_shell: u32, j: u32 },
}

/// Radial number n, total angular momentum J and sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumState {
    n: u32,
    j: u32,
    sector: Sector,
}

impl QuantumState {
    pub fn new(n: u32, j: u32, sector: Sector) -> Result<Self, StateError> {
        if j == 0 && sector.branch().is_some() {
            return Err(StateError::UnnaturalJZero);
        }
        Ok(QuantumState { n, j, sector })
    }

    /// Builds the state from the principal number N = 2n + J.
    pub fn from_shell(n_shell: u32, j: u32, sector: Sector) -> Result<Self, StateError> {
        if n_shell < j || !(n_shell - j).is_multiple_of(2) {
            return Err(StateError::IncompatibleShell { n_shell, j });
        }
        Self::new((n_shell - j) / 2, j, sector)
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn j(&self) -> u32 {
        self.j
    }
    pub fn sector(&self) -> Sector {
        self.sector
    }
    /// Principal quantum number N = 2n + J.
    pub fn principal(&self) -> u32 {
        2 * self.n + self.j
    }
}

/// ξ_J and ζ_J of the angular reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCoefficients<T> {
    pub xi: T,
    pub zeta: T,
}

pub fn coupling_coefficients<T: Real>(j: u32) -> CouplingCoefficients<T> {
    let jj = T::from_u32(j).expect("J fits scalar");
    let denom = jj + jj + T::one();
    CouplingCoefficients { xi: ((jj + T::one()) / denom).sqrt(), zeta: (jj / denom).sqrt() }
}
