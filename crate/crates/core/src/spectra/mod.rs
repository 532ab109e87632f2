//! Closed-form energy levels.
//!
//! Every formula keeps ħ, c and m explicit and takes the signed λ, so de Sitter
//! spectra are the same expressions evaluated at λ < 0. Shell-level functions
//! (`*_shell`) take the principal number N directly and accept any N ≥ J.

mod limits;
mod penning;
mod unnatural;

pub use limits::{
    deviation_ratio, first_order_expansion, high_frequency_asymptote, level_spacing,
    momentum_uncertainty_bound, nonrelativistic_limit, nonrelativistic_limit_shell, spacing_limit,
};
pub use penning::{penning_bound, BoundInputs, BoundResult, PenningConstants, ROUNDED_E_HBAR_B_AT_6T};
pub use unnatural::{
    delta_split, energy_spin1_unnatural, energy_spin1_unnatural_shell, unnatural_energy_by_rootfind,
    unnatural_energy_by_rootfind_shell, unnatural_epsilon, unnatural_root_in_bracket,
    unnatural_transcendental_residual, ResidualParts,
};

use thiserror::Error;

use crate::params::Params;
use crate::quantum::{Branch, QuantumState, Sector};
use crate::roots::RootError;
use crate::scalar::{Field, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("E² = {e_squared} < 0 at N = {n_shell}, J = {j}")]
    NegativeESquared { e_squared: f64, n_shell: u32, j: u32 },
    #[error("spin-orbit radicand {radicand} < 0 at N = {n_shell}, J = {j}")]
    NegativeRadicand { radicand: f64, n_shell: u32, j: u32 },
    #[error("shell N = {n_shell} cannot hold J = {j}")]
    InvalidShell { n_shell: u32, j: u32 },
    #[error("quantity requires J >= 1")]
    JZero,
    #[error("the spacing limit vanishes in flat space")]
    FlatSpace,
    #[error("quantity requires an AdS deformation (λ > 0)")]
    NotAdS,
    #[error("{name} must be positive and finite, got {value}")]
    BoundInput { name: &'static str, value: f64 },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// ħ, c, m, ω and signed λ in any [`Field`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConstants<F> {
    pub hbar: F,
    pub c: F,
    pub m: F,
    pub omega: F,
    pub lambda: F,
}

impl<T: Real> Params<T> {
    pub fn constants(&self) -> ModelConstants<T> {
        ModelConstants {
            hbar: self.hbar(),
            c: self.c(),
            m: self.m(),
            omega: self.omega(),
            lambda: self.lambda(),
        }
    }
}

/// Additive decomposition of E².
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBreakdown<F> {
    /// m²c⁴ plus the oscillator term 2ħmωc²·(shifted N).
    pub flat_term: F,
    /// λħ²c² times the N-dependent part of the deformation bracket.
    pub confinement_term: F,
    /// −λħ²c²J(J+1).
    pub rotational_term: F,
    /// 2ħ²ω²(1 − λħ/2mω)²J(J+1); unnatural sector only.
    pub spin_orbit_term: F,
    /// ±Δ; unnatural sector only.
    pub delta_split: F,
}

impl<F: Field> EnergyBreakdown<F> {
    pub fn total(&self) -> F {
        self.flat_term.clone()
            + self.confinement_term.clone()
            + self.rotational_term.clone()
            + self.spin_orbit_term.clone()
            + self.delta_split.clone()
    }
}

/// A closed-form level.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyResult<T> {
    pub e_squared: T,
    pub energy: T,
    pub breakdown: EnergyBreakdown<T>,
    pub branch: Option<Branch>,
    pub n_shell: u32,
    pub j: u32,
    /// Set for unnatural-parity levels evaluated at J = 0.
    pub j_zero_flagged: bool,
}

impl<T: Real> EnergyResult<T> {
    pub(crate) fn from_breakdown(
        breakdown: EnergyBreakdown<T>,
        branch: Option<Branch>,
        n_shell: u32,
        j: u32,
    ) -> Result<Self, SpectraError> {
        let e_squared = breakdown.total();
        if !(e_squared > T::zero()) {
            return Err(SpectraError::NegativeESquared { e_squared: e_squared.as_f64(), n_shell, j });
        }
        Ok(EnergyResult {
            e_squared,
            energy: e_squared.sqrt(),
            breakdown,
            branch,
            n_shell,
            j,
            j_zero_flagged: branch.is_some() && j == 0,
        })
    }
}

pub(crate) fn check_shell(n_shell: u32, j: u32) -> Result<(), SpectraError> {
    if n_shell < j {
        Err(SpectraError::InvalidShell { n_shell, j })
    } else {
        Ok(())
    }
}

fn int<F: Field>(v: u32) -> F {
    F::of_int(v as i64)
}

/// Spin-0 E² decomposition: m²c⁴ + 2ħmωc²N + λħ²c²[(N+1)² − J(J+1) − 1].
pub fn spin0_breakdown<F: Field>(k: &ModelConstants<F>, n_shell: u32, j: u32) -> EnergyBreakdown<F> {
    let np1 = int::<F>(n_shell + 1);
    let lam = k.lambda.clone() * k.hbar.clone() * k.hbar.clone() * k.c.clone() * k.c.clone();
    let mc2 = k.m.clone() * k.c.clone() * k.c.clone();
    EnergyBreakdown {
        flat_term: mc2.clone() * mc2.clone()
            + F::of_int(2) * k.hbar.clone() * k.omega.clone() * mc2 * int::<F>(n_shell),
        confinement_term: lam.clone() * (np1.clone() * np1 - F::one()),
        rotational_term: -(lam * int::<F>(j) * int::<F>(j + 1)),
        spin_orbit_term: F::zero(),
        delta_split: F::zero(),
    }
}

/// Natural-parity E² decomposition: m²c⁴ + 2ħmωc²(N+1) + λħ²c²[(N+1)² − J(J+1)].
pub fn natural_breakdown<F: Field>(k: &ModelConstants<F>, n_shell: u32, j: u32) -> EnergyBreakdown<F> {
    let np1 = int::<F>(n_shell + 1);
    let lam = k.lambda.clone() * k.hbar.clone() * k.hbar.clone() * k.c.clone() * k.c.clone();
    let mc2 = k.m.clone() * k.c.clone() * k.c.clone();
    EnergyBreakdown {
        flat_term: mc2.clone() * mc2.clone()
            + F::of_int(2) * k.hbar.clone() * k.omega.clone() * mc2 * np1.clone(),
        confinement_term: lam.clone() * np1.clone() * np1,
        rotational_term: -(lam * int::<F>(j) * int::<F>(j + 1)),
        spin_orbit_term: F::zero(),
        delta_split: F::zero(),
    }
}

pub fn energy_spin0_shell<T: Real>(p: &Params<T>, n_shell: u32, j: u32) -> Result<EnergyResult<T>, SpectraError> {
    check_shell(n_shell, j)?;
    EnergyResult::from_breakdown(spin0_breakdown(&p.constants(), n_shell, j), None, n_shell, j)
}

pub fn energy_spin0<T: Real>(p: &Params<T>, n: u32, j: u32) -> Result<EnergyResult<T>, SpectraError> {
    energy_spin0_shell(p, 2 * n + j, j)
}

pub fn energy_spin1_natural_shell<T: Real>(
    p: &Params<T>,
    n_shell: u32,
    j: u32,
) -> Result<EnergyResult<T>, SpectraError> {
    check_shell(n_shell, j)?;
    EnergyResult::from_breakdown(natural_breakdown(&p.constants(), n_shell, j), None, n_shell, j)
}

pub fn energy_spin1_natural<T: Real>(p: &Params<T>, n: u32, j: u32) -> Result<EnergyResult<T>, SpectraError> {
    energy_spin1_natural_shell(p, 2 * n + j, j)
}

/// Closed-form level of any sector.
pub fn energy<T: Real>(p: &Params<T>, state: &QuantumState) -> Result<EnergyResult<T>, SpectraError> {
    energy_shell(p, state.sector(), state.principal(), state.j())
}

pub fn energy_shell<T: Real>(
    p: &Params<T>,
    sector: Sector,
    n_shell: u32,
    j: u32,
) -> Result<EnergyResult<T>, SpectraError> {
    match sector {
        Sector::Spin0 => energy_spin0_shell(p, n_shell, j),
        Sector::Spin1Natural => energy_spin1_natural_shell(p, n_shell, j),
        Sector::Spin1UnnaturalPlus => energy_spin1_unnatural_shell(p, n_shell, j, Branch::Plus),
        Sector::Spin1UnnaturalMinus => energy_spin1_unnatural_shell(p, n_shell, j, Branch::Minus),
    }
}

/// Smallest shell N ≥ J (same parity as J) with E² ≤ 0, searched up to `n_max`.
pub fn critical_shell<T: Real>(p: &Params<T>, sector: Sector, j: u32, n_max: u32) -> Option<u32> {
    (j..=n_max)
        .step_by(2)
        .find(|&n| matches!(energy_shell(p, sector, n, j), Err(SpectraError::NegativeESquared { .. })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{make_params, Space, UnitSystem};
    use proptest::prelude::*;

    fn nat(omega: f64, lambda: f64) -> Params<f64> {
        Params::natural(omega, lambda).unwrap()
    }

    #[test]
    fn spin0_reference_values() {
        let e = energy_spin0(&nat(1.0, 0.0), 0, 0).unwrap();
        assert_eq!((e.e_squared, e.energy), (1.0, 1.0));
        let e = energy_spin0(&nat(1.0, 0.1), 1, 0).unwrap();
        assert!((e.e_squared - 5.8).abs() < 1e-14);
        assert!((e.breakdown.total() - e.e_squared).abs() < 1e-15);
        let d = energy_spin0(&nat(1.0, -0.1), 1, 0).unwrap();
        assert!((d.e_squared - 4.2).abs() < 1e-14);
    }

    #[test]
    fn natural_reference_values() {
        assert_eq!(energy_spin1_natural(&nat(1.0, 0.0), 0, 0).unwrap().e_squared, 3.0);
        let e = energy_spin1_natural(&nat(1.0, 0.1), 0, 2).unwrap();
        assert!((e.e_squared - 7.3).abs() < 1e-14);
    }

    #[test]
    fn natural_minus_spin0_at_j0() {
        for &lambda in &[0.0, 0.05, 0.2, -0.03] {
            let p = nat(1.3, lambda);
            for n in 0..12 {
                let d = energy_spin1_natural_shell(&p, n, 0).unwrap().e_squared
                    - energy_spin0_shell(&p, n, 0).unwrap().e_squared;
                assert!((d - (2.0 * 1.3 + lambda)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ds_negative_e_squared_is_reported() {
        let p = nat(1.0, -0.5);
        let err = energy_spin0_shell(&p, 20, 0).unwrap_err();
        assert!(matches!(err, SpectraError::NegativeESquared { n_shell: 20, .. }));
        let crit = critical_shell(&p, Sector::Spin0, 0, 100).unwrap();
        assert!(energy_spin0_shell(&p, crit - 2, 0).is_ok());
    }

    #[test]
    fn rational_kernel_matches_float_kernel() {
        use num_rational::BigRational;
        let k = ModelConstants {
            hbar: BigRational::of_int(1),
            c: BigRational::of_int(1),
            m: BigRational::of_int(1),
            omega: BigRational::of_ratio(3, 2),
            lambda: BigRational::of_ratio(1, 10),
        };
        let exact = spin0_breakdown(&k, 4, 2).total();
        let float = energy_spin0_shell(&nat(1.5, 0.1), 4, 2).unwrap().e_squared;
        assert!((exact.approx_f64() - float).abs() < 1e-13);
    }

    #[test]
    fn si_and_natural_agree() {
        let m = crate::params::ELECTRON_MASS_SI;
        let p = make_params(m, 1e20, 1e22, Space::AdS, UnitSystem::Si).unwrap();
        let (natural, scale) = p.to_natural();
        for (n, j) in [(0, 0), (1, 2), (3, 1)] {
            let si = energy_spin0(&p, n, j).unwrap().energy;
            let nu = energy_spin0(&natural, n, j).unwrap().energy * scale.energy;
            assert!(((si - nu) / si).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn breakdown_sums_to_e_squared(omega in 0.1f64..5.0, lambda in 0.0f64..0.5, n in 0u32..8, j in 0u32..6) {
            let p = nat(omega, lambda);
            for r in [energy_spin0(&p, n, j).unwrap(), energy_spin1_natural(&p, n, j).unwrap()] {
                prop_assert!((r.breakdown.total() - r.e_squared).abs() <= 1e-14 * r.e_squared);
                prop_assert!((r.energy * r.energy - r.e_squared).abs() <= 1e-13 * r.e_squared);
            }
        }

        #[test]
        fn monotone_in_shell(omega in 0.1f64..5.0, lambda in 0.0f64..0.5, n in 0u32..20, j in 0u32..6) {
            let p = nat(omega, lambda);
            prop_assert!(energy_spin0(&p, n + 1, j).unwrap().energy > energy_spin0(&p, n, j).unwrap().energy);
            prop_assert!(energy_spin1_natural(&p, n + 1, j).unwrap().energy
                > energy_spin1_natural(&p, n, j).unwrap().energy);
        }

        #[test]
        fn decreasing_in_j_at_fixed_shell(omega in 0.1f64..5.0, lambda in 1e-3f64..0.5, n_shell in 2u32..30) {
            let p = nat(omega, lambda);
            for j in (n_shell % 2..n_shell).step_by(2) {
                prop_assert!(energy_spin0_shell(&p, n_shell, j + 2).unwrap().energy
                    < energy_spin0_shell(&p, n_shell, j).unwrap().energy);
                prop_assert!(energy_spin1_natural_shell(&p, n_shell, j + 2).unwrap().energy
                    < energy_spin1_natural_shell(&p, n_shell, j).unwrap().energy);
            }
        }
    }
}
