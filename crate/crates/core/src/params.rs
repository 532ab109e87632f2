//! Physical parameters, unit systems and derived quantities.

use thiserror::Error;

use crate::scalar::{lit, Real};

/// Reduced Planck constant in J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in m/s.
pub const C_SI: f64 = 299_792_458.0;
/// Elementary charge in C.
pub const ELEMENTARY_CHARGE_SI: f64 = 1.602_176_634e-19;
/// Electron mass in kg.
pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;

/// Sign regime of the deformation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Anti-de Sitter, λ > 0.
    AdS,
    /// de Sitter, λ < 0.
    DS,
    /// Undeformed, λ = 0.
    Flat,
}

impl Space {
    pub fn label(self) -> &'static str {
        match self {
            Space::AdS => "ads",
            Space::DS => "ds",
            Space::Flat => "flat",
        }
    }

    /// Space tag implied by the sign of λ.
    pub fn from_sign<T: Real>(lambda: T) -> Space {
        if lambda > T::zero() {
            Space::AdS
        } else if lambda < T::zero() {
            Space::DS
        } else {
            Space::Flat
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnitSystem {
    /// ħ = c = 1.
    #[default]
    Natural,
    /// ħ and c carry their SI values; m in kg, ω in rad/s, λ in 1/m².
    Si,
}

impl UnitSystem {
    pub fn label(self) -> &'static str {
        match self {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "si",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("deformation λ = {lambda} contradicts space tag `{space}`")]
    SignMismatch { lambda: f64, space: &'static str },
    #[error("`{name}` must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("`{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("μ = mω/(λħ) is undefined for λ = 0")]
    FlatSpace,
}

/// Validated model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params<T> {
    hbar: T,
    c: T,
    m: T,
    omega: T,
    lambda: T,
    space: Space,
    unit_system: UnitSystem,
}

/// Dimensionless μ and the confinement coefficient η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    pub mu: T,
    pub eta: T,
}

/// Conversion factors from natural units (m = 1) back to SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitScale<T> {
    /// mc² in joules.
    pub energy: T,
    /// Compton length ħ/(mc) in metres.
    pub length: T,
    /// mc in kg·m/s.
    pub momentum: T,
}

fn check_finite<T: Real>(name: &'static str, v: T) -> Result<(), ParamsError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ParamsError::NonFinite { name, value: v.as_f64() })
    }
}

fn check_positive<T: Real>(name: &'static str, v: T) -> Result<(), ParamsError> {
    check_finite(name, v)?;
    if v > T::zero() {
        Ok(())
    } else {
        Err(ParamsError::NonPositive { name, value: v.as_f64() })
    }
}

/// Builds validated parameters with ħ and c fixed by the unit system.
pub fn make_params<T: Real>(
    m: T,
    omega: T,
    lambda: T,
    space: Space,
    unit_system: UnitSystem,
) -> Result<Params<T>, ParamsError> {
    let (hbar, c) = match unit_system {
        UnitSystem::Natural => (T::one(), T::one()),
        UnitSystem::Si => (lit(HBAR_SI), lit(C_SI)),
    };
    Params::with_constants(hbar, c, m, omega, lambda, space, unit_system)
}

impl<T: Real> Params<T> {
    /// Builds parameters with explicit ħ and c (used for limit studies such as large c).
    pub fn with_constants(
        hbar: T,
        c: T,
        m: T,
        omega: T,
        lambda: T,
        space: Space,
        unit_system: UnitSystem,
    ) -> Result<Self, ParamsError> {
        check_positive("hbar", hbar)?;
        check_positive("c", c)?;
        check_positive("mass", m)?;
        check_positive("omega", omega)?;
        check_finite("lambda", lambda)?;
        if Space::from_sign(lambda) != space {
            return Err(ParamsError::SignMismatch { lambda: lambda.as_f64(), space: space.label() });
        }
        Ok(Params { hbar, c, m, omega, lambda, space, unit_system })
    }

    /// Natural units, m = 1, space inferred from the sign of λ.
    pub fn natural(omega: T, lambda: T) -> Result<Self, ParamsError> {
        make_params(T::one(), omega, lambda, Space::from_sign(lambda), UnitSystem::Natural)
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn m(&self) -> T {
        self.m
    }
    pub fn omega(&self) -> T {
        self.omega
    }
    /// Signed deformation parameter.
    pub fn lambda(&self) -> T {
        self.lambda
    }
    pub fn space(&self) -> Space {
        self.space
    }
    pub fn unit_system(&self) -> UnitSystem {
        self.unit_system
    }

    /// Same physics with a different deformation; the space tag follows the sign.
    pub fn with_lambda(&self, lambda: T) -> Result<Self, ParamsError> {
        Self::with_constants(
            self.hbar,
            self.c,
            self.m,
            self.omega,
            lambda,
            Space::from_sign(lambda),
            self.unit_system,
        )
    }

    pub fn with_omega(&self, omega: T) -> Result<Self, ParamsError> {
        Self::with_constants(self.hbar, self.c, self.m, omega, self.lambda, self.space, self.unit_system)
    }

    /// Rest energy mc².
    pub fn rest_energy(&self) -> T {
        self.m * self.c * self.c
    }

    /// Oscillator quantum ħω.
    pub fn hbar_omega(&self) -> T {
        self.hbar * self.omega
    }

    /// Inverse squared oscillator length mω/ħ.
    pub fn m_omega_over_hbar(&self) -> T {
        self.m * self.omega / self.hbar
    }

    /// Cosmological-constant analogue Γ = −3λ.
    pub fn cosmological_constant(&self) -> T {
        lit::<T>(-3.0) * self.lambda
    }

    /// Spin-orbit prefactor 1 − λħ/(2mω); vanishes at the degeneracy point.
    pub fn spin_orbit_factor(&self) -> T {
        T::one() - self.lambda * self.hbar / (lit::<T>(2.0) * self.m * self.omega)
    }

    /// Deformation at which the spin-orbit prefactor vanishes, λ = 2mω/ħ.
    pub fn degeneracy_lambda(&self) -> T {
        lit::<T>(2.0) * self.m_omega_over_hbar()
    }

    /// η = (mω/ħ)(mω/ħ − λ).
    pub fn eta(&self) -> T {
        let a = self.m_omega_over_hbar();
        a * (a - self.lambda)
    }

    /// μ = mω/(λħ); errors in flat space.
    pub fn mu(&self) -> Result<T, ParamsError> {
        if self.lambda == T::zero() {
            return Err(ParamsError::FlatSpace);
        }
        Ok(self.m_omega_over_hbar() / self.lambda)
    }

    pub fn derived(&self) -> Result<DerivedParams<T>, ParamsError> {
        Ok(DerivedParams { mu: self.mu()?, eta: self.eta() })
    }

    /// Radius 1/√λ of the AdS domain, if any.
    pub fn outer_radius(&self) -> Option<T> {
        (self.space == Space::AdS).then(|| self.lambda.sqrt().recip())
    }

    /// Rescales to natural units (ħ = c = m = 1) and returns the SI scale factors.
    pub fn to_natural(&self) -> (Params<T>, UnitScale<T>) {
        let energy = self.rest_energy();
        let length = self.hbar / (self.m * self.c);
        let natural = Params {
            hbar: T::one(),
            c: T::one(),
            m: T::one(),
            omega: self.hbar_omega() / energy,
            lambda: self.lambda * length * length,
            space: self.space,
            unit_system: UnitSystem::Natural,
        };
        (natural, UnitScale { energy, length, momentum: self.m * self.c })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values_at_reference_point() {
        let p = make_params(1.0f64, 1.0, 0.1, Space::AdS, UnitSystem::Natural).unwrap();
        assert!((p.mu().unwrap() - 10.0).abs() < 1e-14);
        assert!((p.eta() - 0.9).abs() < 1e-15);
        assert!((p.cosmological_constant() + 0.3).abs() < 1e-15);
        let d = p.derived().unwrap();
        assert!((0.01 * d.mu * (d.mu - 1.0) - d.eta).abs() < 1e-14);
    }

    #[test]
    fn sign_mismatch_and_nonpositive() {
        assert!(matches!(
            make_params(1.0, 1.0, -0.1, Space::AdS, UnitSystem::Natural),
            Err(ParamsError::SignMismatch { .. })
        ));
        assert!(matches!(
            make_params(1.0, 1.0, 0.1, Space::DS, UnitSystem::Natural),
            Err(ParamsError::SignMismatch { .. })
        ));
        assert!(matches!(
            make_params(1.0, 1.0, 0.0, Space::AdS, UnitSystem::Natural),
            Err(ParamsError::SignMismatch { .. })
        ));
        assert!(matches!(
            make_params(0.0, 1.0, 0.1, Space::AdS, UnitSystem::Natural),
            Err(ParamsError::NonPositive { name: "mass", .. })
        ));
        assert!(matches!(
            make_params(1.0, -1.0, 0.1, Space::AdS, UnitSystem::Natural),
            Err(ParamsError::NonPositive { name: "omega", .. })
        ));
        assert!(matches!(
            make_params(1.0, 1.0, f64::NAN, Space::AdS, UnitSystem::Natural),
            Err(ParamsError::NonFinite { .. })
        ));
    }

    #[test]
    fn flat_space_has_no_mu() {
        let p = make_params(1.0, 1.0, 0.0, Space::Flat, UnitSystem::Natural).unwrap();
        assert_eq!(p.mu(), Err(ParamsError::FlatSpace));
        assert_eq!(p.outer_radius(), None);
    }

    #[test]
    fn natural_rescaling_of_si_params() {
        let m = ELECTRON_MASS_SI;
        let p = make_params(m, 1e20, 1e20, Space::AdS, UnitSystem::Si).unwrap();
        let (n, scale) = p.to_natural();
        assert!((n.omega() * scale.energy - HBAR_SI * 1e20).abs() / (HBAR_SI * 1e20) < 1e-14);
        let lc = HBAR_SI / (m * C_SI);
        assert!((n.lambda() - 1e20 * lc * lc).abs() / n.lambda() < 1e-14);
        assert_eq!(n.space(), Space::AdS);
    }

    #[test]
    fn works_in_single_precision() {
        let p = make_params(1.0f32, 1.0, 0.1, Space::AdS, UnitSystem::Natural).unwrap();
        assert!((p.mu().unwrap() - 10.0).abs() < 1e-5);
    }
}
