//! Nonrelativistic limits, level spacing, weak-deformation expansion and the
//! large-ω asymptote of the unnatural E₋ level, and the minimal momentum
//! uncertainty allowed by the deformed algebra.

use super::{check_shell, delta_split, energy_spin0_shell, SpectraError};
use crate::params::Params;
use crate::quantum::{QuantumState, Sector};
use crate::scalar::{lit, Real};

fn jj<T: Real>(j: u32) -> T {
    T::from_u32(j).expect("J fits scalar") * T::from_u32(j + 1).expect("J fits scalar")
}

/// E − mc² to leading order in 1/c², at shell N.
pub fn nonrelativistic_limit_shell<T: Real>(
    p: &Params<T>,
    sector: Sector,
    n_shell: u32,
    j: u32,
) -> Result<T, SpectraError> {
    check_shell(n_shell, j)?;
    let hw = p.hbar_omega();
    let n = T::from_u32(n_shell).expect("N fits scalar");
    let np1 = n + T::one();
    let deform = p.lambda() * p.hbar() * p.hbar() / (lit::<T>(2.0) * p.m());
    let value = match sector {
        Sector::Spin0 => hw * n + deform * (np1 * np1 - jj::<T>(j) - T::one()),
        Sector::Spin1Natural => hw * np1 + deform * (np1 * np1 - jj::<T>(j)),
        Sector::Spin1UnnaturalPlus | Sector::Spin1UnnaturalMinus => {
            let a = p.spin_orbit_factor();
            let sign = sector.branch().expect("unnatural sector").sign::<T>();
            hw * (n + lit(2.5))
                + deform * (np1 * np1 - jj::<T>(j) - lit(0.5))
                + hw * hw / p.rest_energy() * a * a * jj::<T>(j)
                + sign * delta_split(p, n_shell, j)? / (lit::<T>(2.0) * p.rest_energy())
        }
    };
    Ok(value)
}

pub fn nonrelativistic_limit<T: Real>(p: &Params<T>, state: &QuantumState) -> Result<T, SpectraError> {
    nonrelativistic_limit_shell(p, state.sector(), state.principal(), state.j())
}

/// Spin-0 spacing E(N+1) − E(N) at fixed J.
pub fn level_spacing<T: Real>(p: &Params<T>, j: u32, n_shell: u32) -> Result<T, SpectraError> {
    let lower = energy_spin0_shell(p, n_shell, j)?;
    let upper = energy_spin0_shell(p, n_shell + 1, j)?;
    let diff = upper.breakdown.flat_term - lower.breakdown.flat_term
        + (upper.breakdown.confinement_term - lower.breakdown.confinement_term);
    Ok(diff / (upper.energy + lower.energy))
}

/// Large-N spacing ħc√λ.
pub fn spacing_limit<T: Real>(p: &Params<T>) -> Result<T, SpectraError> {
    if p.lambda() == T::zero() {
        return Err(SpectraError::FlatSpace);
    }
    if p.lambda() < T::zero() {
        return Err(SpectraError::NotAdS);
    }
    Ok(p.hbar() * p.c() * p.lambda().sqrt())
}

fn flat_energy_j0<T: Real>(p: &Params<T>, n_shell: u32) -> T {
    let mc2 = p.rest_energy();
    let n = T::from_u32(n_shell).expect("N fits scalar");
    (mc2 * mc2 + lit::<T>(2.0) * p.hbar_omega() * mc2 * n).sqrt()
}

/// E_{N,0} to first order in λ.
pub fn first_order_expansion<T: Real>(p: &Params<T>, n_shell: u32) -> T {
    let root = flat_energy_j0(p, n_shell);
    let n = T::from_u32(n_shell).expect("N fits scalar");
    let hc = p.hbar() * p.c();
    root + p.lambda() * hc * hc * n * (n + lit(2.0)) / (lit::<T>(2.0) * root)
}

/// First-order shift of E_{N,0} in units of ħω.
pub fn deviation_ratio<T: Real>(p: &Params<T>, n_shell: u32) -> T {
    let n = T::from_u32(n_shell).expect("N fits scalar");
    let hw = p.hbar_omega();
    p.lambda() * p.hbar() * p.hbar() * n * (n + lit(2.0))
        / (lit::<T>(2.0) * p.m() * hw * (T::one() + lit::<T>(2.0) * hw * n / p.rest_energy()).sqrt())
}

/// √((N+2)(N+3)/J(J+1)), natural units.
pub fn high_frequency_asymptote<T: Real>(n_shell: u32, j: u32) -> Result<T, SpectraError> {
    if j == 0 {
        return Err(SpectraError::JZero);
    }
    let n = T::from_u32(n_shell).expect("N fits scalar");
    Ok(((n + lit(2.0)) * (n + lit(3.0)) / jj::<T>(j)).sqrt())
}

/// Smallest ΔP compatible with ΔX·ΔP ≥ (ħ/2)(1 + λΔX²), clamped at zero
/// where the de Sitter bound turns negative.
pub fn momentum_uncertainty_bound<T: Real>(hbar: T, lambda: T, delta_x: T) -> T {
    (hbar / lit(2.0) * (delta_x.recip() + lambda * delta_x)).max(T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Space, UnitSystem};
    use crate::quantum::Branch;
    use crate::spectra::{energy_shell, energy_spin1_unnatural_shell};
    use proptest::prelude::*;

    fn nat(omega: f64, lambda: f64) -> Params<f64> {
        Params::natural(omega, lambda).unwrap()
    }

    fn with_c(c: f64, omega: f64, lambda: f64) -> Params<f64> {
        Params::with_constants(1.0, c, 1.0, omega, lambda, Space::from_sign(lambda), UnitSystem::Natural).unwrap()
    }

    #[test]
    fn momentum_bound_shapes() {
        // AdS minimum ħ√λ at ΔX = 1/√λ
        let l = 0.25;
        let at_min: f64 = momentum_uncertainty_bound(1.0, l, 2.0);
        assert!((at_min - 0.5).abs() < 1e-15);
        assert!(momentum_uncertainty_bound(1.0, l, 1.9) > at_min);
        assert_eq!(momentum_uncertainty_bound(1.0, 0.0, 4.0), 0.125);
        assert_eq!(momentum_uncertainty_bound(1.0, -l, 2.0), 0.0);
        assert_eq!(momentum_uncertainty_bound(1.0, -l, 3.0), 0.0);
        assert!(momentum_uncertainty_bound(1.0, -l, 1.0) < momentum_uncertainty_bound(1.0, 0.0, 1.0));
    }

    #[test]
    fn spin0_nonrelativistic_reference() {
        let p = nat(1.0, 0.1);
        let v = nonrelativistic_limit_shell(&p, Sector::Spin0, 2, 0).unwrap();
        assert!((v - 2.4).abs() < 1e-14);
        let q = with_c(1e3, 1.0, 0.1);
        let e = energy_spin0_shell(&q, 2, 0).unwrap().energy - q.rest_energy();
        assert!(((e - 2.4) / 2.4).abs() < 1e-5);
    }

    #[test]
    fn nonrelativistic_limits_approach_relativistic_levels() {
        let q = with_c(1e4, 1.0, 0.05);
        for sector in Sector::ALL {
            for (n_shell, j) in [(1, 1), (3, 1), (4, 2)] {
                let e = energy_shell(&q, sector, n_shell, j).unwrap().energy - q.rest_energy();
                let nr = nonrelativistic_limit_shell(&q, sector, n_shell, j).unwrap();
                assert!(((e - nr) / nr).abs() < 1e-4, "{sector:?} N={n_shell} J={j}: {e} vs {nr}");
            }
        }
    }

    #[test]
    fn natural_flat_limit_is_shifted_oscillator() {
        let p = nat(1.7, 0.0);
        for n in 0..6 {
            let v = nonrelativistic_limit_shell(&p, Sector::Spin1Natural, n, n % 2).unwrap();
            assert!((v - 1.7 * (n as f64 + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn unnatural_branches_meet_at_degeneracy() {
        let p = nat(1.0, 2.0);
        for (n_shell, j) in [(1, 1), (2, 2), (5, 3)] {
            let plus = nonrelativistic_limit_shell(&p, Sector::Spin1UnnaturalPlus, n_shell, j).unwrap();
            let minus = nonrelativistic_limit_shell(&p, Sector::Spin1UnnaturalMinus, n_shell, j).unwrap();
            let np1 = n_shell as f64 + 1.0;
            let expect = n_shell as f64 + 2.5 + (np1 * np1 - (j * (j + 1)) as f64 - 0.5);
            assert_eq!(plus, minus);
            assert!((plus - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn spacing_approaches_limit() {
        let p = nat(1.0, 0.01);
        let lim = spacing_limit(&p).unwrap();
        assert!((lim - 0.1).abs() < 1e-15);
        let d = level_spacing(&p, 0, 1_000_000).unwrap();
        assert!((d - 0.1).abs() < 1e-4);
        let a = level_spacing(&p, 0, 10).unwrap();
        let b = level_spacing(&p, 0, 1000).unwrap();
        assert!((a - lim).abs() > (b - lim).abs());
    }

    #[test]
    fn flat_spacing_decays() {
        let p = nat(1.0, 0.0);
        assert_eq!(spacing_limit(&p), Err(SpectraError::FlatSpace));
        assert_eq!(spacing_limit(&nat(1.0, -0.1)), Err(SpectraError::NotAdS));
        let far = level_spacing(&p, 0, 1_000_000).unwrap();
        assert!(far < 1e-3 && far < level_spacing(&p, 0, 100).unwrap());
    }

    #[test]
    fn expansion_is_second_order_accurate() {
        let p = nat(1.0, 0.0);
        assert_eq!(first_order_expansion(&p, 4), 3.0);
        let p = nat(1.0, 1e-6);
        let exact = energy_spin0_shell(&p, 4, 0).unwrap().energy;
        assert!((first_order_expansion(&p, 4) - exact).abs() < 1e-10);
    }

    #[test]
    fn deviation_ratio_is_expansion_shift_over_hbar_omega() {
        for &(omega, lambda, n) in &[(1.0, 1e-3, 4u32), (2.5, 0.02, 11), (0.3, 0.1, 1)] {
            let p = nat(omega, lambda);
            let shift = first_order_expansion(&p, n) - first_order_expansion(&p.with_lambda(0.0).unwrap(), n);
            assert!((deviation_ratio(&p, n) - shift / omega).abs() < 1e-12 * shift.abs().max(1.0));
        }
    }

    #[test]
    fn asymptote_values() {
        assert!((high_frequency_asymptote::<f64>(2, 1).unwrap() - 10f64.sqrt()).abs() < 1e-15);
        assert!((high_frequency_asymptote::<f64>(0, 1).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(high_frequency_asymptote::<f64>(2, 0), Err(SpectraError::JZero));
        let p = nat(1e4, 0.1);
        let e = energy_spin1_unnatural_shell(&p, 2, 1, Branch::Minus).unwrap();
        let ratio = e.energy / 10f64.sqrt();
        assert!((0.99..=1.01).contains(&ratio), "ratio {ratio}");
    }

    proptest! {
        #[test]
        fn spacing_is_energy_difference(lambda in 1e-3f64..1.0, n in 0u32..200, j in 0u32..4) {
            let p = nat(1.0, lambda);
            let n = n + j;
            let direct = energy_spin0_shell(&p, n + 1, j).unwrap().energy - energy_spin0_shell(&p, n, j).unwrap().energy;
            prop_assert!((level_spacing(&p, j, n).unwrap() - direct).abs() < 1e-11 * direct.abs().max(1.0));
        }
    }
}
