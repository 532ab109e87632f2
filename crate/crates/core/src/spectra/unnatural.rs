//! Unnatural-parity spin-1 levels: the spin-orbit split pair E±.

use super::{check_shell, EnergyBreakdown, EnergyResult, SpectraError};
use crate::params::Params;
use crate::quantum::Branch;
use crate::roots::{brent, RootError};
use crate::scalar::{lit, Real};

fn jj<T: Real>(j: u32) -> T {
    T::from_u32(j).expect("J fits scalar") * T::from_u32(j + 1).expect("J fits scalar")
}

fn shell<T: Real>(n_shell: u32) -> T {
    T::from_u32(n_shell).expect("N fits scalar")
}

/// (N+1)² − J(J+1) − ½.
fn bracket<T: Real>(n_shell: u32, j: u32) -> T {
    let np1 = shell::<T>(n_shell) + T::one();
    np1 * np1 - jj::<T>(j) - lit(0.5)
}

/// Spin-orbit splitting Δ; carries the sign of 1 − λħ/2mω.
pub fn delta_split<T: Real>(p: &Params<T>, n_shell: u32, j: u32) -> Result<T, SpectraError> {
    check_shell(n_shell, j)?;
    let a = p.spin_orbit_factor();
    let x = p.hbar_omega() / p.rest_energy();
    let two_j1 = lit::<T>(2.0) * T::from_u32(j).expect("J fits scalar") + T::one();
    let b0 = two_j1 * two_j1;
    let b1 = lit::<T>(4.0) * jj::<T>(j);
    let inner = shell::<T>(n_shell)
        + lit(2.5)
        + p.lambda() * p.hbar() / (lit::<T>(2.0) * p.m() * p.omega()) * bracket::<T>(n_shell, j);
    let radicand =
        T::one() + b1 * b1 / (lit::<T>(4.0) * b0) * x * x * a * a + lit::<T>(2.0) * b1 / b0 * x * inner;
    if radicand < T::zero() {
        return Err(SpectraError::NegativeRadicand { radicand: radicand.as_f64(), n_shell, j });
    }
    Ok(p.hbar_omega() * p.rest_energy() * a * two_j1 * radicand.sqrt())
}

fn breakdown_without_delta<T: Real>(p: &Params<T>, n_shell: u32, j: u32) -> EnergyBreakdown<T> {
    let mc2 = p.rest_energy();
    let lam = p.lambda() * p.hbar() * p.hbar() * p.c() * p.c();
    let np1 = shell::<T>(n_shell) + T::one();
    let a = p.spin_orbit_factor();
    let hw = p.hbar_omega();
    EnergyBreakdown {
        flat_term: mc2 * mc2 + lit::<T>(2.0) * hw * mc2 * (shell::<T>(n_shell) + lit(2.5)),
        confinement_term: lam * (np1 * np1 - lit(0.5)),
        rotational_term: -(lam * jj::<T>(j)),
        spin_orbit_term: lit::<T>(2.0) * hw * hw * a * a * jj::<T>(j),
        delta_split: T::zero(),
    }
}

pub fn energy_spin1_unnatural_shell<T: Real>(
    p: &Params<T>,
    n_shell: u32,
    j: u32,
    branch: Branch,
) -> Result<EnergyResult<T>, SpectraError> {
    let delta = delta_split(p, n_shell, j)?;
    let mut b = breakdown_without_delta(p, n_shell, j);
    b.delta_split = branch.sign::<T>() * delta;
    EnergyResult::from_breakdown(b, Some(branch), n_shell, j)
}

pub fn energy_spin1_unnatural<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    branch: Branch,
) -> Result<EnergyResult<T>, SpectraError> {
    energy_spin1_unnatural_shell(p, 2 * n + j, j, branch)
}

/// Terms of the transcendental condition
/// (E² − m²c⁴)/ħω ∓ A√(m²c⁴ + 4J(J+1)E²) = mc²(2N+5) + (λħc²/ω)[(N+1)² − J(J+1) − ½].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualParts<T> {
    pub kinetic: T,
    pub spin_orbit: T,
    pub right_side: T,
    /// LHS − RHS.
    pub residual: T,
    /// Sum of term magnitudes, for relative comparisons.
    pub scale: T,
}

impl<T: Real> ResidualParts<T> {
    pub fn relative(&self) -> T {
        self.residual.abs() / self.scale
    }
}

pub fn unnatural_transcendental_residual<T: Real>(
    p: &Params<T>,
    energy: T,
    n_shell: u32,
    j: u32,
    branch: Branch,
) -> ResidualParts<T> {
    let mc2 = p.rest_energy();
    let e2 = energy * energy;
    let kinetic = (e2 - mc2 * mc2) / p.hbar_omega();
    let root = (mc2 * mc2 + lit::<T>(4.0) * jj::<T>(j) * e2).sqrt();
    let spin_orbit = -branch.sign::<T>() * p.spin_orbit_factor() * root;
    let right_side = mc2 * (lit::<T>(2.0) * shell::<T>(n_shell) + lit(5.0))
        + p.lambda() * p.hbar() * p.c() * p.c() / p.omega() * bracket::<T>(n_shell, j);
    let residual = kinetic + spin_orbit - right_side;
    let scale = kinetic.abs() + spin_orbit.abs() + right_side.abs();
    ResidualParts { kinetic, spin_orbit, right_side, residual, scale }
}

/// ε±(E) = (E² − m²c⁴)/ħ²c² + (ω/ħc²)A(mc² ∓ √(m²c⁴ + 4J(J+1)E²)) − 3mω/ħ.
pub fn unnatural_epsilon<T: Real>(p: &Params<T>, energy: T, j: u32, branch: Branch) -> T {
    let mc2 = p.rest_energy();
    let e2 = energy * energy;
    let hc = p.hbar() * p.c();
    let root = (mc2 * mc2 + lit::<T>(4.0) * jj::<T>(j) * e2).sqrt();
    (e2 - mc2 * mc2) / (hc * hc)
        + p.omega() / (p.hbar() * p.c() * p.c()) * p.spin_orbit_factor() * (mc2 - branch.sign::<T>() * root)
        - lit::<T>(3.0) * p.m_omega_over_hbar()
}

/// Root of the transcendental condition inside [lo, hi].
pub fn unnatural_root_in_bracket<T: Real>(
    p: &Params<T>,
    n_shell: u32,
    j: u32,
    branch: Branch,
    lo: T,
    hi: T,
) -> Result<T, SpectraError> {
    let f = |e: T| unnatural_transcendental_residual(p, e, n_shell, j, branch).residual;
    let xtol = lit::<T>(4.0) * T::epsilon() * hi.abs();
    Ok(brent(f, lo, hi, xtol)?)
}

/// Upper end of a bracket found by doubling from mc² until the residual turns positive.
fn expand_upper<T: Real, F: Fn(T) -> T>(f: F, start: T) -> Result<T, SpectraError> {
    let mut hi = start;
    for _ in 0..400 {
        if f(hi) > T::zero() {
            return Ok(hi);
        }
        hi *= lit(2.0);
    }
    Err(RootError::MaxIterations(400).into())
}

/// Level from the transcendental condition alone; the breakdown's `delta_split`
/// holds E² minus the remaining closed-form terms.
pub fn unnatural_energy_by_rootfind_shell<T: Real>(
    p: &Params<T>,
    n_shell: u32,
    j: u32,
    branch: Branch,
) -> Result<EnergyResult<T>, SpectraError> {
    check_shell(n_shell, j)?;
    let f = |e: T| unnatural_transcendental_residual(p, e, n_shell, j, branch).residual;
    let lo = p.rest_energy() * lit(1e-9);
    let hi = expand_upper(f, p.rest_energy())?;
    let e = unnatural_root_in_bracket(p, n_shell, j, branch, lo, hi)?;
    let mut b = breakdown_without_delta(p, n_shell, j);
    let e2 = e * e;
    b.delta_split = e2 - b.total();
    EnergyResult::from_breakdown(b, Some(branch), n_shell, j)
}

pub fn unnatural_energy_by_rootfind<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    branch: Branch,
) -> Result<EnergyResult<T>, SpectraError> {
    unnatural_energy_by_rootfind_shell(p, 2 * n + j, j, branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(omega: f64, lambda: f64) -> Params<f64> {
        Params::natural(omega, lambda).unwrap()
    }

    // Independent transcription of the splitting for the reference point.
    #[test]
    fn delta_reference_value() {
        let d = delta_split(&nat(1.0, 0.1), 1, 1).unwrap();
        let a: f64 = 0.95;
        let expect = a * 3.0 * (1.0 + 16.0 / 9.0 * a * a + 16.0 / 9.0 * 3.575f64).sqrt();
        assert!((d - expect).abs() < 1e-13);
        assert!((d - 8.531).abs() < 1e-3);
    }

    #[test]
    fn delta_vanishes_at_degeneracy_and_collapses_at_j0() {
        let p = nat(1.0, 2.0);
        for (n, j) in [(0, 0), (3, 1), (6, 4)] {
            assert_eq!(delta_split(&p, n, j).unwrap(), 0.0);
        }
        let p = nat(1.7, 0.3);
        let d = delta_split(&p, 4, 0).unwrap();
        assert!((d - 1.7 * p.spin_orbit_factor()).abs() < 1e-15);
    }

    #[test]
    fn unnatural_reference_values() {
        let p = nat(1.0, 0.1);
        let minus = energy_spin1_unnatural(&p, 0, 1, Branch::Minus).unwrap();
        let plus = energy_spin1_unnatural(&p, 0, 1, Branch::Plus).unwrap();
        assert!((minus.e_squared - 3.229).abs() < 1e-3);
        assert!((plus.e_squared - 20.291).abs() < 1e-3);
        assert!((plus.e_squared - minus.e_squared - 2.0 * delta_split(&p, 1, 1).unwrap()).abs() < 1e-12);
        assert!(!minus.j_zero_flagged);
        assert!(energy_spin1_unnatural_shell(&p, 1, 0, Branch::Plus).unwrap().j_zero_flagged);
    }

    #[test]
    fn degenerate_branches_coincide() {
        let p = nat(0.8, 1.6);
        for (n, j) in [(0, 1), (1, 2), (2, 3)] {
            let a = energy_spin1_unnatural(&p, n, j, Branch::Plus).unwrap();
            let b = energy_spin1_unnatural(&p, n, j, Branch::Minus).unwrap();
            assert_eq!(a.e_squared, b.e_squared);
            assert_eq!(a.breakdown.spin_orbit_term, 0.0);
        }
    }

    #[test]
    fn rootfind_matches_closed_form() {
        let p = nat(1.0, 0.1);
        for branch in [Branch::Plus, Branch::Minus] {
            for (n, j) in [(0, 1), (1, 1), (2, 2), (0, 3)] {
                let cf = energy_spin1_unnatural(&p, n, j, branch).unwrap();
                let rf = unnatural_energy_by_rootfind(&p, n, j, branch).unwrap();
                assert!(((cf.energy - rf.energy) / cf.energy).abs() < 1e-12);
                let parts = unnatural_transcendental_residual(&p, rf.energy, 2 * n + j, j, branch);
                assert!(parts.relative() < 1e-12);
                assert!((rf.breakdown.total() - rf.e_squared).abs() < 1e-12 * rf.e_squared);
            }
        }
    }

    #[test]
    fn flat_limit_of_transcendental_condition() {
        let p = nat(1.3, 0.0);
        for n_shell in 0..5 {
            for branch in [Branch::Plus, Branch::Minus] {
                let cf = energy_spin1_unnatural_shell(&p, n_shell, 0, branch).unwrap();
                let rf = unnatural_energy_by_rootfind_shell(&p, n_shell, 0, branch).unwrap();
                assert!((cf.energy - rf.energy).abs() < 1e-12 * cf.energy);
                // J = 0: E² = m² + 2ω(N + 5/2) ± ω
                let expect = 1.0 + 2.6 * (n_shell as f64 + 2.5) + branch.sign::<f64>() * 1.3;
                assert!((cf.e_squared - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wrong_bracket_has_no_root() {
        let p = nat(1.0, 0.1);
        let plus = energy_spin1_unnatural(&p, 0, 1, Branch::Plus).unwrap().energy;
        let err = unnatural_root_in_bracket(&p, 1, 1, Branch::Plus, 0.5 * plus, 0.9 * plus).unwrap_err();
        assert!(matches!(err, SpectraError::Root(RootError::NoSignChange { .. })));
    }

    #[test]
    fn epsilon_matches_operator_eigenvalue() {
        // ε at the level equals λ[(2n+J+1+μ)² − 1 − J(J+1) − μ(μ−1)].
        let p = nat(1.0, 0.1);
        let mu = 10.0;
        for branch in [Branch::Plus, Branch::Minus] {
            for (n, j) in [(0u32, 1u32), (2, 1), (1, 3)] {
                let e = energy_spin1_unnatural(&p, n, j, branch).unwrap().energy;
                let big = (2 * n + j + 1) as f64 + mu;
                let expect = 0.1 * (big * big - 1.0 - (j * (j + 1)) as f64 - mu * (mu - 1.0));
                assert!((unnatural_epsilon(&p, e, j, branch) - expect).abs() < 1e-11 * expect);
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_solves_transcendental(omega in 0.05f64..20.0, frac in 0.0f64..0.999, n in 0u32..6, j in 0u32..6) {
            let p = nat(omega, frac * 2.0 * omega);
            for branch in [Branch::Plus, Branch::Minus] {
                let r = energy_spin1_unnatural(&p, n, j, branch).unwrap();
                let parts = unnatural_transcendental_residual(&p, r.energy, 2 * n + j, j, branch);
                prop_assert!(parts.relative() < 1e-9, "relative residual {}", parts.relative());
            }
        }

        #[test]
        fn branch_ordering(omega in 0.05f64..20.0, frac in 0.0f64..1.0, n in 0u32..6, j in 0u32..6) {
            let p = nat(omega, frac * 2.0 * omega);
            let plus = energy_spin1_unnatural(&p, n, j, Branch::Plus).unwrap();
            let minus = energy_spin1_unnatural(&p, n, j, Branch::Minus).unwrap();
            let delta = delta_split(&p, 2 * n + j, j).unwrap();
            prop_assert!(delta >= 0.0);
            prop_assert!((plus.e_squared - minus.e_squared - 2.0 * delta).abs() <= 1e-12 * plus.e_squared);
        }
    }
}
