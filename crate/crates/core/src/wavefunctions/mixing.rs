//! The 2×2 rotation that decouples (φ, H₀) into the spinors R±.

use crate::params::Params;
use crate::quantum::{coupling_coefficients, Branch};
use crate::scalar::{lit, Real};

/// Mixing data of an unnatural-parity level at energy E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnnaturalMixing<T> {
    pub energy: T,
    /// k = 2√(J(J+1))E/mc².
    pub k_mix: T,
    /// κ = √(1 + k²).
    pub kappa: T,
    /// (1 − λħ/2mω)ω/ħc².
    pub w: T,
    /// (E² − m²c⁴)/c.
    pub epsilon_c: T,
    pub xi: T,
    pub zeta: T,
    pub rest_energy: T,
    pub alpha: [T; 2],
    pub beta: [T; 2],
    pub gamma: [T; 2],
    pub delta: [T; 2],
}

impl<T: Real> UnnaturalMixing<T> {
    pub fn new(p: &Params<T>, j: u32, energy: T) -> Self {
        let mc2 = p.rest_energy();
        let jj = T::from_u32(j).expect("J fits scalar") * T::from_u32(j + 1).expect("J fits scalar");
        let k = lit::<T>(2.0) * jj.sqrt() * energy / mc2;
        let kappa = (T::one() + k * k).sqrt();
        let cc = coupling_coefficients::<T>(j);
        let (xi, zeta) = (cc.xi, cc.zeta);
        let kp1 = kappa + T::one();
        let pm = |a: T, b: T| [a + b, a - b];
        UnnaturalMixing {
            energy,
            k_mix: k,
            kappa,
            w: p.spin_orbit_factor() * p.omega() / (p.hbar() * p.c() * p.c()),
            epsilon_c: (energy * energy - mc2 * mc2) / p.c(),
            xi,
            zeta,
            rest_energy: mc2,
            alpha: pm(zeta * mc2 * k, xi * energy * kp1),
            beta: pm(-zeta * energy * k, xi * mc2 * kp1),
            gamma: pm(xi * mc2 * k, zeta * energy * kp1),
            delta: pm(xi * energy * k, zeta * mc2 * kp1),
        }
    }

    /// 1/√(2κ(κ+1)).
    pub fn norm(&self) -> T {
        (lit::<T>(2.0) * self.kappa * (self.kappa + T::one())).sqrt().recip()
    }

    /// (φ, H₀) from (R₊, R₋).
    pub fn transform(&self, r_plus: T, r_minus: T) -> (T, T) {
        let a = self.kappa + T::one();
        let n = self.norm();
        (n * (a * r_plus + self.k_mix * r_minus), n * (self.k_mix * r_plus - a * r_minus))
    }

    /// Coefficients (c_φ, c_H) with φ = c_φ·R and H₀ = c_H·R for a pure branch state.
    pub fn pure_state(&self, branch: Branch) -> (T, T) {
        match branch {
            Branch::Plus => self.transform(T::one(), T::zero()),
            Branch::Minus => self.transform(T::zero(), T::one()),
        }
    }

    pub fn gamma1(&self, p: &Params<T>, r: T) -> T {
        let root = (T::one() - p.lambda() * r * r).sqrt();
        lit::<T>(-2.0) * p.m() * p.omega() * r / root
    }

    pub fn gamma2(&self, p: &Params<T>, j: u32, r: T) -> T {
        let root = (T::one() - p.lambda() * r * r).sqrt();
        let two_j1 = T::from_u32(2 * j + 1).expect("J fits scalar");
        p.hbar() * two_j1 * root / r + self.gamma1(p, r)
    }

    pub fn gamma3(&self, p: &Params<T>, n: u32, j: u32, r: T) -> T {
        let root = (T::one() - p.lambda() * r * r).sqrt();
        let mu = p.m_omega_over_hbar() / p.lambda();
        let tail = T::from_u32(n + j + 1).expect("n fits scalar") + mu;
        p.lambda() * r * root * tail
    }
}
