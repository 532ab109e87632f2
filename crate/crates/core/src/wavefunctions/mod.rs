//! Closed-form radial eigenfunctions on the AdS domain r ∈ (0, 1/√λ).
//!
//! Every sector is built on the same base function
//! F(r) = (1 − λr²)^{μ/2} (2λr²)^{J/2} P_n^{(J+1/2, μ−1/2)}(1 − 2λr²).
//! The remaining components are generated from the first-order radial
//! relations, never from pre-assembled component formulas.

mod mixing;
pub mod residuals;

pub use mixing::UnnaturalMixing;

use thiserror::Error;

use crate::coords::{chebyshev_s, map_r_to_s, map_s_to_r, DomainError};
use crate::jacobi::{jacobi_deriv, jacobi_eval, JacobiError};
use crate::params::Params;
use crate::quadrature::{integrate_adaptive, GaussLegendre, QuadratureEstimate, DEFAULT_ORDER};
use crate::quantum::{coupling_coefficients, Branch, QuantumState, Sector};
use crate::scalar::{lit, Real};
use crate::spectra::{energy, SpectraError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefunctionError {
    #[error("closed-form eigenfunctions need λ > 0; flat space (λ = 0) is unsupported")]
    FlatSpaceUnsupported,
    #[error("closed-form eigenfunctions exist only for AdS (λ > 0), got λ = {0}")]
    NotAdS(f64),
    #[error("unnatural-parity components need J >= 1")]
    JZero,
    #[error("E = mc² makes the unnatural components singular")]
    RestEnergy,
    #[error("normalization integral vanishes")]
    ZeroNorm,
    #[error("normalization integral is negative ({0}) under the DKP convention")]
    NegativeNorm(f64),
    #[error("normalization quadrature did not converge")]
    QuadratureNotConverged,
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Inner product used to fix the normalization constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormConvention {
    /// Σ over components of ∫|·|² r² dr.
    #[default]
    L2,
    /// 2∫F·G r² dr, summed over the (F, G) pairs of the sector.
    Dkp,
}

impl NormConvention {
    pub fn label(self) -> &'static str {
        match self {
            NormConvention::L2 => "l2",
            NormConvention::Dkp => "dkp",
        }
    }
}

fn check_ads<T: Real>(p: &Params<T>) -> Result<(), WavefunctionError> {
    if p.lambda() == T::zero() {
        Err(WavefunctionError::FlatSpaceUnsupported)
    } else if p.lambda() < T::zero() {
        Err(WavefunctionError::NotAdS(p.lambda().as_f64()))
    } else {
        Ok(())
    }
}

/// The unnormalized base function F_{nJ} and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBasis<T> {
    lambda: T,
    mu: T,
    n: u32,
    j: u32,
}

impl<T: Real> RadialBasis<T> {
    pub fn new(p: &Params<T>, n: u32, j: u32) -> Result<Self, WavefunctionError> {
        check_ads(p)?;
        let mu = p.m_omega_over_hbar() / p.lambda();
        let basis = RadialBasis { lambda: p.lambda(), mu, n, j };
        // parameter validation happens once here
        jacobi_eval(0, basis.a(), basis.b(), T::zero())?;
        Ok(basis)
    }

    /// Jacobi parameter J + 1/2.
    pub fn a(&self) -> T {
        T::from_u32(self.j).expect("J fits scalar") + lit(0.5)
    }

    /// Jacobi parameter μ − 1/2.
    pub fn b(&self) -> T {
        self.mu - lit(0.5)
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn r_max(&self) -> T {
        self.lambda.sqrt().recip()
    }

    fn prefactor(&self, r: T) -> T {
        let y2 = T::one() - self.lambda * r * r;
        let jf = T::from_u32(self.j).expect("J fits scalar");
        y2.powf(self.mu / lit(2.0)) * (lit::<T>(2.0) * self.lambda * r * r).powf(jf / lit(2.0))
    }

    pub fn value(&self, r: T) -> T {
        let s = T::one() - lit::<T>(2.0) * self.lambda * r * r;
        self.prefactor(r) * jacobi_eval(self.n as usize, self.a(), self.b(), s).expect("validated")
    }

    /// (F, dF/dr), with dP/ds taken from the contiguous-parameter identity.
    pub fn value_and_derivative(&self, r: T) -> (T, T) {
        let y2 = T::one() - self.lambda * r * r;
        let s = T::one() - lit::<T>(2.0) * self.lambda * r * r;
        let pre = self.prefactor(r);
        let n = self.n as usize;
        let p = jacobi_eval(n, self.a(), self.b(), s).expect("validated");
        let dp = jacobi_deriv(n, self.a(), self.b(), s).expect("validated");
        let jf = T::from_u32(self.j).expect("J fits scalar");
        let log_slope = -self.mu * self.lambda * r / y2 + jf / r;
        (pre * p, pre * (log_slope * p - lit::<T>(4.0) * self.lambda * r * dp))
    }
}

/// Unnormalized F_{nJ} at each sample (C_n = 1).
pub fn radial_f<T: Real>(p: &Params<T>, n: u32, j: u32, r_samples: &[T]) -> Result<Vec<T>, WavefunctionError> {
    let basis = RadialBasis::new(p, n, j)?;
    r_samples
        .iter()
        .map(|&r| {
            map_r_to_s(r, p.lambda())?;
            Ok(basis.value(r))
        })
        .collect()
}

/// Radii of `count` Chebyshev points in s, ascending in r.
pub fn chebyshev_r<T: Real>(p: &Params<T>, count: usize) -> Result<Vec<T>, WavefunctionError> {
    check_ads(p)?;
    chebyshev_s::<T>(count)
        .into_iter()
        .map(|s| Ok(map_s_to_r(s, p.lambda())?))
        .collect()
}

/// Evaluator for every component of one state, with C = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentModel<T> {
    params: Params<T>,
    basis: RadialBasis<T>,
    sector: Sector,
    energy: T,
    mixing: Option<UnnaturalMixing<T>>,
}

const SPIN0_NAMES: [&str; 5] = ["F", "G", "H", "H+1", "H-1"];
const NATURAL_NAMES: [&str; 4] = ["F0", "G0", "H+1", "H-1"];
const UNNATURAL_NAMES: [&str; 6] = ["phi", "H0", "F+", "G+", "F-", "G-"];

impl<T: Real> ComponentModel<T> {
    pub fn new(p: &Params<T>, n: u32, j: u32, sector: Sector, energy: T) -> Result<Self, WavefunctionError> {
        let basis = RadialBasis::new(p, n, j)?;
        let mixing = match sector.branch() {
            Some(_) => {
                if j == 0 {
                    return Err(WavefunctionError::JZero);
                }
                if energy * energy == p.rest_energy() * p.rest_energy() {
                    return Err(WavefunctionError::RestEnergy);
                }
                Some(UnnaturalMixing::new(p, j, energy))
            }
            None => None,
        };
        Ok(ComponentModel { params: *p, basis, sector, energy, mixing })
    }

    pub fn names(&self) -> &'static [&'static str] {
        match self.sector {
            Sector::Spin0 => &SPIN0_NAMES,
            Sector::Spin1Natural => &NATURAL_NAMES,
            _ => &UNNATURAL_NAMES,
        }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn basis(&self) -> &RadialBasis<T> {
        &self.basis
    }

    pub fn params(&self) -> &Params<T> {
        &self.params
    }

    pub fn mixing(&self) -> Option<&UnnaturalMixing<T>> {
        self.mixing.as_ref()
    }

    /// Indices of the (F, G) pairs entering the DKP bilinear.
    fn dkp_pairs(&self) -> &'static [(usize, usize)] {
        match self.sector {
            Sector::Spin0 | Sector::Spin1Natural => &[(0, 1)],
            _ => &[(2, 3), (4, 5)],
        }
    }

    /// Component values at r, ordered as [`Self::names`].
    pub fn eval(&self, r: T) -> Vec<T> {
        let p = &self.params;
        let (f, df) = self.basis.value_and_derivative(r);
        let y = (T::one() - p.lambda() * r * r).sqrt();
        let jf = T::from_u32(self.basis.j).expect("J fits scalar");
        let mc2 = p.rest_energy();
        let cc = coupling_coefficients::<T>(self.basis.j);
        let mw = p.m() * p.omega();
        // ħ√(1−λr²)(d/dr + a/r) + mωr/√(1−λr²), applied to F
        let lift = |a: T| p.hbar() * y * (df + a * f / r) + mw * r * f / y;
        match self.sector {
            Sector::Spin0 => {
                let g = self.energy * f / mc2;
                let h_plus = -p.c() * cc.xi * lift(-jf) / mc2;
                let h_minus = p.c() * cc.zeta * lift(jf + T::one()) / mc2;
                vec![f, g, T::zero(), h_plus, h_minus]
            }
            Sector::Spin1Natural => {
                let g = self.energy * f / mc2;
                let h_plus = -p.c() * cc.zeta * lift(-jf) / mc2;
                let h_minus = -p.c() * cc.xi * lift(jf + T::one()) / mc2;
                vec![f, g, h_plus, h_minus]
            }
            Sector::Spin1UnnaturalPlus | Sector::Spin1UnnaturalMinus => {
                let mix = self.mixing.as_ref().expect("unnatural model carries mixing");
                let branch = self.sector.branch().expect("unnatural sector");
                let (c_phi, c_h) = mix.pure_state(branch);
                let e = self.energy;
                // √(1−λr²)(d/dr + a/r) − (mω/ħ)r/√(1−λr²), applied to R
                let lower = |a: T| y * (df + a * f / r) - p.m_omega_over_hbar() * r * f / y;
                let d_minus = lower(-jf);
                let d_plus = lower(jf + T::one());
                let pref = p.hbar() / mix.epsilon_c;
                let (xi, zeta) = (cc.xi, cc.zeta);
                vec![
                    c_phi * f,
                    c_h * f,
                    pref * (xi * e * c_phi + zeta * mc2 * c_h) * d_minus,
                    pref * (xi * mc2 * c_phi + zeta * e * c_h) * d_minus,
                    pref * (-zeta * e * c_phi + xi * mc2 * c_h) * d_plus,
                    pref * (-zeta * mc2 * c_phi + xi * e * c_h) * d_plus,
                ]
            }
        }
    }

    /// Integrand of the chosen convention in the angle θ, where r = sin θ/√λ.
    fn density(&self, theta: T, convention: NormConvention) -> T {
        let lam = self.params.lambda();
        let r = theta.sin() / lam.sqrt();
        let measure = theta.sin().powi(2) * theta.cos() / (lam * lam.sqrt());
        let v = self.eval(r);
        let body = match convention {
            NormConvention::L2 => v.iter().map(|x| *x * *x).sum::<T>(),
            NormConvention::Dkp => {
                lit::<T>(2.0) * self.dkp_pairs().iter().map(|&(a, b)| v[a] * v[b]).sum::<T>()
            }
        };
        body * measure
    }

    /// ∫ (convention density) r² dr over the whole domain, with C = 1.
    pub fn norm_integral(&self, convention: NormConvention) -> QuadratureEstimate<T> {
        integrate_adaptive(
            T::zero(),
            T::FRAC_PI_2(),
            |t| self.density(t, convention),
            DEFAULT_ORDER,
            lit(1e-12),
            DEFAULT_ORDER * 16,
        )
    }
}

/// One sampled component.
#[derive(Debug, Clone, PartialEq)]
pub struct Component<T> {
    pub name: &'static str,
    pub values: Vec<T>,
}

/// Sampled radial components of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialComponents<T> {
    pub sector: Sector,
    pub n: u32,
    pub j: u32,
    pub energy: T,
    pub r: Vec<T>,
    pub s: Vec<T>,
    pub components: Vec<Component<T>>,
    /// Overall factor applied to the C = 1 model.
    pub normalization_constant: T,
    /// `None` until [`normalize`] has run.
    pub convention: Option<NormConvention>,
    model: ComponentModel<T>,
}

impl<T: Real> RadialComponents<T> {
    fn build(model: ComponentModel<T>, n: u32, j: u32, r: &[T], constant: T) -> Result<Self, WavefunctionError> {
        let lambda = model.params.lambda();
        let s = r.iter().map(|&x| map_r_to_s(x, lambda)).collect::<Result<Vec<_>, _>>()?;
        let names = model.names();
        let mut columns: Vec<Vec<T>> = vec![Vec::with_capacity(r.len()); names.len()];
        for &x in r {
            for (col, v) in columns.iter_mut().zip(model.eval(x)) {
                col.push(constant * v);
            }
        }
        let components = names
            .iter()
            .zip(columns)
            .map(|(&name, values)| Component { name, values })
            .collect();
        Ok(RadialComponents {
            sector: model.sector,
            n,
            j,
            energy: model.energy,
            r: r.to_vec(),
            s,
            components,
            normalization_constant: constant,
            convention: None,
            model,
        })
    }

    pub fn component(&self, name: &str) -> Option<&[T]> {
        self.components.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }

    pub fn model(&self) -> &ComponentModel<T> {
        &self.model
    }

    /// Component values at an arbitrary radius, including the current constant.
    pub fn eval(&self, r: T) -> Vec<T> {
        self.model.eval(r).into_iter().map(|v| v * self.normalization_constant).collect()
    }

    /// Same state multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Result<Self, WavefunctionError> {
        Self::build(self.model.clone(), self.n, self.j, &self.r, self.normalization_constant * factor)
    }

    pub fn normalize(&self, convention: NormConvention) -> Result<Self, WavefunctionError> {
        normalize(self, convention)
    }
}

pub fn spin0_components<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    r_samples: &[T],
) -> Result<RadialComponents<T>, WavefunctionError> {
    RadialComponents::build(ComponentModel::new(p, n, j, Sector::Spin0, energy)?, n, j, r_samples, T::one())
}

pub fn natural_components<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    r_samples: &[T],
) -> Result<RadialComponents<T>, WavefunctionError> {
    RadialComponents::build(ComponentModel::new(p, n, j, Sector::Spin1Natural, energy)?, n, j, r_samples, T::one())
}

/// Pure-branch unnatural state: R_branch carries the level, the other spinor is zero.
pub fn unnatural_components<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    branch: Branch,
    r_samples: &[T],
) -> Result<RadialComponents<T>, WavefunctionError> {
    let model = ComponentModel::new(p, n, j, Sector::unnatural(branch), energy)?;
    RadialComponents::build(model, n, j, r_samples, T::one())
}

/// Components of `state` at its closed-form energy.
pub fn components<T: Real>(
    p: &Params<T>,
    state: &QuantumState,
    r_samples: &[T],
) -> Result<RadialComponents<T>, WavefunctionError> {
    let e = energy(p, state)?.energy;
    let model = ComponentModel::new(p, state.n(), state.j(), state.sector(), e)?;
    RadialComponents::build(model, state.n(), state.j(), r_samples, T::one())
}

/// Rescales so the chosen convention integrates to one.
pub fn normalize<T: Real>(
    components: &RadialComponents<T>,
    convention: NormConvention,
) -> Result<RadialComponents<T>, WavefunctionError> {
    let est = components.model.norm_integral(convention);
    if !est.converged {
        return Err(WavefunctionError::QuadratureNotConverged);
    }
    if est.value == T::zero() || !est.value.is_finite() {
        return Err(WavefunctionError::ZeroNorm);
    }
    if est.value < T::zero() {
        return Err(WavefunctionError::NegativeNorm(est.value.as_f64()));
    }
    let mut out = RadialComponents::build(
        components.model.clone(),
        components.n,
        components.j,
        &components.r,
        est.value.sqrt().recip(),
    )?;
    out.convention = Some(convention);
    Ok(out)
}

/// Sign changes along a sampled series, ignoring exact zeros.
pub fn count_nodes<T: Real>(values: &[T]) -> usize {
    let signs: Vec<bool> = values.iter().filter(|v| **v != T::zero()).map(|v| *v > T::zero()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Weighted Jacobi overlap ∫₋₁¹ P_n P_m (1−s)^a (1+s)^b ds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap<T> {
    pub value: T,
    /// value / √(⟨n,n⟩⟨m,m⟩).
    pub relative: T,
    pub order: usize,
}

/// Quadrature in θ with s = cos 2θ, which makes the half-integer weights smooth.
pub fn jacobi_overlap<T: Real>(n: u32, m: u32, a: T, b: T, order: usize) -> Result<Overlap<T>, WavefunctionError> {
    jacobi_eval(0, a, b, T::zero())?;
    let rule = GaussLegendre::<T>::new(order);
    let two = lit::<T>(2.0);
    let weighted = |k: u32, l: u32, theta: T| {
        let (sn, cs) = theta.sin_cos();
        let s = (two * theta).cos();
        let w = (two * sn * sn).powf(a) * (two * cs * cs).powf(b) * lit::<T>(4.0) * sn * cs;
        jacobi_eval(k as usize, a, b, s).expect("validated") * jacobi_eval(l as usize, a, b, s).expect("validated") * w
    };
    let value = rule.integrate(T::zero(), T::FRAC_PI_2(), |t| weighted(n, m, t));
    let nn = rule.integrate(T::zero(), T::FRAC_PI_2(), |t| weighted(n, n, t));
    let mm = rule.integrate(T::zero(), T::FRAC_PI_2(), |t| weighted(m, m, t));
    Ok(Overlap { value, relative: value / (nn * mm).sqrt(), order })
}

/// The overlap for the eigenfunction basis of `p` at angular momentum J. All
/// sectors share the basis (a, b) = (J + 1/2, μ − 1/2).
pub fn orthogonality_check<T: Real>(
    p: &Params<T>,
    j: u32,
    n: u32,
    m: u32,
    order: usize,
) -> Result<Overlap<T>, WavefunctionError> {
    let basis = RadialBasis::new(p, 0, j)?;
    jacobi_overlap(n, m, basis.a(), basis.b(), order)
}

/// Overlap at each quadrature order, as a convergence diagnostic.
pub fn orthogonality_sweep<T: Real>(
    p: &Params<T>,
    j: u32,
    n: u32,
    m: u32,
    orders: &[usize],
) -> Result<Vec<Overlap<T>>, WavefunctionError> {
    orders.iter().map(|&o| orthogonality_check(p, j, n, m, o)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{energy_spin0, energy_spin1_natural, energy_spin1_unnatural};
    use proptest::prelude::*;
    use statrs::function::beta::beta;

    fn nat(omega: f64, lambda: f64) -> Params<f64> {
        Params::natural(omega, lambda).unwrap()
    }

    fn grid(p: &Params<f64>, count: usize) -> Vec<f64> {
        let r_max = 1.0 / p.lambda().sqrt();
        (1..count).map(|i| r_max * i as f64 / count as f64).collect()
    }

    #[test]
    fn ground_state_profile() {
        let p = nat(1.0, 0.1);
        let r = grid(&p, 50);
        let f = radial_f(&p, 0, 0, &r).unwrap();
        for (x, v) in r.iter().zip(&f) {
            assert!((v - (1.0 - 0.1 * x * x).powf(5.0)).abs() < 1e-15);
        }
        assert!(f.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn reference_sample() {
        let p = nat(1.0, 0.1);
        let v = radial_f(&p, 1, 0, &[1.0]).unwrap()[0];
        // P_1^{(a,b)}(s) = (a+1) + (a+b+2)(s−1)/2 with a = 1/2, b = 19/2, s = 0.8
        let p1 = 1.5 + 12.0 * (0.8 - 1.0) / 2.0;
        assert!((v - 0.9f64.powi(5) * p1).abs() < 1e-15);
    }

    #[test]
    fn rejects_flat_and_ds() {
        assert_eq!(radial_f(&nat(1.0, 0.0), 0, 0, &[0.5]), Err(WavefunctionError::FlatSpaceUnsupported));
        assert!(matches!(radial_f(&nat(1.0, -0.1), 0, 0, &[0.5]), Err(WavefunctionError::NotAdS(_))));
        assert!(matches!(radial_f(&nat(1.0, 0.1), 0, 0, &[4.0]), Err(WavefunctionError::Domain(_))));
    }

    #[test]
    fn node_counts_match_radial_number() {
        let p = nat(1.0, 0.05);
        let r = chebyshev_r(&p, 2000).unwrap();
        for n in 0..6 {
            for j in 0..4 {
                let f = radial_f(&p, n, j, &r).unwrap();
                assert_eq!(count_nodes(&f), n as usize, "n={n} J={j}");
            }
        }
    }

    #[test]
    fn derivative_matches_differences() {
        let p = nat(1.3, 0.07);
        let basis = RadialBasis::new(&p, 3, 2).unwrap();
        let r_max = basis.r_max();
        for i in 1..20 {
            let r = r_max * i as f64 / 20.0;
            let (_, d) = basis.value_and_derivative(r);
            let fd = crate::fd::first_derivative(|x| basis.value(x), r, 1e-3);
            assert!((d - fd).abs() < 1e-8 * (1.0 + d.abs()), "r={r}");
        }
    }

    #[test]
    fn spin0_component_relations() {
        let p = nat(1.0, 0.1);
        let e = energy_spin0(&p, 2, 1).unwrap().energy;
        let r = grid(&p, 40);
        let c = spin0_components(&p, 2, 1, e, &r).unwrap();
        let (f, g) = (c.component("F").unwrap(), c.component("G").unwrap());
        assert!(c.component("H").unwrap().iter().all(|h| *h == 0.0));
        for (a, b) in f.iter().zip(g) {
            assert!((b - e * a).abs() <= 1e-14 * b.abs().max(1e-300));
        }
    }

    #[test]
    fn spin0_j0_drops_lower_coupling() {
        let p = nat(1.0, 0.1);
        let e = energy_spin0(&p, 1, 0).unwrap().energy;
        let c = spin0_components(&p, 1, 0, e, &grid(&p, 10)).unwrap();
        assert!(c.component("H-1").unwrap().iter().all(|h| *h == 0.0));
    }

    #[test]
    fn ground_state_has_no_upper_tail() {
        // n = 0: the lowering combination annihilates F exactly.
        let p = nat(1.0, 0.1);
        let e = energy_spin0(&p, 0, 0).unwrap().energy;
        let c = spin0_components(&p, 0, 0, e, &grid(&p, 10)).unwrap();
        for h in c.component("H+1").unwrap() {
            assert!(h.abs() < 1e-14);
        }
    }

    #[test]
    fn h_components_against_jacobi_shift_with_doubled_factor() {
        // H₊₁ = (2ξħλ/mc)(n+μ+J+1)(1−λr²)^{(μ+1)/2}(2λr²)^{J/2} r P_{n−1}^{(J+3/2, μ+1/2)}
        let p = nat(1.0, 0.1);
        let (n, j) = (2u32, 1u32);
        let mu = 10.0;
        let e = energy_spin0(&p, n, j).unwrap().energy;
        let xi = coupling_coefficients::<f64>(j).xi;
        for &r in &[0.4, 1.1, 2.0, 2.9] {
            let c = spin0_components(&p, n, j, e, &[r]).unwrap();
            let y2 = 1.0 - 0.1 * r * r;
            let s = 1.0 - 0.2 * r * r;
            let shifted = jacobi_eval(1, 2.5, 10.5, s).unwrap();
            let expect = 2.0 * xi * 0.1 * (n as f64 + mu + j as f64 + 1.0)
                * y2.powf(5.5)
                * (0.2 * r * r).powf(0.5)
                * r
                * shifted;
            let got = c.component("H+1").unwrap()[0];
            assert!((got - expect).abs() < 1e-13 * expect.abs().max(1e-12), "r={r}: {got} vs {expect}");
        }
    }

    #[test]
    fn natural_component_relations() {
        let p = nat(1.0, 0.1);
        let e = energy_spin1_natural(&p, 1, 1).unwrap().energy;
        let r = chebyshev_r(&p, 512).unwrap();
        let c = natural_components(&p, 1, 1, e, &r).unwrap();
        let f0 = c.component("F0").unwrap();
        assert_eq!(count_nodes(f0), 1);
        let spin0 = radial_f(&p, 1, 1, &r).unwrap();
        assert_eq!(f0, spin0.as_slice());
        for (a, b) in f0.iter().zip(c.component("G0").unwrap()) {
            assert!((b - e * a).abs() <= 1e-14 * b.abs().max(1e-300));
        }
    }

    #[test]
    fn unnatural_needs_j() {
        let p = nat(1.0, 0.1);
        assert_eq!(unnatural_components(&p, 0, 0, 2.0, Branch::Plus, &[1.0]), Err(WavefunctionError::JZero));
    }

    // Coefficients of P_n and P_{n−1}^{(a+1,b+1)} multiplying each component,
    // from the printed table with the signs that survive regeneration.
    #[test]
    fn unnatural_components_against_corrected_table() {
        let p = nat(1.0, 0.1);
        let (n, j) = (1u32, 1u32);
        for branch in [Branch::Plus, Branch::Minus] {
            let e = energy_spin1_unnatural(&p, n, j, branch).unwrap().energy;
            let m = UnnaturalMixing::new(&p, j, e);
            let [ap, am] = m.alpha;
            let [bp, bm] = m.beta;
            let [gp, gm] = m.gamma;
            let [dp, dm] = m.delta;
            let kp1 = m.kappa + 1.0;
            let zek = m.zeta * e * m.k_mix;
            // regenerated entries for F₊ G₊ F₋ G₋; printed β₊, γ₊, δ₊ (C₊) and α₋ (C₋) differ
            let table = match branch {
                Branch::Plus => {
                    assert!((bp + 2.0 * zek - (m.xi * kp1 + zek)).abs() < 1e-12);
                    assert!((gp - gm).abs() > 1e-3 && (dp - dm).abs() > 1e-3);
                    [ap, bp + 2.0 * zek, gm, dm]
                }
                Branch::Minus => {
                    assert!((am + ap).abs() > 1e-3);
                    [dm, gm, bm, -ap]
                }
            };
            let (c_phi, c_h) = m.pure_state(branch);
            let (first, second) = match branch {
                Branch::Plus => (kp1, m.k_mix),
                Branch::Minus => (m.k_mix, -kp1),
            };
            for &r in &[0.3, 1.0, 1.9, 2.8] {
                let c = unnatural_components(&p, n, j, e, branch, &[r]).unwrap();
                let y = (1.0 - 0.1 * r * r).sqrt();
                let s = 1.0 - 0.2 * r * r;
                let pre = y.powf(10.0) * (0.2 * r * r).sqrt() / (m.epsilon_c * (2.0 * m.kappa * kp1).sqrt());
                let pn = jacobi_eval(1, 1.5, 9.5, s).unwrap();
                let pm = jacobi_eval(0, 2.5, 10.5, s).unwrap();
                let g3 = 2.0 * m.gamma3(&p, n, j, r);
                let (g1, g2) = (m.gamma1(&p, r), m.gamma2(&p, j, r));
                assert!((c.component("phi").unwrap()[0] - c_phi * radial_f(&p, n, j, &[r]).unwrap()[0]).abs() < 1e-14);
                assert!((c_phi - first * (2.0 * m.kappa * kp1).sqrt().recip()).abs() < 1e-14);
                assert!((c_h - second * (2.0 * m.kappa * kp1).sqrt().recip()).abs() < 1e-14);
                let radial = [g1, g1, g2, g2];
                for (k, name) in ["F+", "G+", "F-", "G-"].iter().enumerate() {
                    let expect = pre * table[k] * (radial[k] * pn - g3 * pm);
                    let got = c.component(name).unwrap()[0];
                    assert!((got - expect).abs() < 1e-12 * expect.abs().max(1e-10), "{branch:?} {name} r={r}: {got} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn ground_state_norm_matches_beta_integral() {
        let p = nat(1.0, 0.1);
        let e = energy_spin0(&p, 0, 0).unwrap().energy;
        let c = spin0_components(&p, 0, 0, e, &grid(&p, 16)).unwrap();
        let normed = c.normalize(NormConvention::L2).unwrap();
        // ∫(1−λr²)^μ r² dr = B(3/2, μ+1)/(2λ^{3/2}); G = E·F and H±1 vanish.
        let radial = beta(1.5, 11.0) / (2.0 * 0.1f64.powf(1.5));
        let expect = ((1.0 + e * e) * radial).sqrt().recip();
        assert!((normed.normalization_constant - expect).abs() < 1e-12 * expect);
        assert_eq!(normed.convention, Some(NormConvention::L2));
        let dkp = c.normalize(NormConvention::Dkp).unwrap();
        let expect = (2.0 * e * radial).sqrt().recip();
        assert!((dkp.normalization_constant - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn normalization_is_projective() {
        let p = nat(1.0, 0.2);
        let e = energy_spin1_natural(&p, 2, 1).unwrap().energy;
        let base = natural_components(&p, 2, 1, e, &chebyshev_r(&p, 64).unwrap()).unwrap();
        let a = base.normalize(NormConvention::L2).unwrap();
        let b = base.scaled(7.0).unwrap().normalize(NormConvention::L2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn normalized_unnatural_state_has_unit_norm() {
        let p = nat(1.0, 0.1);
        let e = energy_spin1_unnatural(&p, 1, 2, Branch::Minus).unwrap().energy;
        let c = unnatural_components(&p, 1, 2, e, Branch::Minus, &chebyshev_r(&p, 32).unwrap()).unwrap();
        let normed = c.normalize(NormConvention::L2).unwrap();
        let again = normed.model().norm_integral(NormConvention::L2).value * normed.normalization_constant.powi(2);
        assert!((again - 1.0).abs() < 1e-12);
    }

    #[test]
    fn components_vanish_faster_than_quarter_power_at_edge() {
        let p = nat(1.0, 0.05);
        let r_max = 1.0 / p.lambda().sqrt();
        for sector in Sector::ALL {
            let state = QuantumState::new(2, 1, sector).unwrap();
            let near: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|d| r_max * (1.0 - d)).collect();
            let c = components(&p, &state, &near).unwrap();
            for comp in &c.components {
                let ratios: Vec<f64> = comp
                    .values
                    .iter()
                    .zip(&near)
                    .map(|(v, r)| v.abs() / (1.0 - p.lambda() * r * r).powf(0.25))
                    .collect();
                assert!(ratios.windows(2).all(|w| w[1] <= w[0]), "{sector:?} {}", comp.name);
                assert!(ratios[2] < 1e-10, "{sector:?} {}", comp.name);
            }
        }
    }

    #[test]
    fn jacobi_orthogonality() {
        for &mu in &[5.0, 10.0] {
            let p = nat(mu * 0.1, 0.1);
            for j in 0..=3 {
                for n in 0..=8 {
                    for m in 0..n {
                        let o = orthogonality_check(&p, j, n, m, 64).unwrap();
                        assert!(o.value.abs() < 1e-10, "μ={mu} J={j} n={n} m={m}: {}", o.value);
                    }
                }
            }
        }
        let p = nat(1.0, 0.1);
        assert!(orthogonality_check(&p, 1, 2, 2, 64).unwrap().value > 0.0);
    }

    #[test]
    fn overlap_reference_and_order_sweep() {
        let p = nat(1.0, 0.1);
        let o = orthogonality_check(&p, 1, 0, 1, 64).unwrap();
        assert!(o.value.abs() < 1e-10);
        let sweep = orthogonality_sweep(&p, 1, 6, 8, &[4, 8, 16, 32, 64]).unwrap();
        let defects: Vec<f64> = sweep.iter().map(|o| o.relative.abs()).collect();
        assert!(defects[0] > 1e-6, "{defects:?}");
        assert!(defects[4] < 1e-13 && defects[4] < defects[3] && defects[3] < defects[2], "{defects:?}");
    }

    proptest! {
        #[test]
        fn overlap_symmetric(n in 0u32..8, m in 0u32..8, a in -0.5f64..4.0, b in -0.5f64..12.0) {
            let x = jacobi_overlap(n, m, a, b, 48).unwrap().value;
            let y = jacobi_overlap(m, n, a, b, 48).unwrap().value;
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(1.0));
        }
    }
}
