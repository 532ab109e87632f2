//! Residuals of the radial equations evaluated on closed-form components, with
//! derivatives taken by sixth-order central differences.

use super::{ComponentModel, RadialBasis, WavefunctionError};
use crate::fd::{first_derivative, second_derivative};
use crate::params::Params;
use crate::quantum::{coupling_coefficients, Branch, Sector};
use crate::scalar::{lit, Real};
use crate::spectra::unnatural_epsilon;

/// Largest residual relative to the largest term magnitude on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport<T> {
    pub max_abs: T,
    pub scale: T,
    pub relative: T,
    pub points: usize,
}

impl<T: Real> ResidualReport<T> {
    fn from_pairs(pairs: impl Iterator<Item = (T, T)>) -> Self {
        let (mut max_abs, mut scale, mut points) = (T::zero(), T::zero(), 0);
        for (res, sc) in pairs {
            max_abs = max_abs.max(res.abs());
            scale = scale.max(sc);
            points += 1;
        }
        let relative = if scale > T::zero() { max_abs / scale } else { T::zero() };
        ResidualReport { max_abs, scale, relative, points }
    }
}

/// One first-order relation of a sector's radial system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemResidual<T> {
    pub equation: &'static str,
    pub report: ResidualReport<T>,
    /// False for relations reported only as diagnostics.
    pub gating: bool,
}

/// Uniform interior radii in [0.05, 0.95]·(1/√λ).
pub fn interior_grid<T: Real>(p: &Params<T>, count: usize) -> Vec<T> {
    let r_max = p.lambda().sqrt().recip();
    let (lo, hi) = (lit::<T>(0.05), lit::<T>(0.95));
    let denom = T::from_usize_lossy(count.max(2) - 1);
    (0..count)
        .map(|i| r_max * (lo + (hi - lo) * T::from_usize_lossy(i) / denom))
        .collect()
}

fn step<T: Real>(p: &Params<T>) -> T {
    lit::<T>(1e-3) / p.lambda().sqrt()
}

/// (√(1−λr²) d/dr)² f + 2(1−λr²)/r f′ − J(J+1)(1−λr²)/r² f − ηr²/(1−λr²) f + ε f,
/// returned with the sum of term magnitudes.
pub fn radial_operator_residual<T: Real, F: Fn(T) -> T>(p: &Params<T>, j: u32, eps: T, f: F, r: T, h: T) -> (T, T) {
    let lam = p.lambda();
    let y2 = T::one() - lam * r * r;
    let jj = T::from_u32(j * (j + 1)).expect("J fits scalar");
    let d1 = first_derivative(&f, r, h);
    let d2 = second_derivative(&f, r, h);
    let v = f(r);
    let terms = [
        y2 * d2,
        -lam * r * d1,
        lit::<T>(2.0) * y2 / r * d1,
        -jj * y2 / (r * r) * v,
        -p.eta() * r * r / y2 * v,
        eps * v,
    ];
    (terms.iter().copied().sum(), terms.iter().map(|t| t.abs()).sum())
}

fn basis_residual<T: Real>(p: &Params<T>, n: u32, j: u32, eps: T, grid: &[T]) -> Result<ResidualReport<T>, WavefunctionError> {
    let basis = RadialBasis::new(p, n, j)?;
    let h = step(p);
    Ok(ResidualReport::from_pairs(
        grid.iter().map(|&r| radial_operator_residual(p, j, eps, |x| basis.value(x), r, h)),
    ))
}

fn kinetic<T: Real>(p: &Params<T>, energy: T) -> T {
    let mc2 = p.rest_energy();
    let hc = p.hbar() * p.c();
    (energy * energy - mc2 * mc2) / (hc * hc)
}

/// ε = (E² − m²c⁴)/(ħc)² + 3mω/ħ.
pub fn spin0_epsilon<T: Real>(p: &Params<T>, energy: T) -> T {
    kinetic(p, energy) + lit::<T>(3.0) * p.m_omega_over_hbar()
}

/// ε′ = (E² − m²c⁴)/(ħc)² + mω/ħ − λ.
pub fn natural_epsilon<T: Real>(p: &Params<T>, energy: T) -> T {
    kinetic(p, energy) + p.m_omega_over_hbar() - p.lambda()
}

/// Second-order equation for the spin-0 F at energy E.
pub fn spin0_ode_residual<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    grid: &[T],
) -> Result<ResidualReport<T>, WavefunctionError> {
    basis_residual(p, n, j, spin0_epsilon(p, energy), grid)
}

/// Second-order equation for the natural-parity F₀ at energy E.
pub fn natural_ode_residual<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    grid: &[T],
) -> Result<ResidualReport<T>, WavefunctionError> {
    basis_residual(p, n, j, natural_epsilon(p, energy), grid)
}

/// Decoupled equation for R± with ε± taken at E±.
pub fn unnatural_ode_residual<T: Real>(
    p: &Params<T>,
    n: u32,
    j: u32,
    energy: T,
    branch: Branch,
    grid: &[T],
) -> Result<ResidualReport<T>, WavefunctionError> {
    basis_residual(p, n, j, unnatural_epsilon(p, energy, j, branch), grid)
}

/// ħ√(1−λr²)(g′ + a·g/r) + sign·mωr g/√(1−λr²) with g′ by differences.
fn first_order<T: Real, F: Fn(T) -> T>(p: &Params<T>, g: F, a: T, sign: T, r: T, h: T) -> (T, T) {
    let y = (T::one() - p.lambda() * r * r).sqrt();
    let v = g(r);
    let t = [
        p.hbar() * y * first_derivative(&g, r, h),
        p.hbar() * y * a * v / r,
        sign * p.m() * p.omega() * r * v / y,
    ];
    (t.iter().copied().sum(), t.iter().map(|x| x.abs()).sum())
}

struct Relation<T> {
    name: &'static str,
    gating: bool,
    /// Σ coefficient·(first-order operator with (a, sign)) applied to component index.
    ops: Vec<(T, usize, T, T)>,
    /// Σ coefficient·component index, algebraic part.
    local: Vec<(T, usize)>,
}

fn eval_relations<T: Real>(model: &ComponentModel<T>, relations: &[Relation<T>], grid: &[T]) -> Vec<SystemResidual<T>> {
    let p = model.params();
    let h = step(p);
    relations
        .iter()
        .map(|rel| {
            let pairs = grid.iter().map(|&r| {
                let v = model.eval(r);
                let mut res = T::zero();
                let mut scale = T::zero();
                for &(coef, idx) in &rel.local {
                    res += coef * v[idx];
                    scale += (coef * v[idx]).abs();
                }
                for &(coef, idx, a, sign) in &rel.ops {
                    let (val, sc) = first_order(p, |x| model.eval(x)[idx], a, sign, r, h);
                    res += coef * val;
                    scale += coef.abs() * sc;
                }
                (res, scale)
            });
            SystemResidual { equation: rel.name, report: ResidualReport::from_pairs(pairs), gating: rel.gating }
        })
        .collect()
}

/// Residuals of every first-order relation in the state's radial system.
pub fn system_residuals<T: Real>(model: &ComponentModel<T>, grid: &[T]) -> Vec<SystemResidual<T>> {
    let p = model.params();
    let e = model.energy();
    let mc2 = p.rest_energy();
    let c = p.c();
    let j = model.basis().j;
    let jf = T::from_u32(j).expect("J fits scalar");
    let cc = coupling_coefficients::<T>(j);
    let (xi, zeta) = (cc.xi, cc.zeta);
    let one = T::one();
    let two = lit::<T>(2.0);
    let rel = |name, gating, local: Vec<(T, usize)>, ops: Vec<(T, usize, T, T)>| Relation { name, gating, ops, local };
    let relations = match model.sector() {
        Sector::Spin0 => vec![
            rel("mc2 G = E F", true, vec![(mc2, 1), (-e, 0)], vec![]),
            rel("H = 0", true, vec![(one, 2)], vec![]),
            rel("H-1 from F", true, vec![(mc2, 4)], vec![(-c * zeta, 0, jf + one, one)]),
            rel("H+1 from F", true, vec![(mc2, 3)], vec![(c * xi, 0, -jf, one)]),
            rel(
                "mc2 F - E G",
                true,
                vec![(mc2, 0), (-e, 1)],
                vec![(c * xi, 3, jf + two, -one), (-c * zeta, 4, -(jf - one), -one)],
            ),
        ],
        Sector::Spin1Natural => vec![
            rel("mc2 G0 = E F0", true, vec![(mc2, 1), (-e, 0)], vec![]),
            rel("H-1 from F0", true, vec![(mc2, 3)], vec![(c * xi, 0, jf + one, one)]),
            rel("H+1 from F0", true, vec![(mc2, 2)], vec![(c * zeta, 0, -jf, one)]),
            rel(
                "mc2 F0 - E G0",
                true,
                vec![(mc2, 0), (-e, 1)],
                vec![(c * xi, 3, -(jf - one), -one), (c * zeta, 2, jf + two, -one)],
            ),
        ],
        Sector::Spin1UnnaturalPlus | Sector::Spin1UnnaturalMinus => vec![
            // φ = 0, H0 = 1, F+ = 2, G+ = 3, F- = 4, G- = 5
            rel("mc2 F+ - E G+", true, vec![(mc2, 2), (-e, 3)], vec![(c * zeta, 1, -jf, -one)]),
            rel("mc2 F- - E G-", true, vec![(mc2, 4), (-e, 5)], vec![(c * xi, 1, jf + one, -one)]),
            rel("mc2 G+ - E F+", true, vec![(mc2, 3), (-e, 2)], vec![(c * xi, 0, -jf, -one)]),
            rel("mc2 G- - E F-", true, vec![(mc2, 5), (-e, 4)], vec![(-c * zeta, 0, jf + one, -one)]),
            rel(
                "mc2 H0",
                false,
                vec![(mc2, 1)],
                vec![(c * zeta, 2, jf + two, one), (c * xi, 4, -(jf - one), one)],
            ),
            rel(
                "mc2 phi",
                false,
                vec![(mc2, 0)],
                vec![(c * xi, 3, jf + two, one), (-c * zeta, 5, -(jf - one), one)],
            ),
        ],
    };
    eval_relations(model, &relations, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{energy_spin0, energy_spin1_natural, energy_spin1_unnatural};

    fn nat(omega: f64, lambda: f64) -> Params<f64> {
        Params::natural(omega, lambda).unwrap()
    }

    #[test]
    fn spin0_and_natural_satisfy_second_order_equations() {
        for &lambda in &[0.05, 0.2] {
            let p = nat(1.0, lambda);
            let grid = interior_grid(&p, 200);
            for n in 0..=4 {
                for j in 0..=3 {
                    let e0 = energy_spin0(&p, n, j).unwrap().energy;
                    let r0 = spin0_ode_residual(&p, n, j, e0, &grid).unwrap();
                    assert!(r0.relative < 1e-6, "spin0 λ={lambda} n={n} J={j}: {}", r0.relative);
                    let e1 = energy_spin1_natural(&p, n, j).unwrap().energy;
                    let r1 = natural_ode_residual(&p, n, j, e1, &grid).unwrap();
                    assert!(r1.relative < 1e-6, "natural λ={lambda} n={n} J={j}: {}", r1.relative);
                }
            }
        }
    }

    #[test]
    fn wrong_energy_is_detected() {
        let p = nat(1.0, 0.1);
        let grid = interior_grid(&p, 100);
        let e = energy_spin0(&p, 1, 1).unwrap().energy;
        let r = spin0_ode_residual(&p, 1, 1, e * 1.01, &grid).unwrap();
        assert!(r.relative > 1e-3);
    }

    #[test]
    fn unnatural_spinors_satisfy_decoupled_equations() {
        for &lambda in &[0.05, 0.2] {
            let p = nat(1.0, lambda);
            let grid = interior_grid(&p, 200);
            for branch in [Branch::Plus, Branch::Minus] {
                for n in 0..=4 {
                    for j in 1..=3 {
                        let e = energy_spin1_unnatural(&p, n, j, branch).unwrap().energy;
                        let r = unnatural_ode_residual(&p, n, j, e, branch, &grid).unwrap();
                        assert!(r.relative < 1e-6, "{branch:?} λ={lambda} n={n} J={j}: {}", r.relative);
                    }
                }
            }
        }
    }

    #[test]
    fn first_order_systems_hold() {
        let p = nat(1.0, 0.1);
        let grid = interior_grid(&p, 120);
        for n in 0..=3 {
            for j in 0..=3 {
                for sector in Sector::ALL {
                    if sector.branch().is_some() && j == 0 {
                        continue;
                    }
                    let e = crate::spectra::energy_shell(&p, sector, 2 * n + j, j).unwrap().energy;
                    let model = ComponentModel::new(&p, n, j, sector, e).unwrap();
                    for sr in system_residuals(&model, &grid) {
                        if sr.gating {
                            assert!(sr.report.relative < 1e-6, "{sector:?} n={n} J={j} {}: {}", sr.equation, sr.report.relative);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unnatural_second_row_relations_are_off_at_order_lambda() {
        let p = nat(1.0, 0.1);
        let grid = interior_grid(&p, 120);
        let e = energy_spin1_unnatural(&p, 1, 1, Branch::Plus).unwrap().energy;
        let model = ComponentModel::new(&p, 1, 1, Sector::Spin1UnnaturalPlus, e).unwrap();
        let diag: Vec<_> = system_residuals(&model, &grid).into_iter().filter(|s| !s.gating).collect();
        assert_eq!(diag.len(), 2);
        assert!(diag.iter().all(|s| s.report.relative > 1e-5));
    }
}
