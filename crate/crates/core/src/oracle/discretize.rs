//! Finite-difference form of the radial operator in the angle variable
//! θ = asin(√λ r), acting on u = sinθ·F.
//!
//! In these variables the second-order radial equation becomes the
//! Schrödinger-like problem
//!
//! −u″ + [J(J+1)cot²θ + (η/λ²)tan²θ] u = κ u,   κ = 1 + ε/λ,
//!
//! which is symmetric on a uniform θ grid. Both endpoints are regular
//! singular; the grid never touches them and the seven-point stencil reaches
//! across through parity ghosts.

use crate::fd::SECOND_DERIVATIVE_STENCIL;
use crate::params::Params;
use crate::quantum::Sector;
use crate::scalar::{lit, Real};

use super::band::{eigenvector, tridiagonalize, SymmetricBand, Tridiagonal};
use super::OracleError;

/// Smallest number of grid intervals accepted.
pub const MIN_INTERVALS: usize = 200;

/// Levels the truncated small-λ domain is sized for by default.
pub const DEFAULT_LEVELS: usize = 12;

/// Continuation rule for the stencil beyond an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ghost {
    /// u(−x) = ±u(x) about the endpoint.
    Parity(i8),
    /// Ghost values set to zero.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundary {
    pub inner: Ghost,
    pub outer: Ghost,
    /// The outer endpoint is θ_max < π/2 rather than the domain edge.
    pub truncated: bool,
}

/// Coefficients of J(J+1)cot²θ and (η/λ²)tan²θ read off one sector's
/// second-order radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEquation<T> {
    pub angular: T,
    pub confinement: T,
}

impl<T: Real> RadialEquation<T> {
    pub fn for_sector(p: &Params<T>, sector: Sector, j: u32) -> Self {
        let jj = T::from_u32(j).expect("J fits scalar") * T::from_u32(j + 1).expect("J fits scalar");
        let lambda = p.lambda();
        match sector {
            // spin-0 ε and natural ε′ both multiply the same operator
            Sector::Spin0 | Sector::Spin1Natural => {
                RadialEquation { angular: jj, confinement: p.eta() / (lambda * lambda) }
            }
            // R± obey it too; the branch only enters through ε±(E)
            Sector::Spin1UnnaturalPlus | Sector::Spin1UnnaturalMinus => {
                RadialEquation { angular: jj, confinement: p.eta() / (lambda * lambda) }
            }
        }
    }
}

/// Assembled operator together with its grid.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator<T> {
    pub j: u32,
    pub lambda: T,
    /// Number of intervals M; the unknowns sit at the M − 1 interior nodes.
    pub intervals: usize,
    pub theta_max: T,
    pub step: T,
    pub nodes: Vec<T>,
    pub equation: RadialEquation<T>,
    pub boundary: Boundary,
    /// max |A − Aᵀ| / max |A| before symmetric storage.
    pub symmetry_defect: T,
    pub matrix: SymmetricBand<T>,
}

/// Discretizes the operator of a sector for `levels` low-lying states.
pub fn discretize_sector<T: Real>(
    p: &Params<T>,
    sector: Sector,
    j: u32,
    intervals: usize,
    levels: usize,
) -> Result<DiscretizedOperator<T>, OracleError> {
    if intervals < MIN_INTERVALS {
        return Err(OracleError::GridTooCoarse { intervals, min: MIN_INTERVALS });
    }
    let lambda = p.lambda();
    if !(lambda > T::zero()) {
        return Err(OracleError::NotAdS(lambda.as_f64()));
    }
    let equation = RadialEquation::for_sector(p, sector, j);
    let half_pi = T::FRAC_PI_2();
    let mu = p.m_omega_over_hbar() / lambda;
    let reach = T::from_usize_lossy(4 * levels + 2 * j as usize + 83);
    let theta_max = if mu > T::zero() { (reach / mu).sqrt().min(half_pi) } else { half_pi };
    let truncated = theta_max < half_pi;

    let inner = Ghost::Parity(if j.is_multiple_of(2) { -1 } else { 1 });
    let outer = if truncated {
        Ghost::Zero
    } else {
        let nu = lit::<T>(0.5) + (lit::<T>(0.25) + equation.confinement).max(T::zero()).sqrt();
        let rounded = nu.round();
        if (nu - rounded).abs() <= lit::<T>(1e-12) * nu.max(T::one()) {
            let parity = rounded.to_i64().expect("exponent fits i64");
            Ghost::Parity(if parity % 2 == 0 { 1 } else { -1 })
        } else {
            Ghost::Zero
        }
    };

    let m = intervals as isize;
    let h = theta_max / T::from_usize_lossy(intervals);
    let inv_h2 = (h * h).recip();
    let nodes: Vec<T> = (1..intervals).map(|i| T::from_usize_lossy(i) * h).collect();
    let dim = intervals - 1;
    let kd = 3usize;
    // general band rows, column offset −kd..=kd
    let mut rows = vec![[T::zero(); 7]; dim];
    for i in 1..m {
        let row = &mut rows[(i - 1) as usize];
        let theta = nodes[(i - 1) as usize];
        let (s, c) = theta.sin_cos();
        row[kd] += equation.angular * (c * c) / (s * s) + equation.confinement * (s * s) / (c * c);
        for (k, w) in SECOND_DERIVATIVE_STENCIL.iter().enumerate() {
            let offset = k as isize - 3;
            let weight = -lit::<T>(*w) * inv_h2;
            let t = i + offset;
            let (target, sign) = if t >= 1 && t < m {
                (t, T::one())
            } else if t <= 0 {
                match inner {
                    Ghost::Parity(par) if t < 0 => (-t, T::from_i8(par).expect("sign")),
                    _ => continue,
                }
            } else {
                match outer {
                    Ghost::Parity(par) if t > m => (2 * m - t, T::from_i8(par).expect("sign")),
                    _ => continue,
                }
            };
            row[(target - i + 3) as usize] += sign * weight;
        }
    }
    let mut scale = T::zero();
    let mut defect = T::zero();
    for i in 0..dim {
        for d in 1..=kd {
            if i + d < dim {
                let upper = rows[i][kd + d];
                let lower = rows[i + d][kd - d];
                defect = defect.max((upper - lower).abs());
            }
        }
        scale = rows[i].iter().fold(scale, |acc, v| acc.max(v.abs()));
    }
    let mut matrix = SymmetricBand::zeros(dim, kd);
    for i in 0..dim {
        for d in 0..=kd {
            if i + d < dim {
                let v = (rows[i][kd + d] + rows[i + d][kd - d]) / lit(2.0);
                matrix.set(i + d, i, v);
            }
        }
    }
    Ok(DiscretizedOperator {
        j,
        lambda,
        intervals,
        theta_max,
        step: h,
        nodes,
        equation,
        boundary: Boundary { inner, outer, truncated },
        symmetry_defect: defect / scale,
        matrix,
    })
}

/// Spin-0 operator (shared by every sector).
pub fn discretize<T: Real>(p: &Params<T>, j: u32, intervals: usize) -> Result<DiscretizedOperator<T>, OracleError> {
    discretize_sector(p, Sector::Spin0, j, intervals, DEFAULT_LEVELS)
}

impl<T: Real> DiscretizedOperator<T> {
    pub fn tridiagonal(&self) -> Tridiagonal<T> {
        tridiagonalize(&self.matrix)
    }

    /// The `count` lowest κ, ascending.
    pub fn eigenvalues(&self, count: usize) -> Vec<T> {
        self.tridiagonal().lowest(count)
    }

    /// Grid values of u = sinθ·F for eigenvalue κ, unit Euclidean norm.
    pub fn eigenvector(&self, kappa: T) -> Vec<T> {
        eigenvector(&self.matrix, kappa)
    }

    /// ε = λ(κ − 1).
    pub fn epsilon(&self, kappa: T) -> T {
        self.lambda * (kappa - T::one())
    }

    /// Radial coordinate of each node.
    pub fn radii(&self) -> Vec<T> {
        let root = self.lambda.sqrt();
        self.nodes.iter().map(|t| t.sin() / root).collect()
    }
}
