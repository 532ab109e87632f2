//! Energies from grid eigenvalues: Richardson extrapolation over M and 2M,
//! then inversion of the sector's ε(E) relation.

use crate::params::Params;
use crate::quantum::{Branch, QuantumState, Sector};
use crate::roots::{brent, RootError};
use crate::scalar::{lit, Real};
use crate::spectra::unnatural_epsilon;
use crate::wavefunctions::RadialBasis;

use super::discretize::{discretize_sector, DiscretizedOperator, DEFAULT_LEVELS};
use super::OracleError;

/// Default coarse grid; the fine grid has twice as many intervals.
pub const DEFAULT_INTERVALS: usize = 2000;

/// Order of the stencil, used by the extrapolation.
pub const STENCIL_ORDER: i32 = 6;

/// One eigenvalue on the coarse and fine grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonLevel<T> {
    pub coarse: T,
    pub fine: T,
    pub extrapolated: T,
    /// Intervals of the coarse grid.
    pub intervals: usize,
}

impl<T: Real> RichardsonLevel<T> {
    pub fn new(coarse: T, fine: T, intervals: usize) -> Self {
        let factor = lit::<T>(2f64.powi(STENCIL_ORDER) - 1.0);
        RichardsonLevel { coarse, fine, extrapolated: fine + (fine - coarse) / factor, intervals }
    }
}

/// The lowest `count` κ on a grid of `intervals` intervals. Every sector
/// shares this operator, so one call serves all of them.
pub fn grid_eigenvalues<T: Real>(p: &Params<T>, j: u32, count: usize, intervals: usize) -> Result<Vec<T>, OracleError> {
    Ok(discretize_sector(p, Sector::Spin0, j, intervals, count.max(DEFAULT_LEVELS))?.eigenvalues(count))
}

/// κ for the lowest `count` levels of one J, extrapolated from M and 2M.
pub fn richardson_levels<T: Real>(
    p: &Params<T>,
    j: u32,
    count: usize,
    intervals: usize,
) -> Result<Vec<RichardsonLevel<T>>, OracleError> {
    let coarse = grid_eigenvalues(p, j, count, intervals)?;
    let fine = grid_eigenvalues(p, j, count, 2 * intervals)?;
    Ok(coarse.into_iter().zip(fine).map(|(c, f)| RichardsonLevel::new(c, f, intervals)).collect())
}

/// Inverts ε(E) for a sector. The unnatural branches are solved by
/// bracketing on (0⁺, ∞).
pub fn energy_from_epsilon<T: Real>(p: &Params<T>, sector: Sector, j: u32, epsilon: T) -> Result<T, OracleError> {
    let mc2 = p.rest_energy();
    let hc = p.hbar() * p.c();
    let e2 = match sector {
        Sector::Spin0 => mc2 * mc2 + hc * hc * (epsilon - lit::<T>(3.0) * p.m_omega_over_hbar()),
        Sector::Spin1Natural => mc2 * mc2 + hc * hc * (epsilon - p.m_omega_over_hbar() + p.lambda()),
        Sector::Spin1UnnaturalPlus | Sector::Spin1UnnaturalMinus => {
            let branch = sector.branch().expect("unnatural sector has a branch");
            return unnatural_energy_from_epsilon(p, j, branch, epsilon);
        }
    };
    if e2 > T::zero() {
        Ok(e2.sqrt())
    } else {
        Err(OracleError::InversionNegative(e2.as_f64()))
    }
}

/// Solves ε±(E) = ε for E > 0.
pub fn unnatural_energy_from_epsilon<T: Real>(p: &Params<T>, j: u32, branch: Branch, epsilon: T) -> Result<T, OracleError> {
    if j == 0 {
        return Err(OracleError::JZero);
    }
    let f = |e: T| unnatural_epsilon(p, e, j, branch) - epsilon;
    let lo = p.rest_energy() * lit(1e-9);
    let mut hi = p.rest_energy();
    let mut found = false;
    for _ in 0..400 {
        if f(hi) > T::zero() {
            found = true;
            break;
        }
        hi = hi + hi;
    }
    if !found {
        return Err(RootError::MaxIterations(400).into());
    }
    Ok(brent(f, lo, hi, lit::<T>(4.0) * T::epsilon() * hi)?)
}

/// Oracle energy of one level with its grid history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEnergy<T> {
    pub energy: T,
    /// Energies inverted from the coarse and fine eigenvalues alone.
    pub coarse: T,
    pub fine: T,
    pub epsilon: T,
    pub kappa: RichardsonLevel<T>,
}

fn to_energy<T: Real>(
    p: &Params<T>,
    sector: Sector,
    j: u32,
    level: RichardsonLevel<T>,
) -> Result<OracleEnergy<T>, OracleError> {
    let lambda = p.lambda();
    let eps = |k: T| lambda * (k - T::one());
    Ok(OracleEnergy {
        energy: energy_from_epsilon(p, sector, j, eps(level.extrapolated))?,
        coarse: energy_from_epsilon(p, sector, j, eps(level.coarse))?,
        fine: energy_from_epsilon(p, sector, j, eps(level.fine))?,
        epsilon: eps(level.extrapolated),
        kappa: level,
    })
}

/// Energies of one sector from precomputed levels of the shared operator.
pub fn energies_from_levels<T: Real>(
    p: &Params<T>,
    sector: Sector,
    j: u32,
    levels: &[RichardsonLevel<T>],
) -> Result<Vec<OracleEnergy<T>>, OracleError> {
    if j == 0 && sector.branch().is_some() {
        return Err(OracleError::JZero);
    }
    levels.iter().map(|level| to_energy(p, sector, j, *level)).collect()
}

/// Energies of n = 0..count for one (sector, J).
pub fn oracle_energies<T: Real>(
    p: &Params<T>,
    sector: Sector,
    j: u32,
    count: usize,
    intervals: usize,
) -> Result<Vec<OracleEnergy<T>>, OracleError> {
    if j == 0 && sector.branch().is_some() {
        return Err(OracleError::JZero);
    }
    energies_from_levels(p, sector, j, &richardson_levels(p, j, count, intervals)?)
}

pub fn oracle_energy<T: Real>(p: &Params<T>, state: &QuantumState, intervals: usize) -> Result<OracleEnergy<T>, OracleError> {
    let all = oracle_energies(p, state.sector(), state.j(), state.n() as usize + 1, intervals)?;
    Ok(all[state.n() as usize])
}

/// Successive refinements M, 2M, 4M of one level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceStudy<T> {
    pub intervals: usize,
    pub energies: [T; 3],
    /// |E(M) − E(2M)| and |E(2M) − E(4M)|.
    pub differences: [T; 2],
    /// differences[0] / differences[1].
    pub ratio: T,
    /// Energy change produced by rounding errors of the eigenvalue on the finest grid.
    pub roundoff_floor: T,
}

impl<T: Real> ConvergenceStudy<T> {
    /// Both differences sit at the rounding floor, so no ratio is measurable.
    pub fn at_roundoff(&self) -> bool {
        self.differences[0] <= self.roundoff_floor && self.differences[1] <= self.roundoff_floor
    }

    pub fn passes(&self, min_ratio: T) -> bool {
        self.ratio >= min_ratio || self.at_roundoff()
    }
}

/// Coarsest grid of the default refinement study.
pub const DEFAULT_STUDY_INTERVALS: usize = 200;

/// Eigenvalues of one J on M, 2M and 4M intervals.
pub fn refinement_eigenvalues<T: Real>(
    p: &Params<T>,
    j: u32,
    count: usize,
    intervals: usize,
) -> Result<RefinementEigenvalues<T>, OracleError> {
    let mut kappas = Vec::with_capacity(3);
    let mut norm = T::zero();
    for factor in [1, 2, 4] {
        let op = discretize_sector(p, Sector::Spin0, j, factor * intervals, count.max(DEFAULT_LEVELS))?;
        kappas.push(op.eigenvalues(count));
        norm = op.matrix.norm_inf();
    }
    Ok(RefinementEigenvalues { intervals, kappas, finest_norm: norm })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementEigenvalues<T> {
    pub intervals: usize,
    /// kappas[g][n] on grid g ∈ {M, 2M, 4M}.
    pub kappas: Vec<Vec<T>>,
    /// ‖A‖∞ on the finest grid.
    pub finest_norm: T,
}

impl<T: Real> RefinementEigenvalues<T> {
    /// Convergence of level n in a given sector.
    pub fn study(&self, p: &Params<T>, sector: Sector, j: u32, n: usize) -> Result<ConvergenceStudy<T>, OracleError> {
        let lambda = p.lambda();
        let to_e = |k: T| energy_from_epsilon(p, sector, j, lambda * (k - T::one()));
        let energies = [to_e(self.kappas[0][n])?, to_e(self.kappas[1][n])?, to_e(self.kappas[2][n])?];
        let kappa = self.kappas[2][n];
        // dE/dκ by central difference of the inversion
        let dk = kappa.abs().max(T::one()) * lit(1e-6);
        let slope = ((to_e(kappa + dk)? - to_e(kappa - dk)?) / (dk + dk)).abs();
        let roundoff_floor =
            lit::<T>(4.0) * T::epsilon() * self.finest_norm * slope + lit::<T>(8.0) * T::epsilon() * energies[2];
        let differences = [(energies[0] - energies[1]).abs(), (energies[1] - energies[2]).abs()];
        let ratio = if differences[1] > T::zero() { differences[0] / differences[1] } else { T::infinity() };
        Ok(ConvergenceStudy { intervals: self.intervals, energies, differences, ratio, roundoff_floor })
    }
}

pub fn convergence_study<T: Real>(
    p: &Params<T>,
    state: &QuantumState,
    intervals: usize,
) -> Result<ConvergenceStudy<T>, OracleError> {
    let (sector, j, n) = (state.sector(), state.j(), state.n() as usize);
    if j == 0 && sector.branch().is_some() {
        return Err(OracleError::JZero);
    }
    refinement_eigenvalues(p, j, n + 1, intervals)?.study(p, sector, j, n)
}

/// Normalized overlap between the grid eigenvector of level `state.n()` and
/// the closed-form base function with radial number `closed_n`, in the
/// Sturm–Liouville inner product ∫u₁u₂ dθ of the discretized operator.
pub fn eigenfunction_overlap<T: Real>(
    p: &Params<T>,
    state: &QuantumState,
    closed_n: u32,
    intervals: usize,
) -> Result<T, OracleError> {
    let (n, j) = (state.n() as usize, state.j());
    let op: DiscretizedOperator<T> =
        discretize_sector(p, state.sector(), j, intervals, (n + 1).max(DEFAULT_LEVELS))?;
    let kappa = op.eigenvalues(n + 1)[n];
    let u = op.eigenvector(kappa);
    basis_overlap(p, &op, &u, closed_n)
}

/// |⟨u, sinθ·F_closed⟩| / (‖u‖‖sinθ·F_closed‖) over the grid nodes of `op`.
pub fn basis_overlap<T: Real>(
    p: &Params<T>,
    op: &DiscretizedOperator<T>,
    u: &[T],
    closed_n: u32,
) -> Result<T, OracleError> {
    let basis = RadialBasis::new(p, closed_n, op.j).map_err(|_| OracleError::NotAdS(p.lambda().as_f64()))?;
    let root = p.lambda().sqrt();
    let reference: Vec<T> = op.nodes.iter().map(|t| t.sin() * basis.value(t.sin() / root)).collect();
    let dot: T = u.iter().zip(&reference).map(|(a, b)| *a * *b).sum();
    let nu: T = u.iter().map(|a| *a * *a).sum();
    let nr: T = reference.iter().map(|b| *b * *b).sum();
    Ok((dot / (nu * nr).sqrt()).abs())
}
