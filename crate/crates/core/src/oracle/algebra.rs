//! Checks of the deformed position–momentum algebra in one dimension.
//!
//! X = x/√(1 − λx²) and P = −iħ√(1 − λx²) d/dx should satisfy
//! [X, P] = iħ(1 + λX²). The commutator is applied to test functions whose
//! derivatives are written out by hand, with forward-mode dual numbers for
//! the product rule. The uncertainty check uses the ground state of the
//! deformed 1D oscillator, discretized in θ = asin(√λ x).

use std::ops::{Add, Div, Mul, Sub};

use crate::coords::DomainError;
use crate::fd::SECOND_DERIVATIVE_STENCIL;
use crate::scalar::{lit, Real};

use super::band::{eigenvector, lowest_eigenvalues, SymmetricBand};
use super::discretize::MIN_INTERVALS;
use super::OracleError;

/// a + b·ε with ε² = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub deriv: T,
}

impl<T: Real> Dual<T> {
    pub fn new(value: T, deriv: T) -> Self {
        Dual { value, deriv }
    }

    pub fn variable(x: T) -> Self {
        Dual { value: x, deriv: T::one() }
    }

    pub fn constant(c: T) -> Self {
        Dual { value: c, deriv: T::zero() }
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        Dual { value: r, deriv: self.deriv / (r + r) }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { value: self.value + o.value, deriv: self.deriv + o.deriv }
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { value: self.value - o.value, deriv: self.deriv - o.deriv }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { value: self.value * o.value, deriv: self.deriv * o.value + self.value * o.deriv }
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Dual {
            value: self.value / o.value,
            deriv: (self.deriv * o.value - self.value * o.deriv) / (o.value * o.value),
        }
    }
}

/// Test functions with hand-written derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    Gaussian,
    Cubic,
    Sine,
    Lorentzian,
    EdgeBump,
}

impl TestFunction {
    pub const CATALOG: [TestFunction; 5] = [
        TestFunction::Gaussian,
        TestFunction::Cubic,
        TestFunction::Sine,
        TestFunction::Lorentzian,
        TestFunction::EdgeBump,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TestFunction::Gaussian => "gaussian",
            TestFunction::Cubic => "cubic",
            TestFunction::Sine => "sine",
            TestFunction::Lorentzian => "lorentzian",
            TestFunction::EdgeBump => "edge-bump",
        }
    }

    /// f(x) and f′(x). `lambda` only enters the edge bump (1 − λx²)².
    pub fn eval<T: Real>(self, x: T, lambda: T) -> Dual<T> {
        let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
        match self {
            TestFunction::Gaussian => {
                let g = (-x * x).exp();
                Dual::new(g, -two * x * g)
            }
            TestFunction::Cubic => Dual::new(one + x - two * x * x * x, one - lit::<T>(6.0) * x * x),
            TestFunction::Sine => Dual::new((three * x).sin(), three * (three * x).cos()),
            TestFunction::Lorentzian => {
                let d = one + x * x;
                Dual::new(d.recip(), -two * x / (d * d))
            }
            TestFunction::EdgeBump => {
                let s = one - lambda * x * x;
                Dual::new(s * s, lit::<T>(-4.0) * lambda * x * s)
            }
        }
    }
}

/// Which momentum operator the commutator is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentumRealization {
    /// −iħ√(1 − λx²) d/dx.
    Deformed,
    /// −iħ d/dx; the negative control.
    Undeformed,
}

fn momentum_factor<T: Real>(x: Dual<T>, lambda: T, realization: MomentumRealization) -> Dual<T> {
    match realization {
        MomentumRealization::Deformed => (Dual::constant(T::one()) - Dual::constant(lambda) * x * x).sqrt(),
        MomentumRealization::Undeformed => Dual::constant(T::one()),
    }
}

/// max |[X, P]f − iħ(1 + λX²)f| / max |ħ(1 + λX²)f| over the samples.
pub fn commutator_residual<T: Real>(
    lambda: T,
    hbar: T,
    function: TestFunction,
    samples: &[T],
    realization: MomentumRealization,
) -> Result<T, DomainError> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &x in samples {
        if lambda > T::zero() && !(lambda * x * x < T::one()) {
            return Err(DomainError::Radius { r: x.as_f64(), r_max: lambda.sqrt().recip().as_f64() });
        }
        let xd = Dual::variable(x);
        let root = (Dual::constant(T::one()) - Dual::constant(lambda) * xd * xd).sqrt();
        let big_x = xd / root;
        let f = function.eval(x, lambda);
        let s = momentum_factor(xd, lambda, realization).value;
        // imaginary parts; both products carry the factor −iħ
        let xp = big_x.value * s * f.deriv;
        let px = s * (big_x * f).deriv;
        let commutator = -hbar * (xp - px);
        let expected = hbar * (T::one() + lambda * big_x.value * big_x.value) * f.value;
        worst = worst.max((commutator - expected).abs());
        scale = scale.max(expected.abs());
    }
    Ok(if scale > T::zero() { worst / scale } else { worst })
}

/// `count` symmetric points on (−0.95, 0.95)/√λ, or on (−3, 3) if λ ≤ 0.
pub fn commutator_samples<T: Real>(lambda: T, count: usize) -> Vec<T> {
    let half = if lambda > T::zero() { lit::<T>(0.95) / lambda.sqrt() } else { lit(3.0) };
    (0..count)
        .map(|k| -half + (half + half) * T::from_usize_lossy(k) / T::from_usize_lossy(count.max(2) - 1))
        .collect()
}

/// Moments of a normalized grid ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyProduct<T> {
    pub delta_x: T,
    pub delta_p: T,
    /// (ħ/2)(1 + λΔX²).
    pub bound: T,
    /// ΔX·ΔP − bound.
    pub margin: T,
}

/// Ground state of H = P²/2m + mω²X²/2 on M intervals of θ ∈ (−π/2, π/2),
/// where the Hamiltonian reads (ħ²λ/2m)[−d²/dθ² + μ²tan²θ] with μ = mω/ħλ.
pub fn uncertainty_product<T: Real>(
    hbar: T,
    m: T,
    omega: T,
    lambda: T,
    intervals: usize,
) -> Result<UncertaintyProduct<T>, OracleError> {
    if intervals < MIN_INTERVALS {
        return Err(OracleError::GridTooCoarse { intervals, min: MIN_INTERVALS });
    }
    if !(lambda > T::zero()) {
        return Err(OracleError::NotAdS(lambda.as_f64()));
    }
    let mu = m * omega / (hbar * lambda);
    let strength = mu * mu;
    let h = T::PI() / T::from_usize_lossy(intervals);
    let dim = intervals - 1;
    let nodes: Vec<T> = (1..intervals).map(|i| -T::FRAC_PI_2() + T::from_usize_lossy(i) * h).collect();
    let inv_h2 = (h * h).recip();
    let mut kinetic = SymmetricBand::zeros(dim, 3);
    for i in 0..dim {
        for d in 0..=3usize {
            if i + d < dim {
                kinetic.set(i + d, i, -lit::<T>(SECOND_DERIVATIVE_STENCIL[3 + d]) * inv_h2);
            }
        }
    }
    let mut full = kinetic.clone();
    for (i, t) in nodes.iter().enumerate() {
        let tan = t.tan();
        full.set(i, i, kinetic.get(i, i) + strength * tan * tan);
    }
    let ground = lowest_eigenvalues(&full, 1)[0];
    let u = eigenvector(&full, ground);
    let norm: T = u.iter().map(|v| *v * *v).sum::<T>() * h;
    let weight = |f: &dyn Fn(T) -> T| -> T { u.iter().zip(&nodes).map(|(v, t)| *v * *v * f(*t)).sum::<T>() * h / norm };
    let root = lambda.sqrt();
    let mean_x = weight(&|t: T| t.tan() / root);
    let mean_x2 = weight(&|t: T| t.tan() * t.tan() / lambda);
    let ku = kinetic.matvec(&u);
    let p2 = hbar * hbar * lambda * u.iter().zip(&ku).map(|(a, b)| *a * *b).sum::<T>() * h / norm;
    let delta_x = (mean_x2 - mean_x * mean_x).max(T::zero()).sqrt();
    let delta_p = p2.max(T::zero()).sqrt();
    let bound = hbar / lit(2.0) * (T::one() + lambda * delta_x * delta_x);
    Ok(UncertaintyProduct { delta_x, delta_p, bound, margin: delta_x * delta_p - bound })
}
