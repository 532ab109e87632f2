//! Maps between the radial coordinate r ∈ (0, 1/√λ) and s = 1 − 2λr² ∈ (−1, 1).

use thiserror::Error;

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("λ = {0} has no compact radial domain")]
    NotCompact(f64),
    #[error("r = {r} lies outside (0, {r_max})")]
    Radius { r: f64, r_max: f64 },
    #[error("s = {0} lies outside (-1, 1)")]
    Variable(f64),
}

/// Relative endpoint inset used when sampling the open domain.
pub const INSET_FRACTION: f64 = 1e-8;

fn check_lambda<T: Real>(lambda: T) -> Result<(), DomainError> {
    if lambda > T::zero() && lambda.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NotCompact(lambda.as_f64()))
    }
}

pub fn map_r_to_s<T: Real>(r: T, lambda: T) -> Result<T, DomainError> {
    check_lambda(lambda)?;
    let r_max = lambda.sqrt().recip();
    if !(r > T::zero() && r < r_max) {
        return Err(DomainError::Radius { r: r.as_f64(), r_max: r_max.as_f64() });
    }
    Ok(T::one() - lit::<T>(2.0) * lambda * r * r)
}

pub fn map_s_to_r<T: Real>(s: T, lambda: T) -> Result<T, DomainError> {
    check_lambda(lambda)?;
    if !(s > -T::one() && s < T::one()) {
        return Err(DomainError::Variable(s.as_f64()));
    }
    Ok(((T::one() - s) / (lit::<T>(2.0) * lambda)).sqrt())
}

/// Endpoint inset δ = 1e−8/√λ.
pub fn inset<T: Real>(lambda: T) -> T {
    lit::<T>(INSET_FRACTION) / lambda.sqrt()
}

/// Chebyshev points s_k = cos((2k+1)π/(2K)), k = 0..K, strictly inside (−1, 1), descending.
pub fn chebyshev_s<T: Real>(count: usize) -> Vec<T> {
    let two_k = T::from_usize_lossy(2 * count);
    (0..count)
        .map(|k| (T::from_usize_lossy(2 * k + 1) * T::PI() / two_k).cos())
        .collect()
}
