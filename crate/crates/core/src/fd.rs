//! Sixth-order central finite differences.

use crate::scalar::{lit, Real};

/// Weights of f(x + kh), k = −3..=3, for h² f''(x).
pub const SECOND_DERIVATIVE_STENCIL: [f64; 7] = [
    1.0 / 90.0,
    -3.0 / 20.0,
    3.0 / 2.0,
    -49.0 / 18.0,
    3.0 / 2.0,
    -3.0 / 20.0,
    1.0 / 90.0,
];

/// Weights of f(x + kh), k = −3..=3, for h f'(x).
pub const FIRST_DERIVATIVE_STENCIL: [f64; 7] =
    [-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];

fn apply<T: Real, F: Fn(T) -> T>(weights: &[f64; 7], f: &F, x: T, h: T) -> T {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0.0)
        .map(|(i, &w)| lit::<T>(w) * f(x + T::from_i32(i as i32 - 3).expect("small int") * h))
        .sum()
}

pub fn first_derivative<T: Real, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    apply(&FIRST_DERIVATIVE_STENCIL, &f, x, h) / h
}

pub fn second_derivative<T: Real, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    apply(&SECOND_DERIVATIVE_STENCIL, &f, x, h) / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_consistent() {
        let s2: f64 = SECOND_DERIVATIVE_STENCIL.iter().sum();
        assert!(s2.abs() < 1e-15);
        let m2: f64 = SECOND_DERIVATIVE_STENCIL.iter().enumerate().map(|(i, w)| w * ((i as f64) - 3.0).powi(2)).sum();
        assert!((m2 - 2.0).abs() < 1e-14);
        let m1: f64 = FIRST_DERIVATIVE_STENCIL.iter().enumerate().map(|(i, w)| w * ((i as f64) - 3.0)).sum();
        assert!((m1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_on_sextics() {
        let f = |x: f64| x.powi(6) - 2.0 * x.powi(3) + x;
        let d1 = first_derivative(f, 0.7, 0.1);
        let d2 = second_derivative(f, 0.7, 0.1);
        assert!((d1 - (6.0 * 0.7f64.powi(5) - 6.0 * 0.49 + 1.0)).abs() < 1e-12);
        assert!((d2 - (30.0 * 0.7f64.powi(4) - 12.0 * 0.7)).abs() < 1e-10);
    }

    #[test]
    fn sixth_order_convergence() {
        let err = |h: f64| (second_derivative(f64::sin, 0.4, h) + 0.4f64.sin()).abs();
        let ratio = err(0.2) / err(0.1);
        assert!(ratio > 50.0 && ratio < 80.0, "ratio {ratio}");
    }
}
