//! Brent's bracketed root finder.

use thiserror::Error;

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("f({a}) = {fa} and f({b}) = {fb} do not bracket a root")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("no convergence within {0} iterations")]
    MaxIterations(usize),
}

/// Root of `f` in [a, b] to absolute tolerance `xtol` (plus a few ulps).
pub fn brent<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, xtol: T) -> Result<T, RootError> {
    const MAX_ITER: usize = 200;
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange { a: a.as_f64(), b: b.as_f64(), fa: fa.as_f64(), fb: fb.as_f64() });
    }
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + xtol / two;
        let m = (c - b) / two;
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (two * m * s, T::one() - s)
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                (
                    s * (two * m * qa * (qa - r) - (b - a) * (r - T::one())),
                    (qa - T::one()) * (r - T::one()) * (s - T::one()),
                )
            };
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (three * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else { b + tol * m.signum() };
        fb = f(b);
    }
    Err(RootError::MaxIterations(MAX_ITER))
}
