//! Jacobi polynomials P_n^{(a,b)} by forward three-term recurrence.

use thiserror::Error;

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JacobiError {
    #[error("Jacobi parameters must exceed -1, got a = {a}, b = {b}")]
    ParameterOutOfRange { a: f64, b: f64 },
}

fn check<T: Real>(a: T, b: T) -> Result<(), JacobiError> {
    if a > -T::one() && b > -T::one() && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(JacobiError::ParameterOutOfRange { a: a.as_f64(), b: b.as_f64() })
    }
}

/// Values P_0..=P_n at `s`, written into a vector of length n + 1.
pub fn jacobi_sequence<T: Real>(n: usize, a: T, b: T, s: T) -> Result<Vec<T>, JacobiError> {
    check(a, b)?;
    let two = lit::<T>(2.0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n == 0 {
        return Ok(out);
    }
    out.push((a + T::one()) + (a + b + two) * (s - T::one()) / two);
    for k in 2..=n {
        let k_t = T::from_usize_lossy(k);
        let c = two * k_t + a + b;
        let lead = two * k_t * (k_t + a + b) * (c - two);
        let first = (c - T::one()) * (c * (c - two) * s + a * a - b * b);
        let second = two * (k_t + a - T::one()) * (k_t + b - T::one()) * c;
        let next = (first * out[k - 1] - second * out[k - 2]) / lead;
        out.push(next);
    }
    Ok(out)
}

/// P_n^{(a,b)}(s).
pub fn jacobi_eval<T: Real>(n: usize, a: T, b: T, s: T) -> Result<T, JacobiError> {
    Ok(*jacobi_sequence(n, a, b, s)?.last().expect("nonempty"))
}

/// dP_n^{(a,b)}/ds = ½(n + a + b + 1) P_{n−1}^{(a+1,b+1)}(s), with P_{−1} ≡ 0.
pub fn jacobi_deriv<T: Real>(n: usize, a: T, b: T, s: T) -> Result<T, JacobiError> {
    check(a, b)?;
    if n == 0 {
        return Ok(T::zero());
    }
    let factor = (T::from_usize_lossy(n) + a + b + T::one()) / lit(2.0);
    Ok(factor * jacobi_eval(n - 1, a + T::one(), b + T::one(), s)?)
}
