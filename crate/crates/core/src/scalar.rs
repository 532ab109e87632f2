//! Scalar abstractions.
//!
//! [`Real`] covers the floating-point types used by every numerical routine.
//! [`Field`] is the smaller interface the Nikiforov–Uvarov reducer and the
//! polynomial energy kernels need, so they can also run in exact rational
//! arithmetic.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::{BigRational, Rational64};
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Floating-point scalar accepted by the numerical code. Every `Real` is also a
/// [`Field`], so the polynomial kernels serve both.
pub trait Real:
    Float
    + Field
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if the target cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an unsigned integer.
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    /// Lossy conversion to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for [`Real::lit`].
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// Ordered field with an optional exact square root.
///
/// For floats `sqrt_exact` returns the rounded root of any nonnegative value;
/// for rationals it succeeds only on perfect squares.
pub trait Field: Clone + PartialOrd + Debug + Display + Num + Neg<Output = Self> {
    fn of_int(v: i64) -> Self;

    fn of_ratio(num: i64, den: i64) -> Self {
        Self::of_int(num) / Self::of_int(den)
    }

    fn sqrt_exact(&self) -> Option<Self>;

    /// Whether `self` counts as zero relative to `scale`.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Whether arithmetic is exact (drives tolerance-free comparisons).
    fn is_exact() -> bool;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Lossy conversion for display and float cross-checks.
    fn approx_f64(&self) -> f64;
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            fn of_int(v: i64) -> Self {
                v as $t
            }

            fn sqrt_exact(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(self.sqrt())
                }
            }

            fn is_negligible(&self, scale: &Self) -> bool {
                self.abs() <= 1e-10 * scale.abs().max(1.0)
            }

            fn is_exact() -> bool {
                false
            }

            fn approx_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

impl Field for BigRational {
    fn of_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer();
        let den = self.denom();
        let rn = num.sqrt();
        let rd = den.sqrt();
        (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for Rational64 {
    fn of_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (*self.numer(), *self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (rn * rn == n && rd * rd == d).then(|| Rational64::new(rn, rd))
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"2.5"` into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Some(if negative { -r } else { r });
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_on_perfect_squares() {
        let r = BigRational::new(9.into(), 4.into());
        assert_eq!(r.sqrt_exact(), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(BigRational::of_int(2).sqrt_exact(), None);
        assert_eq!(BigRational::of_int(-4).sqrt_exact(), None);
        assert_eq!(Rational64::new(49, 16).sqrt_exact(), Some(Rational64::new(7, 4)));
    }

    #[test]
    fn float_negligible_is_scaled() {
        assert!(1e-12_f64.is_negligible(&1.0));
        assert!(!1e-8_f64.is_negligible(&1.0));
        assert!(1e-8_f64.is_negligible(&1e3));
    }

    #[test]
    fn parse_rational_forms() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse_rational("1/2"), Some(half.clone()));
        assert_eq!(parse_rational("0.5"), Some(half.clone()));
        assert_eq!(parse_rational("-2.5"), Some(BigRational::new((-5).into(), 2.into())));
        assert_eq!(parse_rational("10"), Some(BigRational::of_int(10)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
