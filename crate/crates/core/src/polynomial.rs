//! Dense univariate polynomials over a [`Field`], ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn linear(c0: T, c1: T) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn quadratic(c0: T, c1: T, c2: T) -> Self {
        Self::new(vec![c0, c1, c2])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of sᶦ (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, s: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * s.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::of_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Largest absolute coefficient, used as a scale for float tolerances.
    pub fn magnitude(&self) -> T {
        self.coeffs
            .iter()
            .map(Field::abs_val)
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

impl<T: Field> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Field> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Field> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Field> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Field> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if *c < T::zero() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "({mag})s")?,
                _ => write!(f, "({mag})s^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::of_ratio(n, d)
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = Polynomial::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::<BigRational>::zero().degree(), None);
        assert!(Polynomial::new(vec![q(0, 1)]).is_zero());
    }

    #[test]
    fn arithmetic_exact() {
        let a = Polynomial::linear(q(1, 1), q(1, 1));
        let b = Polynomial::linear(q(1, 1), q(-1, 1));
        let prod = &a * &b;
        assert_eq!(prod, Polynomial::quadratic(q(1, 1), q(0, 1), q(-1, 1)));
        assert_eq!(prod.derivative(), Polynomial::linear(q(0, 1), q(-2, 1)));
        assert_eq!(&(&a + &b) - &a, b);
        assert_eq!(prod.eval(&q(1, 2)), q(3, 4));
    }

    #[test]
    fn display_is_readable() {
        let p = Polynomial::linear(q(8, 1), q(-13, 1));
        assert_eq!(p.to_string(), "-(13)s + 8");
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(a in prop::collection::vec(-50i64..50, 0..4),
                                       b in prop::collection::vec(-50i64..50, 0..4),
                                       x in -20i64..20) {
            let pa = Polynomial::new(a.iter().map(|&v| q(v, 1)).collect());
            let pb = Polynomial::new(b.iter().map(|&v| q(v, 1)).collect());
            let x = q(x, 3);
            prop_assert_eq!((&pa * &pb).eval(&x), pa.eval(&x) * pb.eval(&x));
            prop_assert_eq!((&pa + &pb).eval(&x), pa.eval(&x) + pb.eval(&x));
        }
    }
}
