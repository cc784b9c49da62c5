//! Univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree with the leading coefficient
//! nonzero; the zero polynomial is the empty list. Evaluation, arithmetic,
//! differentiation and definite integration are all exact.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1*x`.
    pub fn affine(c0: Rational, c1: Rational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            out.push(a + b);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(int(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * int(i as i64 + 1))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        Self::new(out)
    }

    /// Exact definite integral over `[lo, hi]`; requires `lo <= hi`.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return Err(Error::ReversedBounds {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        let anti = self.antiderivative();
        Ok(anti.eval(hi) - anti.eval(lo))
    }

    /// Substitution `x -> c0 + c1*x`.
    pub fn compose_affine(&self, c0: &Rational, c1: &Rational) -> Self {
        let lin = Self::affine(c0.clone(), c1.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Substitution `x -> x/c` for nonzero `c`.
    pub fn stretch(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = int(1) / c;
        let mut factor = int(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coeff in &self.coeffs {
            out.push(coeff * &factor);
            factor *= &inv;
        }
        Ok(Self::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn three_minus_x_sq() -> UniPoly {
        // (3-x)^2 = 9 - 6x + x^2
        UniPoly::affine(int(3), int(-1)).pow(2)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(UniPoly::zero().eval(&int(5)), int(0));
        assert_eq!(three_minus_x_sq().eval(&int(1)), int(4));
        let p = UniPoly::new(vec![int(9), int(0), int(-1)]); // 9 - x^2
        assert_eq!(p.eval(&int(3)), int(0));
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(three_minus_x_sq().integrate(&int(0), &int(3)).unwrap(), int(9));
        assert_eq!(UniPoly::constant(int(1)).integrate(&int(0), &int(1)).unwrap(), int(1));
        let p = UniPoly::new(vec![int(9), int(0), int(-1)]);
        assert_eq!(p.integrate(&int(0), &int(3)).unwrap(), int(18));
        assert!(p.integrate(&int(1), &int(0)).is_err());
    }

    #[test]
    fn derivative_antiderivative_inverse() {
        let p = UniPoly::new(vec![rat(1, 2), int(-3), rat(5, 7), int(2)]);
        assert_eq!(p.antiderivative().derivative(), p);
    }

    #[test]
    fn compose_and_stretch() {
        // p(x) = (1-x)^2, stretched by 3: p(x/3) = (1-x/3)^2
        let p = UniPoly::affine(int(1), int(-1)).pow(2);
        let q = p.stretch(&int(3)).unwrap();
        assert_eq!(q.eval(&int(3)), int(0));
        assert_eq!(q.eval(&int(0)), int(1));
        // composition with affine map
        let r = p.compose_affine(&int(1), &int(-1)); // p(1-x) = x^2
        assert_eq!(r, UniPoly::new(vec![int(0), int(0), int(1)]));
    }

    #[test]
    fn leading_zeros_trimmed() {
        let p = UniPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::new(vec![int(0)]).is_zero());
    }
}
