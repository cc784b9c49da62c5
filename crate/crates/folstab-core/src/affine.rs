//! Affine functions of the interpolation parameter `t`.

use crate::rational::Rational;
use num_traits::Zero;
use std::fmt;

/// `f(t) = intercept + slope * t`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineInT {
    intercept: Rational,
    slope: Rational,
}

impl AffineInT {
    pub fn new(intercept: Rational, slope: Rational) -> Self {
        Self { intercept, slope }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, Rational::zero())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.intercept + &self.slope * t
    }

    pub fn intercept(&self) -> &Rational {
        &self.intercept
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    /// The unique root when the slope is nonzero.
    pub fn root(&self) -> Option<Rational> {
        if self.slope.is_zero() {
            None
        } else {
            Some(-&self.intercept / &self.slope)
        }
    }
}

impl fmt::Display for AffineInT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.intercept)
        } else if self.intercept.is_zero() {
            write!(f, "({})*t", self.slope)
        } else {
            write!(f, "{} + ({})*t", self.intercept, self.slope)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn eval_and_root() {
        let f = AffineInT::new(rat(2, 5), rat(-3, 5));
        assert_eq!(f.eval(&int(0)), rat(2, 5));
        assert_eq!(f.eval(&rat(2, 3)), int(0));
        assert_eq!(f.root(), Some(rat(2, 3)));
        assert_eq!(AffineInT::constant(int(1)).root(), None);
    }
}
