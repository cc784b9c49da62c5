//! Piecewise polynomial volume functions `x -> vol(L - xE)`.
//!
//! A [`PiecewisePoly`] is a function on `[0, T]` given by one polynomial per
//! breakpoint interval. Construction validates the shape every volume function
//! must have: positive at 0, non-increasing, and vanishing at the last
//! breakpoint (hence non-negative throughout). Beyond `T` the function is
//! identically zero.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, pow_i32, Rational};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};

/// Subdivision depth cap for the monotonicity certificate.
const MAX_SUBDIVISION_DEPTH: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rational>,
    pieces: Vec<UniPoly>,
}

impl PiecewisePoly {
    /// Builds and validates a piecewise volume function.
    ///
    /// Monotonicity is certified per piece by exact sign analysis of the
    /// derivative on dyadic subintervals (depth <= 20): a piece is accepted
    /// once the derivative's Bernstein coefficients on a subinterval are all
    /// <= 0, and rejected as soon as a positive derivative value is found at
    /// a dyadic point. Full real-root isolation is deliberately avoided.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<UniPoly>) -> Result<Self> {
        if breakpoints.len() < 2 || breakpoints[0] != Rational::zero() {
            return Err(Error::BadBreakpoints);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadBreakpoints);
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::PieceCountMismatch);
        }
        let at_zero = pieces[0].eval(&breakpoints[0]);
        if !at_zero.is_positive() {
            return Err(Error::NonPositiveAtZero { value: at_zero });
        }
        let at_end = pieces.last().unwrap().eval(breakpoints.last().unwrap());
        if !at_end.is_zero() {
            return Err(Error::NonZeroAtEnd { value: at_end });
        }
        for i in 0..pieces.len() - 1 {
            let x = &breakpoints[i + 1];
            if pieces[i].eval(x) < pieces[i + 1].eval(x) {
                return Err(Error::UpwardJump { x: x.clone() });
            }
        }
        for (i, piece) in pieces.iter().enumerate() {
            certify_nonincreasing(
                &piece.derivative(),
                &breakpoints[i],
                &breakpoints[i + 1],
                i,
                0,
            )?;
        }
        Ok(Self { breakpoints, pieces })
    }

    /// Single-piece function on `[0, end]`.
    pub fn single(piece: UniPoly, end: Rational) -> Result<Self> {
        Self::new(vec![Rational::zero(), end], vec![piece])
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[UniPoly] {
        &self.pieces
    }

    /// The pseudo-effective threshold: the last breakpoint.
    pub fn domain_end(&self) -> &Rational {
        self.breakpoints.last().unwrap()
    }

    /// The total volume `f(0)`.
    pub fn value_at_zero(&self) -> Rational {
        self.pieces[0].eval(&self.breakpoints[0])
    }

    /// Evaluates the function; at an interior breakpoint the value is taken
    /// from the lower piece, and the function is 0 at and beyond the end.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() {
            return Err(Error::BelowDomain { x: x.clone() });
        }
        if x >= self.domain_end() {
            return Ok(Rational::zero());
        }
        if x.is_zero() {
            return Ok(self.value_at_zero());
        }
        // unique i with breakpoints[i] < x <= breakpoints[i+1]
        let i = match self.breakpoints.binary_search(x) {
            Ok(j) => j - 1,
            Err(j) => j - 1,
        };
        Ok(self.pieces[i].eval(x))
    }

    /// Exact integral over `[lo, hi]` within the domain.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return Err(Error::ReversedBounds {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        if lo.is_negative() || hi > self.domain_end() {
            return Err(Error::OutOfDomain {
                lo: lo.clone(),
                hi: hi.clone(),
                end: self.domain_end().clone(),
            });
        }
        let mut total = Rational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let a = (&self.breakpoints[i]).max(lo);
            let b = (&self.breakpoints[i + 1]).min(hi);
            if a < b {
                total += piece.integrate(a, b)?;
            }
        }
        Ok(total)
    }

    /// Rescales the polarization by `c > 0` in dimension `dim`: breakpoints
    /// move to `c*x` and each piece `p(x)` becomes `c^dim * p(x/c)`, so that
    /// the result represents `vol(cL - xE)`.
    pub fn scale(&self, c: &Rational, dim: u32) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::NonPositiveScale { c: c.clone() });
        }
        let factor = pow_i32(c, dim as i32)?;
        let breakpoints = self.breakpoints.iter().map(|x| x * c).collect();
        let pieces = self
            .pieces
            .iter()
            .map(|p| Ok(p.stretch(c)?.scale(&factor)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(breakpoints, pieces)
    }
}

/// Bernstein coefficients on `[0, 1]` of a polynomial given in the monomial
/// basis: `b_i = sum_{j<=i} C(i,j)/C(N,j) * c_j`. The polynomial lies between
/// the minimum and maximum coefficient, so an all-nonpositive vector
/// certifies nonpositivity on the interval.
fn bernstein_coeffs(p: &UniPoly) -> Vec<Rational> {
    if p.is_zero() {
        return vec![Rational::zero()];
    }
    let coeffs = p.coeffs();
    let n = coeffs.len() - 1;
    let nn = BigInt::from(n as u64);
    (0..=n)
        .map(|i| {
            let ii = BigInt::from(i as u64);
            let mut b = Rational::zero();
            for (j, c) in coeffs.iter().enumerate().take(i + 1) {
                let jj = BigInt::from(j as u64);
                let w = Rational::new(
                    binomial(ii.clone(), jj.clone()),
                    binomial(nn.clone(), jj),
                );
                b += w * c;
            }
            b
        })
        .collect()
}

fn certify_nonincreasing(
    deriv: &UniPoly,
    a: &Rational,
    b: &Rational,
    index: usize,
    depth: u32,
) -> Result<()> {
    for x in [a, b] {
        if deriv.eval(x).is_positive() {
            return Err(Error::NotMonotone {
                index,
                x: x.clone(),
            });
        }
    }
    let width = b - a;
    let on_unit = deriv.compose_affine(a, &width);
    if bernstein_coeffs(&on_unit).iter().all(|c| !c.is_positive()) {
        return Ok(());
    }
    if depth >= MAX_SUBDIVISION_DEPTH {
        return Err(Error::MonotonicityUnresolved {
            index,
            depth: MAX_SUBDIVISION_DEPTH,
        });
    }
    let mid = (a + b) / int(2);
    if deriv.eval(&mid).is_positive() {
        return Err(Error::NotMonotone { index, x: mid });
    }
    certify_nonincreasing(deriv, a, &mid, index, depth + 1)?;
    certify_nonincreasing(deriv, &mid, b, index, depth + 1)
}
