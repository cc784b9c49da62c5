//! Finite-level basis-type invariants on projective-space models.
//!
//! Sections of `O(degree)` on projective `n`-space are counted combinatorially
//! (stars and bars), and the vanishing orders of the monomial basis along a
//! hyperplane or at a torus-fixed point give exact order histograms. From
//! these, the finite-level expected vanishing `S_m` and the candidate
//! `delta_m` bound follow by exact rational arithmetic.

use crate::error::{Error, Result};
use crate::invariants;
use crate::model::{FoliatedModel, ValuationRecord};
use crate::piecewise::PiecewisePoly;
use crate::poly::UniPoly;
use crate::rational::{int, pow_i32, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monomial vanishing-order template on projective space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionTemplate {
    /// Order along a coordinate hyperplane: the exponent of the
    /// distinguished variable.
    Hyperplane,
    /// Order at a torus-fixed point: the total degree in the complementary
    /// variables.
    Point,
}

impl SectionTemplate {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hyperplane" => Ok(SectionTemplate::Hyperplane),
            "point" => Ok(SectionTemplate::Point),
            other => Err(Error::Param {
                what: format!("unknown section template `{other}`"),
            }),
        }
    }
}

/// `h^0(P^n, O(degree)) = C(degree + n, n)`.
pub fn section_count(n: u32, degree: u64) -> BigUint {
    binomial(BigUint::from(degree + n as u64), BigUint::from(n as u64))
}

/// Multiplicity of each vanishing order among the degree-`degree` monomials.
///
/// Hyperplane: order `k` has multiplicity `C(degree - k + n - 1, n - 1)`.
/// Point: order `k` has multiplicity `C(k + n - 1, n - 1)`.
pub fn order_multiplicities(
    n: u32,
    degree: u64,
    template: SectionTemplate,
) -> Vec<(u64, BigUint)> {
    let n1 = BigUint::from(n as u64 - 1);
    (0..=degree)
        .map(|k| {
            let top = match template {
                SectionTemplate::Hyperplane => degree - k + n as u64 - 1,
                SectionTemplate::Point => k + n as u64 - 1,
            };
            (k, binomial(BigUint::from(top), n1.clone()))
        })
        .collect()
}

/// Vanishing orders of an adapted (monomial) basis of `H^0(P^n, mL)` for
/// `L = d*H`, bundled with the level `m` and the section count `N_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderHistogram {
    m: u64,
    counts: Vec<(u64, BigUint)>,
    n_sections: BigUint,
}

impl OrderHistogram {
    /// Builds the histogram at level `m`; `m * d` must be a nonnegative
    /// integer (the polarization must be Cartier at this level).
    pub fn at_level(n: u32, m: u64, d: &Rational, template: SectionTemplate) -> Result<Self> {
        if n < 1 {
            return Err(Error::Param {
                what: "dimension must be at least 1".into(),
            });
        }
        if m < 1 {
            return Err(Error::Param {
                what: "level m must be at least 1".into(),
            });
        }
        let md = d * int(m as i64);
        if !md.is_integer() || md.is_negative() {
            return Err(Error::NonIntegralDegree { m, md });
        }
        let degree = md.to_integer().to_u64().ok_or_else(|| Error::Param {
            what: "degree too large".into(),
        })?;
        let counts = order_multiplicities(n, degree, template);
        let n_sections = section_count(n, degree);
        debug_assert_eq!(
            counts.iter().map(|(_, c)| c).sum::<BigUint>(),
            n_sections
        );
        Ok(Self {
            m,
            counts,
            n_sections,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn counts(&self) -> &[(u64, BigUint)] {
        &self.counts
    }

    pub fn n_sections(&self) -> &BigUint {
        &self.n_sections
    }
}

/// `S_m = (sum of order * multiplicity) / (m * N_m)`, exactly.
pub fn s_m(hist: &OrderHistogram) -> Rational {
    let total: BigUint = hist
        .counts
        .iter()
        .map(|(order, mult)| BigUint::from(*order) * mult)
        .sum();
    Rational::new(
        BigInt::from(total),
        BigInt::from(hist.m) * BigInt::from(hist.n_sections.clone()),
    )
}

/// Finite-level delta bound: the minimum of `A^[t](v) / S_m(v)` over the
/// candidate pairs. All histograms must sit at the same level.
pub fn delta_m(
    t: &Rational,
    model: &FoliatedModel,
    entries: &[(&ValuationRecord, &OrderHistogram)],
) -> Result<Rational> {
    if entries.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    model.ensure_ample_at(t)?;
    let level = entries[0].1.m();
    let mut best: Option<Rational> = None;
    for (v, hist) in entries {
        if hist.m() != level {
            return Err(Error::MixedLevels);
        }
        let s = s_m(hist);
        if !s.is_positive() {
            return Err(Error::ZeroSm {
                label: v.label().to_string(),
            });
        }
        let ratio = invariants::mixed_log_discrepancy(t, v)?.value / s;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    Ok(best.unwrap())
}

/// One row of a finite-level convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub m: u64,
    pub s_m: Rational,
    /// `|S_m - S|` against the integral S of the matching volume function.
    pub gap: Rational,
}

/// Tabulates `S_m` against the integral `S` of the matching template volume
/// function for `L = d*H` on projective `n`-space. Both sides are computed
/// independently: the histogram by section counting, `S` by exact
/// integration.
pub fn convergence_report(
    n: u32,
    d: &Rational,
    template: SectionTemplate,
    m_list: &[u64],
) -> Result<Vec<ConvergenceRow>> {
    let s_integral = template_s_integral(n, d, template)?;
    m_list
        .iter()
        .map(|&m| {
            let hist = OrderHistogram::at_level(n, m, d, template)?;
            let s_m = s_m(&hist);
            let gap = (&s_m - &s_integral).abs();
            Ok(ConvergenceRow { m, s_m, gap })
        })
        .collect()
}

/// The integral `S` of the template volume function on `P^n` with `L = d*H`:
/// `(1/d^n) * integral of vol(dH - xE)` over the domain.
pub fn template_s_integral(n: u32, d: &Rational, template: SectionTemplate) -> Result<Rational> {
    if !d.is_positive() {
        return Err(Error::Param {
            what: format!("polarization degree must be positive, got {d}"),
        });
    }
    let vol = match template {
        SectionTemplate::Hyperplane => {
            PiecewisePoly::single(UniPoly::affine(d.clone(), -Rational::one()).pow(n), d.clone())?
        }
        SectionTemplate::Point => {
            let v = pow_i32(d, n as i32)?;
            let mut coeffs = vec![Rational::zero(); n as usize + 1];
            coeffs[0] = v;
            coeffs[n as usize] = -Rational::one();
            PiecewisePoly::single(UniPoly::new(coeffs), d.clone())?
        }
    };
    let end = vol.domain_end().clone();
    Ok(vol.integrate(&Rational::zero(), &end)? / vol.value_at_zero())
}
