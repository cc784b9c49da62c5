//! Wall-crossing analysis in the interpolation parameter, destabilizer
//! searches, the sufficient alpha criterion, weighted blow-up discrepancy
//! formulas, and the boundedness certificate.

use crate::affine::AffineInT;
use crate::error::{Error, Result};
use crate::invariants;
use crate::model::{FoliatedModel, Incidence, Polarization, ValuationRecord};
use crate::rational::{dyadic_below, pow_i32, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A closed subinterval of `[0, 1]`, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TInterval {
    Empty,
    Closed { lo: Rational, hi: Rational },
}

impl TInterval {
    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        if lo.is_negative() || hi > Rational::one() || lo > hi {
            return Err(Error::Param {
                what: format!("invalid interval [{lo}, {hi}]"),
            });
        }
        Ok(TInterval::Closed { lo, hi })
    }

    pub fn full() -> Self {
        TInterval::Closed {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TInterval::Empty)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        match (self, other) {
            (TInterval::Empty, _) | (_, TInterval::Empty) => TInterval::Empty,
            (
                TInterval::Closed { lo: a, hi: b },
                TInterval::Closed { lo: c, hi: d },
            ) => {
                let lo = a.max(c).clone();
                let hi = b.min(d).clone();
                if lo > hi {
                    TInterval::Empty
                } else {
                    TInterval::Closed { lo, hi }
                }
            }
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        match self {
            TInterval::Empty => false,
            TInterval::Closed { lo, hi } => lo <= t && t <= hi,
        }
    }

    /// Containment as sets.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        match (self, other) {
            (TInterval::Empty, _) => true,
            (_, TInterval::Empty) => false,
            (
                TInterval::Closed { lo: a, hi: b },
                TInterval::Closed { lo: c, hi: d },
            ) => c <= a && b <= d,
        }
    }
}

impl fmt::Display for TInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TInterval::Empty => write!(f, "(empty)"),
            TInterval::Closed { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// Beta of one valuation as an affine function of `t`, valid for proportional
/// anti-adjoint models:
/// `beta(t) = lambda_t (A_X - S_0) + t (A_F - q A_X)` where `A_X = a_X + 1`,
/// `A_F = a_F + eps`, and `S_0` is the S-invariant at the reference
/// polarization.
pub fn beta_affine_form(v: &ValuationRecord, model: &FoliatedModel) -> Result<AffineInT> {
    let q = model.q()?.clone();
    if model.polarization() != Polarization::AntiAdjoint {
        return Err(Error::NotProportional {
            label: model.label().to_string(),
        });
    }
    v.check_matches_model(model)?;
    let f = v.vol_fn_base();
    let end = f.domain_end().clone();
    let s0 = f.integrate(&Rational::zero(), &end)? / f.value_at_zero();
    let a_x = v.a_x() + Rational::one();
    let a_f = v.a_f() + v.epsilon();
    let headroom = &a_x - &s0;
    let slope = (&q - Rational::one()) * &headroom + a_f - q * a_x;
    Ok(AffineInT::new(headroom, slope))
}

/// The `t`-range on which the model is adjoint Fano, as a closed interval,
/// together with the exact wall value when one exists. An open upper wall is
/// represented by closing at the largest multiple of 2^-20 strictly below it;
/// the wall itself is reported separately.
pub fn ample_interval(model: &FoliatedModel) -> Result<(TInterval, Option<Rational>)> {
    match model.polarization() {
        Polarization::Fixed => Ok((TInterval::full(), None)),
        Polarization::AntiAdjoint => match model.ample_wall() {
            None => Ok((TInterval::full(), None)),
            Some(wall) => {
                let hi = dyadic_below(&wall);
                Ok((TInterval::closed(Rational::zero(), hi)?, Some(wall)))
            }
        },
    }
}

/// Solves `f(t) >= 0` within `ample_range`; exact rational endpoints.
pub fn admissible_interval(f: &AffineInT, ample_range: &TInterval) -> TInterval {
    let (lo, hi) = match ample_range {
        TInterval::Empty => return TInterval::Empty,
        TInterval::Closed { lo, hi } => (lo, hi),
    };
    if f.slope().is_zero() {
        return if f.intercept().is_negative() {
            TInterval::Empty
        } else {
            ample_range.clone()
        };
    }
    let root = f.root().expect("nonzero slope has a root");
    if f.slope().is_positive() {
        // nonnegative for t >= root
        let new_lo = lo.max(&root).clone();
        if new_lo > *hi {
            TInterval::Empty
        } else {
            TInterval::Closed {
                lo: new_lo,
                hi: hi.clone(),
            }
        }
    } else {
        // nonnegative for t <= root
        let new_hi = hi.min(&root).clone();
        if *lo > new_hi {
            TInterval::Empty
        } else {
            TInterval::Closed {
                lo: lo.clone(),
                hi: new_hi,
            }
        }
    }
}

/// Result of a candidate wall-crossing scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SemistableInterval {
    /// Intersection of the candidate admissible intervals with the ample
    /// range: a certified superset of the true semistable locus.
    pub interval: TInterval,
    /// Exact upper ampleness wall, when the range is clipped.
    pub ample_wall: Option<Rational>,
}

/// Intersects the per-candidate intervals `{t : beta_v(t) >= 0}` over a
/// nonempty candidate set, inside the ample range.
pub fn semistable_interval(
    model: &FoliatedModel,
    candidates: &[ValuationRecord],
) -> Result<SemistableInterval> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let (ample, ample_wall) = ample_interval(model)?;
    let mut interval = ample.clone();
    for v in candidates {
        let f = beta_affine_form(v, model)?;
        interval = interval.intersect(&admissible_interval(&f, &ample));
    }
    Ok(SemistableInterval {
        interval,
        ample_wall,
    })
}

/// Outcome of a destabilizer search over a finite candidate set.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Destabilized { label: String, beta: Rational },
    NoDestabilizer { candidates: usize, delta_ub: Rational },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Destabilized { label, beta } => {
                write!(f, "destabilized by {label} with beta = {beta}")
            }
            Verdict::NoDestabilizer {
                candidates,
                delta_ub,
            } => write!(
                f,
                "no destabilizer among {candidates} candidates; delta_ub = {delta_ub}"
            ),
        }
    }
}

/// Scans the candidates for a negative beta. Reports the most negative one
/// (ties broken by label) or, failing that, the candidate delta upper bound.
pub fn destabilizer_search(
    model: &FoliatedModel,
    candidates: &[ValuationRecord],
    t: &Rational,
) -> Result<Verdict> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    model.ensure_ample_at(t)?;
    let mut worst: Option<(Rational, String)> = None;
    let mut delta_ub: Option<Rational> = None;
    for v in candidates {
        let report = invariants::beta(v, model, t)?;
        let delta = &report.a / &report.s;
        delta_ub = Some(delta_ub.map_or(delta.clone(), |b| b.min(delta)));
        if report.beta.is_negative() {
            let key = (report.beta, v.label().to_string());
            worst = Some(match worst {
                Some(w) if w <= key => w,
                _ => key,
            });
        }
    }
    Ok(match worst {
        Some((beta, label)) => Verdict::Destabilized { label, beta },
        None => Verdict::NoDestabilizer {
            candidates: candidates.len(),
            delta_ub: delta_ub.unwrap(),
        },
    })
}

/// Conclusion drawn from a user-certified lower bound of the alpha invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaVerdict {
    UniformlyStable,
    Semistable,
    Inconclusive,
}

impl fmt::Display for AlphaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaVerdict::UniformlyStable => write!(f, "uniformly stable"),
            AlphaVerdict::Semistable => write!(f, "semistable (sufficient criterion)"),
            AlphaVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// `alpha >= n/(n+1)` implies semistability; strict inequality implies
/// uniform stability. The bound must be a certified lower bound; the tool
/// never computes one.
pub fn sufficient_alpha_verdict(n: u32, alpha_lb: &Rational) -> AlphaVerdict {
    let threshold = Rational::new((n as i64).into(), (n as i64 + 1).into());
    if *alpha_lb > threshold {
        AlphaVerdict::UniformlyStable
    } else if *alpha_lb == threshold {
        AlphaVerdict::Semistable
    } else {
        AlphaVerdict::Inconclusive
    }
}

fn check_blowup_params(
    d: u32,
    r: u32,
    k: &Rational,
    b: &Rational,
    t: &Rational,
    case: Incidence,
) -> Result<()> {
    if r < 1 || r > d {
        return Err(Error::Param {
            what: format!("rank r = {r} outside 1..={d}"),
        });
    }
    if case == Incidence::Invariant && r > d - 1 {
        // a divisor tangent to the foliation bounds its rank by d - 1
        return Err(Error::Param {
            what: format!("invariant divisor requires rank r <= d - 1, got r = {r}, d = {d}"),
        });
    }
    if !k.is_positive() {
        return Err(Error::Param {
            what: format!("weight k must be positive, got {k}"),
        });
    }
    if !b.is_positive() {
        return Err(Error::Param {
            what: format!("weight denominator b must be positive, got {b}"),
        });
    }
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::TOutOfRange { t: t.clone() });
    }
    Ok(())
}

/// Mixed log discrepancy of the exceptional divisor of the weighted blow-up
/// with weights `(k/b, k, ..., k)` at a smooth point of a smooth rank-`r`
/// foliation on a `d`-fold, for a center lying on an invariant or transverse
/// divisor.
pub fn weighted_blowup_discrepancy(
    d: u32,
    r: u32,
    k: &Rational,
    b: &Rational,
    t: &Rational,
    case: Incidence,
) -> Result<Rational> {
    check_blowup_params(d, r, k, b, t, case)?;
    let ambient = k / b + Rational::from_integer((d as i64 - 1).into()) * k;
    let foliated = match case {
        Incidence::Invariant => Rational::from_integer((r as i64).into()) * k,
        Incidence::Transverse => k / b + Rational::from_integer((r as i64 - 1).into()) * k,
    };
    Ok((Rational::one() - t) * ambient + t * foliated)
}

/// Pulled-back mixed discrepancy together with the `<= k d` bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct PullbackBound {
    pub value: Rational,
    pub bound_ok: bool,
}

/// Mixed log discrepancy of the weighted blow-up valuation over the base,
/// after cancelling the divisor contribution: `(a/b) k + c(t) k` where `c(t)`
/// is `(1-t)(d-1) + t r` in the invariant case and `(1-t)(d-1) + t(r-1)` in
/// the transverse case. `bound_ok` records whether the value stays below
/// `k * d`.
pub fn weighted_blowup_pullback(
    d: u32,
    r: u32,
    k: &Rational,
    b: &Rational,
    t: &Rational,
    case: Incidence,
    a: &Rational,
) -> Result<PullbackBound> {
    check_blowup_params(d, r, k, b, t, case)?;
    if a.is_negative() {
        return Err(Error::Param {
            what: format!("discrepancy a must be nonnegative, got {a}"),
        });
    }
    let d_minus_1 = Rational::from_integer((d as i64 - 1).into());
    let c = match case {
        Incidence::Invariant => {
            (Rational::one() - t) * d_minus_1 + t * Rational::from_integer((r as i64).into())
        }
        Incidence::Transverse => {
            (Rational::one() - t) * d_minus_1
                + t * Rational::from_integer((r as i64 - 1).into())
        }
    };
    let value = a / b * k + c * k;
    let bound_ok = value <= Rational::from_integer((d as i64).into()) * k;
    Ok(PullbackBound { value, bound_ok })
}

/// The epsilon used by the boundedness theorem:
/// `eps = min(min(delta^d V / d^d, 1), t, 1 - t)`, for `t` strictly inside
/// `(0, 1)`.
pub fn epsilon_lc_certificate(
    d: u32,
    v: &Rational,
    delta: &Rational,
    t: &Rational,
) -> Result<Rational> {
    if d < 1 {
        return Err(Error::Param {
            what: "dimension d must be at least 1".into(),
        });
    }
    if !v.is_positive() {
        return Err(Error::NonPositiveVolume { v: v.clone() });
    }
    if !delta.is_positive() {
        return Err(Error::Param {
            what: format!("delta must be positive, got {delta}"),
        });
    }
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::Param {
            what: format!("t must lie strictly between 0 and 1, got {t}"),
        });
    }
    let dd = Rational::from_integer((d as i64).into());
    let eps0 = (pow_i32(delta, d as i32)? * v / pow_i32(&dd, d as i32)?).min(Rational::one());
    let one_minus_t = Rational::one() - t;
    Ok(eps0.min(t.clone()).min(one_minus_t))
}
