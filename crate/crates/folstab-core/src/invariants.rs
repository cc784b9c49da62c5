//! Core invariant calculators: mixed log discrepancies, the S/T/j thresholds,
//! the mixed beta invariant, candidate log canonical thresholds, alpha/delta
//! upper bounds, and the normalized volume.
//!
//! Every infimum-type invariant here ranges over a finite candidate set and is
//! therefore a certified upper bound of the true invariant: candidates can
//! refute stability, never prove it.

use crate::error::{Error, Result};
use crate::model::{DivisorOrders, FoliatedModel, ValuationRecord};
use crate::rational::{pow_i32, Rational};
use num_traits::{One, Signed, Zero};

/// The mixed log discrepancy `A^[t] = t (a_F + eps) + (1-t)(a_X + 1)`,
/// with its two affine components.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedDiscrepancy {
    pub value: Rational,
    pub t: Rational,
    pub ambient_part: Rational,
    pub foliated_part: Rational,
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::TOutOfRange { t: t.clone() });
    }
    Ok(())
}

/// Mixed log discrepancy of a valuation at parameter `t` in `[0, 1]`.
pub fn mixed_log_discrepancy(t: &Rational, v: &ValuationRecord) -> Result<MixedDiscrepancy> {
    check_t(t)?;
    let ambient_part = (Rational::one() - t) * (v.a_x() + Rational::one());
    let foliated_part = t * (v.a_f() + v.epsilon());
    Ok(MixedDiscrepancy {
        value: &ambient_part + &foliated_part,
        t: t.clone(),
        ambient_part,
        foliated_part,
    })
}

/// `A^[t](v) - ord_v(D)`: the mixed discrepancy after subtracting an
/// effective divisor.
pub fn mixed_discrepancy_with_divisor(
    t: &Rational,
    v: &ValuationRecord,
    ord_d: &Rational,
) -> Result<Rational> {
    if ord_d.is_negative() {
        return Err(Error::NegativeOrder {
            order: ord_d.clone(),
        });
    }
    Ok(mixed_log_discrepancy(t, v)?.value - ord_d)
}

/// The pseudo-effective threshold `T(v)` at parameter `t`: the last
/// breakpoint of the scaled volume function.
pub fn pseudoeffective_threshold(v: &ValuationRecord, t: &Rational) -> Result<Rational> {
    Ok(v.volume_fn_at(t)?.domain_end().clone())
}

/// `S(v) = (1/vol(L_t)) * integral of vol(L_t - xE) over [0, T]`, exactly.
pub fn s_invariant(v: &ValuationRecord, t: &Rational) -> Result<Rational> {
    let f = v.volume_fn_at(t)?;
    let total = f.value_at_zero();
    if !total.is_positive() {
        return Err(Error::NonPositiveVolume { v: total });
    }
    let end = f.domain_end().clone();
    Ok(f.integrate(&Rational::zero(), &end)? / total)
}

/// `j(v) = T(v) - S(v)`, the uniformity gauge.
pub fn j_invariant(v: &ValuationRecord, t: &Rational) -> Result<Rational> {
    Ok(pseudoeffective_threshold(v, t)? - s_invariant(v, t)?)
}

/// One valuation's full beta report at a parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaReport {
    pub valuation_label: String,
    pub t: Rational,
    /// Mixed log discrepancy `A^[t]`.
    pub a: Rational,
    pub s: Rational,
    /// Pseudo-effective threshold `T`.
    pub threshold: Rational,
    pub j: Rational,
    pub beta: Rational,
}

/// The mixed beta invariant `beta^[t](v) = A^[t](v) - S(v)` with the full
/// breakdown. Requires the polarization to be ample at `t`.
pub fn beta(v: &ValuationRecord, model: &FoliatedModel, t: &Rational) -> Result<BetaReport> {
    model.ensure_ample_at(t)?;
    v.check_matches_model(model)?;
    let a = mixed_log_discrepancy(t, v)?.value;
    let s = s_invariant(v, t)?;
    let threshold = pseudoeffective_threshold(v, t)?;
    debug_assert!(s.is_positive() && s <= threshold);
    Ok(BetaReport {
        valuation_label: v.label().to_string(),
        t: t.clone(),
        a: a.clone(),
        j: &threshold - &s,
        beta: a - &s,
        s,
        threshold,
    })
}

/// Candidate log canonical threshold: the minimum of `A^[t](v) / ord_v(D)`
/// over entries with positive order. An upper bound of the true threshold.
pub fn lct_over_candidates(t: &Rational, orders: &DivisorOrders) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for (v, order) in orders.entries() {
        if !order.is_positive() {
            continue;
        }
        let ratio = mixed_log_discrepancy(t, v)?.value / order;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    best.ok_or(Error::AllOrdersZero)
}

/// Candidate upper bounds `(min A/T, min A/S)` for the mixed alpha and delta
/// invariants.
pub fn alpha_delta_over_candidates(
    model: &FoliatedModel,
    candidates: &[ValuationRecord],
    t: &Rational,
) -> Result<(Rational, Rational)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    model.ensure_ample_at(t)?;
    let mut alpha_ub: Option<Rational> = None;
    let mut delta_ub: Option<Rational> = None;
    for v in candidates {
        v.check_matches_model(model)?;
        let a = mixed_log_discrepancy(t, v)?.value;
        let threshold = pseudoeffective_threshold(v, t)?;
        let s = s_invariant(v, t)?;
        let alpha = &a / threshold;
        let delta = a / s;
        alpha_ub = Some(alpha_ub.map_or(alpha.clone(), |b| b.min(alpha)));
        delta_ub = Some(delta_ub.map_or(delta.clone(), |b| b.min(delta)));
    }
    Ok((alpha_ub.unwrap(), delta_ub.unwrap()))
}

/// The normalized volume `A^[t](v)^n * vol(v)`; requires the record to carry
/// a valuation volume.
pub fn normalized_volume(v: &ValuationRecord, t: &Rational) -> Result<Rational> {
    let vol = v.val_volume().ok_or_else(|| Error::MissingValVolume {
        label: v.label().to_string(),
    })?;
    let a = mixed_log_discrepancy(t, v)?.value;
    Ok(pow_i32(&a, v.dim() as i32)? * vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FoliatedModel, Incidence};
    use crate::rational::{int, rat};

    fn radial() -> FoliatedModel {
        FoliatedModel::pn("radial_p2", 2, int(3), int(1)).unwrap()
    }

    fn invariant_line(m: &FoliatedModel) -> ValuationRecord {
        m.hyperplane_valuation("invariant_line", Incidence::Invariant, int(0), int(0))
            .unwrap()
    }

    #[test]
    fn mixed_discrepancy_examples() {
        let m = radial();
        let line = invariant_line(&m);
        // invariant line on the radial model: A^[t] = 1 - t
        let d = mixed_log_discrepancy(&rat(1, 3), &line).unwrap();
        assert_eq!(d.value, rat(2, 3));
        assert_eq!(d.value, &d.ambient_part + &d.foliated_part);
        // t = 0 endpoint: a_X + 1
        let pt = m
            .point_blowup_valuation("pt", int(1), int(0), Incidence::Transverse)
            .unwrap();
        assert_eq!(mixed_log_discrepancy(&int(0), &pt).unwrap().value, int(2));
        // transverse with a_X = a_F = 0 at t = 1/2: both endpoints equal 1
        let tr = m
            .hyperplane_valuation("tr", Incidence::Transverse, int(0), int(0))
            .unwrap();
        assert_eq!(mixed_log_discrepancy(&rat(1, 2), &tr).unwrap().value, int(1));
        assert!(mixed_log_discrepancy(&rat(3, 2), &tr).is_err());
    }

    #[test]
    fn discrepancy_minus_divisor() {
        let m = radial();
        let line = invariant_line(&m);
        assert_eq!(
            mixed_discrepancy_with_divisor(&rat(1, 2), &line, &int(1)).unwrap(),
            rat(-1, 2)
        );
        assert_eq!(
            mixed_discrepancy_with_divisor(&rat(1, 4), &line, &int(0)).unwrap(),
            mixed_log_discrepancy(&rat(1, 4), &line).unwrap().value
        );
        // lc boundary: t = 0, a_X = 0, ord = 1
        assert_eq!(
            mixed_discrepancy_with_divisor(&int(0), &line, &int(1)).unwrap(),
            int(0)
        );
        assert!(mixed_discrepancy_with_divisor(&int(0), &line, &int(-1)).is_err());
    }

    #[test]
    fn thresholds_on_radial_line() {
        let m = radial();
        let line = invariant_line(&m);
        for t in [int(0), rat(1, 4), rat(1, 2), rat(9, 10)] {
            // T = 3 - 2t, S = (3-2t)/3
            let expect_t = int(3) - int(2) * &t;
            assert_eq!(pseudoeffective_threshold(&line, &t).unwrap(), expect_t);
            assert_eq!(s_invariant(&line, &t).unwrap(), &expect_t / int(3));
        }
        // j at t = 0: 3 - 1 = 2
        assert_eq!(j_invariant(&line, &int(0)).unwrap(), int(2));
    }

    #[test]
    fn point_valuation_s_and_t() {
        let m = radial();
        let pt = m
            .point_blowup_valuation("pt", int(1), int(0), Incidence::Transverse)
            .unwrap();
        // L = 3H: T = 3, S = (1/9) * 18 = 2
        assert_eq!(pseudoeffective_threshold(&pt, &int(0)).unwrap(), int(3));
        assert_eq!(s_invariant(&pt, &int(0)).unwrap(), int(2));
    }

    #[test]
    fn small_point_blowup() {
        // P^2 with L = 2H: T = 2, S = 4/3
        let m = FoliatedModel::pn("p2_2h", 2, int(2), int(1)).unwrap();
        let pt = m
            .point_blowup_valuation("pt", int(1), int(0), Incidence::Transverse)
            .unwrap();
        assert_eq!(pseudoeffective_threshold(&pt, &int(0)).unwrap(), int(2));
        assert_eq!(s_invariant(&pt, &int(0)).unwrap(), rat(4, 3));
    }

    #[test]
    fn beta_examples() {
        let m = radial();
        let line = invariant_line(&m);
        // beta = -t/3
        let r = beta(&line, &m, &rat(1, 3)).unwrap();
        assert_eq!(r.beta, rat(-1, 9));
        assert_eq!(r.a, rat(2, 3));
        assert_eq!(r.s, rat(7, 9));
        assert_eq!(r.beta, &r.a - &r.s);
        assert_eq!(r.j, &r.threshold - &r.s);
        // non-invariant line at t = 0: beta = 0
        let tr = m
            .hyperplane_valuation("line", Incidence::Transverse, int(0), int(0))
            .unwrap();
        let r0 = beta(&tr, &m, &int(0)).unwrap();
        assert_eq!(r0.a, int(1));
        assert_eq!(r0.s, int(1));
        assert!(r0.beta.is_zero());
    }

    #[test]
    fn beta_cubic_fourfold_member() {
        let m = FoliatedModel::pn_with_degree("cubic_fourfold", 4, int(3), int(1), int(3)).unwrap();
        let member = m
            .hyperplane_valuation("pencil_member", Incidence::Invariant, int(0), int(0))
            .unwrap();
        // S = (3-2t)/5, beta = (2-3t)/5, root at t = 2/3
        for t in [int(0), rat(1, 2), rat(2, 3), rat(3, 4)] {
            let r = beta(&member, &m, &t).unwrap();
            assert_eq!(r.s, (int(3) - int(2) * &t) / int(5));
            assert_eq!(r.beta, (int(2) - int(3) * &t) / int(5));
        }
        assert!(beta(&member, &m, &rat(2, 3)).unwrap().beta.is_zero());
    }

    #[test]
    fn beta_rejects_non_ample_t() {
        let m = FoliatedModel::pn("cubic_pencil", 2, int(3), int(-3)).unwrap();
        let member = m
            .divisor_valuation("member", Incidence::Invariant, int(0), int(0), int(3))
            .unwrap();
        assert!(matches!(
            beta(&member, &m, &rat(1, 2)),
            Err(Error::NotAmpleAt { .. })
        ));
        // (2-t)/3 on the ample range
        let r = beta(&member, &m, &rat(1, 4)).unwrap();
        assert_eq!(r.beta, rat(7, 12));
    }

    #[test]
    fn lct_examples() {
        let m = radial();
        let line = invariant_line(&m);
        let single = DivisorOrders::new(vec![(line.clone(), int(1))]).unwrap();
        for t in [int(0), rat(1, 3), rat(4, 5)] {
            assert_eq!(
                lct_over_candidates(&t, &single).unwrap(),
                Rational::one() - &t
            );
        }
        // A = 0 entry: threshold 0
        let zero_a = beta_zero_a_record(&m);
        let orders = DivisorOrders::new(vec![(zero_a, int(2))]).unwrap();
        assert_eq!(lct_over_candidates(&int(1), &orders).unwrap(), int(0));
        // min selection between (A=1, ord=2) and (A=1, ord=1)
        let tr = m
            .hyperplane_valuation("tr", Incidence::Transverse, int(0), int(0))
            .unwrap();
        let two = DivisorOrders::new(vec![(tr.clone(), int(2)), (tr.clone(), int(1))]).unwrap();
        assert_eq!(lct_over_candidates(&rat(1, 2), &two).unwrap(), rat(1, 2));
        // all-zero orders rejected
        let zeros = DivisorOrders::new(vec![(tr, int(0))]).unwrap();
        assert_eq!(lct_over_candidates(&int(0), &zeros), Err(Error::AllOrdersZero));
    }

    // invariant divisor whose A^[t] vanishes at t = 1
    fn beta_zero_a_record(m: &FoliatedModel) -> ValuationRecord {
        m.hyperplane_valuation("zero_a", Incidence::Invariant, int(0), int(0))
            .unwrap()
    }

    #[test]
    fn alpha_delta_bounds() {
        let m = radial();
        let line = invariant_line(&m);
        let (alpha, delta) =
            alpha_delta_over_candidates(&m, std::slice::from_ref(&line), &rat(1, 2)).unwrap();
        assert_eq!(alpha, rat(1, 4));
        assert_eq!(delta, rat(3, 4));
        let tr = m
            .hyperplane_valuation("line", Incidence::Transverse, int(0), int(0))
            .unwrap();
        let (alpha0, delta0) =
            alpha_delta_over_candidates(&m, std::slice::from_ref(&tr), &int(0)).unwrap();
        assert_eq!(alpha0, rat(1, 3));
        assert_eq!(delta0, int(1));
        assert!(alpha_delta_over_candidates(&m, &[], &int(0)).is_err());
        // singleton with A = 0 at t = 1
        let (a1, d1) =
            alpha_delta_over_candidates(&m, &[beta_zero_a_record(&m)], &int(1)).unwrap();
        assert!(a1.is_zero() && d1.is_zero());
    }

    #[test]
    fn normalized_volume_examples() {
        let m = radial();
        let line = invariant_line(&m).with_val_volume(int(1));
        // A = 1 - t, n = 2 -> (1-t)^2
        assert_eq!(normalized_volume(&line, &rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(normalized_volume(&line, &int(1)).unwrap(), int(0));
        let no_vol = invariant_line(&m);
        assert!(matches!(
            normalized_volume(&no_vol, &int(0)),
            Err(Error::MissingValVolume { .. })
        ));
    }
}
