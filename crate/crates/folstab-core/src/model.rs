//! Data model for polarized foliated structures and divisorial valuations.
//!
//! A [`FoliatedModel`] carries the numerical data of the structure: the
//! dimension, the volume of the reference polarization, and how the canonical
//! class of the foliation relates to that of the ambient variety. Valuations
//! are extensional [`ValuationRecord`]s: the discrepancy triple and the volume
//! function are inputs, never derived from defining equations.

use crate::affine::AffineInT;
use crate::error::{Error, Result};
use crate::piecewise::PiecewisePoly;
use crate::poly::UniPoly;
use crate::rational::{exact_nth_root, int, pow_i32, Rational};
use num_traits::{One, Signed, Zero};

/// Position of a divisor relative to the foliation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    /// The foliation is generically tangent to the divisor.
    Invariant,
    /// The foliation crosses the divisor.
    Transverse,
}

impl Incidence {
    /// The indicator epsilon: 0 for invariant, 1 for transverse divisors.
    pub fn epsilon(self) -> Rational {
        match self {
            Incidence::Invariant => Rational::zero(),
            Incidence::Transverse => Rational::one(),
        }
    }
}

/// How the canonical class of the foliation compares to the ambient one.
#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalRelation {
    /// `K_F ~ q * K_X` on a Fano ambient variety.
    Proportional { q: Rational },
    /// The slope of the polarized structure, directly as a function of `t`.
    Explicit { slope: AffineInT },
}

/// How the polarization depends on `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// `L_t` is the anti-adjoint class; in the proportional case
    /// `L_t = lambda_t * (-K_X)` with `lambda_t = 1 + (q-1) t`.
    AntiAdjoint,
    /// A fixed ample class, independent of `t`.
    Fixed,
}

/// Closed-form data for models carrying a hyperplane class `H`:
/// `-K_X = d_x * H`, `-K_F = d_f * H`, and `H^n = h_deg`.
#[derive(Debug, Clone, PartialEq)]
pub struct PnTemplate {
    pub d_x: Rational,
    pub d_f: Rational,
    pub h_deg: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedModel {
    label: String,
    dim: u32,
    relation: CanonicalRelation,
    polarization: Polarization,
    reference_volume: Rational,
    template: Option<PnTemplate>,
}

impl FoliatedModel {
    /// Projective-space-type model with hyperplane class of degree 1.
    pub fn pn(label: &str, n: u32, d_x: Rational, d_f: Rational) -> Result<Self> {
        Self::pn_with_degree(label, n, d_x, d_f, Rational::one())
    }

    /// Projective-space-type model with `H^n = h_deg`; covers hypersurfaces
    /// polarized by the hyperplane class.
    pub fn pn_with_degree(
        label: &str,
        n: u32,
        d_x: Rational,
        d_f: Rational,
        h_deg: Rational,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::Param {
                what: "dimension must be at least 1".into(),
            });
        }
        if !d_x.is_positive() {
            return Err(Error::Param {
                what: format!("anticanonical degree d_x must be positive, got {d_x}"),
            });
        }
        if !h_deg.is_positive() {
            return Err(Error::Param {
                what: format!("hyperplane degree must be positive, got {h_deg}"),
            });
        }
        let q = &d_f / &d_x;
        let reference_volume = &h_deg * pow_i32(&d_x, n as i32)?;
        Ok(Self {
            label: label.to_string(),
            dim: n,
            relation: CanonicalRelation::Proportional { q },
            polarization: Polarization::AntiAdjoint,
            reference_volume,
            template: Some(PnTemplate { d_x, d_f, h_deg }),
        })
    }

    /// Model with a fixed polarization and explicitly supplied slope data.
    pub fn explicit(label: &str, n: u32, volume: Rational, slope: AffineInT) -> Result<Self> {
        if n < 1 {
            return Err(Error::Param {
                what: "dimension must be at least 1".into(),
            });
        }
        if !volume.is_positive() {
            return Err(Error::NonPositiveVolume { v: volume });
        }
        Ok(Self {
            label: label.to_string(),
            dim: n,
            relation: CanonicalRelation::Explicit { slope },
            polarization: Polarization::Fixed,
            reference_volume: volume,
            template: None,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn relation(&self) -> &CanonicalRelation {
        &self.relation
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    /// Volume of the reference polarization (`(-K_X)^n` for anti-adjoint
    /// proportional models, the fixed `L^n` otherwise).
    pub fn reference_volume(&self) -> &Rational {
        &self.reference_volume
    }

    pub fn template(&self) -> Option<&PnTemplate> {
        self.template.as_ref()
    }

    /// The proportionality factor `q` with `K_F ~ q K_X`, when available.
    pub fn q(&self) -> Result<&Rational> {
        match &self.relation {
            CanonicalRelation::Proportional { q } => Ok(q),
            CanonicalRelation::Explicit { .. } => Err(Error::NotProportional {
                label: self.label.clone(),
            }),
        }
    }

    /// `lambda_t = 1 + (q-1) t` as an affine function.
    pub fn lambda(&self) -> Result<AffineInT> {
        let q = self.q()?;
        Ok(AffineInT::new(Rational::one(), q - Rational::one()))
    }

    /// `lambda_t` at a given `t`, requiring `t` in `[0, 1]`.
    pub fn lambda_at(&self, t: &Rational) -> Result<Rational> {
        check_t(t)?;
        Ok(self.lambda()?.eval(t))
    }

    /// Errors unless the structure is adjoint Fano at `t`.
    pub fn ensure_ample_at(&self, t: &Rational) -> Result<()> {
        check_t(t)?;
        match self.polarization {
            Polarization::Fixed => Ok(()),
            Polarization::AntiAdjoint => {
                if self.lambda_at(t)?.is_positive() {
                    Ok(())
                } else {
                    Err(Error::NotAmpleAt { t: t.clone() })
                }
            }
        }
    }

    /// `V(t) = L_t^n`, exactly.
    pub fn volume_at(&self, t: &Rational) -> Result<Rational> {
        check_t(t)?;
        match self.polarization {
            Polarization::Fixed => Ok(self.reference_volume.clone()),
            Polarization::AntiAdjoint => {
                let lambda = self.lambda_at(t)?;
                if !lambda.is_positive() {
                    return Err(Error::NotAmpleAt { t: t.clone() });
                }
                Ok(pow_i32(&lambda, self.dim as i32)? * &self.reference_volume)
            }
        }
    }

    /// The slope of the polarized structure at `t`: identically 1 for
    /// anti-adjoint polarizations, otherwise the supplied affine data.
    pub fn slope_at(&self, t: &Rational) -> Result<Rational> {
        check_t(t)?;
        match (&self.polarization, &self.relation) {
            (Polarization::AntiAdjoint, _) => Ok(Rational::one()),
            (Polarization::Fixed, CanonicalRelation::Explicit { slope }) => Ok(slope.eval(t)),
            (Polarization::Fixed, CanonicalRelation::Proportional { .. }) => Err(Error::Param {
                what: "fixed polarization with proportional relation carries no slope data".into(),
            }),
        }
    }

    /// The value of `t` in `(0, 1]` where the anti-adjoint class stops being
    /// ample, if any.
    pub fn ample_wall(&self) -> Option<Rational> {
        match (&self.polarization, &self.relation) {
            (Polarization::AntiAdjoint, CanonicalRelation::Proportional { q }) => {
                if *q < Rational::one() {
                    let wall = Rational::one() / (Rational::one() - q);
                    if wall <= Rational::one() {
                        return Some(wall);
                    }
                }
                None
            }
            _ => None,
        }
    }

    /// Valuation of a prime divisor linearly equivalent to `divisor_degree * H`
    /// on a projective-space-type model: the volume function at the reference
    /// polarization `c*H` is `h_deg * (c - divisor_degree * x)^n`.
    pub fn divisor_valuation(
        &self,
        label: &str,
        incidence: Incidence,
        a_x: Rational,
        a_f: Rational,
        divisor_degree: Rational,
    ) -> Result<ValuationRecord> {
        let tpl = self.template.as_ref().ok_or_else(|| Error::NotPnModel {
            label: self.label.clone(),
        })?;
        if !divisor_degree.is_positive() {
            return Err(Error::Param {
                what: format!("divisor degree must be positive, got {divisor_degree}"),
            });
        }
        let c = tpl.d_x.clone();
        let piece = UniPoly::affine(c.clone(), -divisor_degree.clone())
            .pow(self.dim)
            .scale(&tpl.h_deg);
        let end = &c / &divisor_degree;
        let vol = PiecewisePoly::single(piece, end)?;
        ValuationRecord::new(
            label,
            self.dim,
            a_x,
            a_f,
            incidence,
            vol,
            VolScaling::Lambda(self.lambda()?),
            None,
        )
    }

    /// Valuation of a member of the hyperplane system (`divisor_degree = 1`).
    pub fn hyperplane_valuation(
        &self,
        label: &str,
        incidence: Incidence,
        a_x: Rational,
        a_f: Rational,
    ) -> Result<ValuationRecord> {
        self.divisor_valuation(label, incidence, a_x, a_f, Rational::one())
    }

    /// Valuation of the blow-up of a smooth point: `vol(cH - xE) = V - x^n`
    /// on `[0, V^{1/n}]`. Errors when the breakpoint is irrational; such
    /// scenarios must supply an explicit record instead.
    pub fn point_blowup_valuation(
        &self,
        label: &str,
        a_x: Rational,
        a_f: Rational,
        incidence: Incidence,
    ) -> Result<ValuationRecord> {
        if self.template.is_none() {
            return Err(Error::NotPnModel {
                label: self.label.clone(),
            });
        }
        let v_ref = self.reference_volume.clone();
        let end = exact_nth_root(&v_ref, self.dim).ok_or(Error::IrrationalBreakpoint {
            value: v_ref.clone(),
            n: self.dim,
        })?;
        let mut coeffs = vec![Rational::zero(); self.dim as usize + 1];
        coeffs[0] = v_ref;
        coeffs[self.dim as usize] = -Rational::one();
        let vol = PiecewisePoly::single(UniPoly::new(coeffs), end)?;
        ValuationRecord::new(
            label,
            self.dim,
            a_x,
            a_f,
            incidence,
            vol,
            VolScaling::Lambda(self.lambda()?),
            None,
        )
    }
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::TOutOfRange { t: t.clone() });
    }
    Ok(())
}

/// Rule linking the reference volume function to the polarization at `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum VolScaling {
    /// The polarization does not move with `t`.
    Fixed,
    /// Rescale by the affine factor (ample only while it stays positive).
    Lambda(AffineInT),
}

/// A divisorial valuation with its discrepancy data and volume function.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuationRecord {
    label: String,
    dim: u32,
    a_x: Rational,
    a_f: Rational,
    incidence: Incidence,
    vol_fn_base: PiecewisePoly,
    scaling: VolScaling,
    val_volume: Option<Rational>,
}

impl ValuationRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        label: &str,
        dim: u32,
        a_x: Rational,
        a_f: Rational,
        incidence: Incidence,
        vol_fn_base: PiecewisePoly,
        scaling: VolScaling,
        val_volume: Option<Rational>,
    ) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Param {
                what: "valuation dimension must be at least 1".into(),
            });
        }
        // PiecewisePoly construction already guarantees vol(0) > 0 and a
        // positive pseudo-effective threshold, i.e. the valuation is nontrivial.
        Ok(Self {
            label: label.to_string(),
            dim,
            a_x,
            a_f,
            incidence,
            vol_fn_base,
            scaling,
            val_volume,
        })
    }

    pub fn with_val_volume(mut self, vol: Rational) -> Self {
        self.val_volume = Some(vol);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn a_x(&self) -> &Rational {
        &self.a_x
    }

    pub fn a_f(&self) -> &Rational {
        &self.a_f
    }

    pub fn incidence(&self) -> Incidence {
        self.incidence
    }

    pub fn epsilon(&self) -> Rational {
        self.incidence.epsilon()
    }

    pub fn val_volume(&self) -> Option<&Rational> {
        self.val_volume.as_ref()
    }

    pub fn scaling(&self) -> &VolScaling {
        &self.scaling
    }

    pub fn vol_fn_base(&self) -> &PiecewisePoly {
        &self.vol_fn_base
    }

    /// Volume of the reference polarization as seen by this record.
    pub fn reference_volume(&self) -> Rational {
        self.vol_fn_base.value_at_zero()
    }

    /// The volume function `x -> vol(L_t - xE)` at parameter `t`.
    pub fn volume_fn_at(&self, t: &Rational) -> Result<PiecewisePoly> {
        check_t(t)?;
        match &self.scaling {
            VolScaling::Fixed => Ok(self.vol_fn_base.clone()),
            VolScaling::Lambda(lambda) => {
                let c = lambda.eval(t);
                if !c.is_positive() {
                    return Err(Error::NotAmpleAt { t: t.clone() });
                }
                self.vol_fn_base.scale(&c, self.dim)
            }
        }
    }

    /// Checks that this record and a model describe the same polarized
    /// structure (dimension, reference volume, scaling rule).
    pub fn check_matches_model(&self, model: &FoliatedModel) -> Result<()> {
        let mismatch = |reason: &str| Error::ModelMismatch {
            label: self.label.clone(),
            model: model.label().to_string(),
            reason: reason.to_string(),
        };
        if self.dim != model.dim() {
            return Err(mismatch("dimension differs"));
        }
        if self.reference_volume() != *model.reference_volume() {
            return Err(mismatch("reference volume differs"));
        }
        match (&self.scaling, model.polarization()) {
            (VolScaling::Fixed, Polarization::Fixed) => Ok(()),
            (VolScaling::Lambda(l), Polarization::AntiAdjoint) => {
                if *l == model.lambda()? {
                    Ok(())
                } else {
                    Err(mismatch("scaling factor differs"))
                }
            }
            _ => Err(mismatch("polarization rule differs")),
        }
    }
}

/// Orders `v(D)` of a fixed effective divisor along a candidate set.
#[derive(Debug, Clone)]
pub struct DivisorOrders {
    entries: Vec<(ValuationRecord, Rational)>,
}

impl DivisorOrders {
    pub fn new(entries: Vec<(ValuationRecord, Rational)>) -> Result<Self> {
        for (_, order) in &entries {
            if order.is_negative() {
                return Err(Error::NegativeOrder {
                    order: order.clone(),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(ValuationRecord, Rational)] {
        &self.entries
    }
}
