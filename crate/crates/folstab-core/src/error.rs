//! Error type shared by every module of the crate.

use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("integration bounds out of order: {lo} > {hi}")]
    ReversedBounds { lo: Rational, hi: Rational },

    #[error("integration bounds [{lo}, {hi}] outside the domain [0, {end}]")]
    OutOfDomain {
        lo: Rational,
        hi: Rational,
        end: Rational,
    },

    #[error("evaluation point {x} below the domain start 0")]
    BelowDomain { x: Rational },

    #[error("scale factor must be positive, got {c}")]
    NonPositiveScale { c: Rational },

    #[error("breakpoints must be strictly increasing and start at 0")]
    BadBreakpoints,

    #[error("need exactly one piece per breakpoint interval")]
    PieceCountMismatch,

    #[error("volume function must be positive at x = 0, got {value}")]
    NonPositiveAtZero { value: Rational },

    #[error("volume function must vanish at its last breakpoint, got {value}")]
    NonZeroAtEnd { value: Rational },

    #[error("volume function jumps upward at breakpoint {x}")]
    UpwardJump { x: Rational },

    #[error("piece {index} has positive derivative at x = {x}")]
    NotMonotone { index: usize, x: Rational },

    #[error("piece {index}: could not certify a non-increasing derivative within subdivision depth {depth}")]
    MonotonicityUnresolved { index: usize, depth: u32 },

    #[error("t = {t} outside [0, 1]")]
    TOutOfRange { t: Rational },

    #[error("not adjoint Fano at t = {t}: the polarization degenerates")]
    NotAmpleAt { t: Rational },

    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("all divisor orders are zero")]
    AllOrdersZero,

    #[error("negative divisor order {order}")]
    NegativeOrder { order: Rational },

    #[error("valuation `{label}` carries no valuation volume")]
    MissingValVolume { label: String },

    #[error("model `{label}` is not of projective-space type")]
    NotPnModel { label: String },

    #[error("model `{label}` has no proportional canonical relation")]
    NotProportional { label: String },

    #[error("{value} has no exact rational {n}-th root; supply explicit volume data")]
    IrrationalBreakpoint { value: Rational, n: u32 },

    #[error("valuation `{label}` does not match model `{model}`: {reason}")]
    ModelMismatch {
        label: String,
        model: String,
        reason: String,
    },

    #[error("nonpositive volume V = {v}")]
    NonPositiveVolume { v: Rational },

    #[error("negative J-functional value {value}: inconsistent intersection data")]
    InconsistentIntersection { value: Rational },

    #[error("missing central-fibre threshold term")]
    MissingLct,

    #[error("level m = {m} does not clear the polarization denominator (m*d = {md})")]
    NonIntegralDegree { m: u64, md: Rational },

    #[error("finite-level levels disagree across candidates")]
    MixedLevels,

    #[error("S_m vanishes for valuation `{label}`")]
    ZeroSm { label: String },

    #[error("invalid parameter: {what}")]
    Param { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
