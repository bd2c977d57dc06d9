//! Scalars of the completed max-plus and min-plus semirings.
//!
//! | semiring | ⊕   | ⊗ | zero | one |
//! |----------|-----|---|------|-----|
//! | max-plus | max | + | -∞   | 0   |
//! | min-plus | min | + | +∞   | 0   |
//!
//! Both semirings share one scalar type, [`ExtendedReal`], which is a real
//! number or one of the two infinities. When the two infinities meet under
//! a product, the absorbing element of the active semiring wins:
//! `-∞ ⊗ +∞ = -∞` and `-∞ ⊗' +∞ = +∞`. With that convention the
//! residuation law `a ⊗ x ≤ b ⟺ x ≤ a♯ ⊗' b` holds on all inputs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The three states of an [`ExtendedReal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    NegInf,
    Finite,
    PosInf,
}

/// A real number or ±∞. Never NaN.
///
/// Stored as an `f64` whose infinities carry the infinite states, so a
/// matrix entry costs eight bytes.
#[derive(Clone, Copy, Default)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const NEG_INF: Self = Self(f64::NEG_INFINITY);
    pub const POS_INF: Self = Self(f64::INFINITY);
    pub const ZERO: Self = Self(0.0);

    /// Wraps a finite value or an IEEE infinity. NaN is rejected.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            Err(Error::NotANumber)
        } else {
            Ok(Self(value))
        }
    }

    /// Like [`ExtendedReal::new`] but panics on NaN. Meant for literals.
    pub fn from_f64(value: f64) -> Self {
        Self::new(value).expect("ExtendedReal cannot hold NaN")
    }

    pub fn kind(self) -> Kind {
        if self.0 == f64::NEG_INFINITY {
            Kind::NegInf
        } else if self.0 == f64::INFINITY {
            Kind::PosInf
        } else {
            Kind::Finite
        }
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn is_pos_inf(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// True for infinities and for finite values without a fractional part.
    pub fn is_integral(self) -> bool {
        !self.is_finite() || self.0.fract() == 0.0
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    /// The raw `f64`, with ±∞ mapped to the IEEE infinities.
    pub fn to_f64(self) -> f64 {
        self.0
    }

    /// a ⊕ b = max(a, b)
    #[inline]
    pub fn max_plus_add(self, other: Self) -> Self {
        Self(self.0.max(other.0))
    }

    /// a ⊗ b = a + b, with -∞ absorbing (also against +∞).
    #[inline]
    pub fn max_plus_mul(self, other: Self) -> Self {
        if self.0 == f64::NEG_INFINITY || other.0 == f64::NEG_INFINITY {
            Self::NEG_INF
        } else {
            Self(self.0 + other.0)
        }
    }

    /// a ⊕' b = min(a, b)
    #[inline]
    pub fn min_plus_add(self, other: Self) -> Self {
        Self(self.0.min(other.0))
    }

    /// a ⊗' b = a + b, with +∞ absorbing (also against -∞).
    #[inline]
    pub fn min_plus_mul(self, other: Self) -> Self {
        if self.0 == f64::INFINITY || other.0 == f64::INFINITY {
            Self::POS_INF
        } else {
            Self(self.0 + other.0)
        }
    }

    /// Negation, swapping the infinities. Never yields -0.
    #[inline]
    pub fn conjugate(self) -> Self {
        Self(-self.0 + 0.0)
    }
}

pub fn max_plus_add(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.max_plus_add(b)
}

pub fn max_plus_mul(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.max_plus_mul(b)
}

pub fn min_plus_add(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.min_plus_add(b)
}

pub fn min_plus_mul(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.min_plus_mul(b)
}

pub fn conjugate_scalar(a: ExtendedReal) -> ExtendedReal {
    a.conjugate()
}

// 0 and -0 compare equal, consistent with the order below.
impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("no NaN")
    }
}

impl From<i32> for ExtendedReal {
    fn from(v: i32) -> Self {
        Self(f64::from(v))
    }
}

impl TryFrom<f64> for ExtendedReal {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text token: `-inf`, `+inf`, or the shortest decimal that round-trips.
/// Integral values print without a decimal point.
impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::NegInf => f.write_str("-inf"),
            Kind::PosInf => f.write_str("+inf"),
            Kind::Finite => write!(f, "{}", self.0),
        }
    }
}

/// Parses `-inf` / `+inf` (any case) or a finite decimal literal.
impl FromStr for ExtendedReal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("-inf") {
            return Ok(Self::NEG_INF);
        }
        if s.eq_ignore_ascii_case("+inf") {
            return Ok(Self::POS_INF);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Self(v)),
            Ok(v) if v.is_nan() => Err(format!("NaN is not allowed: `{s}`")),
            Ok(_) => Err(format!("not a finite literal or `-inf`/`+inf`: `{s}`")),
            Err(_) => Err(format!("bad scalar token `{s}`")),
        }
    }
}
