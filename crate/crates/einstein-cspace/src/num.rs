//! Scalar abstraction over the two working precisions.
//!
//! Everything numerical in this crate is generic over [`Real`], instantiated
//! either with `f64` or with the crate's double-double type [`Dd`] (roughly
//! 31 significant decimal digits). The extended type exists because the
//! reduced Einstein system for very large `(l, m, n)` carries coefficients of
//! order `l*m*n` while the roots sit near 1; plain doubles leave too little
//! headroom for the residual tolerances we certify.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use crate::dd::Dd;

pub trait Real:
    Copy
    + PartialOrd
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Lossless embedding of an `f64` (and thus of any integer below 2^53).
    fn of(v: f64) -> Self;
    /// Nearest `f64`.
    fn lo(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn is_finite(self) -> bool;
    /// Unit roundoff of the representation.
    fn eps() -> f64;

    fn zero() -> Self {
        Self::of(0.0)
    }
    fn one() -> Self {
        Self::of(1.0)
    }
    fn maximum(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn of(v: f64) -> Self {
        v
    }
    fn lo(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn eps() -> f64 {
        f64::EPSILON
    }
}

impl Real for Dd {
    fn of(v: f64) -> Self {
        Dd::from_f64(v)
    }
    fn lo(self) -> f64 {
        self.hi()
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
    fn eps() -> f64 {
        // both component doubles contribute their full mantissa
        2f64.powi(-104)
    }
}

/// Working precision selector carried through options, reports and the cache key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(format!("unknown precision `{other}` (double|extended)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_roundtrip_and_sqrt() {
        let x = Dd::of(2.0);
        let r = Real::sqrt(x);
        let back = r * r - x;
        assert!(Real::abs(back).lo() < 1e-30);
    }

    #[test]
    fn embedding_is_exact_for_large_integers() {
        // l*m*n for the largest published parameters stays below 2^53.
        let v = 100000.0 * 99999.0;
        assert_eq!(f64::of(v).lo(), v);
        assert_eq!(Dd::of(v).lo(), v);
    }
}
