//! Exact rational scalars and the extended real line used for death values.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator (`num_rational` maintains both on construction).
pub type Rational = num_rational::BigRational;

/// Builds `n / d` exactly. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"`, or `"-p/q"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended with a single point at positive infinity. Death values
/// of essential classes live here; everything else stays in `Rational`.
///
/// Ordering: every finite value is below `Infinity`. Arithmetic conventions
/// used by the distances: `inf - inf = 0`, `finite vs inf = inf`,
/// `x + inf = inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    Finite(Rational),
    Infinity,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    /// The finite payload, if any.
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            ExtReal::Infinity => None,
        }
    }

    /// `|self - other|` under the death-value conventions: two infinities are
    /// at distance zero, an infinity and a finite value at distance infinity.
    pub fn abs_diff(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite((a - b).abs()),
            (ExtReal::Infinity, ExtReal::Infinity) => ExtReal::Finite(Rational::zero()),
            _ => ExtReal::Infinity,
        }
    }

    /// Saturating addition: anything plus infinity is infinity.
    pub fn add(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }

    /// Scales by a finite nonnegative rational; `0 * inf` is not needed and
    /// is mapped to infinity like every other `c * inf`.
    pub fn scale(&self, c: &Rational) -> ExtReal {
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a * c),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    pub fn zero() -> ExtReal {
        ExtReal::Finite(Rational::zero())
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::Finite(r)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(r) => write!(f, "{}", format_rational(r)),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

/// Parses `"inf"` or a rational string into an extended real.
pub fn parse_ext_real(s: &str) -> Result<ExtReal> {
    let t = s.trim();
    if t == "inf" {
        Ok(ExtReal::Infinity)
    } else {
        parse_rational(t).map(ExtReal::Finite)
    }
}
