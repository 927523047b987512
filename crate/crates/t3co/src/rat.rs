//! Exact rational arithmetic helpers and the extended value line used by
//! deadlines and availability tables.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

/// Rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRatError(pub String);

/// Parses `"7"`, `"-3/4"` or `"2.50"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    let err = || ParseRatError(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int = BigInt::from_str(int).map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| err())?;
        let whole = int * &scale;
        let combined = if neg { whole - frac } else { whole + frac };
        return Ok(BigRational::new(combined, scale));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| err())
}

/// Canonical text: integers bare, everything else `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended with positive infinity. Deadlines and availability
/// bounds use this; ordinary cost values stay finite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Inf,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn add_rat(&self, r: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(f) => ExtRat::Finite(f + r),
            ExtRat::Inf => ExtRat::Inf,
        }
    }

    pub fn ge_rat(&self, r: &Rat) -> bool {
        match self {
            ExtRat::Finite(f) => f >= r,
            ExtRat::Inf => true,
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{}", fmt_rat(r)),
            ExtRat::Inf => write!(f, "inf"),
        }
    }
}

/// Parses a rational or `inf`/`∞`.
pub fn parse_ext(s: &str) -> Result<ExtRat, ParseRatError> {
    let t = s.trim();
    if t == "inf" || t == "∞" {
        return Ok(ExtRat::Inf);
    }
    parse_rat(t).map(ExtRat::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(parse_rat("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rat("2.50").unwrap(), ratio(5, 2));
        assert_eq!(parse_rat("-0.5").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(fmt_rat(&rat(12)), "12");
        assert_eq!(fmt_rat(&ratio(6, 4)), "3/2");
        assert_eq!(parse_rat(&fmt_rat(&ratio(-7, 3))).unwrap(), ratio(-7, 3));
    }

    #[test]
    fn extended_ordering() {
        assert!(ExtRat::Inf > ExtRat::Finite(rat(1_000_000)));
        assert!(ExtRat::Finite(rat(1)) < ExtRat::Finite(rat(2)));
        assert_eq!(parse_ext("inf").unwrap(), ExtRat::Inf);
        assert_eq!(parse_ext("3/2").unwrap(), ExtRat::Finite(ratio(3, 2)));
    }
}
