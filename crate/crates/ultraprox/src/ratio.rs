//! Exact non-negative rational distance values.
//!
//! Every distance in the library is a `Ratio`, stored in lowest terms over
//! arbitrary-precision integers, so equalities like `d(x,y) == dist(A,B)`
//! are decided exactly rather than approximately.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Non-negative rational in canonical lowest terms (zero is `0/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(num_rational::Ratio<BigUint>);

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        Self::from_biguints(BigUint::from(num), BigUint::from(den))
    }

    pub fn from_biguints(num: BigUint, den: BigUint) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // num_rational reduces to lowest terms on construction
        Ok(Ratio(num_rational::Ratio::new(num, den)))
    }

    pub fn zero() -> Self {
        Ratio(num_rational::Ratio::from_integer(BigUint::zero()))
    }

    pub fn one() -> Self {
        Ratio(num_rational::Ratio::from_integer(BigUint::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.numer().is_zero()
    }

    /// `1 / (1 + k)`, the Baire-space distance for common prefix length `k`.
    pub fn one_over_succ(k: usize) -> Self {
        Ratio(num_rational::Ratio::new(
            BigUint::one(),
            BigUint::from(k as u64 + 1),
        ))
    }

    /// `1 / p^v`, the p-adic distance for valuation `v`.
    pub fn recip_pow(p: u64, v: u32) -> Self {
        Ratio(num_rational::Ratio::new(
            BigUint::one(),
            BigUint::from(p).pow(v),
        ))
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    /// Smallest integer `k >= 0` with `1/(1+k) <= self`, i.e. the minimum
    /// common-prefix length forcing membership in a Baire ball of this radius.
    /// `None` for zero radius (no finite prefix length suffices).
    pub fn baire_prefix_len(&self) -> Option<usize> {
        use num_integer::Integer;
        if self.is_zero() {
            return None;
        }
        if *self >= Ratio::one() {
            return Some(0);
        }
        // 1/(1+k) <= n/d  <=>  1+k >= d/n  <=>  k >= ceil(d/n) - 1
        let k = self.denom().div_ceil(self.numer()) - BigUint::one();
        Some(usize::try_from(u64::try_from(&k).unwrap_or(u64::MAX)).unwrap_or(usize::MAX))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |_| Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let num = BigUint::from_str(n.trim()).map_err(bad)?;
                let den = BigUint::from_str(d.trim()).map_err(bad)?;
                Ratio::from_biguints(num, den)
            }
            None => {
                let num = BigUint::from_str(s.trim()).map_err(bad)?;
                Ratio::from_biguints(num, BigUint::one())
            }
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn r(n: u64, d: u64) -> Ratio {
        Ratio::new(n, d).unwrap()
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(0, 7).to_string(), "0");
        // 1/9 equals 3^-2 computed by repeated division of 9 by 3
        let mut d = 9u64;
        let mut v = 0;
        while d % 3 == 0 {
            d /= 3;
            v += 1;
        }
        assert_eq!(v, 2);
        assert_eq!(r(1, 9), Ratio::recip_pow(3, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(Ratio::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn scale_invariance() {
        for k in 1..10u64 {
            assert_eq!(r(3 * k, 7 * k), r(3, 7));
        }
    }

    #[test]
    fn max_order() {
        assert_eq!(r(1, 2).max(r(1, 3)), r(1, 2));
        assert_eq!(r(1, 3).max(r(1, 3)), r(1, 3));
        // second sequence example compares delta(B) and dist(A,B)
        assert_eq!(r(1, 3).max(r(1, 4)), r(1, 3));
        assert_eq!(r(1, 4).max(r(1, 3)), r(1, 3));
    }

    #[test]
    fn exact_trichotomy() {
        let a = r(1, 3);
        let b = r(1, 2);
        assert!(a < b && !(a == b) && !(a > b));
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn string_round_trip() {
        for s in ["1/2", "0", "7/9", "1000000000000000000000/3"] {
            let v: Ratio = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("3".parse::<Ratio>().unwrap(), r(3, 1));
        assert_eq!("0/1".parse::<Ratio>().unwrap().to_string(), "0");
        assert_eq!(r(3, 1).to_string(), "3");
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("x/2".parse::<Ratio>().is_err());
    }

    #[test]
    fn baire_prefix_len() {
        assert_eq!(r(1, 2).baire_prefix_len(), Some(1));
        assert_eq!(r(1, 3).baire_prefix_len(), Some(2));
        assert_eq!(r(2, 5).baire_prefix_len(), Some(2)); // 1/3 <= 2/5 < 1/2
        assert_eq!(r(1, 1).baire_prefix_len(), Some(0));
        assert_eq!(r(3, 2).baire_prefix_len(), Some(0));
        assert_eq!(Ratio::zero().baire_prefix_len(), None);
    }
}
