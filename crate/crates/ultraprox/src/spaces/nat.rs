//! The counterexample space on positive integers with
//! d(n,m) = max(1/n, 1/m) for n != m. The formula is undefined at 0, so
//! points start at 1. Enumerations are truncated at the declared bound.

use crate::error::Error;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatReciprocalSpace {
    pub bound: u64,
}

impl NatReciprocalSpace {
    pub fn new(bound: u64) -> Result<Self, Error> {
        if bound < 1 {
            return Err(Error::Config("nat_reciprocal bound must be >= 1".into()));
        }
        Ok(NatReciprocalSpace { bound })
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= 1
    }

    pub fn distance(&self, n: u64, m: u64) -> Result<Ratio, Error> {
        if n < 1 || m < 1 {
            return Err(Error::CrossSpace);
        }
        if n == m {
            return Ok(Ratio::zero());
        }
        Ok(Ratio::new(1, n.min(m))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_of_reciprocals() {
        let sp = NatReciprocalSpace::new(100).unwrap();
        assert_eq!(sp.distance(2, 3).unwrap(), Ratio::new(1, 2).unwrap());
        assert_eq!(sp.distance(9, 10).unwrap(), Ratio::new(1, 9).unwrap());
        assert_eq!(sp.distance(5, 5).unwrap(), Ratio::zero());
        assert!(sp.distance(0, 1).is_err());
    }

    #[test]
    fn strong_triangle_inequality_on_truncation() {
        let sp = NatReciprocalSpace::new(30).unwrap();
        for n in 1..=30 {
            for m in 1..=30 {
                for k in 1..=30 {
                    let lhs = sp.distance(n, m).unwrap();
                    let rhs = sp
                        .distance(n, k)
                        .unwrap()
                        .max(sp.distance(k, m).unwrap());
                    assert!(lhs <= rhs, "failed at ({n},{m},{k})");
                }
            }
        }
    }
}
