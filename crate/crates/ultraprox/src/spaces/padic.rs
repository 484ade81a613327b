//! The ring of p-adic integers truncated to residues mod p^m, with
//! d(x,y) = p^(-v) where v is the p-adic valuation of the residue
//! difference. A genuine finite ultrametric space, so every theorem
//! check over it can be exhaustive.

use crate::error::Error;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicSpace {
    pub p: u64,
    pub m: u32,
    modulus: u64,
}

impl PAdicSpace {
    pub fn new(p: u64, m: u32) -> Result<Self, Error> {
        if p < 2 {
            return Err(Error::Config(format!("prime p must be >= 2, got {p}")));
        }
        if m < 1 {
            return Err(Error::Config("precision m must be >= 1".into()));
        }
        let modulus = p
            .checked_pow(m)
            .ok_or_else(|| Error::Config(format!("p^m overflows: p={p}, m={m}")))?;
        Ok(PAdicSpace { p, m, modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, residue: u64) -> bool {
        residue < self.modulus
    }

    /// Valuation of a nonzero residue; always < m.
    pub fn valuation(&self, residue: u64) -> Option<u32> {
        if residue == 0 {
            return None;
        }
        let mut v = 0;
        let mut r = residue;
        while r % self.p == 0 {
            r /= self.p;
            v += 1;
        }
        Some(v)
    }

    pub fn distance(&self, x: u64, y: u64) -> Result<Ratio, Error> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::CrossSpace);
        }
        let diff = (x + self.modulus - y) % self.modulus;
        match self.valuation(diff) {
            None => Ok(Ratio::zero()),
            Some(v) => Ok(Ratio::recip_pow(self.p, v)),
        }
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }

    pub fn translate(&self, x: u64, t: u64) -> u64 {
        (x + t % self.modulus) % self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::finite::FiniteUltraSpace;

    #[test]
    fn valuation_by_repeated_division() {
        let sp = PAdicSpace::new(3, 5).unwrap();
        // v(9) = 2, so d(0,9) = 1/9
        assert_eq!(sp.distance(0, 9).unwrap(), Ratio::new(1, 9).unwrap());
        assert_eq!(sp.distance(0, 0).unwrap(), Ratio::zero());
        assert_eq!(sp.distance(1, 0).unwrap(), Ratio::one());
        assert_eq!(sp.distance(0, 81).unwrap(), Ratio::new(1, 81).unwrap());
    }

    #[test]
    fn distance_values_bounded_by_precision() {
        let sp = PAdicSpace::new(3, 3).unwrap();
        for x in sp.residues() {
            for y in sp.residues() {
                let d = sp.distance(x, y).unwrap();
                assert!(d <= Ratio::one());
                if x != y {
                    // nonzero residue differences have valuation < m
                    assert!(d >= Ratio::recip_pow(3, 2));
                }
            }
        }
    }

    #[test]
    fn materialized_matrix_is_valid_ultrametric() {
        // oracle equivalence: the p-adic space as a distance matrix passes
        // the finite-space axiom validator (p=3, m<=3)
        for m in 1..=3u32 {
            let sp = PAdicSpace::new(3, m).unwrap();
            let labels: Vec<String> = sp.residues().map(|r| r.to_string()).collect();
            let matrix: Vec<Vec<Ratio>> = sp
                .residues()
                .map(|x| sp.residues().map(|y| sp.distance(x, y).unwrap()).collect())
                .collect();
            let finite = FiniteUltraSpace::new(labels, matrix).unwrap();
            assert!(finite.validate().valid);
        }
    }

    #[test]
    fn bad_config_rejected() {
        assert!(PAdicSpace::new(1, 3).is_err());
        assert!(PAdicSpace::new(3, 0).is_err());
        assert!(PAdicSpace::new(2, 64).is_err());
    }
}
