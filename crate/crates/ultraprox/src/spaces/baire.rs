//! Baire sequence space: infinite sequences of non-negative integers with
//! d(x,y) = 1/(1 + k) where k is the length of the longest common prefix.
//!
//! Indexing is 0-based throughout. Sequences are represented lazily as an
//! explicit (prefix, constant tail) core plus a stack of applied
//! partial-product maps. Applying a map normalizes the result back to an
//! explicit sequence whenever the terms are provably eventually constant,
//! so exact equality (and hence d = 0) is decided structurally.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ratio::Ratio;

/// Hard cap on the bit length of any running product; beyond this the
/// evaluation reports a budget error instead of grinding on huge integers.
const PRODUCT_BIT_BUDGET: u64 = 1 << 20;

/// A self-map of the Baire space acting by partial products.
///
/// `head_fixed` is the map that keeps coordinates 0 and 1 and sets
/// `T(x)(n) = x_0 x_1 ... x_n` for `n >= 2`; without it the product rule
/// applies at every index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartialProduct {
    pub head_fixed: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum SeqRepr {
    Explicit { prefix: Vec<BigUint>, tail: BigUint },
    Mapped { base: Box<UltraSeq>, map: PartialProduct },
}

/// A point of the Baire space.
///
/// Equality is structural on the normalized representation. Two explicit
/// sequences are equal iff their canonical (trimmed) forms coincide; a
/// mapped sequence that could not be normalized has unbounded terms and is
/// never equal to an explicit one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UltraSeq {
    repr: SeqRepr,
}

impl UltraSeq {
    pub fn explicit(prefix: Vec<BigUint>, tail: BigUint) -> Self {
        let mut prefix = prefix;
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        UltraSeq {
            repr: SeqRepr::Explicit { prefix, tail },
        }
    }

    pub fn from_u64s(prefix: &[u64], tail: u64) -> Self {
        Self::explicit(
            prefix.iter().map(|&v| BigUint::from(v)).collect(),
            BigUint::from(tail),
        )
    }

    /// The constant sequence (n, n, n, ...).
    pub fn constant(n: u64) -> Self {
        Self::from_u64s(&[], n)
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.repr, SeqRepr::Explicit { .. })
    }

    /// Structural certificate that all terms from some index on are zero:
    /// returns that index. Only explicit zero-tail sequences certify.
    pub fn zero_tail_from(&self) -> Option<usize> {
        match &self.repr {
            SeqRepr::Explicit { prefix, tail } if tail.is_zero() => Some(prefix.len()),
            _ => None,
        }
    }

    /// Apply a partial-product map, normalizing to an explicit sequence
    /// when the base is explicit and the products are eventually constant
    /// (tail 0, tail 1, or a zero anywhere in the prefix).
    pub fn apply(&self, map: PartialProduct) -> Self {
        if let SeqRepr::Explicit { prefix, tail } = &self.repr {
            let len = prefix.len();
            let offset = if map.head_fixed { 2 } else { 0 };
            let first_zero = prefix.iter().position(|v| v.is_zero());
            let stop = if tail.is_zero() || first_zero.is_some() {
                let z = first_zero.unwrap_or(len);
                Some((z.max(offset), BigUint::zero()))
            } else if tail.is_one() {
                let product: BigUint = prefix.iter().product();
                Some((len.max(offset), product))
            } else {
                None
            };
            if let Some((stop, new_tail)) = stop {
                let mut out = Vec::with_capacity(stop);
                let mut product = BigUint::one();
                for n in 0..stop {
                    let term = prefix.get(n).cloned().unwrap_or_else(|| tail.clone());
                    product *= &term;
                    out.push(if map.head_fixed && n < 2 {
                        term
                    } else {
                        product.clone()
                    });
                }
                return UltraSeq::explicit(out, new_tail);
            }
        }
        UltraSeq {
            repr: SeqRepr::Mapped {
                base: Box::new(self.clone()),
                map,
            },
        }
    }

    pub fn stream(&self) -> TermStream<'_> {
        let mut layers = Vec::new();
        let mut cur = self;
        loop {
            match &cur.repr {
                SeqRepr::Explicit { prefix, tail } => {
                    layers.reverse(); // innermost first
                    return TermStream {
                        prefix,
                        tail,
                        layers,
                        index: 0,
                    };
                }
                SeqRepr::Mapped { base, map } => {
                    layers.push(Layer {
                        map: *map,
                        product: BigUint::one(),
                    });
                    cur = base;
                }
            }
        }
    }

    /// Exact term at index `n` after expanding the applied-map stack.
    pub fn term(&self, n: usize) -> Result<BigUint, Error> {
        let mut stream = self.stream();
        let mut last = BigUint::zero();
        for _ in 0..=n {
            last = stream.next_term()?;
        }
        Ok(last)
    }

    pub fn terms_upto(&self, n: usize) -> Result<Vec<BigUint>, Error> {
        let mut stream = self.stream();
        (0..n).map(|_| stream.next_term()).collect()
    }

    /// Index of the first disagreement with `other`, scanning at most
    /// `depth` terms. `Ok(None)` means the sequences agree to `depth`.
    pub fn first_disagreement(&self, other: &Self, depth: usize) -> Result<Option<usize>, Error> {
        let mut a = self.stream();
        let mut b = other.stream();
        for n in 0..depth {
            if a.next_term()? != b.next_term()? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// True iff the first disagreement with `other` is at index >= k,
    /// i.e. d(self, other) <= 1/(1+k).
    pub fn agrees_to(&self, other: &Self, k: usize) -> Result<bool, Error> {
        Ok(self.first_disagreement(other, k)?.is_none())
    }
}

impl fmt::Display for UltraSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            SeqRepr::Explicit { prefix, tail } => {
                write!(f, "(")?;
                for v in prefix {
                    write!(f, "{v},")?;
                }
                write!(f, "{tail},{tail},...)")
            }
            SeqRepr::Mapped { base, map } => {
                let name = if map.head_fixed { "T" } else { "P" };
                write!(f, "{name}{base}")
            }
        }
    }
}

impl fmt::Debug for UltraSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Layer {
    map: PartialProduct,
    product: BigUint,
}

/// Streams exact terms of a (possibly mapped) sequence, keeping one running
/// product per map layer so evaluation is incremental.
pub struct TermStream<'a> {
    prefix: &'a [BigUint],
    tail: &'a BigUint,
    layers: Vec<Layer>,
    index: usize,
}

impl TermStream<'_> {
    pub fn next_term(&mut self) -> Result<BigUint, Error> {
        let n = self.index;
        self.index += 1;
        let mut value = self.prefix.get(n).unwrap_or(self.tail).clone();
        for layer in &mut self.layers {
            layer.product *= &value;
            if layer.product.bits() > PRODUCT_BIT_BUDGET {
                return Err(Error::BudgetExceeded(format!(
                    "sequence term at index {n} exceeds {PRODUCT_BIT_BUDGET} bits"
                )));
            }
            if !(layer.map.head_fixed && n < 2) {
                value = layer.product.clone();
            }
        }
        Ok(value)
    }
}

/// Outcome of a depth-bounded Baire distance computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaireDistance {
    Exact(Ratio),
    /// No disagreement within the depth bound and no structural equality
    /// certificate; the true distance is <= 1/(1+depth) but unknown.
    AgreeToDepth(usize),
}

/// The Baire space with a declared comparison depth bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaireSpace {
    pub depth_bound: usize,
}

impl BaireSpace {
    pub fn new(depth_bound: usize) -> Result<Self, Error> {
        if depth_bound == 0 {
            return Err(Error::Config("baire depth_bound must be >= 1".into()));
        }
        Ok(BaireSpace { depth_bound })
    }

    pub fn distance(&self, x: &UltraSeq, y: &UltraSeq) -> Result<BaireDistance, Error> {
        match x.first_disagreement(y, self.depth_bound)? {
            Some(k) => Ok(BaireDistance::Exact(Ratio::one_over_succ(k))),
            None => {
                if x == y {
                    Ok(BaireDistance::Exact(Ratio::zero()))
                } else {
                    Ok(BaireDistance::AgreeToDepth(self.depth_bound))
                }
            }
        }
    }

    /// Deterministic sample of members of the ball around `center` whose
    /// points must agree with the center on indices 0..k. The center comes
    /// first, then eventually-zero variants with one or two free
    /// coordinates. Always a strict sample (the ball is infinite).
    pub fn sample_ball(
        &self,
        center: &UltraSeq,
        k: usize,
        bound: usize,
    ) -> Result<Vec<UltraSeq>, Error> {
        let shared = center.terms_upto(k)?;
        let mut out = vec![center.clone()];
        let push = |seq: UltraSeq, out: &mut Vec<UltraSeq>| {
            if !out.contains(&seq) {
                out.push(seq);
            }
        };
        for v in 0..bound as u64 {
            if out.len() >= bound {
                break;
            }
            let mut prefix = shared.clone();
            prefix.push(BigUint::from(v));
            push(UltraSeq::explicit(prefix, BigUint::zero()), &mut out);
        }
        'outer: for v in 0..4u64 {
            for w in 1..4u64 {
                if out.len() >= bound {
                    break 'outer;
                }
                let mut prefix = shared.clone();
                prefix.push(BigUint::from(v));
                prefix.push(BigUint::from(w));
                push(UltraSeq::explicit(prefix, BigUint::zero()), &mut out);
            }
        }
        out.truncate(bound.max(1));
        Ok(out)
    }
}
