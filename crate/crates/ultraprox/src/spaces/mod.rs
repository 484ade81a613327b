//! Concrete ultrametric spaces behind one point/distance interface.

pub mod baire;
pub mod finite;
pub mod nat;
pub mod padic;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ratio::Ratio;

pub use baire::{BaireDistance, BaireSpace, PartialProduct, UltraSeq};
pub use finite::{FiniteUltraSpace, ValidationReport};
pub use nat::NatReciprocalSpace;
pub use padic::PAdicSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Finite(FiniteUltraSpace),
    PAdic(PAdicSpace),
    Baire(BaireSpace),
    Nat(NatReciprocalSpace),
}

/// A point handle, valid only within its originating space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(usize),
    PAdic(u64),
    Nat(u64),
    Baire(UltraSeq),
}

impl Space {
    /// Exact distance. For Baire points an exhausted depth budget without a
    /// disagreement or a structural equality certificate is an error, never 0.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<Ratio, Error> {
        match (self, x, y) {
            (Space::Finite(sp), Point::Finite(i), Point::Finite(j)) => {
                if *i >= sp.len() || *j >= sp.len() {
                    return Err(Error::CrossSpace);
                }
                Ok(sp.distance(*i, *j).clone())
            }
            (Space::PAdic(sp), Point::PAdic(x), Point::PAdic(y)) => sp.distance(*x, *y),
            (Space::Nat(sp), Point::Nat(n), Point::Nat(m)) => sp.distance(*n, *m),
            (Space::Baire(sp), Point::Baire(a), Point::Baire(b)) => match sp.distance(a, b)? {
                BaireDistance::Exact(d) => Ok(d),
                BaireDistance::AgreeToDepth(depth) => {
                    Err(Error::IndistinguishableToDepth { depth })
                }
            },
            _ => Err(Error::CrossSpace),
        }
    }

    /// True when the space is finite and every query can be exhaustive.
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Space::Finite(_) | Space::PAdic(_))
    }

    /// Distinct distance values of an exhaustively enumerable space,
    /// sorted ascending (0 included).
    pub fn distance_values(&self) -> Option<Vec<Ratio>> {
        match self {
            Space::Finite(sp) => {
                let mut vals = sp.distance_values();
                if !vals.contains(&Ratio::zero()) {
                    vals.insert(0, Ratio::zero());
                }
                Some(vals)
            }
            Space::PAdic(sp) => {
                let mut vals = vec![Ratio::zero()];
                vals.extend((0..sp.m).map(|v| Ratio::recip_pow(sp.p, v)));
                vals.sort();
                Some(vals)
            }
            _ => None,
        }
    }

    /// All points of an exhaustively enumerable space.
    pub fn all_points(&self) -> Option<Vec<Point>> {
        match self {
            Space::Finite(sp) => Some((0..sp.len()).map(Point::Finite).collect()),
            Space::PAdic(sp) => Some(sp.residues().map(Point::PAdic).collect()),
            _ => None,
        }
    }

    pub fn label(&self, p: &Point) -> String {
        match (self, p) {
            (Space::Finite(sp), Point::Finite(i)) => sp.label(*i).to_string(),
            (_, Point::PAdic(r)) => r.to_string(),
            (_, Point::Nat(n)) => n.to_string(),
            (_, Point::Baire(s)) => s.to_string(),
            _ => format!("{p:?}"),
        }
    }

    pub fn resolve_point(&self, spec: &PointSpec) -> Result<Point, Error> {
        match (self, spec) {
            (Space::Finite(sp), PointSpec::Name(l)) => sp
                .index_of(l)
                .map(Point::Finite)
                .ok_or_else(|| Error::Parse(format!("unknown point label {l:?}"))),
            (Space::PAdic(sp), PointSpec::Number(r)) => {
                if sp.contains(*r) {
                    Ok(Point::PAdic(*r))
                } else {
                    Err(Error::Parse(format!("residue {r} out of range")))
                }
            }
            (Space::Nat(sp), PointSpec::Number(n)) => {
                if sp.contains(*n) {
                    Ok(Point::Nat(*n))
                } else {
                    Err(Error::Parse(format!("point {n} not in the space")))
                }
            }
            // a bare number in the Baire space means the constant sequence
            (Space::Baire(_), PointSpec::Number(n)) => Ok(Point::Baire(UltraSeq::constant(*n))),
            (Space::Baire(_), PointSpec::Seq { prefix, tail }) => {
                Ok(Point::Baire(UltraSeq::from_u64s(prefix, *tail)))
            }
            _ => Err(Error::Parse(format!(
                "point spec {spec:?} does not match this space"
            ))),
        }
    }

    /// Decide membership of `p` in `subset`.
    pub fn subset_contains(&self, subset: &SubsetSpec, p: &Point) -> Result<bool, Error> {
        match subset {
            SubsetSpec::Points(specs) => {
                for s in specs {
                    if self.resolve_point(s)? == *p {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            SubsetSpec::Ball { center, radius } => {
                let c = self.resolve_point(center)?;
                match (self, &c, p) {
                    (Space::Baire(_), Point::Baire(cs), Point::Baire(ps)) => {
                        match radius.baire_prefix_len() {
                            None => Ok(cs == ps),
                            Some(k) => ps.agrees_to(cs, k),
                        }
                    }
                    _ => Ok(self.distance(&c, p)? <= *radius),
                }
            }
            SubsetSpec::Predicate(pred) => match (pred, p) {
                (PredicateSpec::Named(name), Point::PAdic(r)) if name == "even" => Ok(r % 2 == 0),
                (PredicateSpec::Named(name), Point::PAdic(r)) if name == "odd" => Ok(r % 2 == 1),
                (PredicateSpec::Named(name), Point::Nat(n)) if name == "even" => Ok(n % 2 == 0),
                (PredicateSpec::Named(name), Point::Nat(n)) if name == "odd" => Ok(n % 2 == 1),
                (PredicateSpec::Coord0 { coord0 }, Point::Baire(s)) => {
                    Ok(s.term(0)? == BigUint::from(*coord0))
                }
                _ => Err(Error::UnsupportedSubset(format!(
                    "predicate {pred:?} is not decidable on this space"
                ))),
            },
        }
    }

    /// Enumerate a subset in deterministic order: complete for finite
    /// spaces, truncated (and flagged) for infinite ones.
    pub fn enumerate(&self, subset: &SubsetSpec, bound: usize) -> Result<Enumeration, Error> {
        match subset {
            SubsetSpec::Points(specs) => {
                let mut points = Vec::new();
                for s in specs {
                    let p = self.resolve_point(s)?;
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                Ok(Enumeration {
                    points,
                    truncated: false,
                })
            }
            SubsetSpec::Ball { center, radius } => {
                let c = self.resolve_point(center)?;
                match self {
                    Space::Finite(_) | Space::PAdic(_) => {
                        let points = self
                            .all_points()
                            .unwrap()
                            .into_iter()
                            .filter(|p| self.distance(&c, p).map(|d| d <= *radius).unwrap_or(false))
                            .collect();
                        Ok(Enumeration {
                            points,
                            truncated: false,
                        })
                    }
                    Space::Nat(sp) => {
                        if bound == 0 {
                            return Err(Error::Config("bound must be >= 1".into()));
                        }
                        let top = sp.bound.min(bound as u64);
                        let points = (1..=top)
                            .map(Point::Nat)
                            .filter(|p| self.distance(&c, p).map(|d| d <= *radius).unwrap_or(false))
                            .collect();
                        Ok(Enumeration {
                            points,
                            truncated: true,
                        })
                    }
                    Space::Baire(sp) => {
                        if bound == 0 {
                            return Err(Error::Config("bound must be >= 1".into()));
                        }
                        let Point::Baire(cs) = &c else {
                            return Err(Error::CrossSpace);
                        };
                        match radius.baire_prefix_len() {
                            None => Ok(Enumeration {
                                points: vec![c.clone()],
                                truncated: false,
                            }),
                            Some(k) => {
                                let members = sp.sample_ball(cs, k, bound)?;
                                Ok(Enumeration {
                                    points: members.into_iter().map(Point::Baire).collect(),
                                    truncated: true,
                                })
                            }
                        }
                    }
                }
            }
            SubsetSpec::Predicate(pred) => match self {
                Space::PAdic(_) => {
                    let all = self.all_points().unwrap();
                    let mut points = Vec::new();
                    for p in all {
                        if self.subset_contains(subset, &p)? {
                            points.push(p);
                        }
                    }
                    Ok(Enumeration {
                        points,
                        truncated: false,
                    })
                }
                Space::Nat(sp) => {
                    if bound == 0 {
                        return Err(Error::Config("bound must be >= 1".into()));
                    }
                    let top = sp.bound.min(bound as u64);
                    let mut points = Vec::new();
                    for n in 1..=top {
                        let p = Point::Nat(n);
                        if self.subset_contains(subset, &p)? {
                            points.push(p);
                        }
                    }
                    Ok(Enumeration {
                        points,
                        truncated: true,
                    })
                }
                Space::Baire(sp) => match pred {
                    PredicateSpec::Coord0 { coord0 } => {
                        let center = UltraSeq::from_u64s(&[*coord0], 0);
                        let members = sp.sample_ball(&center, 1, bound.max(1))?;
                        Ok(Enumeration {
                            points: members.into_iter().map(Point::Baire).collect(),
                            truncated: true,
                        })
                    }
                    _ => Err(Error::UnsupportedSubset(format!(
                        "predicate {pred:?} is not enumerable on the Baire space"
                    ))),
                },
                Space::Finite(_) => Err(Error::UnsupportedSubset(
                    "predicates are not defined on explicit finite spaces".into(),
                )),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let spec: SpaceSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("space spec: {e}")))?;
        Space::from_spec(spec)
    }

    fn from_spec(spec: SpaceSpec) -> Result<Self, Error> {
        match spec {
            SpaceSpec::Finite { points, distances } => {
                let n = points.len();
                let index = |l: &str| {
                    points
                        .iter()
                        .position(|p| p == l)
                        .ok_or_else(|| Error::Parse(format!("unknown label {l:?} in distances")))
                };
                let mut matrix: Vec<Vec<Option<Ratio>>> = vec![vec![None; n]; n];
                for i in 0..n {
                    matrix[i][i] = Some(Ratio::zero());
                }
                for (a, b, d) in &distances {
                    let (i, j) = (index(a)?, index(b)?);
                    for (i, j) in [(i, j), (j, i)] {
                        if let Some(existing) = &matrix[i][j] {
                            if existing != d {
                                return Err(Error::Parse(format!(
                                    "conflicting distances for ({a}, {b})"
                                )));
                            }
                        }
                        matrix[i][j] = Some(d.clone());
                    }
                }
                let mut rows = Vec::with_capacity(n);
                for (i, row) in matrix.into_iter().enumerate() {
                    let mut out = Vec::with_capacity(n);
                    for (j, cell) in row.into_iter().enumerate() {
                        out.push(cell.ok_or_else(|| {
                            Error::Parse(format!(
                                "missing distance for pair ({}, {}); the full matrix is required",
                                points[i], points[j]
                            ))
                        })?);
                    }
                    rows.push(out);
                }
                Ok(Space::Finite(FiniteUltraSpace::new(points, rows)?))
            }
            SpaceSpec::PAdic { p, m } => Ok(Space::PAdic(PAdicSpace::new(p, m)?)),
            SpaceSpec::Baire { depth_bound } => Ok(Space::Baire(BaireSpace::new(depth_bound)?)),
            SpaceSpec::Nat { bound } => Ok(Space::Nat(NatReciprocalSpace::new(bound)?)),
        }
    }

    /// Emit the spec-file form; re-parsing yields an identical space.
    pub fn to_spec_json(&self) -> serde_json::Value {
        match self {
            Space::Finite(sp) => {
                let mut distances = Vec::new();
                for i in 0..sp.len() {
                    for j in (i + 1)..sp.len() {
                        distances.push(serde_json::json!([
                            sp.label(i),
                            sp.label(j),
                            sp.distance(i, j).to_string()
                        ]));
                    }
                }
                serde_json::json!({
                    "type": "finite",
                    "points": sp.labels(),
                    "distances": distances,
                })
            }
            Space::PAdic(sp) => serde_json::json!({"type": "padic", "p": sp.p, "m": sp.m}),
            Space::Baire(sp) => {
                serde_json::json!({"type": "baire", "depth_bound": sp.depth_bound})
            }
            Space::Nat(sp) => {
                serde_json::json!({"type": "nat_reciprocal", "bound": sp.bound})
            }
        }
    }
}

/// Result of a subset enumeration; `truncated` marks incomplete listings
/// of infinite spaces.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub points: Vec<Point>,
    pub truncated: bool,
}

/// A point literal as written in spec files and on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Number(u64),
    Name(String),
    Seq {
        prefix: Vec<u64>,
        #[serde(default)]
        tail: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PredicateSpec {
    Named(String),
    Coord0 { coord0: u64 },
}

/// Subset description: explicit points, a closed ball, or a catalog predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubsetSpec {
    #[serde(rename = "points")]
    Points(Vec<PointSpec>),
    #[serde(rename = "ball")]
    Ball { center: PointSpec, radius: Ratio },
    #[serde(rename = "predicate")]
    Predicate(PredicateSpec),
}

impl SubsetSpec {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("subset spec: {e}")))
    }

    pub fn points(labels: &[&str]) -> Self {
        SubsetSpec::Points(labels.iter().map(|l| PointSpec::Name(l.to_string())).collect())
    }

    pub fn residues(values: &[u64]) -> Self {
        SubsetSpec::Points(values.iter().map(|&v| PointSpec::Number(v)).collect())
    }

    pub fn ball_at(center: PointSpec, radius: Ratio) -> Self {
        SubsetSpec::Ball { center, radius }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type")]
enum SpaceSpec {
    #[serde(rename = "finite")]
    Finite {
        points: Vec<String>,
        distances: Vec<(String, String, Ratio)>,
    },
    #[serde(rename = "padic")]
    PAdic { p: u64, m: u32 },
    #[serde(rename = "baire")]
    Baire { depth_bound: usize },
    #[serde(rename = "nat_reciprocal")]
    Nat { bound: u64 },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex1_distances() {
        let sp = Space::Finite(FiniteUltraSpace::ex1());
        let a = sp.resolve_point(&PointSpec::Name("a".into())).unwrap();
        let b = sp.resolve_point(&PointSpec::Name("b".into())).unwrap();
        assert_eq!(sp.distance(&a, &b).unwrap(), Ratio::new(1, 2).unwrap());
        assert_eq!(sp.distance(&a, &a).unwrap(), Ratio::zero());
    }

    #[test]
    fn padic_ball_enumeration() {
        // multiples of 3 modulo 27
        let sp = Space::PAdic(PAdicSpace::new(3, 3).unwrap());
        let ball = SubsetSpec::ball_at(PointSpec::Number(0), Ratio::new(1, 3).unwrap());
        let e = sp.enumerate(&ball, 1).unwrap();
        assert!(!e.truncated);
        let residues: Vec<u64> = e
            .points
            .iter()
            .map(|p| match p {
                Point::PAdic(r) => *r,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(residues, (0..9).map(|k| 3 * k).collect::<Vec<_>>());
    }

    #[test]
    fn empty_points_spec_enumerates_empty() {
        let sp = Space::Finite(FiniteUltraSpace::ex1());
        let e = sp.enumerate(&SubsetSpec::Points(vec![]), 1).unwrap();
        assert!(e.points.is_empty());
    }

    #[test]
    fn ex1_subset_enumeration() {
        let sp = Space::Finite(FiniteUltraSpace::ex1());
        let e = sp.enumerate(&SubsetSpec::points(&["a", "c"]), 1).unwrap();
        let labels: Vec<String> = e.points.iter().map(|p| sp.label(p)).collect();
        assert_eq!(labels, ["a", "c"]);
    }

    #[test]
    fn baire_constant_gap_matches_closed_form() {
        // d computed via term streaming agrees with 1/(1+prefix length)
        let sp = Space::Baire(BaireSpace::new(32).unwrap());
        let x = Point::Baire(UltraSeq::from_u64s(&[5, 5, 5], 0));
        let y = Point::Baire(UltraSeq::from_u64s(&[5, 5, 7], 0));
        assert_eq!(sp.distance(&x, &y).unwrap(), Ratio::new(1, 3).unwrap());
    }

    #[test]
    fn baire_depth_exhaustion_is_not_zero() {
        let sp = Space::Baire(BaireSpace::new(16).unwrap());
        let mut p = vec![3u64; 17];
        p[16] = 4;
        let x = Point::Baire(UltraSeq::from_u64s(&vec![3u64; 17], 0));
        let y = Point::Baire(UltraSeq::from_u64s(&p, 0));
        assert!(matches!(
            sp.distance(&x, &y),
            Err(Error::IndistinguishableToDepth { depth: 16 })
        ));
    }

    #[test]
    fn cross_space_point_use_is_an_error() {
        let sp = Space::Finite(FiniteUltraSpace::ex1());
        let p = Point::PAdic(0);
        assert!(matches!(
            sp.distance(&p, &Point::Finite(0)),
            Err(Error::CrossSpace)
        ));
    }

    #[test]
    fn space_spec_round_trip() {
        let texts = [
            r#"{"type":"finite","points":["a","b"],"distances":[["a","b","1/2"]]}"#,
            r#"{"type":"padic","p":3,"m":5}"#,
            r#"{"type":"baire","depth_bound":64}"#,
            r#"{"type":"nat_reciprocal","bound":10000}"#,
        ];
        for text in texts {
            let sp = Space::from_json(text).unwrap();
            let emitted = sp.to_spec_json().to_string();
            assert_eq!(Space::from_json(&emitted).unwrap(), sp);
        }
    }

    #[test]
    fn missing_matrix_entry_rejected() {
        let text = r#"{"type":"finite","points":["a","b","c"],"distances":[["a","b","1/2"]]}"#;
        assert!(matches!(Space::from_json(text), Err(Error::Parse(_))));
    }

    #[test]
    fn predicate_enumeration_on_nat() {
        let sp = Space::Nat(NatReciprocalSpace::new(10000).unwrap());
        let e = sp
            .enumerate(&SubsetSpec::Predicate(PredicateSpec::Named("even".into())), 10)
            .unwrap();
        assert!(e.truncated);
        let ns: Vec<u64> = e
            .points
            .iter()
            .map(|p| match p {
                Point::Nat(n) => *n,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(ns, vec![2, 4, 6, 8, 10]);
    }
}
