//! Ball algebra and the proximity layer: dist(A,B), diameters, the
//! attaining subsets A0/B0, best proximity pairs, proximinality, and the
//! nonempty-pair lemma checker.
//!
//! Finite spaces (explicit matrices and truncated p-adic rings) are handled
//! exhaustively. Infinite spaces are handled over declared truncations, with
//! structural shortcuts where exact values are certifiable: Baire balls have
//! a radius-induced diameter bound, and disjoint balls have constant cross
//! distance.

use serde_json::json;

use crate::error::Error;
use crate::ratio::Ratio;
use crate::spaces::{Enumeration, Point, PredicateSpec, Space, SubsetSpec, UltraSeq};
use crate::verdict::TheoremVerdict;

/// Closed ball {y : d(center, y) <= radius}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: Point,
    pub radius: Ratio,
}

impl Ball {
    pub fn new(center: Point, radius: Ratio) -> Self {
        Ball { center, radius }
    }
}

/// Members of a ball: exact for finite spaces, a deterministic truncated
/// sample for infinite ones.
pub fn ball_members(space: &Space, ball: &Ball, bound: usize) -> Result<Enumeration, Error> {
    match space {
        Space::Finite(_) | Space::PAdic(_) => {
            let points = space
                .all_points()
                .unwrap()
                .into_iter()
                .filter(|p| {
                    space
                        .distance(&ball.center, p)
                        .map(|d| d <= ball.radius)
                        .unwrap_or(false)
                })
                .collect();
            Ok(Enumeration {
                points,
                truncated: false,
            })
        }
        Space::Baire(sp) => {
            let Point::Baire(center) = &ball.center else {
                return Err(Error::CrossSpace);
            };
            match ball.radius.baire_prefix_len() {
                None => Ok(Enumeration {
                    points: vec![ball.center.clone()],
                    truncated: false,
                }),
                Some(k) => {
                    let members = sp.sample_ball(center, k, bound.max(1))?;
                    Ok(Enumeration {
                        points: members.into_iter().map(Point::Baire).collect(),
                        truncated: true,
                    })
                }
            }
        }
        Space::Nat(sp) => {
            let top = sp.bound.min(bound.max(1) as u64);
            let points = (1..=top)
                .map(Point::Nat)
                .filter(|p| {
                    space
                        .distance(&ball.center, p)
                        .map(|d| d <= ball.radius)
                        .unwrap_or(false)
                })
                .collect();
            Ok(Enumeration {
                points,
                truncated: true,
            })
        }
    }
}

/// Every point of an ultrametric ball is a center of it. Checks set
/// equality of B(y, r) against the ball for every member y; returns the
/// first counterexample if any.
pub fn is_central(space: &Space, ball: &Ball) -> Result<(bool, Option<String>), Error> {
    if !space.is_exhaustive() {
        return Err(Error::Precondition(
            "centrality check needs an exhaustively enumerable space".into(),
        ));
    }
    let members = ball_members(space, ball, 0)?.points;
    for y in &members {
        let recentered = ball_members(space, &Ball::new(y.clone(), ball.radius.clone()), 0)?.points;
        if recentered != members {
            return Ok((false, Some(space.label(y))));
        }
    }
    Ok((true, None))
}

/// Exact max over pairs of an explicit point list.
pub fn diameter(space: &Space, points: &[Point]) -> Result<Ratio, Error> {
    Ok(diameter_with_pair(space, points)?.0)
}

pub fn diameter_with_pair(
    space: &Space,
    points: &[Point],
) -> Result<(Ratio, Option<(Point, Point)>), Error> {
    if points.is_empty() {
        return Err(Error::EmptySet("diameter of an empty set".into()));
    }
    let mut best = Ratio::zero();
    let mut pair = None;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            let d = space.distance(x, y)?;
            if d > best {
                best = d;
                pair = Some((x.clone(), y.clone()));
            }
        }
    }
    Ok((best, pair))
}

/// Max distance from the named center to the members; equals the diameter
/// of the ball as a set in any ultrametric space.
pub fn actual_radius(space: &Space, ball: &Ball) -> Result<Ratio, Error> {
    if !space.is_exhaustive() {
        return Err(Error::Precondition(
            "actual radius needs an exhaustively enumerable space".into(),
        ));
    }
    let members = ball_members(space, ball, 0)?.points;
    let mut best = Ratio::zero();
    for y in &members {
        best = best.max(space.distance(&ball.center, y)?);
    }
    Ok(best)
}

/// Diameter of a described subset with an exactness certificate.
///
/// Exact when the enumeration is complete, when the sampled max attains a
/// structural upper bound (Baire balls / coord-0 sets), or on the
/// reciprocal-integer space where the diameter is 1/min of the set.
pub fn subset_diameter(
    space: &Space,
    spec: &SubsetSpec,
    bound: usize,
) -> Result<(Ratio, bool), Error> {
    let e = space.enumerate(spec, bound)?;
    if e.points.is_empty() {
        return Err(Error::EmptySet("diameter of an empty subset".into()));
    }
    let (value, _) = diameter_with_pair(space, &e.points)?;
    if !e.truncated {
        return Ok((value, true));
    }
    if let Some(cap) = structural_diameter_bound(space, spec) {
        if value == cap {
            return Ok((value, true));
        }
    }
    if matches!(space, Space::Nat(_)) && e.points.len() >= 2 {
        // d(n,m) = 1/min, and ascending enumeration finds the true minimum
        return Ok((value, true));
    }
    Ok((value, false))
}

fn structural_diameter_bound(space: &Space, spec: &SubsetSpec) -> Option<Ratio> {
    if !matches!(space, Space::Baire(_)) {
        return None;
    }
    match spec {
        SubsetSpec::Ball { radius, .. } => radius
            .baire_prefix_len()
            .map(Ratio::one_over_succ)
            .or(Some(Ratio::zero())),
        SubsetSpec::Predicate(PredicateSpec::Coord0 { .. }) => Some(Ratio::one_over_succ(1)),
        _ => None,
    }
}

/// dist(A,B) with attainment information and, for truncated spaces, the
/// minimum at a ladder of smaller bounds so strict decrease (evidence of
/// non-attainment) is visible.
#[derive(Clone, Debug)]
pub struct DistReport {
    pub value: Ratio,
    pub attained: bool,
    pub exact: bool,
    pub truncated: bool,
    pub witness_pairs: Vec<(Point, Point)>,
    pub trend: Vec<(usize, Ratio)>,
    pub non_attainment_evidence: bool,
}

pub fn dist_sets(
    space: &Space,
    a: &SubsetSpec,
    b: &SubsetSpec,
    bound: usize,
) -> Result<DistReport, Error> {
    // structural shortcut for Baire point-lists and balls
    if let (Some(sa), Some(sb)) = (baire_shape(space, a)?, baire_shape(space, b)?) {
        let (value, witness) = baire_dist(space, &sa, &sb)?;
        let ea = space.enumerate(a, bound)?;
        let eb = space.enumerate(b, bound)?;
        let mut witness_pairs = Vec::new();
        for x in &ea.points {
            for y in &eb.points {
                if space.distance(x, y)? == value {
                    witness_pairs.push((x.clone(), y.clone()));
                }
            }
        }
        if witness_pairs.is_empty() {
            witness_pairs.push(witness);
        }
        return Ok(DistReport {
            value,
            attained: true,
            exact: true,
            truncated: ea.truncated || eb.truncated,
            witness_pairs,
            trend: Vec::new(),
            non_attainment_evidence: false,
        });
    }

    let ea = space.enumerate(a, bound)?;
    let eb = space.enumerate(b, bound)?;
    if ea.points.is_empty() || eb.points.is_empty() {
        return Err(Error::EmptySet("dist over an empty subset".into()));
    }
    let truncated = ea.truncated || eb.truncated;

    let min_at = |xs: &[Point], ys: &[Point]| -> Result<Option<Ratio>, Error> {
        let mut best: Option<Ratio> = None;
        for x in xs {
            for y in ys {
                let d = space.distance(x, y)?;
                if best.as_ref().map(|b| d < *b).unwrap_or(true) {
                    best = Some(d);
                }
            }
        }
        Ok(best)
    };

    let value = min_at(&ea.points, &eb.points)?.unwrap();
    let mut witness_pairs = Vec::new();
    for x in &ea.points {
        for y in &eb.points {
            if space.distance(x, y)? == value {
                witness_pairs.push((x.clone(), y.clone()));
            }
        }
    }

    let mut trend = Vec::new();
    let mut non_attainment = false;
    if truncated {
        for sub in bound_ladder(bound) {
            let sa = space.enumerate(a, sub)?;
            let sb = space.enumerate(b, sub)?;
            if sa.points.is_empty() || sb.points.is_empty() {
                continue;
            }
            trend.push((sub, min_at(&sa.points, &sb.points)?.unwrap()));
        }
        non_attainment =
            trend.len() >= 2 && trend.windows(2).all(|w| w[1].1 < w[0].1);
    }

    Ok(DistReport {
        value,
        attained: !non_attainment,
        exact: !truncated,
        truncated,
        witness_pairs,
        trend,
        non_attainment_evidence: non_attainment,
    })
}

fn bound_ladder(bound: usize) -> Vec<usize> {
    let mut out = vec![(bound / 100).max(2), (bound / 10).max(2), bound];
    out.dedup();
    out
}

enum BaireShape {
    Points(Vec<UltraSeq>),
    Ball { center: UltraSeq, k: usize },
}

fn baire_shape(space: &Space, spec: &SubsetSpec) -> Result<Option<BaireShape>, Error> {
    if !matches!(space, Space::Baire(_)) {
        return Ok(None);
    }
    match spec {
        SubsetSpec::Points(specs) => {
            let mut seqs = Vec::new();
            for s in specs {
                match space.resolve_point(s)? {
                    Point::Baire(seq) => seqs.push(seq),
                    _ => return Err(Error::CrossSpace),
                }
            }
            Ok(Some(BaireShape::Points(seqs)))
        }
        SubsetSpec::Ball { center, radius } => {
            let Point::Baire(c) = space.resolve_point(center)? else {
                return Err(Error::CrossSpace);
            };
            match radius.baire_prefix_len() {
                // zero radius: the ball is the singleton {center}
                None => Ok(Some(BaireShape::Points(vec![c]))),
                Some(k) => Ok(Some(BaireShape::Ball { center: c, k })),
            }
        }
        SubsetSpec::Predicate(_) => Ok(None),
    }
}

/// Exact dist between Baire shapes. A point outside a ball sits at constant
/// distance from all of it; overlapping balls share a point, so dist is 0.
fn baire_dist(
    space: &Space,
    a: &BaireShape,
    b: &BaireShape,
) -> Result<(Ratio, (Point, Point)), Error> {
    let point_vs_ball = |p: &UltraSeq, c: &UltraSeq, k: usize| -> Result<(Ratio, (Point, Point)), Error> {
        if p.agrees_to(c, k)? {
            Ok((Ratio::zero(), (Point::Baire(p.clone()), Point::Baire(p.clone()))))
        } else {
            let d = space.distance(&Point::Baire(p.clone()), &Point::Baire(c.clone()))?;
            Ok((d, (Point::Baire(p.clone()), Point::Baire(c.clone()))))
        }
    };
    match (a, b) {
        (BaireShape::Points(xs), BaireShape::Points(ys)) => {
            if xs.is_empty() || ys.is_empty() {
                return Err(Error::EmptySet("dist over an empty subset".into()));
            }
            let mut best: Option<(Ratio, (Point, Point))> = None;
            for x in xs {
                for y in ys {
                    let d =
                        space.distance(&Point::Baire(x.clone()), &Point::Baire(y.clone()))?;
                    if best.as_ref().map(|(b, _)| d < *b).unwrap_or(true) {
                        best = Some((d, (Point::Baire(x.clone()), Point::Baire(y.clone()))));
                    }
                }
            }
            Ok(best.unwrap())
        }
        (BaireShape::Points(xs), BaireShape::Ball { center, k })
        | (BaireShape::Ball { center, k }, BaireShape::Points(xs)) => {
            if xs.is_empty() {
                return Err(Error::EmptySet("dist over an empty subset".into()));
            }
            let mut best: Option<(Ratio, (Point, Point))> = None;
            for x in xs {
                let (d, w) = point_vs_ball(x, center, *k)?;
                if best.as_ref().map(|(b, _)| d < *b).unwrap_or(true) {
                    best = Some((d, w));
                }
            }
            Ok(best.unwrap())
        }
        (
            BaireShape::Ball { center: c1, k: k1 },
            BaireShape::Ball { center: c2, k: k2 },
        ) => {
            // if the centers are within the larger radius the balls overlap
            let k_min = *k1.min(k2);
            if c1.agrees_to(c2, k_min)? {
                let shared = if k1 >= k2 { c1 } else { c2 };
                Ok((
                    Ratio::zero(),
                    (Point::Baire(shared.clone()), Point::Baire(shared.clone())),
                ))
            } else {
                let d = space.distance(&Point::Baire(c1.clone()), &Point::Baire(c2.clone()))?;
                Ok((d, (Point::Baire(c1.clone()), Point::Baire(c2.clone()))))
            }
        }
    }
}

/// dist(A,B), diameters, A0/B0 and witness pairs in one report.
#[derive(Clone, Debug)]
pub struct ProximityReport {
    pub dist_ab: Ratio,
    pub attained: bool,
    pub delta_a: Ratio,
    pub delta_a_exact: bool,
    pub delta_b: Ratio,
    pub delta_b_exact: bool,
    /// Certified attaining subsets; empty when truncation evidence shows
    /// the infimum is not attained.
    pub a0: Vec<Point>,
    pub b0: Vec<Point>,
    /// Attaining subsets relative to the truncated minimum.
    pub a0_at_bound: Vec<Point>,
    pub b0_at_bound: Vec<Point>,
    pub witness_pairs: Vec<(Point, Point)>,
    /// delta(B) <= dist(A,B)
    pub hypothesis_holds: bool,
    pub truncated: bool,
    pub trend: Vec<(usize, Ratio)>,
    pub non_attainment_evidence: bool,
}

impl ProximityReport {
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        let labels = |pts: &[Point]| -> Vec<String> { pts.iter().map(|p| space.label(p)).collect() };
        json!({
            "dist_AB": self.dist_ab.to_string(),
            "attained": self.attained,
            "delta_A": self.delta_a.to_string(),
            "delta_A_exact": self.delta_a_exact,
            "delta_B": self.delta_b.to_string(),
            "delta_B_exact": self.delta_b_exact,
            "A0": labels(&self.a0),
            "B0": labels(&self.b0),
            "A0_at_bound": labels(&self.a0_at_bound),
            "B0_at_bound": labels(&self.b0_at_bound),
            "witness_pairs": self.witness_pairs.iter()
                .map(|(a, b)| vec![space.label(a), space.label(b)])
                .collect::<Vec<_>>(),
            "hypothesis_delta_B_le_dist": self.hypothesis_holds,
            "truncated": self.truncated,
            "trend": self.trend.iter()
                .map(|(b, v)| json!([b, v.to_string()]))
                .collect::<Vec<_>>(),
            "non_attainment_evidence": self.non_attainment_evidence,
        })
    }
}

pub fn compute_a0_b0(
    space: &Space,
    a: &SubsetSpec,
    b: &SubsetSpec,
    bound: usize,
) -> Result<ProximityReport, Error> {
    let dist = dist_sets(space, a, b, bound)?;
    let (delta_a, delta_a_exact) = subset_diameter(space, a, bound)?;
    let (delta_b, delta_b_exact) = subset_diameter(space, b, bound)?;

    let mut a0_at_bound = Vec::new();
    let mut b0_at_bound = Vec::new();
    for (x, y) in &dist.witness_pairs {
        if !a0_at_bound.contains(x) {
            a0_at_bound.push(x.clone());
        }
        if !b0_at_bound.contains(y) {
            b0_at_bound.push(y.clone());
        }
    }
    let (a0, b0) = if dist.non_attainment_evidence {
        (Vec::new(), Vec::new())
    } else {
        (a0_at_bound.clone(), b0_at_bound.clone())
    };

    let hypothesis_holds = delta_b <= dist.value;
    Ok(ProximityReport {
        dist_ab: dist.value,
        attained: dist.attained,
        delta_a,
        delta_a_exact,
        delta_b,
        delta_b_exact,
        a0,
        b0,
        a0_at_bound,
        b0_at_bound,
        witness_pairs: dist.witness_pairs,
        hypothesis_holds,
        truncated: dist.truncated,
        trend: dist.trend,
        non_attainment_evidence: dist.non_attainment_evidence,
    })
}

#[derive(Clone, Debug)]
pub struct ProximinalReport {
    /// (probe, best approximation, dist(probe, A))
    pub witnesses: Vec<(Point, Point, Ratio)>,
    pub all_attained: bool,
    pub truncated: bool,
}

/// For each probe x, a best approximation a0 in A with d(x,a0) = dist(x,A).
/// Exhaustive on finite spaces (always succeeds); attainment-within-bound
/// on truncations.
pub fn is_proximinal(
    space: &Space,
    a: &SubsetSpec,
    probes: &[Point],
    bound: usize,
) -> Result<ProximinalReport, Error> {
    let ea = space.enumerate(a, bound)?;
    if ea.points.is_empty() {
        return Err(Error::EmptySet("proximinality of an empty subset".into()));
    }
    let mut witnesses = Vec::new();
    for x in probes {
        let mut best: Option<(Point, Ratio)> = None;
        for cand in &ea.points {
            let d = space.distance(x, cand)?;
            if best.as_ref().map(|(_, bd)| d < *bd).unwrap_or(true) {
                best = Some((cand.clone(), d));
            }
        }
        let (p, d) = best.unwrap();
        witnesses.push((x.clone(), p, d));
    }
    Ok(ProximinalReport {
        witnesses,
        all_attained: true,
        truncated: ea.truncated,
    })
}

/// If delta(B) <= dist(A,B) for a proximinal pair with B bounded, then
/// A0 is nonempty and B0 = B.
pub fn check_lemma1(
    space: &Space,
    a: &SubsetSpec,
    b: &SubsetSpec,
    bound: usize,
) -> Result<TheoremVerdict, Error> {
    let mut verdict = TheoremVerdict::new("lemma1");
    let report = compute_a0_b0(space, a, b, bound)?;

    let ea = space.enumerate(a, bound)?;
    let eb = space.enumerate(b, bound)?;
    let prox_ab = is_proximinal(space, a, &eb.points, bound)?;
    let prox_ba = is_proximinal(space, b, &ea.points, bound)?;
    verdict.hypothesis(
        "pair_proximinal",
        prox_ab.all_attained && prox_ba.all_attained,
        Some(if prox_ab.truncated || prox_ba.truncated {
            "attainment within truncation bound".into()
        } else {
            "exhaustive".into()
        }),
    );
    verdict.hypothesis(
        "B_bounded",
        true,
        Some(format!("delta(B) = {}", report.delta_b)),
    );
    verdict.hypothesis(
        "delta_B_le_dist",
        report.hypothesis_holds,
        Some(format!(
            "delta(B) = {}, dist(A,B) = {}",
            report.delta_b, report.dist_ab
        )),
    );
    if !verdict.applicable {
        return Ok(verdict);
    }

    let a0_nonempty = !report.a0.is_empty();
    let b0_is_b = same_set(&report.b0, &eb.points);
    verdict.witnesses.push(format!(
        "A0 = {{{}}}",
        report
            .a0
            .iter()
            .map(|p| space.label(p))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    verdict
        .witnesses
        .push(format!("B0 = B: {b0_is_b} (|B| = {})", eb.points.len()));
    verdict.conclusion_verified = Some(a0_nonempty && b0_is_b);
    Ok(verdict)
}

pub fn same_set(xs: &[Point], ys: &[Point]) -> bool {
    xs.iter().all(|x| ys.contains(x)) && ys.iter().all(|y| xs.contains(y))
}

/// All distinct balls (as sets) of a finite space whose members lie inside
/// `region`. Candidate radii are the distance values of the space plus 0;
/// balls equal as sets are deduplicated, keeping the smallest radius.
pub fn all_balls(space: &Space, region: &[Point]) -> Result<Vec<(Ball, Vec<Point>)>, Error> {
    if !space.is_exhaustive() {
        return Err(Error::Precondition(
            "ball enumeration needs an exhaustively enumerable space".into(),
        ));
    }
    let radii = space.distance_values().unwrap();
    let mut out: Vec<(Ball, Vec<Point>)> = Vec::new();
    for center in region {
        for r in &radii {
            let ball = Ball::new(center.clone(), r.clone());
            let members = ball_members(space, &ball, 0)?.points;
            if !members.iter().all(|p| region.contains(p)) {
                continue;
            }
            if out.iter().any(|(_, m)| m == &members) {
                continue;
            }
            out.push((ball, members));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{FiniteUltraSpace, PAdicSpace, PointSpec};

    fn ex1() -> Space {
        Space::Finite(FiniteUltraSpace::ex1())
    }

    fn pt(space: &Space, label: &str) -> Point {
        space.resolve_point(&PointSpec::Name(label.into())).unwrap()
    }

    fn r(n: u64, d: u64) -> Ratio {
        Ratio::new(n, d).unwrap()
    }

    #[test]
    fn ex1_ball_members() {
        let sp = ex1();
        // only d(b,a) = 1/2 <= 1/2 besides b itself
        let ball = Ball::new(pt(&sp, "b"), r(1, 2));
        let members = ball_members(&sp, &ball, 0).unwrap().points;
        let labels: Vec<String> = members.iter().map(|p| sp.label(p)).collect();
        assert_eq!(labels, ["a", "b"]);
        // radius 0 is the singleton
        let single = ball_members(&sp, &Ball::new(pt(&sp, "c"), Ratio::zero()), 0)
            .unwrap()
            .points;
        assert_eq!(single, vec![pt(&sp, "c")]);
    }

    #[test]
    fn padic_ball_members_are_residue_classes() {
        let sp = Space::PAdic(PAdicSpace::new(3, 4).unwrap());
        let ball = Ball::new(Point::PAdic(1), r(1, 9));
        let members = ball_members(&sp, &ball, 0).unwrap().points;
        for p in &members {
            let Point::PAdic(x) = p else { unreachable!() };
            assert_eq!(x % 9, 1);
        }
        assert_eq!(members.len(), 9);
    }

    #[test]
    fn recentering_preserves_ex1_ball() {
        let sp = ex1();
        let ball = Ball::new(pt(&sp, "b"), r(1, 2));
        let (central, witness) = is_central(&sp, &ball).unwrap();
        assert!(central, "witness: {witness:?}");
        let recentered = ball_members(&sp, &Ball::new(pt(&sp, "a"), r(1, 2)), 0)
            .unwrap()
            .points;
        assert_eq!(recentered, ball_members(&sp, &ball, 0).unwrap().points);
    }

    #[test]
    fn every_padic_ball_is_central() {
        let sp = Space::PAdic(PAdicSpace::new(3, 3).unwrap());
        let region = sp.all_points().unwrap();
        for (ball, _) in all_balls(&sp, &region).unwrap() {
            assert!(is_central(&sp, &ball).unwrap().0);
        }
    }

    #[test]
    fn ex1_diameters() {
        let sp = ex1();
        assert_eq!(
            diameter(&sp, &[pt(&sp, "b"), pt(&sp, "d")]).unwrap(),
            Ratio::one()
        );
        assert_eq!(diameter(&sp, &[pt(&sp, "a")]).unwrap(), Ratio::zero());
        assert!(diameter(&sp, &[]).is_err());
    }

    #[test]
    fn actual_radius_equals_member_diameter() {
        let sp = ex1();
        let ball = Ball::new(pt(&sp, "b"), r(1, 2));
        assert_eq!(actual_radius(&sp, &ball).unwrap(), r(1, 2));
        let padic = Space::PAdic(PAdicSpace::new(3, 3).unwrap());
        let ball = Ball::new(Point::PAdic(0), r(1, 3));
        assert_eq!(actual_radius(&padic, &ball).unwrap(), r(1, 3));
        let members = ball_members(&padic, &ball, 0).unwrap().points;
        assert_eq!(
            actual_radius(&padic, &ball).unwrap(),
            diameter(&padic, &members).unwrap()
        );
    }

    #[test]
    fn ex1_dist_and_a0_b0() {
        let sp = ex1();
        let report = compute_a0_b0(
            &sp,
            &SubsetSpec::points(&["a", "c"]),
            &SubsetSpec::points(&["b", "d"]),
            0,
        )
        .unwrap();
        assert_eq!(report.dist_ab, r(1, 2));
        assert!(report.attained);
        assert_eq!(report.delta_b, Ratio::one());
        assert_eq!(report.delta_a, Ratio::one());
        assert!(!report.hypothesis_holds); // delta(B) = 1 > 1/2
        let a0: Vec<String> = report.a0.iter().map(|p| sp.label(p)).collect();
        let b0: Vec<String> = report.b0.iter().map(|p| sp.label(p)).collect();
        assert_eq!(a0, ["a", "c"]);
        assert_eq!(b0, ["b", "d"]);
        for (x, y) in &report.witness_pairs {
            assert_eq!(sp.distance(x, y).unwrap(), report.dist_ab);
        }
    }

    #[test]
    fn identical_sets_have_zero_dist() {
        let sp = ex1();
        let a = SubsetSpec::points(&["a", "c"]);
        let report = compute_a0_b0(&sp, &a, &a, 0).unwrap();
        assert_eq!(report.dist_ab, Ratio::zero());
        assert!(report.attained);
        // singleton A = B
        let s = SubsetSpec::points(&["a"]);
        let report = compute_a0_b0(&sp, &s, &s, 0).unwrap();
        assert_eq!(report.a0, vec![pt(&sp, "a")]);
        assert_eq!(report.b0, vec![pt(&sp, "a")]);
    }

    #[test]
    fn nat_truncated_minimum_decreases() {
        let sp = Space::Nat(crate::spaces::NatReciprocalSpace::new(10000).unwrap());
        let evens = SubsetSpec::Predicate(PredicateSpec::Named("even".into()));
        let odds = SubsetSpec::Predicate(PredicateSpec::Named("odd".into()));
        let report = compute_a0_b0(&sp, &evens, &odds, 100).unwrap();
        assert_eq!(report.dist_ab, r(1, 99));
        assert!(report.truncated);
        assert!(report.non_attainment_evidence);
        assert!(!report.attained);
        assert!(report.a0.is_empty() && report.b0.is_empty());
        assert!(!report.a0_at_bound.is_empty());
        assert!(report.trend.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn proximinal_on_ex1() {
        let sp = ex1();
        let a = SubsetSpec::points(&["a", "c"]);
        let report = is_proximinal(&sp, &a, &[pt(&sp, "b")], 0).unwrap();
        assert!(report.all_attained);
        let (_, best, d) = &report.witnesses[0];
        assert_eq!(sp.label(best), "a");
        assert_eq!(*d, r(1, 2));
        // probe inside the set attains 0 at itself
        let report = is_proximinal(&sp, &a, &[pt(&sp, "a")], 0).unwrap();
        let (_, best, d) = &report.witnesses[0];
        assert_eq!(sp.label(best), "a");
        assert!(d.is_zero());
    }

    #[test]
    fn proximinal_padic_ball_probe() {
        // dist(1, A) = 1 for A = B(0, 1/9): every element works
        let sp = Space::PAdic(PAdicSpace::new(3, 4).unwrap());
        let a = SubsetSpec::ball_at(PointSpec::Number(0), r(1, 9));
        let report = is_proximinal(&sp, &a, &[Point::PAdic(1)], 0).unwrap();
        let (_, _, d) = &report.witnesses[0];
        assert_eq!(*d, Ratio::one());
    }

    #[test]
    fn lemma1_on_padic_pair() {
        let sp = Space::PAdic(PAdicSpace::new(3, 4).unwrap());
        let a = SubsetSpec::ball_at(PointSpec::Number(0), r(1, 9));
        let b = SubsetSpec::ball_at(PointSpec::Number(1), r(1, 9));
        let verdict = check_lemma1(&sp, &a, &b, 0).unwrap();
        assert!(verdict.applicable);
        assert_eq!(verdict.conclusion_verified, Some(true));
        // A0 = A and B0 = B here: every cross pair attains dist = 1
        let report = compute_a0_b0(&sp, &a, &b, 0).unwrap();
        assert_eq!(report.dist_ab, Ratio::one());
        assert_eq!(report.delta_b, r(1, 9));
        assert_eq!(report.a0.len(), 9);
        assert_eq!(report.b0.len(), 9);
    }

    #[test]
    fn lemma1_inapplicable_on_ex1() {
        let sp = ex1();
        let verdict = check_lemma1(
            &sp,
            &SubsetSpec::points(&["a", "c"]),
            &SubsetSpec::points(&["b", "d"]),
            0,
        )
        .unwrap();
        assert!(!verdict.applicable);
        assert!(verdict.conclusion_verified.is_none());
    }

    #[test]
    fn lemma1_singleton_pair() {
        let sp = ex1();
        let s = SubsetSpec::points(&["a"]);
        let verdict = check_lemma1(&sp, &s, &s, 0).unwrap();
        assert!(verdict.applicable);
        assert_eq!(verdict.conclusion_verified, Some(true));
    }

    #[test]
    fn disjoint_balls_constant_cross_distance() {
        let sp = Space::PAdic(PAdicSpace::new(3, 3).unwrap());
        let b1 = ball_members(&sp, &Ball::new(Point::PAdic(0), r(1, 3)), 0)
            .unwrap()
            .points;
        let b2 = ball_members(&sp, &Ball::new(Point::PAdic(1), r(1, 3)), 0)
            .unwrap()
            .points;
        assert!(b1.iter().all(|p| !b2.contains(p)));
        let d0 = sp.distance(&b1[0], &b2[0]).unwrap();
        for x in &b1 {
            for y in &b2 {
                assert_eq!(sp.distance(x, y).unwrap(), d0);
            }
        }
    }
}
