//! Self-maps of ultrametric spaces: classification (nonexpansive, strictly
//! contractive, on-orbit, weak-regular, isometry, noncyclic/cyclic), orbit
//! iteration, fixed-point solving, and minimal invariant ball detection.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::balls::{ball_members, diameter, Ball};
use crate::error::Error;
use crate::ratio::Ratio;
use crate::spaces::{PartialProduct, Point, Space, SubsetSpec};

/// A total self-map of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSpec {
    /// Finite table, point index -> point index.
    Table(Vec<usize>),
    /// x -> x + t mod p^m.
    PAdicTranslation(u64),
    /// Baire partial-product map; `head_fixed` keeps coordinates 0 and 1.
    BairePartialProduct { head_fixed: bool },
    /// Left-to-right composition.
    Compose(Vec<MapSpec>),
}

impl MapSpec {
    pub fn from_json(space: &Space, text: &str) -> Result<Self, Error> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("map spec: {e}")))?;
        Self::from_value(space, &value)
    }

    fn from_value(space: &Space, value: &serde_json::Value) -> Result<Self, Error> {
        let ty = value
            .get("type")
            .and_then(|t| t.as_str())
            .ok_or_else(|| Error::Parse("map spec needs a \"type\" field".into()))?;
        match ty {
            "table" => {
                let Space::Finite(sp) = space else {
                    return Err(Error::InvalidMap("table maps need a finite space".into()));
                };
                let table: BTreeMap<String, String> = serde_json::from_value(
                    value
                        .get("map")
                        .cloned()
                        .ok_or_else(|| Error::Parse("table map needs a \"map\" field".into()))?,
                )
                .map_err(|e| Error::Parse(format!("table map: {e}")))?;
                let mut out = vec![usize::MAX; sp.len()];
                for (from, to) in &table {
                    let i = sp
                        .index_of(from)
                        .ok_or_else(|| Error::InvalidMap(format!("unknown point {from:?}")))?;
                    out[i] = sp
                        .index_of(to)
                        .ok_or_else(|| Error::InvalidMap(format!("unknown point {to:?}")))?;
                }
                if let Some(i) = out.iter().position(|&t| t == usize::MAX) {
                    return Err(Error::InvalidMap(format!(
                        "table is not total: missing image for {:?}",
                        sp.label(i)
                    )));
                }
                Ok(MapSpec::Table(out))
            }
            "padic_translation" => {
                let t = value
                    .get("t")
                    .and_then(|t| t.as_u64())
                    .ok_or_else(|| Error::Parse("padic_translation needs integer \"t\"".into()))?;
                Ok(MapSpec::PAdicTranslation(t))
            }
            "baire_partial_product" => {
                let head_fixed = value
                    .get("head_fixed")
                    .and_then(|h| h.as_bool())
                    .ok_or_else(|| {
                        Error::Parse("baire_partial_product needs boolean \"head_fixed\"".into())
                    })?;
                Ok(MapSpec::BairePartialProduct { head_fixed })
            }
            "compose" => {
                let maps = value
                    .get("maps")
                    .and_then(|m| m.as_array())
                    .ok_or_else(|| Error::Parse("compose needs a \"maps\" array".into()))?;
                Ok(MapSpec::Compose(
                    maps.iter()
                        .map(|m| Self::from_value(space, m))
                        .collect::<Result<_, _>>()?,
                ))
            }
            other => Err(Error::Parse(format!("unknown map type {other:?}"))),
        }
    }

    /// Emit the spec-file form; re-parsing yields an identical map.
    pub fn to_spec_json(&self, space: &Space) -> serde_json::Value {
        match self {
            MapSpec::Table(table) => {
                let Space::Finite(sp) = space else {
                    return json!({"type": "table"});
                };
                let map: BTreeMap<String, String> = table
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| (sp.label(i).to_string(), sp.label(t).to_string()))
                    .collect();
                json!({"type": "table", "map": map})
            }
            MapSpec::PAdicTranslation(t) => json!({"type": "padic_translation", "t": t}),
            MapSpec::BairePartialProduct { head_fixed } => {
                json!({"type": "baire_partial_product", "head_fixed": head_fixed})
            }
            MapSpec::Compose(maps) => json!({
                "type": "compose",
                "maps": maps.iter().map(|m| m.to_spec_json(space)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Exact image of a point. Baire images push onto the applied-map stack
/// (normalized lazily inside the sequence representation).
pub fn apply(space: &Space, map: &MapSpec, x: &Point) -> Result<Point, Error> {
    match (map, x) {
        (MapSpec::Table(table), Point::Finite(i)) => table
            .get(*i)
            .map(|&t| Point::Finite(t))
            .ok_or(Error::CrossSpace),
        (MapSpec::PAdicTranslation(t), Point::PAdic(r)) => {
            let Space::PAdic(sp) = space else {
                return Err(Error::CrossSpace);
            };
            Ok(Point::PAdic(sp.translate(*r, *t)))
        }
        (MapSpec::BairePartialProduct { head_fixed }, Point::Baire(seq)) => Ok(Point::Baire(
            seq.apply(PartialProduct {
                head_fixed: *head_fixed,
            }),
        )),
        (MapSpec::Compose(maps), _) => {
            let mut cur = x.clone();
            for m in maps {
                cur = apply(space, m, &cur)?;
            }
            Ok(cur)
        }
        _ => Err(Error::CrossSpace),
    }
}

/// Three-valued classification flag: universal positives are only asserted
/// in exhaustive mode; samples can only refute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flag {
    Verified,
    NotRefutedOnSample,
    Refuted { witness: String },
}

impl Flag {
    pub fn holds(&self) -> bool {
        !matches!(self, Flag::Refuted { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Flag::Verified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakRegular {
    Verified,
    Refuted { witness: String },
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct MapClassification {
    pub exhaustive: bool,
    pub nonexpansive: Flag,
    pub strictly_contractive: Flag,
    pub strictly_contractive_on_orbit: Flag,
    pub isometry: Flag,
    pub weak_regular: WeakRegular,
    pub noncyclic: Flag,
    pub cyclic: Flag,
}

impl MapClassification {
    pub fn to_json(&self) -> serde_json::Value {
        let flag = |f: &Flag| match f {
            Flag::Verified => json!({"verdict": "verified"}),
            Flag::NotRefutedOnSample => json!({"verdict": "not_refuted_on_sample"}),
            Flag::Refuted { witness } => json!({"verdict": "refuted", "witness": witness}),
        };
        json!({
            "mode": if self.exhaustive { "exhaustive" } else { "sampled" },
            "nonexpansive": flag(&self.nonexpansive),
            "strictly_contractive": flag(&self.strictly_contractive),
            "strictly_contractive_on_orbit": flag(&self.strictly_contractive_on_orbit),
            "isometry": flag(&self.isometry),
            "weak_regular": match &self.weak_regular {
                WeakRegular::Verified => json!({"verdict": "verified"}),
                WeakRegular::Refuted { witness } => json!({"verdict": "refuted", "witness": witness}),
                WeakRegular::Undetermined => json!({"verdict": "undetermined"}),
            },
            "noncyclic": flag(&self.noncyclic),
            "cyclic": flag(&self.cyclic),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ClassifyMode {
    Exhaustive,
    /// Enumerate up to `n` points of A and B each (seeded subsampling when
    /// the enumeration is larger).
    Sampled { n: usize, seed: u64 },
}

pub fn classify_map(
    space: &Space,
    map: &MapSpec,
    a: &SubsetSpec,
    b: &SubsetSpec,
    mode: ClassifyMode,
    orbit_budget: usize,
) -> Result<MapClassification, Error> {
    let (a_points, b_points, exhaustive) = match mode {
        ClassifyMode::Exhaustive => {
            if !space.is_exhaustive() {
                return Err(Error::Precondition(
                    "exhaustive classification needs a finite space".into(),
                ));
            }
            let ea = space.enumerate(a, 0)?;
            let eb = space.enumerate(b, 0)?;
            (ea.points, eb.points, true)
        }
        ClassifyMode::Sampled { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = |spec: &SubsetSpec| -> Result<Vec<Point>, Error> {
                let e = space.enumerate(spec, n)?;
                let mut pts = e.points;
                if pts.len() > n {
                    pts.shuffle(&mut rng);
                    pts.truncate(n);
                }
                Ok(pts)
            };
            let ea = pick(a)?;
            let eb = pick(b)?;
            (ea, eb, false)
        }
    };

    let mut domain = a_points.clone();
    for p in &b_points {
        if !domain.contains(p) {
            domain.push(p.clone());
        }
    }

    let positive = if exhaustive {
        Flag::Verified
    } else {
        Flag::NotRefutedOnSample
    };
    let mut nonexpansive = positive.clone();
    let mut strictly_contractive = positive.clone();
    let mut isometry = positive.clone();

    // d may be undecidable within the depth budget for Baire pairs; such
    // pairs can never refute, only exact values do.
    let exact_distance = |x: &Point, y: &Point| -> Result<Option<Ratio>, Error> {
        match space.distance(x, y) {
            Ok(d) => Ok(Some(d)),
            Err(Error::IndistinguishableToDepth { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };

    for (i, x) in domain.iter().enumerate() {
        for y in &domain[i + 1..] {
            let Some(dxy) = exact_distance(x, y)? else {
                continue;
            };
            if dxy.is_zero() {
                continue;
            }
            let tx = apply(space, map, x)?;
            let ty = apply(space, map, y)?;
            let dtxy = exact_distance(&tx, &ty)?;
            let pair = || format!("({}, {})", space.label(x), space.label(y));
            match &dtxy {
                Some(dt) => {
                    if *dt > dxy && nonexpansive.holds() {
                        nonexpansive = Flag::Refuted { witness: pair() };
                    }
                    if *dt >= dxy && strictly_contractive.holds() {
                        strictly_contractive = Flag::Refuted { witness: pair() };
                    }
                    if *dt != dxy && isometry.holds() {
                        isometry = Flag::Refuted { witness: pair() };
                    }
                }
                None => {
                    // d(Tx,Ty) is below the depth cutoff, hence < d(x,y):
                    // nonexpansiveness is safe, isometry is refuted if the
                    // cutoff already separates the values
                    let cutoff = match space {
                        Space::Baire(sp) => Ratio::one_over_succ(sp.depth_bound),
                        _ => unreachable!("only Baire distances are undecidable"),
                    };
                    if cutoff < dxy && isometry.holds() {
                        isometry = Flag::Refuted { witness: pair() };
                    }
                }
            }
        }
    }

    let mut strictly_contractive_on_orbit = positive.clone();
    for x in &domain {
        let tx = apply(space, map, x)?;
        let Some(d1) = exact_distance(x, &tx)? else {
            continue;
        };
        if d1.is_zero() {
            continue;
        }
        let ttx = apply(space, map, &tx)?;
        let Some(d2) = exact_distance(&tx, &ttx)? else {
            continue;
        };
        if d2 >= d1 && strictly_contractive_on_orbit.holds() {
            strictly_contractive_on_orbit = Flag::Refuted {
                witness: space.label(x),
            };
        }
    }

    let mut weak_regular = WeakRegular::Verified;
    for x in &domain {
        let trace = orbit(space, map, x, orbit_budget)?;
        match weak_regular_verdict(space, x, &trace)? {
            WeakRegular::Refuted { witness } => {
                weak_regular = WeakRegular::Refuted { witness };
                break;
            }
            WeakRegular::Undetermined => weak_regular = WeakRegular::Undetermined,
            WeakRegular::Verified => {}
        }
    }
    if !exhaustive && matches!(weak_regular, WeakRegular::Verified) {
        // a sample cannot verify the universal statement
        weak_regular = WeakRegular::Undetermined;
    }

    let check_closure = |from: &[Point], into: &SubsetSpec| -> Result<Option<String>, Error> {
        for x in from {
            let tx = apply(space, map, x)?;
            if !space.subset_contains(into, &tx)? {
                return Ok(Some(space.label(x)));
            }
        }
        Ok(None)
    };
    let noncyclic = match (check_closure(&a_points, a)?, check_closure(&b_points, b)?) {
        (None, None) => positive.clone(),
        (Some(w), _) | (_, Some(w)) => Flag::Refuted { witness: w },
    };
    let cyclic = match (check_closure(&a_points, b)?, check_closure(&b_points, a)?) {
        (None, None) => positive.clone(),
        (Some(w), _) | (_, Some(w)) => Flag::Refuted { witness: w },
    };

    Ok(MapClassification {
        exhaustive,
        nonexpansive,
        strictly_contractive,
        strictly_contractive_on_orbit,
        isometry,
        weak_regular,
        noncyclic,
        cyclic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    FixedPoint,
    Cycle { entry: usize, len: usize },
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub points: Vec<Point>,
    pub gaps: Vec<Ratio>,
    pub terminal: Terminal,
}

/// Iterate x, Tx, T^2 x, ... until an exact fixed point, a structural
/// revisit (cycle), or the step budget.
pub fn orbit(space: &Space, map: &MapSpec, x: &Point, max_steps: usize) -> Result<OrbitTrace, Error> {
    let mut points = vec![x.clone()];
    let mut gaps = Vec::new();
    for _ in 0..max_steps.max(1) {
        let cur = points.last().unwrap().clone();
        let next = apply(space, map, &cur)?;
        let gap = match space.distance(&cur, &next) {
            Ok(d) => d,
            Err(Error::IndistinguishableToDepth { .. }) => {
                return Ok(OrbitTrace {
                    points,
                    gaps,
                    terminal: Terminal::BudgetExhausted,
                })
            }
            Err(e) => return Err(e),
        };
        if gap.is_zero() {
            return Ok(OrbitTrace {
                points,
                gaps,
                terminal: Terminal::FixedPoint,
            });
        }
        gaps.push(gap);
        if let Some(entry) = points.iter().position(|p| *p == next) {
            let len = points.len() - entry;
            return Ok(OrbitTrace {
                points,
                gaps,
                terminal: Terminal::Cycle { entry, len },
            });
        }
        points.push(next);
    }
    Ok(OrbitTrace {
        points,
        gaps,
        terminal: Terminal::BudgetExhausted,
    })
}

/// Per-start weak-regular verdict: limsup of consecutive orbit gaps must
/// fall strictly below the initial gap. Fixed starts are vacuously fine;
/// cycles make the limsup exact.
pub fn weak_regular_verdict(
    space: &Space,
    x: &Point,
    trace: &OrbitTrace,
) -> Result<WeakRegular, Error> {
    let Some(d0) = trace.gaps.first() else {
        // x = Tx: the property quantifies over non-fixed points only
        return Ok(WeakRegular::Verified);
    };
    match &trace.terminal {
        Terminal::FixedPoint => Ok(WeakRegular::Verified), // gaps are eventually 0 < d0
        Terminal::Cycle { entry, .. } => {
            let limsup = trace.gaps[*entry..]
                .iter()
                .cloned()
                .fold(Ratio::zero(), Ratio::max);
            if limsup < *d0 {
                Ok(WeakRegular::Verified)
            } else {
                Ok(WeakRegular::Refuted {
                    witness: format!(
                        "x = {}: limsup gap {} >= d(x,Tx) = {}",
                        space.label(x),
                        limsup,
                        d0
                    ),
                })
            }
        }
        Terminal::BudgetExhausted => Ok(WeakRegular::Undetermined),
    }
}

/// Balls of the subspace `region`: global balls centered in `region`,
/// intersected with it, deduplicated as sets.
fn subspace_balls(space: &Space, region: &[Point]) -> Result<Vec<Vec<Point>>, Error> {
    let radii = space
        .distance_values()
        .ok_or_else(|| Error::Precondition("ball enumeration needs a finite space".into()))?;
    let mut out: Vec<Vec<Point>> = Vec::new();
    for center in region {
        for r in &radii {
            let mut members = Vec::new();
            for p in region {
                if space.distance(center, p)? <= *r {
                    members.push(p.clone());
                }
            }
            if !out.contains(&members) {
                out.push(members);
            }
        }
    }
    Ok(out)
}

/// Minimal T-invariant balls inside the subspace `region` (a finite point
/// set): T(B) ⊆ B and d(y,Ty) equal to the ball's diameter and positive
/// for every member y. `region` is treated as an ultrametric space in its
/// own right, so its balls are the global balls intersected with it.
/// Balls are deduplicated as sets; the returned radius is the diameter
/// (representation-independent).
pub fn minimal_invariant_balls(
    space: &Space,
    map: &MapSpec,
    region: &[Point],
) -> Result<Vec<(Ball, Ratio, Vec<Point>)>, Error> {
    let mut out = Vec::new();
    'balls: for members in subspace_balls(space, region)? {
        let diam = diameter(space, &members)?;
        if diam.is_zero() {
            continue; // gaps must be positive
        }
        let mut common_gap: Option<Ratio> = None;
        for y in &members {
            let ty = apply(space, map, y)?;
            if !members.contains(&ty) {
                continue 'balls;
            }
            let gap = space.distance(y, &ty)?;
            if gap.is_zero() {
                continue 'balls;
            }
            match &common_gap {
                None => common_gap = Some(gap),
                Some(g) if *g != gap => continue 'balls,
                Some(_) => {}
            }
        }
        let gap = common_gap.unwrap();
        if gap != diam {
            continue;
        }
        out.push((
            Ball::new(members[0].clone(), diam.clone()),
            gap,
            members,
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    FixedPoint(Point),
    MinimalInvariantBall {
        ball: Ball,
        common_gap: Ratio,
        members: Vec<Point>,
    },
    Inconclusive {
        reason: String,
    },
}

impl SolveOutcome {
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        match self {
            SolveOutcome::FixedPoint(p) => {
                json!({"outcome": "fixed_point", "point": space.label(p)})
            }
            SolveOutcome::MinimalInvariantBall {
                ball,
                common_gap,
                members,
            } => json!({
                "outcome": "minimal_invariant_ball",
                "center": space.label(&ball.center),
                "radius": ball.radius.to_string(),
                "common_gap": common_gap.to_string(),
                "members": members.iter().map(|p| space.label(p)).collect::<Vec<_>>(),
            }),
            SolveOutcome::Inconclusive { reason } => {
                json!({"outcome": "inconclusive", "reason": reason})
            }
        }
    }
}

/// Search B(start, d(start, T start)) for a fixed point or a minimal
/// T-invariant ball.
///
/// Finite spaces are exhaustive and require T nonexpansive on the ball
/// (fixed points are preferred when both outcomes exist; absence of both
/// is a theorem violation). On the Baire space the solver tests the
/// eventually-zero candidate consistent with the ball's prefix constraint.
pub fn solve_in_ball(space: &Space, map: &MapSpec, start: &Point) -> Result<SolveOutcome, Error> {
    let t_start = apply(space, map, start)?;
    let r0 = match space.distance(start, &t_start) {
        Ok(d) => d,
        Err(Error::IndistinguishableToDepth { depth }) => {
            return Ok(SolveOutcome::Inconclusive {
                reason: format!("d(start, T start) undecided at depth {depth}"),
            })
        }
        Err(e) => return Err(e),
    };
    if r0.is_zero() {
        return Ok(SolveOutcome::FixedPoint(start.clone()));
    }

    match space {
        Space::Finite(_) | Space::PAdic(_) => {
            let members = ball_members(space, &Ball::new(start.clone(), r0.clone()), 0)?.points;
            for (i, x) in members.iter().enumerate() {
                for y in &members[i + 1..] {
                    let tx = apply(space, map, x)?;
                    let ty = apply(space, map, y)?;
                    if space.distance(&tx, &ty)? > space.distance(x, y)? {
                        return Err(Error::Precondition(format!(
                            "map is not nonexpansive on the ball: witness ({}, {})",
                            space.label(x),
                            space.label(y)
                        )));
                    }
                }
            }
            for y in &members {
                let ty = apply(space, map, y)?;
                if space.distance(y, &ty)?.is_zero() {
                    return Ok(SolveOutcome::FixedPoint(y.clone()));
                }
            }
            let balls = minimal_invariant_balls(space, map, &members)?;
            match balls.into_iter().next() {
                Some((ball, common_gap, members)) => Ok(SolveOutcome::MinimalInvariantBall {
                    ball,
                    common_gap,
                    members,
                }),
                None => Err(Error::TheoremViolation(format!(
                    "B({}, {}) contains neither a fixed point nor a minimal invariant ball",
                    space.label(start),
                    r0
                ))),
            }
        }
        Space::Baire(_) => {
            let Point::Baire(seq) = start else {
                return Err(Error::CrossSpace);
            };
            let k = r0.baire_prefix_len().expect("positive radius");
            let prefix = seq.terms_upto(k)?;
            let candidate = crate::spaces::UltraSeq::explicit(prefix, 0u32.into());
            let cand_point = Point::Baire(candidate.clone());
            let image = apply(space, map, &cand_point)?;
            if image == cand_point && candidate.agrees_to(seq, k)? {
                Ok(SolveOutcome::FixedPoint(cand_point))
            } else {
                Ok(SolveOutcome::Inconclusive {
                    reason: "eventually-zero candidate is not fixed".into(),
                })
            }
        }
        Space::Nat(_) => Ok(SolveOutcome::Inconclusive {
            reason: "no solver on the reciprocal-integer space".into(),
        }),
    }
}
