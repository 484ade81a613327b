//! Seeded random finite ultrametric spaces (dendrogram construction) and
//! random maps of the classes the theorems quantify over.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Error;
use crate::ratio::Ratio;
use crate::spaces::FiniteUltraSpace;

#[derive(Clone, Debug)]
pub struct DendrogramGenConfig {
    pub n: usize,
    /// strictly descending positive level values, root first
    pub levels: Vec<Ratio>,
    pub seed: u64,
}

impl DendrogramGenConfig {
    pub fn new(n: usize, levels: Vec<Ratio>, seed: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Config("need at least one point".into()));
        }
        if levels.is_empty() {
            return Err(Error::Config("level set must be nonempty".into()));
        }
        if levels.iter().any(Ratio::is_zero) {
            return Err(Error::Config("levels must be positive".into()));
        }
        if levels.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Config("levels must strictly descend".into()));
        }
        Ok(DendrogramGenConfig { n, levels, seed })
    }
}

/// 1, 1/2, 1/4, ... with `k` entries.
pub fn default_levels(k: usize) -> Vec<Ratio> {
    (0..k.max(1))
        .map(|i| Ratio::new(1, 1u64 << i).unwrap())
        .collect()
}

/// Build a random dendrogram: points are leaves, d(x,y) is the level of
/// the lowest common ancestor. Levels strictly descend from the root, so
/// the matrix is ultrametric by construction. Also returns the root-level
/// blocks (the children of the root), which are mutually at the root level.
pub fn generate_space<R: Rng>(
    cfg: &DendrogramGenConfig,
    rng: &mut R,
) -> Result<(FiniteUltraSpace, Vec<Vec<usize>>), Error> {
    let n = cfg.n;
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut dist = vec![vec![Ratio::zero(); n]; n];

    fn split<R: Rng>(idxs: &[usize], rng: &mut R) -> Vec<Vec<usize>> {
        let mut shuffled = idxs.to_vec();
        shuffled.shuffle(rng);
        let k = rng.gen_range(2..=shuffled.len().min(4));
        let mut cuts: Vec<usize> = Vec::new();
        while cuts.len() < k - 1 {
            let c = rng.gen_range(1..shuffled.len());
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.push(shuffled.len());
        let mut blocks = Vec::new();
        let mut start = 0;
        for c in cuts {
            blocks.push(shuffled[start..c].to_vec());
            start = c;
        }
        blocks
    }

    fn fill<R: Rng>(
        idxs: &[usize],
        levels: &[Ratio],
        dist: &mut Vec<Vec<Ratio>>,
        rng: &mut R,
    ) -> Vec<Vec<usize>> {
        if idxs.len() <= 1 {
            return vec![idxs.to_vec()];
        }
        if levels.len() == 1 {
            // deepest level: all remaining pairs sit here
            for (i, &x) in idxs.iter().enumerate() {
                for &y in &idxs[i + 1..] {
                    dist[x][y] = levels[0].clone();
                    dist[y][x] = levels[0].clone();
                }
            }
            return idxs.iter().map(|&i| vec![i]).collect();
        }
        let blocks = split(idxs, rng);
        for (bi, block) in blocks.iter().enumerate() {
            for other in &blocks[bi + 1..] {
                for &x in block {
                    for &y in other {
                        dist[x][y] = levels[0].clone();
                        dist[y][x] = levels[0].clone();
                    }
                }
            }
        }
        for block in &blocks {
            fill(block, &levels[1..], dist, rng);
        }
        blocks
    }

    let all: Vec<usize> = (0..n).collect();
    let blocks = fill(&all, &cfg.levels, &mut dist, rng);
    let space = FiniteUltraSpace::new(labels, dist)?;
    debug_assert!(space.validate().valid);
    Ok((space, blocks))
}

/// Split the generated space into a pair (A, B) with δ(B) ≤ dist(A,B):
/// A is one root block and B a nonempty subset of another, so dist(A,B)
/// is the root level while δ(B) stays strictly below it. Single-block
/// spaces degrade to A = B = {p0}.
pub fn split_pair<R: Rng>(blocks: &[Vec<usize>], rng: &mut R) -> (Vec<usize>, Vec<usize>) {
    if blocks.len() < 2 {
        let p = blocks[0][0];
        return (vec![p], vec![p]);
    }
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.shuffle(rng);
    let a = blocks[order[0]].clone();
    let mut b = blocks[order[1]].clone();
    let keep = rng.gen_range(1..=b.len());
    b.shuffle(rng);
    b.truncate(keep);
    b.sort_unstable();
    (a, b)
}

/// Split violating the hypothesis: random disjoint subsets resampled
/// until δ(B) > dist(A,B) (B spreads across dendrogram blocks while some
/// A point sits closer to B than B's own diameter). Returns None when no
/// violating split is found.
pub fn split_pair_violating<R: Rng>(
    space: &FiniteUltraSpace,
    rng: &mut R,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = space.len();
    if n < 4 {
        return None;
    }
    for _ in 0..REJECTION_TRIES {
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(rng);
        let na = rng.gen_range(2..=(n - 2).min(n / 2));
        let nb = rng.gen_range(2..=(n - na));
        let a = pts[..na].to_vec();
        let b = pts[na..na + nb].to_vec();
        let dist = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| space.distance(x, y)))
            .min()
            .unwrap();
        let delta_b = b
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| space.distance(x, y)))
            .max()
            .unwrap();
        if delta_b > dist {
            return Some((a, b));
        }
    }
    None
}

fn is_nonexpansive_on(space: &FiniteUltraSpace, table: &[usize], domain: &[usize]) -> bool {
    for (i, &x) in domain.iter().enumerate() {
        for &y in &domain[i + 1..] {
            if space.distance(table[x], table[y]) > space.distance(x, y) {
                return false;
            }
        }
    }
    true
}

fn is_strictly_contractive_on(space: &FiniteUltraSpace, table: &[usize], domain: &[usize]) -> bool {
    for (i, &x) in domain.iter().enumerate() {
        for &y in &domain[i + 1..] {
            if space.distance(table[x], table[y]) >= space.distance(x, y) {
                return false;
            }
        }
    }
    true
}

const REJECTION_TRIES: usize = 64;

/// Random noncyclic map (T(A) ⊆ A, T(B) ⊆ B) nonexpansive on A∪B.
/// Rejection sampling with a constructive ball-collapsing fallback: map
/// every point of A∪B to the least member of B(x, r) on its own side, for
/// the largest level r strictly below dist(A,B) — always nonexpansive.
pub fn gen_noncyclic_nonexpansive<R: Rng>(
    space: &FiniteUltraSpace,
    a: &[usize],
    b: &[usize],
    rng: &mut R,
) -> Vec<usize> {
    let n = space.len();
    let mut domain: Vec<usize> = a.to_vec();
    for &x in b {
        if !domain.contains(&x) {
            domain.push(x);
        }
    }
    for _ in 0..REJECTION_TRIES {
        let table: Vec<usize> = (0..n)
            .map(|i| {
                if a.contains(&i) {
                    a[rng.gen_range(0..a.len())]
                } else if b.contains(&i) {
                    b[rng.gen_range(0..b.len())]
                } else {
                    rng.gen_range(0..n)
                }
            })
            .collect();
        if is_nonexpansive_on(space, &table, &domain) {
            return table;
        }
    }

    // fallback: collapse each sub-dist(A,B) ball onto one member per side
    let dist_ab = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| space.distance(x, y)))
        .min()
        .cloned()
        .unwrap();
    let level = space
        .distance_values()
        .into_iter()
        .filter(|v| !v.is_zero() && *v < dist_ab)
        .next_back();
    let Some(level) = level else {
        return (0..n).collect(); // identity
    };
    (0..n)
        .map(|x| {
            let side: &[usize] = if a.contains(&x) {
                a
            } else if b.contains(&x) {
                b
            } else {
                return x;
            };
            side.iter()
                .copied()
                .find(|&y| *space.distance(x, y) <= level)
                .unwrap_or(x)
        })
        .collect()
}

/// Random strictly contractive map on A∪{b} fixing b and leaving A
/// invariant (the fixed-pair theorem's noncyclic setting forces B = {b}
/// with b ∈ A). Fallback: the constant map to b.
pub fn gen_strictly_contractive<R: Rng>(
    space: &FiniteUltraSpace,
    a: &[usize],
    b: usize,
    rng: &mut R,
) -> Vec<usize> {
    let n = space.len();
    for _ in 0..REJECTION_TRIES {
        let table: Vec<usize> = (0..n)
            .map(|i| {
                if i == b {
                    b
                } else if a.contains(&i) {
                    a[rng.gen_range(0..a.len())]
                } else {
                    rng.gen_range(0..n)
                }
            })
            .collect();
        let mut domain = a.to_vec();
        if !domain.contains(&b) {
            domain.push(b);
        }
        if is_strictly_contractive_on(space, &table, &domain) {
            return table;
        }
    }
    vec![b; n]
}

/// Random cyclic map: T(A) ⊆ B, T(B) ⊆ A, arbitrary elsewhere (the remark
/// does not assume nonexpansiveness).
pub fn gen_cyclic<R: Rng>(space: &FiniteUltraSpace, a: &[usize], b: &[usize], rng: &mut R) -> Vec<usize> {
    let n = space.len();
    (0..n)
        .map(|i| {
            if a.contains(&i) {
                b[rng.gen_range(0..b.len())]
            } else if b.contains(&i) {
                a[rng.gen_range(0..a.len())]
            } else {
                rng.gen_range(0..n)
            }
        })
        .collect()
}
