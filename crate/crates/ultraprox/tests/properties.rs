//! Randomized property tests: metric axioms of every space family, exact
//! arithmetic round-trips, and structural consequences of the hypotheses
//! used by the theorem harness.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ultraprox::balls::{check_lemma1, compute_a0_b0};
use ultraprox::dynamics::{orbit, MapSpec};
use ultraprox::harness::generate::{
    default_levels, gen_noncyclic_nonexpansive, generate_space, split_pair, DendrogramGenConfig,
};
use ultraprox::spaces::{PAdicSpace, Point, PointSpec, Space, SubsetSpec, UltraSeq};
use ultraprox::Ratio;

fn gen_instance(n: usize, depth: usize, seed: u64) -> (Space, Vec<Vec<usize>>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = DendrogramGenConfig::new(n, default_levels(depth), seed).unwrap();
    let (f, blocks) = generate_space(&cfg, &mut rng).unwrap();
    (Space::Finite(f), blocks, rng)
}

fn subset(space: &Space, idxs: &[usize]) -> SubsetSpec {
    SubsetSpec::Points(
        idxs.iter()
            .map(|&i| PointSpec::Name(space.label(&Point::Finite(i))))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio_display_round_trips(n in 0u64..1_000_000, d in 1u64..1_000_000) {
        let r = Ratio::new(n, d).unwrap();
        let back: Ratio = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn generated_spaces_satisfy_the_axioms(n in 1usize..12, depth in 1usize..5, seed in 0u64..10_000) {
        let (space, _, _) = gen_instance(n, depth, seed);
        let Space::Finite(f) = &space else { unreachable!() };
        let report = f.validate();
        prop_assert!(report.valid, "violations: {:?}", report.violations);
    }

    #[test]
    fn padic_distance_is_ultrametric(p_idx in 0usize..3, m in 1u32..5, x in 0u64..200, y in 0u64..200, z in 0u64..200) {
        let p = [2u64, 3, 5][p_idx];
        let modulus = p.pow(m);
        let sp = Space::PAdic(PAdicSpace::new(p, m).unwrap());
        let pt = |v: u64| Point::PAdic(v % modulus);
        let d = |a: &Point, b: &Point| sp.distance(a, b).unwrap();
        let (x, y, z) = (pt(x), pt(y), pt(z));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &x), Ratio::zero());
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
    }

    #[test]
    fn baire_distance_is_ultrametric(
        a in proptest::collection::vec(0u64..4, 0..6),
        b in proptest::collection::vec(0u64..4, 0..6),
        c in proptest::collection::vec(0u64..4, 0..6),
    ) {
        let sp = Space::Baire(ultraprox::spaces::BaireSpace::new(64).unwrap());
        let pt = |v: &[u64]| Point::Baire(UltraSeq::from_u64s(v, 0));
        let d = |x: &Point, y: &Point| sp.distance(x, y).unwrap();
        let (x, y, z) = (pt(&a), pt(&b), pt(&c));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &x), Ratio::zero());
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
    }

    #[test]
    fn split_pairs_satisfy_the_small_diameter_hypothesis(n in 1usize..12, seed in 0u64..10_000) {
        let (space, blocks, mut rng) = gen_instance(n, 2, seed);
        let (a, b) = split_pair(&blocks, &mut rng);
        let rep = compute_a0_b0(&space, &subset(&space, &a), &subset(&space, &b), 0).unwrap();
        prop_assert!(rep.delta_b <= rep.dist_ab || rep.dist_ab.is_zero());
    }

    #[test]
    fn lemma_conclusion_b0_equals_b(n in 2usize..12, seed in 0u64..10_000) {
        let (space, blocks, mut rng) = gen_instance(n, 3, seed);
        let (a, b) = split_pair(&blocks, &mut rng);
        let (sa, sb) = (subset(&space, &a), subset(&space, &b));
        let v = check_lemma1(&space, &sa, &sb, 0).unwrap();
        if v.applicable {
            prop_assert_eq!(v.conclusion_verified, Some(true));
            let rep = compute_a0_b0(&space, &sa, &sb, 0).unwrap();
            prop_assert!(!rep.a0.is_empty());
            prop_assert_eq!(rep.b0.len(), b.len());
        }
    }

    #[test]
    fn nonexpansive_orbit_gaps_never_increase(n in 2usize..12, seed in 0u64..10_000) {
        let (space, blocks, mut rng) = gen_instance(n, 2, seed);
        let Space::Finite(f) = &space else { unreachable!() };
        let (a, b) = split_pair(&blocks, &mut rng);
        let table = gen_noncyclic_nonexpansive(f, &a, &b, &mut rng);
        let map = MapSpec::Table(table);
        for &start in a.iter().chain(&b) {
            let trace = orbit(&space, &map, &Point::Finite(start), n + 2).unwrap();
            for w in trace.gaps.windows(2) {
                prop_assert!(w[1] <= w[0], "gap increased along an orbit");
            }
        }
    }
}
