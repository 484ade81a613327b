//! Seeded random-instance checking of the existence theorems, plus a
//! hypothesis-dropping counterexample search.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::balls::check_lemma1;
use crate::dynamics::MapSpec;
use crate::error::Error;
use crate::harness::checks::{
    check_cyclic_remark, check_fixed_pair, check_theorem1, check_theorem1_dropping, FixedPairMode,
};
use crate::harness::generate::{
    default_levels, gen_cyclic, gen_noncyclic_nonexpansive, gen_strictly_contractive,
    generate_space, split_pair, split_pair_violating, DendrogramGenConfig,
};
use crate::spaces::{FiniteUltraSpace, PointSpec, Space, SubsetSpec};
use crate::verdict::TheoremVerdict;

pub const THEOREM_IDS: [&str; 5] = ["lemma1", "thm1", "thm2", "thm3", "cyclic"];

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub trials: usize,
    pub max_points: usize,
    pub seed: u64,
    /// subset of THEOREM_IDS; empty means all
    pub theorems: Vec<String>,
    /// hypothesis-dropping mode: record outcome frequencies instead of
    /// asserting (currently: "delta_B_le_dist" against thm1)
    pub drop_hypothesis: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub theorem: String,
    pub trial: usize,
    pub space: serde_json::Value,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub map: serde_json::Value,
    pub verdict: TheoremVerdict,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzSummary {
    pub trials: usize,
    /// theorem id -> (applicable trials, verified trials)
    pub tally: BTreeMap<String, (usize, usize)>,
    pub counterexamples: Vec<Counterexample>,
    /// drop mode: conclusion outcome -> frequency
    pub outcome_freq: BTreeMap<String, usize>,
}

impl FuzzSummary {
    pub fn all_verified(&self) -> bool {
        self.counterexamples.is_empty()
            && self.tally.values().all(|(app, ver)| app == ver)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "trials": self.trials,
            "tally": self.tally.iter()
                .map(|(t, (app, ver))| (t.clone(), json!({"applicable": app, "verified": ver})))
                .collect::<BTreeMap<_, _>>(),
            "counterexamples": self.counterexamples.iter().map(|c| json!({
                "theorem": c.theorem,
                "trial": c.trial,
                "space": c.space,
                "A": c.a,
                "B": c.b,
                "map": c.map,
                "verdict": serde_json::to_value(&c.verdict).unwrap(),
            })).collect::<Vec<_>>(),
            "outcome_freq": self.outcome_freq,
            "all_verified": self.all_verified(),
        })
    }
}

fn subset_of(space: &FiniteUltraSpace, idxs: &[usize]) -> SubsetSpec {
    SubsetSpec::Points(
        idxs.iter()
            .map(|&i| PointSpec::Name(space.label(i).to_string()))
            .collect(),
    )
}

fn labels_of(space: &FiniteUltraSpace, idxs: &[usize]) -> Vec<String> {
    idxs.iter().map(|&i| space.label(i).to_string()).collect()
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, Error> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be >= 1".into()));
    }
    let theorems: Vec<&str> = if cfg.theorems.is_empty() {
        THEOREM_IDS.to_vec()
    } else {
        cfg.theorems.iter().map(String::as_str).collect()
    };
    for t in &theorems {
        if !THEOREM_IDS.contains(t) {
            return Err(Error::Config(format!("unknown theorem id {t:?}")));
        }
    }
    if let Some(h) = &cfg.drop_hypothesis {
        if h != "delta_B_le_dist" {
            return Err(Error::Config(format!(
                "hypothesis dropping supports only \"delta_B_le_dist\", got {h:?}"
            )));
        }
    }

    let mut summary = FuzzSummary {
        trials: cfg.trials,
        ..Default::default()
    };
    for t in &theorems {
        summary.tally.insert(t.to_string(), (0, 0));
    }

    for trial in 0..cfg.trials {
        // independent per-trial stream so trials are reproducible in
        // isolation and order-independent
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (trial as u64).wrapping_mul(0x9e37_79b9));
        let n = rng.gen_range(1..=cfg.max_points.max(1));
        let depth = rng.gen_range(1..=4);
        let gen_cfg = DendrogramGenConfig::new(n, default_levels(depth), cfg.seed)?;
        let (fsp, blocks) = generate_space(&gen_cfg, &mut rng)?;
        let space = Space::Finite(fsp.clone());

        if cfg.drop_hypothesis.is_some() {
            let Some((a, b)) = split_pair_violating(&fsp, &mut rng) else {
                *summary.outcome_freq.entry("no_violating_split".into()).or_insert(0) += 1;
                continue;
            };
            let table = gen_noncyclic_nonexpansive(&fsp, &a, &b, &mut rng);
            let map = MapSpec::Table(table);
            let (sa, sb) = (subset_of(&fsp, &a), subset_of(&fsp, &b));
            let verdict =
                check_theorem1_dropping(&space, &sa, &sb, &map, 0, Some("delta_B_le_dist"))?;
            let key = match verdict.conclusion_verified {
                Some(true) => "conclusion_held",
                Some(false) => "conclusion_failed",
                None => "not_evaluated",
            };
            *summary.outcome_freq.entry(key.into()).or_insert(0) += 1;
            if verdict.conclusion_verified == Some(false) {
                summary.counterexamples.push(Counterexample {
                    theorem: "thm1 (delta_B_le_dist dropped)".into(),
                    trial,
                    space: space.to_spec_json(),
                    a: labels_of(&fsp, &a),
                    b: labels_of(&fsp, &b),
                    map: map.to_spec_json(&space),
                    verdict,
                });
            }
            continue;
        }

        let (a, b) = split_pair(&blocks, &mut rng);
        let (sa, sb) = (subset_of(&fsp, &a), subset_of(&fsp, &b));

        let record = |summary: &mut FuzzSummary,
                          theorem: &str,
                          map: Option<&MapSpec>,
                          verdict: TheoremVerdict| {
            let entry = summary.tally.get_mut(theorem).unwrap();
            if verdict.applicable {
                entry.0 += 1;
                if verdict.conclusion_verified == Some(true) {
                    entry.1 += 1;
                } else {
                    summary.counterexamples.push(Counterexample {
                        theorem: theorem.to_string(),
                        trial,
                        space: space.to_spec_json(),
                        a: labels_of(&fsp, &a),
                        b: labels_of(&fsp, &b),
                        map: map
                            .map(|m| m.to_spec_json(&space))
                            .unwrap_or(serde_json::Value::Null),
                        verdict,
                    });
                }
            }
        };

        if theorems.contains(&"lemma1") {
            let v = check_lemma1(&space, &sa, &sb, 0)?;
            record(&mut summary, "lemma1", None, v);
        }
        if theorems.contains(&"thm1") || theorems.contains(&"thm2") {
            let map = MapSpec::Table(gen_noncyclic_nonexpansive(&fsp, &a, &b, &mut rng));
            if theorems.contains(&"thm1") {
                let v = check_theorem1(&space, &sa, &sb, &map, 0)?;
                record(&mut summary, "thm1", Some(&map), v);
            }
            if theorems.contains(&"thm2") {
                let v = check_fixed_pair(&space, &sa, &sb, &map, FixedPairMode::WeakRegular)?;
                record(&mut summary, "thm2", Some(&map), v);
            }
        }
        if theorems.contains(&"thm3") {
            // strictly contractive noncyclic forces B = {b} with b in A
            let fixed = a[rng.gen_range(0..a.len())];
            let map = MapSpec::Table(gen_strictly_contractive(&fsp, &a, fixed, &mut rng));
            let sb3 = subset_of(&fsp, &[fixed]);
            let v = check_fixed_pair(&space, &sa, &sb3, &map, FixedPairMode::Strict)?;
            record(&mut summary, "thm3", Some(&map), v);
        }
        if theorems.contains(&"cyclic") {
            let map = MapSpec::Table(gen_cyclic(&fsp, &a, &b, &mut rng));
            let v = check_cyclic_remark(&space, &sa, &sb, &map, 0)?;
            record(&mut summary, "cyclic", Some(&map), v);
        }
    }
    Ok(summary)
}
