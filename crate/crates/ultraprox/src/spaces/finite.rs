//! Finite ultrametric spaces given by an explicit distance matrix, with
//! full axiom validation (the strong triangle inequality included).

use serde::Serialize;

use crate::error::Error;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteUltraSpace {
    labels: Vec<String>,
    dist: Vec<Ratio>, // row-major n x n
}

/// First witness of each violated axiom family, if any.
#[derive(Clone, Debug, Serialize, Default)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl FiniteUltraSpace {
    /// Build from labels and a full symmetric matrix. Shape and label
    /// distinctness are checked here; metric axioms via [`Self::validate`].
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Ratio>>) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSpace("no points".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidSpace(format!("duplicate label {l:?}")));
            }
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!("distance matrix is not {n}x{n}")));
        }
        Ok(FiniteUltraSpace {
            labels,
            dist: dist.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn distance(&self, i: usize, j: usize) -> &Ratio {
        &self.dist[i * self.labels.len() + j]
    }

    /// Distinct distance values occurring in the matrix, sorted ascending.
    pub fn distance_values(&self) -> Vec<Ratio> {
        let mut vals: Vec<Ratio> = Vec::new();
        for d in &self.dist {
            if !vals.contains(d) {
                vals.push(d.clone());
            }
        }
        vals.sort();
        vals
    }

    /// Checks all three axiom families over every point/pair/triple:
    /// zero diagonal with d(x,y)=0 iff x=y, symmetry, and the strong
    /// triangle inequality. Reports the first violation of each family.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut report = ValidationReport {
            valid: true,
            violations: Vec::new(),
        };
        let fail = |msg: String, report: &mut ValidationReport| {
            report.valid = false;
            report.violations.push(msg);
        };
        'identity: for i in 0..n {
            for j in 0..n {
                let d = self.distance(i, j);
                if (i == j) != d.is_zero() {
                    fail(
                        format!(
                            "identity violated at ({}, {}): d = {}",
                            self.label(i),
                            self.label(j),
                            d
                        ),
                        &mut report,
                    );
                    break 'identity;
                }
            }
        }
        'symmetry: for i in 0..n {
            for j in (i + 1)..n {
                if self.distance(i, j) != self.distance(j, i) {
                    fail(
                        format!(
                            "symmetry violated at ({}, {})",
                            self.label(i),
                            self.label(j)
                        ),
                        &mut report,
                    );
                    break 'symmetry;
                }
            }
        }
        'strong: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.distance(i, j);
                    let bound = self.distance(i, k).clone().max(self.distance(k, j).clone());
                    if *lhs > bound {
                        fail(
                            format!(
                                "strong triangle inequality violated at triple ({}, {}, {}): {} > max({}, {})",
                                self.label(i),
                                self.label(j),
                                self.label(k),
                                lhs,
                                self.distance(i, k),
                                self.distance(k, j)
                            ),
                            &mut report,
                        );
                        break 'strong;
                    }
                }
            }
        }
        report
    }

    /// The 4-point space from Kirk and Shahzad: two clusters at 1/2 with
    /// cross distance 1.
    pub fn ex1() -> Self {
        let h = Ratio::new(1, 2).unwrap();
        let o = Ratio::one();
        let z = Ratio::zero();
        FiniteUltraSpace::new(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            vec![
                vec![z.clone(), h.clone(), o.clone(), o.clone()],
                vec![h.clone(), z.clone(), o.clone(), o.clone()],
                vec![o.clone(), o.clone(), z.clone(), h.clone()],
                vec![o.clone(), o.clone(), h.clone(), z.clone()],
            ],
        )
        .unwrap()
    }

    /// Two 2-point clusters {a1,a2}, {b1,b2}: within-cluster distance 1/4,
    /// cross distance 1/2. Used throughout the harness tests.
    pub fn two_cluster() -> Self {
        let q = Ratio::new(1, 4).unwrap();
        let h = Ratio::new(1, 2).unwrap();
        let z = Ratio::zero();
        FiniteUltraSpace::new(
            ["a1", "a2", "b1", "b2"].iter().map(|s| s.to_string()).collect(),
            vec![
                vec![z.clone(), q.clone(), h.clone(), h.clone()],
                vec![q.clone(), z.clone(), h.clone(), h.clone()],
                vec![h.clone(), h.clone(), z.clone(), q.clone()],
                vec![h.clone(), h.clone(), q.clone(), z.clone()],
            ],
        )
        .unwrap()
    }
}
