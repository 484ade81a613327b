//! Hypotheses-checked / conclusion-verified records shared by the
//! proximity layer and the theorem harness.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Hypothesis {
    pub fn new(name: &str, holds: bool, witness: Option<String>) -> Self {
        Hypothesis {
            name: name.to_string(),
            holds,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    /// All hypotheses hold; only then is the conclusion evaluated.
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_label: Option<String>,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

impl TheoremVerdict {
    pub fn new(theorem: &str) -> Self {
        TheoremVerdict {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            applicable: true,
            conclusion_verified: None,
            case_label: None,
            witnesses: Vec::new(),
            discrepancy: None,
        }
    }

    pub fn hypothesis(&mut self, name: &str, holds: bool, witness: Option<String>) -> bool {
        self.hypotheses.push(Hypothesis::new(name, holds, witness));
        if !holds {
            self.applicable = false;
        }
        holds
    }

    pub fn inapplicable(mut self) -> Self {
        self.applicable = false;
        self.conclusion_verified = None;
        self
    }

    /// No conclusion failure: inapplicable verdicts and discrepancy-free
    /// verified conclusions both count as ok.
    pub fn ok(&self) -> bool {
        (!self.applicable || self.conclusion_verified == Some(true)) && self.discrepancy.is_none()
    }
}
