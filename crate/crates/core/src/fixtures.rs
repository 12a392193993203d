//! Worked examples shipped with the crate, each with a sidecar of expected
//! verdicts.
//!
//! A check's `verdict` is what the definitions give. When a published claim
//! about the same check differs, the sidecar keeps it under `published`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::document::{parse_instance, ParseOptions};
use crate::error::{PbError, Result};
use crate::instance::PbInstance;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub description: String,
    #[serde(default)]
    pub checks: Vec<ExpectedCheck>,
    #[serde(default)]
    pub coalitions: Vec<ExpectedCoalition>,
    pub knapsack: Option<ExpectedKnapsack>,
    pub ear: Option<ExpectedEar>,
    #[serde(default)]
    pub search: Vec<ExpectedSearch>,
    pub cpsc_exists: Option<bool>,
    pub feasible_outcomes: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCheck {
    pub outcome: Vec<String>,
    pub axiom: String,
    pub verdict: String,
    pub published: Option<String>,
    pub witness: Option<ExpectedWitness>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedWitness {
    pub voters: Vec<String>,
    pub candidates: Vec<String>,
    pub candidate: Option<String>,
    pub bundle: Option<Vec<String>>,
    pub covered: Option<String>,
    pub quota: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCoalition {
    pub voters: Vec<String>,
    pub candidates: Vec<String>,
    pub solid: bool,
    pub bar: Vec<String>,
    pub outcome: Vec<String>,
    /// Candidate through which this coalition violates IPSC for `outcome`.
    pub ipsc_violation: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedKnapsack {
    pub capacity: String,
    pub weight: String,
    pub set: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedEar {
    /// Returned under every configuration.
    pub outcome: Vec<String>,
    #[serde(default)]
    pub first_level_support: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSearch {
    pub axiom: String,
    #[serde(default)]
    pub empty: bool,
    #[serde(default)]
    pub contains: Vec<Vec<String>>,
}

/// An embedded fixture.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub instance: &'static str,
    pub expected: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            instance: include_str!(concat!("../fixtures/", $name, ".json")),
            expected: include_str!(concat!("../fixtures/", $name, ".expected.json")),
        }
    };
}

pub const ALL: [Fixture; 6] = [
    fixture!("ipsc_not_cpsc"),
    fixture!("cpsc_not_ipsc"),
    fixture!("pjr_not_ipsc"),
    fixture!("ear_non_reachability"),
    fixture!("cpsc_nonexistence"),
    fixture!("knapsack_single_voter"),
];

impl Fixture {
    pub fn by_name(name: &str) -> Option<Fixture> {
        ALL.into_iter().find(|f| f.name == name)
    }

    pub fn load(&self) -> Result<PbInstance> {
        parse_instance(self.instance, &ParseOptions::default()).map_err(|e| PbError::Fixture {
            name: self.name.to_string(),
            message: e.to_string(),
        })
    }

    pub fn expected(&self) -> Result<Expected> {
        serde_json::from_str(self.expected).map_err(|e| PbError::Fixture {
            name: self.name.to_string(),
            message: e.to_string(),
        })
    }
}

/// Loads a fixture by name; panics if it is missing or malformed.
pub fn instance(name: &str) -> PbInstance {
    Fixture::by_name(name)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
        .load()
        .unwrap()
}
