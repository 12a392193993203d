//! Text and JSON renderings of outcomes, verdicts and witnesses. Every
//! number is printed as an exact `p/q` string.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use crate::instance::{CandidateSet, PbInstance, VoterSet};
use crate::outcome::Outcome;
use crate::verify::{Axiom, Detail, Verdict, Witness};

/// `{a,b}` in input order.
pub fn candidate_list(inst: &PbInstance, set: &CandidateSet) -> String {
    format!("{{{}}}", inst.candidate_ids(set).join(","))
}

pub fn voter_list(inst: &PbInstance, set: &VoterSet) -> String {
    format!("{{{}}}", inst.voter_ids(set).join(","))
}

fn ids_value(ids: Vec<&str>) -> Value {
    Value::Array(ids.into_iter().map(|s| Value::String(s.to_string())).collect())
}

pub fn witness_to_value(inst: &PbInstance, wit: &Witness) -> Value {
    let mut obj = Map::new();
    obj.insert("voters".into(), ids_value(inst.voter_ids(&wit.voters)));
    obj.insert("candidates".into(), ids_value(inst.candidate_ids(&wit.candidates)));
    match &wit.detail {
        Detail::Candidate(c) => {
            obj.insert("candidate".into(), Value::String(inst.candidates()[*c].id.clone()));
        }
        Detail::Bundle(b) => {
            obj.insert("bundle".into(), ids_value(inst.candidate_ids(b)));
        }
        Detail::Level { level, bundle } => {
            obj.insert("level".into(), json!(level));
            if let Some(b) = bundle {
                obj.insert("bundle".into(), ids_value(inst.candidate_ids(b)));
            }
        }
    }
    obj.insert("covered".into(), Value::String(wit.covered.to_string()));
    obj.insert("claim".into(), Value::String(wit.claim.to_string()));
    obj.insert("quota".into(), Value::String(wit.quota.to_string()));
    Value::Object(obj)
}

pub fn verdict_to_value(inst: &PbInstance, axiom: Axiom, verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Satisfied => json!({"axiom": axiom.name(), "status": "satisfied"}),
        Verdict::Violated(wit) => json!({
            "axiom": axiom.name(),
            "status": "violated",
            "witness": witness_to_value(inst, wit),
        }),
    }
}

/// A multi-line witness block, indented by two spaces.
pub fn witness_block(inst: &PbInstance, wit: &Witness) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  N'  = {}", voter_list(inst, &wit.voters));
    let _ = writeln!(out, "  C'  = {}", candidate_list(inst, &wit.candidates));
    match &wit.detail {
        Detail::Candidate(c) => {
            let _ = writeln!(out, "  c*  = {}", inst.candidates()[*c].id);
        }
        Detail::Bundle(b) => {
            let _ = writeln!(out, "  C'' = {}", candidate_list(inst, b));
        }
        Detail::Level { level, bundle } => {
            let _ = writeln!(out, "  l   = {level}");
            if let Some(b) = bundle {
                let _ = writeln!(out, "  C'' = {}", candidate_list(inst, b));
            }
        }
    }
    let _ = writeln!(out, "  covered = {}", wit.covered);
    let _ = writeln!(out, "  claim   = {}", wit.claim);
    let _ = writeln!(out, "  quota   = {}", wit.quota);
    out
}

/// `axiom: satisfied`, or `axiom: violated` followed by the witness.
pub fn verdict_text(inst: &PbInstance, axiom: Axiom, verdict: &Verdict) -> String {
    match verdict {
        Verdict::Satisfied => format!("{axiom}: satisfied\n"),
        Verdict::Violated(wit) => format!("{axiom}: violated\n{}", witness_block(inst, wit)),
    }
}

/// Selected candidates, total cost and the unspent budget.
pub fn outcome_text(inst: &PbInstance, w: &Outcome) -> String {
    format!(
        "outcome: {}\ncost: {}\nslack: {}\n",
        inst.candidate_ids(w.selected()).join(","),
        w.total_cost(),
        inst.limit() - w.total_cost()
    )
}
