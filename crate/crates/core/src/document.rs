//! Reading and writing instance and outcome documents.
//!
//! An instance document is JSON:
//!
//! ```json
//! {
//!   "limit": "2",
//!   "candidates": [{"id": "a", "cost": "1"}, {"id": "b", "cost": "0.9"}],
//!   "voters": [{"id": "1", "weight": "1", "prefs": [["a", "b"]]}]
//! }
//! ```
//!
//! Numbers may be strings (`"0.9"`, `"9/10"`) or JSON numbers; both are read
//! exactly. `prefs` lists equivalence classes from most to least preferred and
//! unlisted candidates form an implicit last class. `weight` defaults to 1.

use serde_json::{json, Map, Value};

use crate::error::{InstanceError, Result};
use crate::instance::{Candidate, CandidateSet, PbInstance, Voter, WeakOrder};
use crate::outcome::Outcome;
use crate::rat::Rat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Rescale voter weights so that they sum to the number of voters.
    pub normalize: bool,
    /// Treat the document as a multi-winner election with committee size
    /// `k`: costs and weights become 1 and the limit becomes `k`.
    pub multiwinner: Option<u64>,
}

struct Reader<'a> {
    text: &'a str,
}

impl Reader<'_> {
    fn line_of(&self, needle: &str) -> Option<usize> {
        let quoted = format!("\"{needle}\"");
        let pos = self.text.find(&quoted)?;
        Some(self.text[..pos].matches('\n').count() + 1)
    }

    fn invalid(&self, path: impl Into<String>, anchor: Option<&str>, message: impl Into<String>) -> InstanceError {
        InstanceError::Invalid {
            path: path.into(),
            line: anchor.and_then(|a| self.line_of(a)),
            message: message.into(),
        }
    }

    fn scalar(&self, value: &Value, path: &str) -> Result<String, InstanceError> {
        match value {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(self.invalid(path, None, "expected a string or a number")),
        }
    }

    fn rat(&self, value: &Value, path: &str) -> Result<Rat, InstanceError> {
        let text = self.scalar(value, path)?;
        text.parse()
            .map_err(|e: crate::error::RatParseError| self.invalid(path, Some(&text), e.to_string()))
    }

    fn field<'v>(&self, obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value, InstanceError> {
        obj.get(key)
            .ok_or_else(|| self.invalid(path, None, format!("missing field {key:?}")))
    }

    fn array<'v>(&self, value: &'v Value, path: &str) -> Result<&'v Vec<Value>, InstanceError> {
        value
            .as_array()
            .ok_or_else(|| self.invalid(path, None, "expected an array"))
    }

    fn object<'v>(&self, value: &'v Value, path: &str) -> Result<&'v Map<String, Value>, InstanceError> {
        value
            .as_object()
            .ok_or_else(|| self.invalid(path, None, "expected an object"))
    }
}

fn syntax_error(e: serde_json::Error) -> InstanceError {
    InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str, opts: &ParseOptions) -> Result<PbInstance> {
    let doc: Value = serde_json::from_str(text).map_err(syntax_error)?;
    let rd = Reader { text };
    let top = rd.object(&doc, "$")?;
    let mw = opts.multiwinner;

    let limit = match (mw, top.get("limit")) {
        (Some(k), _) => Rat::from_integer(k as i64),
        (None, Some(v)) => rd.rat(v, "limit")?,
        (None, None) => return Err(rd.invalid("$", None, "missing field \"limit\"").into()),
    };

    let mut candidates = Vec::new();
    for (k, c) in rd.array(rd.field(top, "candidates", "$")?, "candidates")?.iter().enumerate() {
        let path = format!("candidates[{k}]");
        let obj = rd.object(c, &path)?;
        let id = rd.scalar(rd.field(obj, "id", &path)?, &format!("{path}.id"))?;
        let cost = match (mw, obj.get("cost")) {
            (Some(_), _) => Rat::one(),
            (None, Some(v)) => rd.rat(v, &format!("{path}.cost"))?,
            (None, None) => return Err(rd.invalid(&path, Some(&id), "missing field \"cost\"").into()),
        };
        if !cost.is_positive() {
            return Err(rd.invalid(&path, Some(&id), format!("cost of {id:?} must be positive, got {cost}")).into());
        }
        if candidates.iter().any(|x: &Candidate| x.id == id) {
            return Err(rd.invalid(&path, Some(&id), format!("duplicate candidate id {id:?}")).into());
        }
        candidates.push(Candidate { id, cost });
    }

    let mut voters = Vec::new();
    for (k, v) in rd.array(rd.field(top, "voters", "$")?, "voters")?.iter().enumerate() {
        let path = format!("voters[{k}]");
        let obj = rd.object(v, &path)?;
        let id = rd.scalar(rd.field(obj, "id", &path)?, &format!("{path}.id"))?;
        if voters.iter().any(|x: &Voter| x.id == id) {
            return Err(rd.invalid(&path, Some(&id), format!("duplicate voter id {id:?}")).into());
        }
        let weight = match (mw, obj.get("weight")) {
            (Some(_), _) | (None, None) => Rat::one(),
            (None, Some(w)) => rd.rat(w, &format!("{path}.weight"))?,
        };
        if weight.is_negative() {
            return Err(rd.invalid(&path, Some(&id), format!("weight of {id:?} must be nonnegative, got {weight}")).into());
        }
        let prefs_path = format!("{path}.prefs");
        let mut classes = Vec::new();
        let raw_classes = match obj.get("prefs") {
            Some(p) => rd.array(p, &prefs_path)?.clone(),
            None => Vec::new(),
        };
        for (l, class) in raw_classes.iter().enumerate() {
            let class_path = format!("{prefs_path}[{l}]");
            let mut members = Vec::new();
            for member in rd.array(class, &class_path)? {
                let cid = rd.scalar(member, &class_path)?;
                let c = candidates
                    .iter()
                    .position(|x| x.id == cid)
                    .ok_or_else(|| rd.invalid(&class_path, Some(&cid), format!("unknown candidate {cid:?}")))?;
                members.push(c);
            }
            classes.push(members);
        }
        let prefs = WeakOrder::new(classes, candidates.len()).map_err(|msg| {
            // Translate index-based messages back to ids.
            let msg = candidates
                .iter()
                .enumerate()
                .fold(msg, |m, (c, cand)| m.replace(&format!("candidate index {c} "), &format!("candidate {:?} ", cand.id)));
            rd.invalid(&prefs_path, Some(&id), msg)
        })?;
        voters.push(Voter { id, weight, prefs });
    }

    let n = Rat::from_usize(voters.len());
    let total: Rat = voters.iter().map(|v| &v.weight).sum();
    if total != n {
        if opts.normalize && total.is_positive() {
            let scale = &n / &total;
            for v in &mut voters {
                v.weight = &v.weight * &scale;
            }
        } else if opts.normalize {
            return Err(rd.invalid("voters", None, "cannot normalize weights that sum to zero").into());
        } else {
            return Err(rd
                .invalid(
                    "voters",
                    None,
                    format!(
                        "weights sum to {total} but must sum to the number of voters ({}); use normalize to rescale",
                        voters.len()
                    ),
                )
                .into());
        }
    }
    PbInstance::new(voters, candidates, limit)
}

/// The canonical document for an instance: every number as `p/q`, every
/// equivalence class listed explicitly.
pub fn instance_to_value(inst: &PbInstance) -> Value {
    let candidates: Vec<Value> = inst
        .candidates()
        .iter()
        .map(|c| json!({"id": c.id, "cost": c.cost.to_string()}))
        .collect();
    let voters: Vec<Value> = inst
        .voters()
        .iter()
        .map(|v| {
            let prefs: Vec<Vec<&str>> = v
                .prefs
                .classes()
                .iter()
                .map(|class| class.iter().map(|&c| inst.candidates()[c].id.as_str()).collect())
                .collect();
            json!({"id": v.id, "weight": v.weight.to_string(), "prefs": prefs})
        })
        .collect();
    json!({
        "limit": inst.limit().to_string(),
        "candidates": candidates,
        "voters": voters,
    })
}

pub fn instance_to_string(inst: &PbInstance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_to_value(inst)).expect("json");
    s.push('\n');
    s
}

/// Parses an outcome document: either `{"selected": [ids...]}` or a bare
/// array of candidate ids.
pub fn parse_outcome(inst: &PbInstance, text: &str) -> Result<Outcome> {
    let doc: Value = serde_json::from_str(text).map_err(syntax_error)?;
    let rd = Reader { text };
    let list = match &doc {
        Value::Array(a) => a,
        Value::Object(o) => rd.array(rd.field(o, "selected", "$")?, "selected")?,
        _ => return Err(rd.invalid("$", None, "expected an object or an array").into()),
    };
    let mut set = CandidateSet::new();
    for (k, v) in list.iter().enumerate() {
        let id = rd.scalar(v, &format!("selected[{k}]"))?;
        set.insert(inst.candidate_index(&id)?);
    }
    Outcome::new(inst, set)
}

pub fn outcome_to_value(inst: &PbInstance, w: &Outcome) -> Value {
    json!({
        "selected": inst.candidate_ids(w.selected()),
        "cost": w.total_cost().to_string(),
    })
}

/// Builds instances from string literals; convenient for fixtures and tests.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    limit: String,
    candidates: Vec<(String, String)>,
    voters: Vec<(String, String, Vec<Vec<String>>)>,
}

impl InstanceBuilder {
    pub fn new(limit: &str) -> Self {
        InstanceBuilder {
            limit: limit.to_string(),
            ..Default::default()
        }
    }

    pub fn candidate(mut self, id: &str, cost: &str) -> Self {
        self.candidates.push((id.to_string(), cost.to_string()));
        self
    }

    /// Adds candidates with the given ids, all of cost `cost`.
    pub fn candidates(mut self, ids: &[&str], cost: &str) -> Self {
        for id in ids {
            self.candidates.push((id.to_string(), cost.to_string()));
        }
        self
    }

    pub fn voter(mut self, id: &str, weight: &str, prefs: &[&[&str]]) -> Self {
        let prefs = prefs
            .iter()
            .map(|class| class.iter().map(|c| c.to_string()).collect())
            .collect();
        self.voters.push((id.to_string(), weight.to_string(), prefs));
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "limit": self.limit,
            "candidates": self.candidates.iter().map(|(id, cost)| json!({"id": id, "cost": cost})).collect::<Vec<_>>(),
            "voters": self.voters.iter().map(|(id, w, p)| json!({"id": id, "weight": w, "prefs": p})).collect::<Vec<_>>(),
        })
    }

    pub fn build(&self) -> Result<PbInstance> {
        self.build_with(&ParseOptions::default())
    }

    pub fn build_with(&self, opts: &ParseOptions) -> Result<PbInstance> {
        let text = serde_json::to_string_pretty(&self.to_value()).expect("json");
        parse_instance(&text, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<PbInstance> {
        parse_instance(text, &ParseOptions::default())
    }

    #[test]
    fn single_voter_strict_order() {
        let inst = parse(
            r#"{"limit": "4",
                "candidates": [{"id":"a","cost":"3"},{"id":"b","cost":"2"},{"id":"c","cost":"2"},{"id":"d","cost":"2"}],
                "voters": [{"id":"1","weight":"1","prefs":[["a"],["b"],["c"],["d"]]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.num_voters(), 1);
        assert_eq!(inst.prefs(0).num_classes(), 4);
        assert!(inst.is_strict());
        assert_eq!(inst.limit(), &Rat::from_integer(4));
    }

    #[test]
    fn partial_ranking_gets_final_class() {
        let inst = parse(
            r#"{"limit": "1", "candidates": [{"id":"a","cost":"1"},{"id":"b","cost":"1"},{"id":"c","cost":"1"}],
                "voters": [{"id":"1","prefs":[["a"]]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.prefs(0).classes(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn json_numbers_are_exact() {
        let inst = parse(
            r#"{"limit": 2, "candidates": [{"id":"a","cost":0.9},{"id":"b","cost":1.1}],
                "voters": [{"id":1,"weight":1,"prefs":[["a"]]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.cost(0), &Rat::new(9, 10));
        assert_eq!(inst.cost(1), &Rat::new(11, 10));
        assert_eq!(inst.voters()[0].id, "1");
    }

    #[test]
    fn weights_must_sum_to_n_unless_normalized() {
        let text = r#"{"limit": "1", "candidates": [{"id":"a","cost":"1"}],
            "voters": [{"id":"1","weight":"2"},{"id":"2","weight":"0"},{"id":"3","weight":"2"}]}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("weights sum to 4/1"), "{err}");
        let inst = parse_instance(text, &ParseOptions { normalize: true, ..Default::default() }).unwrap();
        let weights: Vec<String> = inst.voters().iter().map(|v| v.weight.to_string()).collect();
        assert_eq!(weights, ["3/2", "0/1", "3/2"]);
    }

    #[test]
    fn validation_errors() {
        let cases = [
            (r#"{"limit":"0","candidates":[],"voters":[]}"#, "limit must be positive"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"0"}],"voters":[]}"#, "must be positive"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"},{"id":"a","cost":"1"}],"voters":[]}"#, "duplicate candidate"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"}],"voters":[{"id":"1"},{"id":"1"}]}"#, "duplicate voter"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"}],"voters":[{"id":"1","prefs":[["z"]]}]}"#, "unknown candidate"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"}],"voters":[{"id":"1","prefs":[["a"],["a"]]}]}"#, "ranked twice"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"x"}],"voters":[]}"#, "invalid number"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"}],"voters":[{"id":"1","weight":"-1"}]}"#, "nonnegative"),
            (r#"{"limit":"1","candidates":[{"id":"a","cost":"1"}]}"#, "missing field \"voters\""),
            (r#"[1,2]"#, "expected an object"),
        ];
        for (text, expected) in cases {
            let err = parse(text).unwrap_err().to_string();
            assert!(err.contains(expected), "{text}: {err}");
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "{\n \"limit\": \"1\",\n \"candidates\": [\n  {\"id\": \"a\", \"cost\": \"1\"},\n  {\"id\": \"a\", \"cost\": \"2\"}\n ],\n \"voters\": []\n}";
        let err = parse(text).unwrap_err().to_string();
        assert!(err.starts_with("line 4:"), "{err}");
        let err = parse("{\n \"limit\": \"1\",\n oops\n}").unwrap_err().to_string();
        assert!(err.starts_with("line 3"), "{err}");
    }

    #[test]
    fn multiwinner_flag_overrides_costs() {
        let text = r#"{"candidates": [{"id":"a"},{"id":"b"},{"id":"c"}],
            "voters": [{"id":"1","prefs":[["a"]]},{"id":"2","prefs":[["b","c"]]}]}"#;
        let inst = parse_instance(text, &ParseOptions { multiwinner: Some(2), ..Default::default() }).unwrap();
        assert_eq!(inst.committee_size(), Some(2));
        assert!(parse(text).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let inst = InstanceBuilder::new("2")
            .candidate("a", "1")
            .candidate("b", "0.9")
            .candidate("c", "1")
            .voter("1", "1", &[&["a", "b"]])
            .voter("2", "1", &[&["a"]])
            .build()
            .unwrap();
        let text = instance_to_string(&inst);
        let back = parse(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(instance_to_string(&back), text);
        assert!(text.contains("\"9/10\""));
    }

    #[test]
    fn outcome_documents() {
        let inst = InstanceBuilder::new("2")
            .candidates(&["a", "b", "c"], "1")
            .voter("1", "1", &[])
            .build()
            .unwrap();
        let w = parse_outcome(&inst, r#"{"selected": ["c", "a"]}"#).unwrap();
        assert_eq!(w.selected().as_slice(), &[0, 2]);
        assert!(parse_outcome(&inst, r#"["a","b","c"]"#).is_err());
        assert!(parse_outcome(&inst, r#"["q"]"#).is_err());
    }
}
