//! The PB Expanding Approvals Rule.
//!
//! Rank levels grow from 1. At each level a candidate is affordable to its
//! supporters when their residual weight reaches `n·w(c)/L`; one affordable
//! candidate is funded and its supporters pay exactly that amount.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::instance::{CandidateSet, PbInstance, VoterSet};
use crate::outcome::Outcome;
use crate::rat::Rat;

/// How to pick one candidate from the affordable set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Selection {
    /// First in input order.
    #[default]
    Lexicographic,
    /// Cheapest, then input order.
    MinCost,
    /// Largest support, then input order.
    MaxSupport,
}

/// How supporters pay for a funded candidate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Reweighting {
    /// Every supporter's weight is scaled by the same factor.
    #[default]
    Proportional,
    /// Supporters are drained one at a time in voter input order.
    LexDepletion,
}

impl Selection {
    pub const ALL: [Selection; 3] = [Selection::Lexicographic, Selection::MinCost, Selection::MaxSupport];

    pub fn name(self) -> &'static str {
        match self {
            Selection::Lexicographic => "lex",
            Selection::MinCost => "min-cost",
            Selection::MaxSupport => "max-support",
        }
    }
}

impl Reweighting {
    pub const ALL: [Reweighting; 2] = [Reweighting::Proportional, Reweighting::LexDepletion];

    pub fn name(self) -> &'static str {
        match self {
            Reweighting::Proportional => "proportional",
            Reweighting::LexDepletion => "lex-depletion",
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Reweighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Selection::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown selection rule `{s}` (expected lex, min-cost or max-support)"))
    }
}

impl FromStr for Reweighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Reweighting::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown reweighting rule `{s}` (expected proportional or lex-depletion)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EarConfig {
    pub selection: Selection,
    pub reweighting: Reweighting,
}

impl EarConfig {
    /// Every combination of rules, reweighting outermost.
    pub fn all() -> impl Iterator<Item = EarConfig> {
        Reweighting::ALL.into_iter().flat_map(|reweighting| {
            Selection::ALL
                .into_iter()
                .map(move |selection| EarConfig { selection, reweighting })
        })
    }
}

impl fmt::Display for EarConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.selection, self.reweighting)
    }
}

/// One pass of the main loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarStep {
    pub level: usize,
    /// Support and threshold of every unselected candidate, in input order.
    pub support: Vec<(usize, Rat, Rat)>,
    pub eligible: CandidateSet,
    pub chosen: Option<usize>,
    pub supporters: VoterSet,
    /// Amount taken from each supporter, in voter input order.
    pub deductions: Vec<(usize, Rat)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EarTrace {
    pub steps: Vec<EarStep>,
    /// Residual weights when the loop ends.
    pub residual: Vec<Rat>,
}

impl EarTrace {
    pub fn to_value(&self, inst: &PbInstance, config: EarConfig) -> Value {
        let cand = |c: usize| Value::String(inst.candidates()[c].id.clone());
        let voter = |i: usize| Value::String(inst.voters()[i].id.clone());
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let support: Vec<Value> = s
                    .support
                    .iter()
                    .map(|(c, sup, thr)| {
                        json!({
                            "candidate": cand(*c),
                            "support": sup.to_string(),
                            "threshold": thr.to_string(),
                        })
                    })
                    .collect();
                let mut deductions = Map::new();
                for (i, d) in &s.deductions {
                    deductions.insert(inst.voters()[*i].id.clone(), Value::String(d.to_string()));
                }
                json!({
                    "level": s.level,
                    "support": support,
                    "eligible": s.eligible.iter().map(cand).collect::<Vec<_>>(),
                    "chosen": s.chosen.map_or(Value::Null, cand),
                    "supporters": s.supporters.iter().map(voter).collect::<Vec<_>>(),
                    "deductions": deductions,
                })
            })
            .collect();
        let mut residual = Map::new();
        for (i, b) in self.residual.iter().enumerate() {
            residual.insert(inst.voters()[i].id.clone(), Value::String(b.to_string()));
        }
        json!({
            "selection": config.selection.name(),
            "reweighting": config.reweighting.name(),
            "steps": steps,
            "residual": residual,
        })
    }
}

/// Residual weight of the voters whose top-`j` set contains `c`.
pub fn support_of(inst: &PbInstance, residual: &[Rat], j: usize, c: usize) -> Rat {
    (0..inst.num_voters())
        .filter(|&i| inst.prefs(i).top(j).contains(c))
        .map(|i| &residual[i])
        .sum()
}

pub fn pb_ear(inst: &PbInstance, config: &EarConfig) -> (Outcome, EarTrace) {
    let m = inst.num_candidates();
    let n = inst.n();
    let limit = inst.limit();
    let threshold = |c: usize| &n * inst.cost(c) / limit;

    let mut residual: Vec<Rat> = inst.voters().iter().map(|v| v.weight.clone()).collect();
    let mut selected = CandidateSet::new();
    let mut spent = Rat::zero();
    let mut steps = Vec::new();
    let mut level = 1;

    // Top-j sets stop changing at j = m, where they are all of C.
    let tops: Vec<Vec<CandidateSet>> = (0..inst.num_voters())
        .map(|i| (1..=m.max(1)).map(|j| inst.prefs(i).top(j)).collect())
        .collect();
    let top = |i: usize, j: usize| &tops[i][j.min(m.max(1)) - 1];

    while (0..m).any(|c| !selected.contains(c) && &spent + inst.cost(c) <= *limit) {
        assert!(level <= m + 1, "rank level {level} passed m+1 = {}", m + 1);
        let support: Vec<(usize, Rat, Rat)> = (0..m)
            .filter(|&c| !selected.contains(c))
            .map(|c| {
                let s: Rat = (0..inst.num_voters())
                    .filter(|&i| top(i, level).contains(c))
                    .map(|i| &residual[i])
                    .sum();
                (c, s, threshold(c))
            })
            .collect();
        let eligible: CandidateSet = support.iter().filter(|(_, s, t)| s >= t).map(|(c, _, _)| *c).collect();
        for c in eligible.iter() {
            assert!(
                &spent + inst.cost(c) <= *limit,
                "affordable candidate {} exceeds the remaining budget",
                inst.candidates()[c].id
            );
        }

        let pick = eligible.iter().min_by(|&a, &b| {
            let key = |c: usize| support.iter().find(|(d, _, _)| *d == c).map(|(_, s, _)| s).unwrap();
            match config.selection {
                Selection::Lexicographic => a.cmp(&b),
                Selection::MinCost => inst.cost(a).cmp(inst.cost(b)).then(a.cmp(&b)),
                Selection::MaxSupport => key(b).cmp(key(a)).then(a.cmp(&b)),
            }
        });
        let Some(chosen) = pick else {
            steps.push(EarStep {
                level,
                support,
                eligible,
                chosen: None,
                supporters: VoterSet::new(),
                deductions: Vec::new(),
            });
            level += 1;
            continue;
        };

        let supporters: VoterSet = (0..inst.num_voters()).filter(|&i| top(i, level).contains(chosen)).collect();
        let charge = threshold(chosen);
        let deductions = charge_supporters(&mut residual, &supporters, &charge, config.reweighting);
        debug_assert_eq!(deductions.iter().map(|(_, d)| d).sum::<Rat>(), charge);

        selected.insert(chosen);
        spent += inst.cost(chosen);
        assert!(residual.iter().all(|b| !b.is_negative()), "residual weight went negative");
        let left: Rat = residual.iter().sum();
        assert_eq!(left, &n - &spent * &n / limit, "residual weight not conserved");

        steps.push(EarStep {
            level,
            support,
            eligible,
            chosen: Some(chosen),
            supporters,
            deductions,
        });
    }

    let outcome = Outcome::new(inst, selected).expect("PB-EAR stays within the limit");
    (outcome, EarTrace { steps, residual })
}

fn charge_supporters(residual: &mut [Rat], supporters: &VoterSet, charge: &Rat, rule: Reweighting) -> Vec<(usize, Rat)> {
    let pool: Rat = supporters.iter().map(|i| &residual[i]).sum();
    assert!(pool >= *charge, "supporters hold {pool}, need {charge}");
    match rule {
        Reweighting::Proportional => supporters
            .iter()
            .map(|i| {
                // b_i · charge / pool, so that b_i ends at b_i · (1 − charge/pool).
                let d = if pool.is_zero() { Rat::zero() } else { &residual[i] * charge / &pool };
                residual[i] -= &d;
                (i, d)
            })
            .collect(),
        Reweighting::LexDepletion => {
            let mut left = charge.clone();
            supporters
                .iter()
                .map(|i| {
                    let d = residual[i].clone().min(left.clone());
                    residual[i] -= &d;
                    left -= &d;
                    (i, d)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::InstanceBuilder;
    use crate::rat::Rat;

    fn mw_example() -> PbInstance {
        InstanceBuilder::new("2")
            .candidates(&["w", "x", "y", "z"], "1")
            .voter("1", "1", &[&["w"]])
            .voter("2", "1", &[&["w"]])
            .voter("3", "1", &[&["x"]])
            .voter("4", "1", &[&["x", "y"]])
            .build()
            .unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn mw_example_under_every_config() {
        let inst = mw_example();
        for cfg in EarConfig::all() {
            let (w, _) = pb_ear(&inst, &cfg);
            assert_eq!(inst.candidate_ids(w.selected()), ["w", "x"], "{cfg}");
        }
    }

    #[test]
    fn first_level_support() {
        let inst = mw_example();
        let b = vec![Rat::one(); 4];
        let sup: Vec<Rat> = (0..4).map(|c| support_of(&inst, &b, 1, c)).collect();
        assert_eq!(sup, [r("2"), r("2"), r("1"), r("0")]);
        // Past the last rank every voter supports every candidate.
        assert_eq!(support_of(&inst, &b, 4, 3), r("4"));
        assert_eq!(support_of(&inst, &b, 9, 3), r("4"));
    }

    #[test]
    fn supporters_of_x_untouched_by_w() {
        let inst = mw_example();
        let (_, trace) = pb_ear(&inst, &EarConfig::default());
        let first = &trace.steps[0];
        assert_eq!(first.chosen, Some(0));
        let second = &trace.steps[1];
        let x = second.support.iter().find(|(c, _, _)| *c == 1).unwrap();
        assert_eq!(x.1, r("2"));
    }

    #[test]
    fn single_candidate_costing_the_limit() {
        let inst = InstanceBuilder::new("7/2").candidate("a", "7/2").voter("1", "1", &[]).build().unwrap();
        let (w, trace) = pb_ear(&inst, &EarConfig::default());
        assert_eq!(w.selected().as_slice(), [0]);
        assert_eq!(trace.residual, [r("0")]);
    }

    #[test]
    fn deductions_sum_to_the_threshold() {
        let inst = InstanceBuilder::new("2")
            .candidate("a", "1")
            .candidate("b", "9/10")
            .candidate("c", "1")
            .voter("1", "1", &[&["a", "b"]])
            .voter("2", "1", &[&["a"]])
            .voter("3", "1", &[&["c"]])
            .voter("4", "1", &[&["c"]])
            .build()
            .unwrap();
        for cfg in EarConfig::all() {
            let (_, trace) = pb_ear(&inst, &cfg);
            for step in &trace.steps {
                let paid: Rat = step.deductions.iter().map(|(_, d)| d).sum();
                match step.chosen {
                    Some(c) => assert_eq!(paid, r("4") * inst.cost(c) / r("2")),
                    None => assert!(paid.is_zero()),
                }
            }
        }
    }

    #[test]
    fn empty_levels_are_recorded() {
        // Nobody can afford b until the second rank.
        let inst = InstanceBuilder::new("1")
            .candidates(&["a", "b"], "1")
            .voter("1", "1", &[&["a"], &["b"]])
            .voter("2", "1", &[&["b"], &["a"]])
            .build()
            .unwrap();
        let (w, trace) = pb_ear(&inst, &EarConfig::default());
        assert_eq!(trace.steps[0].chosen, None);
        assert_eq!(trace.steps[1].level, 2);
        assert_eq!(inst.candidate_ids(w.selected()), ["a"]);
    }

    #[test]
    fn lex_depletion_drains_in_order() {
        let mut b = vec![r("1"), r("1"), r("1")];
        let supporters = VoterSet::from_indices([0, 2]);
        let d = charge_supporters(&mut b, &supporters, &r("3/2"), Reweighting::LexDepletion);
        assert_eq!(d, [(0, r("1")), (2, r("1/2"))]);
        assert_eq!(b, [r("0"), r("1"), r("1/2")]);

        let mut b = vec![r("1"), r("1"), r("3")];
        let d = charge_supporters(&mut b, &supporters, &r("2"), Reweighting::Proportional);
        assert_eq!(d, [(0, r("1/2")), (2, r("3/2"))]);
    }

    #[test]
    fn no_candidates() {
        let inst = InstanceBuilder::new("1").voter("1", "1", &[]).build().unwrap();
        let (w, trace) = pb_ear(&inst, &EarConfig::default());
        assert!(w.is_empty());
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn rule_names_round_trip() {
        for s in Selection::ALL {
            assert_eq!(s.name().parse::<Selection>().unwrap(), s);
        }
        for r in Reweighting::ALL {
            assert_eq!(r.name().parse::<Reweighting>().unwrap(), r);
        }
        assert!("random".parse::<Selection>().is_err());
    }
}
