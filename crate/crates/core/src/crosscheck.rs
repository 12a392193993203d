//! Property suites run over seeded random instances and the shipped
//! fixtures.
//!
//! Each suite reports how many instances and individual checks it ran and
//! every counterexample, with the instance in canonical form so a failure
//! can be replayed. Instances are generated per seed and suites fan out
//! over seeds in parallel; results are collected in seed order, so reports
//! are identical from run to run.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coalition::{bar_set, is_solidly_supported};
use crate::document::instance_to_string;
use crate::ear::{pb_ear, support_of, EarConfig};
use crate::fixtures::{self, Expected, ExpectedCheck, Fixture};
use crate::gen::{generate, CostModel, GenParams, PrefModel, WeightModel};
use crate::instance::{CandidateSet, PbInstance};
use crate::oracles::{self, definitions, knapsack};
use crate::outcome::Outcome;
use crate::rat::Rat;
use crate::report;
use crate::verify::{Analyzer, Axiom, Detail, Limits, Mutant, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Fixtures,
    Lattice,
    Specialization,
    Oracle,
    Ear,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Fixtures, Suite::Lattice, Suite::Specialization, Suite::Oracle, Suite::Ear];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fixtures => "fixtures",
            Suite::Lattice => "lattice",
            Suite::Specialization => "specialization",
            Suite::Oracle => "oracle",
            Suite::Ear => "ear",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected fixtures, lattice, specialization, oracle or ear)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckConfig {
    pub max_n: usize,
    pub max_m: usize,
    pub seeds: u64,
    pub first_seed: u64,
    pub suites: Vec<Suite>,
    pub mutant: Option<Mutant>,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig {
            max_n: 6,
            max_m: 5,
            seeds: 200,
            first_seed: 0,
            suites: Suite::ALL.to_vec(),
            mutant: None,
        }
    }
}

impl CrosscheckConfig {
    fn seeds(&self) -> impl ParallelIterator<Item = u64> {
        (self.first_seed..self.first_seed + self.seeds).into_par_iter()
    }
}

/// A counterexample, with enough context to replay it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// `seed 17` or `fixture cpsc_nonexistence`.
    pub source: String,
    pub message: String,
    pub instance: String,
    pub outcome: Option<Vec<String>>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Option<Suite>,
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Informational lines, such as published claims that the definitions
    /// contradict.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: SuiteReport) {
        self.instances += other.instances;
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub suites: Vec<SuiteReport>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == Some(suite))
    }

    /// One row per suite.
    pub fn table(&self) -> String {
        let mut out = format!("{:<16}{:>10}{:>10}{:>10}  {}\n", "suite", "instances", "checks", "failures", "result");
        for s in &self.suites {
            let name = s.suite.map_or("?", Suite::name);
            let result = if s.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{name:<16}{:>10}{:>10}{:>10}  {result}", s.instances, s.checks, s.failures.len());
        }
        out
    }

    /// Notes and full failure details.
    pub fn details(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let name = s.suite.map_or("?", Suite::name);
            for note in &s.notes {
                let _ = writeln!(out, "note [{name}]: {note}");
            }
            for f in &s.failures {
                let _ = writeln!(out, "counterexample [{name}] {}: {}", f.source, f.message);
                if let Some(w) = &f.outcome {
                    let _ = writeln!(out, "outcome: {{{}}}", w.join(","));
                }
                if let Some(wit) = &f.witness {
                    out.push_str(wit);
                }
                let _ = writeln!(out, "instance:\n{}", f.instance);
            }
        }
        out
    }
}

pub fn run(config: &CrosscheckConfig) -> CrosscheckReport {
    let suites = config
        .suites
        .iter()
        .map(|&suite| {
            let mut report = match suite {
                Suite::Fixtures => fixture_suite(config.mutant),
                Suite::Lattice => seeded(config, lattice_case),
                Suite::Specialization => seeded(config, specialization_case),
                Suite::Oracle => seeded(config, oracle_case),
                Suite::Ear => seeded(config, ear_case),
            };
            report.suite = Some(suite);
            report
        })
        .collect();
    CrosscheckReport { suites }
}

/// The kinds of random instance, cycled through by seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Strict or weak orders, unit or decimal costs, unit or random weights.
    Ordinal,
    /// Approval ballots with decimal costs.
    Approval,
    /// Approval ballots, unit weights, integer costs with a unit-cost
    /// candidate, integer limit.
    IntegerApproval,
    /// Unit costs and weights, limit `k ≤ m`, strict or weak orders.
    Committee,
    /// Unit costs and weights, limit `k ≤ m`, approval ballots.
    ApprovalCommittee,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Ordinal,
        Family::Approval,
        Family::IntegerApproval,
        Family::Committee,
        Family::ApprovalCommittee,
    ];

    pub fn for_seed(seed: u64) -> Family {
        Family::ALL[(seed % Family::ALL.len() as u64) as usize]
    }
}

/// The instance behind `seed`, with at most `max_n` voters and `max_m`
/// candidates.
pub fn sample_instance(seed: u64, max_n: usize, max_m: usize) -> PbInstance {
    let family = Family::for_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n.max(1));
    let m = rng.gen_range(1..=max_m.max(1));
    let approval = PrefModel::Dichotomous {
        p: [Rat::new(1, 3), Rat::new(1, 2), Rat::new(2, 3)]
            .choose(&mut rng)
            .expect("nonempty")
            .clone(),
    };
    let ordinal = if rng.gen_ratio(1, 2) { PrefModel::Strict } else { PrefModel::Weak };
    let weights = if rng.gen_ratio(1, 2) { WeightModel::Unit } else { WeightModel::Random };
    let half_steps = Rat::new(rng.gen_range(2..=2 * m as i64), 2);
    let whole = Rat::from_integer(rng.gen_range(1..=m as i64));
    let (limit, costs, prefs, weights) = match family {
        Family::Ordinal => {
            let costs = if rng.gen_ratio(1, 3) { CostModel::Unit } else { CostModel::UniformRational };
            (half_steps, costs, ordinal, weights)
        }
        Family::Approval => (half_steps, CostModel::UniformRational, approval, weights),
        Family::IntegerApproval => (whole, CostModel::Integer, approval, WeightModel::Unit),
        Family::Committee => (whole, CostModel::Unit, ordinal, WeightModel::Unit),
        Family::ApprovalCommittee => (whole, CostModel::Unit, approval, WeightModel::Unit),
    };
    let params = GenParams {
        seed: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        n,
        m,
        limit,
        costs,
        prefs,
        weights,
    };
    generate(&params).expect("sampled parameters are valid")
}

fn seeded(config: &CrosscheckConfig, case: fn(&mut Case<'_>)) -> SuiteReport {
    let reports: Vec<SuiteReport> = config
        .seeds()
        .map(|seed| {
            let inst = sample_instance(seed, config.max_n, config.max_m);
            let mut c = Case::new(&inst, format!("seed {seed}"), config.mutant);
            match c.analyzer() {
                Some(_) => case(&mut c),
                None => c.fail(None, "instance exceeds the verifier size guard".into(), None),
            }
            c.report
        })
        .collect();
    let mut total = SuiteReport::default();
    for r in reports {
        total.merge(r);
    }
    total
}

/// State for checking one instance.
struct Case<'a> {
    inst: &'a PbInstance,
    source: String,
    mutant: Option<Mutant>,
    analyzer: Option<Analyzer<'a>>,
    report: SuiteReport,
}

impl<'a> Case<'a> {
    fn new(inst: &'a PbInstance, source: String, mutant: Option<Mutant>) -> Self {
        Case {
            inst,
            source,
            mutant,
            analyzer: Analyzer::new(inst, Limits::default()).ok(),
            report: SuiteReport {
                instances: 1,
                ..SuiteReport::default()
            },
        }
    }

    fn analyzer(&self) -> Option<&Analyzer<'a>> {
        self.analyzer.as_ref()
    }

    fn fail(&mut self, w: Option<&Outcome>, message: String, witness: Option<String>) {
        self.report.failures.push(Failure {
            source: self.source.clone(),
            message,
            instance: instance_to_string(self.inst),
            outcome: w.map(|w| self.inst.candidate_ids(w.selected()).iter().map(|s| s.to_string()).collect()),
            witness,
        });
    }

    /// Records a condition; a false one becomes a failure.
    fn expect(&mut self, ok: bool, w: Option<&Outcome>, message: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.fail(w, message(), None);
        }
    }

    /// The verdict, after re-deriving any witness from the definitions.
    fn verdict(&mut self, axiom: Axiom, w: &Outcome) -> Option<Verdict> {
        let result = self.analyzer.as_ref().expect("checked by caller").check_with(axiom, w, self.mutant);
        match result {
            Ok(v) => {
                if let Some(wit) = v.witness() {
                    self.report.checks += 1;
                    if !wit.recheck(self.inst, w) {
                        let block = report::witness_block(self.inst, wit);
                        self.fail(Some(w), format!("{axiom} witness does not re-check"), Some(block));
                    }
                }
                Some(v)
            }
            Err(e) => {
                self.fail(Some(w), format!("{axiom} check failed: {e}"), None);
                None
            }
        }
    }

    fn holds(&mut self, axiom: Axiom, w: &Outcome) -> bool {
        self.verdict(axiom, w).is_some_and(|v| v.is_satisfied())
    }

    fn outcomes(&mut self) -> Vec<Outcome> {
        match oracles::enumerate_feasible_outcomes(self.inst, Limits::default()) {
            Ok(it) => it.collect(),
            Err(e) => {
                self.fail(None, format!("cannot enumerate outcomes: {e}"), None);
                Vec::new()
            }
        }
    }
}

fn lattice_case(c: &mut Case<'_>) {
    let committee = c.inst.committee_size();
    let dichotomous = c.inst.is_dichotomous();
    let mut ipsc_found = false;
    for w in c.outcomes() {
        let ipsc = c.holds(Axiom::Ipsc, &w);
        let cpsc = c.holds(Axiom::Cpsc, &w);
        let exhaustive = c.holds(Axiom::Exhaustive, &w);
        let max_cost = c.holds(Axiom::MaxCost, &w);
        ipsc_found |= ipsc;
        c.expect(!ipsc || exhaustive, Some(&w), || "IPSC outcome is not exhaustive".into());
        c.expect(!cpsc || max_cost, Some(&w), || "CPSC outcome is not maximal cost".into());
        c.expect(!max_cost || exhaustive, Some(&w), || "maximal-cost outcome is not exhaustive".into());

        let Some(k) = committee else { continue };
        let cpsc_mw = c.holds(Axiom::CpscMw, &w);
        c.expect(cpsc == cpsc_mw, Some(&w), || format!("CPSC {cpsc} but CPSC-MW {cpsc_mw}"));
        if w.len() != k {
            continue;
        }
        let gen_psc = c.holds(Axiom::GenPsc, &w);
        c.expect(gen_psc == cpsc, Some(&w), || format!("gen-PSC {gen_psc} but CPSC {cpsc}"));
        c.expect(!ipsc || gen_psc, Some(&w), || "IPSC committee fails gen-PSC".into());
        if dichotomous {
            let pjr = c.holds(Axiom::Pjr, &w);
            c.expect(!ipsc || pjr, Some(&w), || "IPSC committee fails PJR".into());
            c.expect(cpsc == pjr, Some(&w), || format!("CPSC {cpsc} but PJR {pjr}"));
        }
    }
    c.expect(ipsc_found, None, || "no feasible outcome satisfies IPSC".into());
}

/// Unit weights, integer costs with minimum 1 and an integer limit: the
/// setting in which BPJR-L is defined.
fn integral(inst: &PbInstance) -> bool {
    inst.voters().iter().all(|v| v.weight == 1)
        && inst.candidates().iter().all(|c| c.cost.is_integer())
        && inst.limit().is_integer()
        && inst.candidates().iter().map(|c| &c.cost).min() == Some(&Rat::one())
}

fn specialization_case(c: &mut Case<'_>) {
    if !c.inst.is_dichotomous() {
        c.report.instances = 0;
        return;
    }
    let integral = integral(c.inst);
    for w in c.outcomes() {
        let ipsc = c.holds(Axiom::Ipsc, &w);
        let cpsc = c.holds(Axiom::Cpsc, &w);
        let ipsc_a = c.holds(Axiom::IpscApproval, &w);
        let cpsc_a = c.holds(Axiom::CpscApproval, &w);
        c.expect(ipsc == ipsc_a, Some(&w), || format!("IPSC {ipsc} but approval IPSC {ipsc_a}"));
        c.expect(cpsc == cpsc_a, Some(&w), || format!("CPSC {cpsc} but approval CPSC {cpsc_a}"));
        if integral {
            let bpjr = c.holds(Axiom::BpjrL, &w);
            let max_cost = c.holds(Axiom::MaxCost, &w);
            let local = c.holds(Axiom::LocalBpjrL, &w);
            c.expect(cpsc == (bpjr && max_cost), Some(&w), || {
                format!("CPSC {cpsc} but BPJR-L {bpjr} and maximal cost {max_cost}")
            });
            c.expect(!ipsc || local, Some(&w), || "IPSC outcome fails Local-BPJR-L".into());
        }
    }
}

fn oracle_case(c: &mut Case<'_>) {
    let inst = c.inst;
    let mut cpsc_found = None;
    for w in c.outcomes() {
        let pairs = [
            (Axiom::Exhaustive, definitions::satisfies_exhaustive(inst, &w)),
            (Axiom::MaxCost, definitions::satisfies_max_cost(inst, &w)),
            (Axiom::Ipsc, definitions::satisfies_ipsc(inst, &w)),
            (Axiom::Cpsc, definitions::satisfies_cpsc(inst, &w)),
        ];
        for (axiom, truth) in pairs {
            let verdict = c.verdict(axiom, &w);
            let got = verdict.as_ref().map(Verdict::is_satisfied);
            if axiom == Axiom::Cpsc && got == Some(true) && cpsc_found.is_none() {
                cpsc_found = Some(w.clone());
            }
            c.report.checks += 1;
            if got != Some(truth) {
                let witness = verdict.as_ref().and_then(Verdict::witness).map(|wit| report::witness_block(inst, wit));
                let claim = if truth { "satisfied" } else { "violated" };
                c.fail(Some(&w), format!("{axiom}: definitions say {claim}, verifier disagrees"), witness);
            }
        }
    }

    if inst.num_voters() <= oracles::DEFINITION_MAX && inst.num_candidates() <= oracles::DEFINITION_MAX {
        match oracles::cpsc_exists(inst, Limits::default()) {
            Ok(found) => c.expect(found == cpsc_found, found.as_ref(), || {
                format!("CPSC existence: definitions give {found:?}, verifier gives {cpsc_found:?}")
            }),
            Err(e) => c.fail(None, format!("CPSC existence search failed: {e}"), None),
        }
    }

    let items: Vec<(usize, Rat)> = inst.candidates().iter().enumerate().map(|(i, x)| (i, x.cost.clone())).collect();
    let caps = [inst.limit().clone(), inst.limit() / &Rat::from_integer(2), Rat::one()];
    for cap in caps {
        let exact = knapsack::enumerate(&items, &cap);
        let bnb = knapsack::branch_and_bound(&items, &cap);
        let raw = definitions::max_subset_weight(inst, &inst.all_candidates(), &cap);
        c.expect(exact == bnb && exact.best_weight == raw, None, || {
            format!("knapsack at capacity {cap}: enumeration {exact:?}, branch and bound {bnb:?}, subsets {raw}")
        });
    }
}

fn ear_case(c: &mut Case<'_>) {
    let inst = c.inst;
    let n = inst.n();
    for config in EarConfig::all() {
        let (w, trace) = pb_ear(inst, &config);
        let again = pb_ear(inst, &config);
        c.expect(again == (w.clone(), trace.clone()), Some(&w), || format!("{config}: second run differs"));
        c.expect(definitions::satisfies_exhaustive(inst, &w), Some(&w), || format!("{config}: not exhaustive"));
        let ipsc = c.verdict(Axiom::Ipsc, &w);
        c.report.checks += 1;
        if let Some(Verdict::Violated(wit)) = &ipsc {
            let block = report::witness_block(inst, wit);
            c.fail(Some(&w), format!("{config}: PB-EAR outcome violates IPSC"), Some(block));
        }
        for step in &trace.steps {
            let paid: Rat = step.deductions.iter().map(|(_, d)| d).sum();
            let due = step.chosen.map_or_else(Rat::zero, |x| &n * inst.cost(x) / inst.limit());
            c.expect(paid == due, Some(&w), || {
                format!("{config}: level {} deducted {paid}, expected {due}", step.level)
            });
            c.expect(step.level <= inst.num_candidates() + 1, Some(&w), || {
                format!("{config}: rank level {} exceeds m + 1", step.level)
            });
        }
        c.expect(trace.residual.iter().all(|b| !b.is_negative()), Some(&w), || {
            format!("{config}: negative residual weight")
        });
    }
    match oracles::first_outcome(inst, Axiom::Ipsc, Limits::default()) {
        Ok(found) => c.expect(found.is_some(), None, || "no feasible outcome satisfies IPSC".into()),
        Err(e) => c.fail(None, format!("IPSC search failed: {e}"), None),
    }
}

fn fixture_suite(mutant: Option<Mutant>) -> SuiteReport {
    let reports: Vec<SuiteReport> = fixtures::ALL
        .par_iter()
        .map(|f| {
            let (inst, expected) = match (f.load(), f.expected()) {
                (Ok(i), Ok(e)) => (i, e),
                (Err(e), _) | (_, Err(e)) => {
                    return SuiteReport {
                        instances: 1,
                        failures: vec![Failure {
                            source: format!("fixture {}", f.name),
                            message: e.to_string(),
                            instance: f.instance.to_string(),
                            outcome: None,
                            witness: None,
                        }],
                        ..SuiteReport::default()
                    };
                }
            };
            let mut c = Case::new(&inst, format!("fixture {}", f.name), mutant);
            fixture_case(&mut c, f, &expected);
            c.report
        })
        .collect();
    let mut total = SuiteReport::default();
    for r in reports {
        total.merge(r);
    }
    total
}

fn set_of(c: &mut Case<'_>, ids: &[String]) -> Option<CandidateSet> {
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    match c.inst.candidate_set(&refs) {
        Ok(s) => Some(s),
        Err(e) => {
            c.fail(None, format!("bad candidate list {ids:?}: {e}"), None);
            None
        }
    }
}

fn outcome_of(c: &mut Case<'_>, ids: &[String]) -> Option<Outcome> {
    let set = set_of(c, ids)?;
    match Outcome::new(c.inst, set) {
        Ok(w) => Some(w),
        Err(e) => {
            c.fail(None, format!("bad outcome {ids:?}: {e}"), None);
            None
        }
    }
}

fn ids(inst: &PbInstance, set: &CandidateSet) -> Vec<String> {
    inst.candidate_ids(set).into_iter().map(String::from).collect()
}

fn fixture_case(c: &mut Case<'_>, f: &Fixture, e: &Expected) {
    for check in &e.checks {
        fixture_check(c, f, check);
    }
    let inst = c.inst;

    for co in &e.coalitions {
        let voter_refs: Vec<&str> = co.voters.iter().map(String::as_str).collect();
        let Ok(voters) = inst.voter_set(&voter_refs) else {
            c.fail(None, format!("bad voter list {:?}", co.voters), None);
            continue;
        };
        let (Some(cands), Some(w)) = (set_of(c, &co.candidates), outcome_of(c, &co.outcome)) else { continue };
        let solid = is_solidly_supported(inst, &voters, &cands);
        c.expect(solid == co.solid, None, || format!("solidity of {:?} for {:?} is {solid}", co.voters, co.candidates));
        let bar = ids(inst, &bar_set(inst, &voters, &cands));
        c.expect(bar == co.bar, None, || format!("bar set of {:?}, {:?} is {bar:?}", co.voters, co.candidates));
        if let Some(x) = &co.ipsc_violation {
            if let Some(x) = set_of(c, std::slice::from_ref(x)) {
                let violated = definitions::ipsc_violated_by(inst, &w, &voters, &cands, x.as_slice()[0]);
                c.expect(violated, Some(&w), || format!("{:?}, {:?} is not an IPSC violation", co.voters, co.candidates));
            }
        }
    }

    if let Some(k) = &e.knapsack {
        match k.capacity.parse::<Rat>() {
            Ok(cap) => {
                let got = knapsack::max_knapsack(inst, &inst.all_candidates(), &cap);
                let set = ids(inst, &got.best_set);
                c.expect(got.best_weight.to_string() == k.weight && set == k.set, None, || {
                    format!("knapsack at {cap}: weight {} set {set:?}", got.best_weight)
                });
            }
            Err(err) => c.fail(None, format!("bad capacity: {err}"), None),
        }
    }

    if let Some(ear) = &e.ear {
        for config in EarConfig::all() {
            let (w, _) = pb_ear(inst, &config);
            let got = ids(inst, w.selected());
            c.expect(got == ear.outcome, Some(&w), || format!("PB-EAR under {config} returned {got:?}"));
        }
        let weights: Vec<Rat> = inst.voters().iter().map(|v| v.weight.clone()).collect();
        for (id, want) in &ear.first_level_support {
            let Some(x) = set_of(c, std::slice::from_ref(id)) else { continue };
            let got = support_of(inst, &weights, 1, x.as_slice()[0]);
            c.expect(got.to_string() == *want, None, || format!("first-level support of {id} is {got}"));
        }
    }

    for s in &e.search {
        let axiom = match s.axiom.parse::<Axiom>() {
            Ok(a) => a,
            Err(err) => {
                c.fail(None, err, None);
                continue;
            }
        };
        match oracles::find_outcomes(inst, axiom, Limits::default()) {
            Ok(found) => {
                let found: Vec<Vec<String>> = found.iter().map(|w| ids(inst, w.selected())).collect();
                c.expect(!s.empty || found.is_empty(), None, || format!("{axiom} search found {found:?}"));
                for want in &s.contains {
                    c.expect(found.contains(want), None, || format!("{axiom} search misses {want:?}"));
                }
            }
            Err(err) => c.fail(None, format!("{axiom} search failed: {err}"), None),
        }
    }

    if let Some(want) = e.cpsc_exists {
        let got = oracles::cpsc_exists(inst, Limits::default()).map(|o| o.is_some());
        c.expect(got.as_ref().ok() == Some(&want), None, || format!("cpsc_exists gave {got:?}"));
    }

    if let Some(want) = e.feasible_outcomes {
        let got = c.outcomes().len();
        c.expect(got == want, None, || format!("{got} feasible outcomes, expected {want}"));
    }
}

fn fixture_check(c: &mut Case<'_>, f: &Fixture, check: &ExpectedCheck) {
    let axiom = match check.axiom.parse::<Axiom>() {
        Ok(a) => a,
        Err(err) => return c.fail(None, err, None),
    };
    let Some(w) = outcome_of(c, &check.outcome) else { return };
    let Some(verdict) = c.verdict(axiom, &w) else { return };
    let status = if verdict.is_satisfied() { "satisfied" } else { "violated" };
    c.expect(status == check.verdict, Some(&w), || format!("{axiom} is {status}, expected {}", check.verdict));
    if let Some(published) = &check.published {
        if *published != check.verdict {
            c.report.notes.push(format!(
                "{}: {axiom} on {{{}}} is published as {published}; the definitions give {status}",
                f.name,
                check.outcome.join(",")
            ));
        }
    }
    let (Some(want), Some(wit)) = (&check.witness, verdict.witness()) else { return };
    let inst = c.inst;
    let voters: Vec<String> = inst.voter_ids(&wit.voters).into_iter().map(String::from).collect();
    let mut ok = voters == want.voters && ids(inst, &wit.candidates) == want.candidates;
    match &wit.detail {
        Detail::Candidate(x) => ok &= want.candidate.as_deref().is_none_or(|id| inst.candidates()[*x].id == id),
        Detail::Bundle(b) | Detail::Level { bundle: Some(b), .. } => {
            ok &= want.bundle.as_ref().is_none_or(|want| ids(inst, b) == *want)
        }
        Detail::Level { bundle: None, .. } => {}
    }
    ok &= want.covered.as_ref().is_none_or(|x| *x == wit.covered.to_string());
    ok &= want.quota.as_ref().is_none_or(|x| *x == wit.quota.to_string());
    c.report.checks += 1;
    if !ok {
        let block = report::witness_block(inst, wit);
        c.fail(Some(&w), format!("{axiom} witness differs from the expected one"), Some(block));
    }
}
