//! Brute-force ground truth: exact knapsack, outcome enumeration and
//! existence searches.

pub mod definitions;
pub mod knapsack;

pub use knapsack::{max_knapsack, KnapsackResult};

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, PbInstance};
use crate::outcome::Outcome;
use crate::rat::Rat;
use crate::verify::{Analyzer, Axiom, Limits};

/// Outcome enumeration refuses more candidates than this unless forced.
pub const ENUMERATION_MAX: usize = 20;

/// The definition-level search enumerates every voter and candidate
/// subset, so it is capped far lower.
pub const DEFINITION_MAX: usize = 10;

/// All feasible outcomes in lexicographic order of their index lists.
///
/// Costs are positive, so once a set stops fitting none of its extensions
/// are visited.
pub struct FeasibleOutcomes<'a> {
    inst: &'a PbInstance,
    chosen: Vec<usize>,
    cost: Rat,
    next: usize,
    started: bool,
}

impl Iterator for FeasibleOutcomes<'_> {
    type Item = Outcome;

    fn next(&mut self) -> Option<Outcome> {
        if !self.started {
            self.started = true;
            return Some(Outcome::empty());
        }
        let m = self.inst.num_candidates();
        loop {
            if let Some(c) = (self.next..m).find(|&c| &self.cost + self.inst.cost(c) <= *self.inst.limit()) {
                self.chosen.push(c);
                self.cost += self.inst.cost(c);
                self.next = c + 1;
                let set = CandidateSet::from_indices(self.chosen.iter().copied());
                return Some(Outcome::new(self.inst, set).expect("enumerated sets are feasible"));
            }
            let last = self.chosen.pop()?;
            self.cost -= self.inst.cost(last);
            self.next = last + 1;
        }
    }
}

fn guard(inst: &PbInstance, limits: Limits) -> Result<()> {
    let max = if limits.force { Limits::FORCED_MAX - 1 } else { ENUMERATION_MAX };
    if inst.num_candidates() > max {
        return Err(PbError::TooLarge {
            voters: inst.num_voters(),
            candidates: inst.num_candidates(),
            max_voters: limits.max_voters(),
            max_candidates: max,
        });
    }
    Ok(())
}

pub fn enumerate_feasible_outcomes(inst: &PbInstance, limits: Limits) -> Result<FeasibleOutcomes<'_>> {
    guard(inst, limits)?;
    Ok(FeasibleOutcomes {
        inst,
        chosen: Vec::new(),
        cost: Rat::zero(),
        next: 0,
        started: false,
    })
}

/// Every feasible outcome satisfying `axiom`, in enumeration order.
pub fn find_outcomes(inst: &PbInstance, axiom: Axiom, limits: Limits) -> Result<Vec<Outcome>> {
    let analyzer = Analyzer::new(inst, limits)?;
    let mut found = Vec::new();
    for w in enumerate_feasible_outcomes(inst, limits)? {
        if analyzer.check(axiom, &w)?.is_satisfied() {
            found.push(w);
        }
    }
    Ok(found)
}

/// The first feasible outcome satisfying `axiom`.
pub fn first_outcome(inst: &PbInstance, axiom: Axiom, limits: Limits) -> Result<Option<Outcome>> {
    let analyzer = Analyzer::new(inst, limits)?;
    for w in enumerate_feasible_outcomes(inst, limits)? {
        if analyzer.check(axiom, &w)?.is_satisfied() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The first CPSC outcome, decided from the definitions alone.
pub fn cpsc_exists(inst: &PbInstance, limits: Limits) -> Result<Option<Outcome>> {
    if !limits.force && (inst.num_voters() > DEFINITION_MAX || inst.num_candidates() > DEFINITION_MAX) {
        return Err(PbError::TooLarge {
            voters: inst.num_voters(),
            candidates: inst.num_candidates(),
            max_voters: DEFINITION_MAX,
            max_candidates: DEFINITION_MAX,
        });
    }
    let best = definitions::max_subset_weight(inst, &inst.all_candidates(), inst.limit());
    for w in enumerate_feasible_outcomes(inst, limits)? {
        // CPSC outcomes have maximal cost; skip the rest cheaply.
        if *w.total_cost() == best && definitions::satisfies_cpsc(inst, &w) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
