//! Outcomes and the budget-level predicates on them.

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, PbInstance};
use crate::oracles::knapsack::max_knapsack;
use crate::rat::Rat;

/// A feasible set of funded candidates with its cached total cost.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    selected: CandidateSet,
    total_cost: Rat,
}

impl Outcome {
    /// Fails with [`PbError::Infeasible`] when the set costs more than the
    /// limit.
    pub fn new(inst: &PbInstance, selected: CandidateSet) -> Result<Self> {
        if let Some(&c) = selected.as_slice().last() {
            if c >= inst.num_candidates() {
                return Err(PbError::UnknownCandidate(format!("#{c}")));
            }
        }
        let total_cost = inst.cost_of(&selected);
        if &total_cost > inst.limit() {
            return Err(PbError::Infeasible {
                cost: total_cost.to_string(),
                limit: inst.limit().to_string(),
            });
        }
        Ok(Outcome {
            selected,
            total_cost,
        })
    }

    pub fn empty() -> Self {
        Outcome {
            selected: CandidateSet::new(),
            total_cost: Rat::zero(),
        }
    }

    pub fn from_ids(inst: &PbInstance, ids: &[&str]) -> Result<Self> {
        Outcome::new(inst, inst.candidate_set(ids)?)
    }

    pub fn selected(&self) -> &CandidateSet {
        &self.selected
    }

    pub fn total_cost(&self) -> &Rat {
        &self.total_cost
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.selected.contains(c)
    }
}

/// No unfunded candidate fits in the remaining budget.
pub fn is_exhaustive(inst: &PbInstance, w: &Outcome) -> bool {
    first_fitting(inst, w).is_none()
}

/// The first unfunded candidate (input order) that still fits, if any.
pub fn first_fitting(inst: &PbInstance, w: &Outcome) -> Option<usize> {
    let slack = inst.limit() - w.total_cost();
    (0..inst.num_candidates()).find(|&c| !w.contains(c) && inst.cost(c) <= &slack)
}

/// No feasible candidate set costs strictly more than `w`.
pub fn is_maximal_cost(inst: &PbInstance, w: &Outcome) -> bool {
    let best = max_knapsack(inst, &inst.all_candidates(), inst.limit());
    w.total_cost() == &best.best_weight
}
