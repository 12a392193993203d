//! The axioms evaluated straight from their definitions.
//!
//! Nothing here reuses the verifiers' search machinery: preference sets are
//! derived by naming each voter's `j`-th choice under an explicit tie-break,
//! solidity is checked pairwise, and "is there a better bundle" questions
//! enumerate every subset. These functions are slow and meant as ground
//! truth for small instances.

use crate::instance::{CandidateSet, PbInstance, VoterSet};
use crate::outcome::Outcome;
use crate::rat::Rat;
use crate::verify::{Axiom, Detail, Witness};

/// How ties inside an equivalence class are broken when naming a voter's
/// `j`-th choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    InputOrder,
    ReverseInputOrder,
}

/// Voter `i`'s `j`-th choice (1-based) in a strict order refining their weak
/// order; `j` beyond the candidate count names the last candidate.
pub fn jth_choice(inst: &PbInstance, i: usize, j: usize, tie: TieBreak) -> usize {
    let prefs = inst.prefs(i);
    let mut order: Vec<usize> = (0..inst.num_candidates()).collect();
    order.sort_by_key(|&c| {
        let key = match tie {
            TieBreak::InputOrder => c as isize,
            TieBreak::ReverseInputOrder => -(c as isize),
        };
        (prefs.rank(c), key)
    });
    order[j.clamp(1, order.len()) - 1]
}

/// `{c : c ≿_i c^(i,j)}` computed through [`jth_choice`].
pub fn pref_set(inst: &PbInstance, i: usize, j: usize, tie: TieBreak) -> CandidateSet {
    if inst.num_candidates() == 0 {
        return CandidateSet::new();
    }
    let pivot = jth_choice(inst, i, j, tie);
    (0..inst.num_candidates())
        .filter(|&c| inst.prefs(i).weakly_prefers(c, pivot))
        .collect()
}

pub fn is_solid(inst: &PbInstance, voters: &VoterSet, cands: &CandidateSet) -> bool {
    voters.iter().all(|i| {
        cands.iter().all(|inside| {
            (0..inst.num_candidates())
                .filter(|&c| !cands.contains(c))
                .all(|outside| inst.prefs(i).weakly_prefers(inside, outside))
        })
    })
}

/// `{c : ∃ i ∈ N', c ≿_i c^(i,|C'|)}`.
pub fn bar(inst: &PbInstance, voters: &VoterSet, cands: &CandidateSet) -> CandidateSet {
    voters
        .iter()
        .fold(CandidateSet::new(), |acc, i| acc.union(&pref_set(inst, i, cands.len(), TieBreak::InputOrder)))
}

pub fn quota(inst: &PbInstance, voters: &VoterSet) -> Rat {
    let weight: Rat = voters.iter().map(|i| inst.voters()[i].weight.clone()).sum();
    weight * inst.limit() / Rat::from_usize(inst.num_voters())
}

fn cost(inst: &PbInstance, set: &CandidateSet) -> Rat {
    set.iter().map(|c| inst.candidates()[c].cost.clone()).sum()
}

/// Every subset of `pool`, by enumeration.
pub fn subsets(pool: &CandidateSet) -> impl Iterator<Item = CandidateSet> + '_ {
    let k = pool.len();
    assert!(k < 32, "pool too large to enumerate");
    (0u64..1 << k).map(move |mask| {
        pool.iter()
            .enumerate()
            .filter(|(p, _)| mask >> p & 1 == 1)
            .map(|(_, c)| c)
            .collect()
    })
}

/// The largest total cost of a subset of `pool` within `cap`.
pub fn max_subset_weight(inst: &PbInstance, pool: &CandidateSet, cap: &Rat) -> Rat {
    subsets(pool)
        .map(|s| cost(inst, &s))
        .filter(|w| w <= cap)
        .max()
        .unwrap_or_else(Rat::zero)
}

fn nonempty_voter_sets(inst: &PbInstance) -> impl Iterator<Item = VoterSet> {
    let n = inst.num_voters();
    assert!(n < 32, "too many voters to enumerate");
    (1u64..1 << n).map(VoterSet::from_mask)
}

fn nonempty_candidate_sets(inst: &PbInstance) -> impl Iterator<Item = CandidateSet> {
    let m = inst.num_candidates();
    assert!(m < 32, "too many candidates to enumerate");
    (1u64..1 << m).map(CandidateSet::from_mask)
}

/// Does `(N', C', c)` violate IPSC for `W`?
pub fn ipsc_violated_by(inst: &PbInstance, w: &Outcome, voters: &VoterSet, cands: &CandidateSet, c: usize) -> bool {
    if voters.is_empty() || cands.is_empty() || !is_solid(inst, voters, cands) {
        return false;
    }
    let covered = bar(inst, voters, cands).intersection(w.selected());
    let q = quota(inst, voters);
    let mut with_c = covered.clone();
    with_c.insert(c);
    cands.contains(c) && !covered.contains(c) && cost(inst, &covered) < q && cost(inst, &with_c) <= q
}

/// Does `(N', C', C'')` violate CPSC for `W`?
pub fn cpsc_violated_by(
    inst: &PbInstance,
    w: &Outcome,
    voters: &VoterSet,
    cands: &CandidateSet,
    bundle: &CandidateSet,
) -> bool {
    if voters.is_empty() || cands.is_empty() || !is_solid(inst, voters, cands) || !bundle.is_subset(cands) {
        return false;
    }
    let covered = cost(inst, &bar(inst, voters, cands).intersection(w.selected()));
    let q = quota(inst, voters);
    let claim = cost(inst, bundle);
    covered < q && covered < claim && claim <= q
}

pub fn satisfies_exhaustive(inst: &PbInstance, w: &Outcome) -> bool {
    (0..inst.num_candidates())
        .filter(|&c| !w.contains(c))
        .all(|c| w.total_cost() + inst.cost(c) > *inst.limit())
}

pub fn satisfies_max_cost(inst: &PbInstance, w: &Outcome) -> bool {
    *w.total_cost() >= max_subset_weight(inst, &inst.all_candidates(), inst.limit())
}

pub fn satisfies_ipsc(inst: &PbInstance, w: &Outcome) -> bool {
    !nonempty_candidate_sets(inst).any(|cands| {
        nonempty_voter_sets(inst).any(|voters| cands.iter().any(|c| ipsc_violated_by(inst, w, &voters, &cands, c)))
    })
}

pub fn satisfies_cpsc(inst: &PbInstance, w: &Outcome) -> bool {
    !nonempty_candidate_sets(inst).any(|cands| {
        nonempty_voter_sets(inst).any(|voters| {
            is_solid(inst, &voters, &cands)
                && subsets(&cands).any(|bundle| cpsc_violated_by(inst, w, &voters, &cands, &bundle))
        })
    })
}

fn meet_join(inst: &PbInstance, voters: &VoterSet) -> (CandidateSet, CandidateSet) {
    let mut meet = inst.all_candidates();
    let mut join = CandidateSet::new();
    for i in voters.iter() {
        let a = inst.prefs(i).approval_set();
        meet = meet.intersection(&a);
        join = join.union(&a);
    }
    (meet, join)
}

fn level_fits(inst: &PbInstance, voters: &VoterSet, level: u64) -> bool {
    // |N'| ≥ ℓ·n/L
    Rat::from_usize(voters.len()) * inst.limit() >= Rat::from_integer(level as i64) * Rat::from_usize(inst.num_voters())
}

pub fn pjr_violated_by(inst: &PbInstance, w: &Outcome, voters: &VoterSet, level: u64) -> bool {
    let (meet, join) = meet_join(inst, voters);
    level >= 1
        && !voters.is_empty()
        && level_fits(inst, voters, level)
        && meet.len() as u64 >= level
        && (join.intersection(w.selected()).len() as u64) < level
}

pub fn gen_psc_violated_by(inst: &PbInstance, w: &Outcome, voters: &VoterSet, cands: &CandidateSet, level: u64) -> bool {
    if level == 0 || voters.is_empty() || cands.is_empty() || !is_solid(inst, voters, cands) {
        return false;
    }
    let supported = bar(inst, voters, cands).intersection(w.selected()).len() as u64;
    level_fits(inst, voters, level) && supported < level.min(cands.len() as u64)
}

pub fn bpjr_violated_by(inst: &PbInstance, w: &Outcome, voters: &VoterSet, level: u64) -> bool {
    let (meet, join) = meet_join(inst, voters);
    let share = Rat::from_usize(voters.len()) * inst.limit() / Rat::from_usize(inst.num_voters());
    level >= 1
        && !voters.is_empty()
        && Rat::from_integer(level as i64) <= *inst.limit()
        && level_fits(inst, voters, level)
        && cost(inst, &meet) >= Rat::from_integer(level as i64)
        && cost(inst, &join.intersection(w.selected())) < max_subset_weight(inst, &meet, &share)
}

pub fn local_bpjr_violated_by(
    inst: &PbInstance,
    w: &Outcome,
    voters: &VoterSet,
    level: u64,
    larger: &CandidateSet,
) -> bool {
    let (meet, join) = meet_join(inst, voters);
    let current = join.intersection(w.selected());
    let cap = Rat::from_integer(level as i64);
    level >= 1
        && !voters.is_empty()
        && cap <= *inst.limit()
        && level_fits(inst, voters, level)
        && current.is_subset(larger)
        && larger.len() > current.len()
        && larger.is_subset(&meet)
        && cost(inst, larger) <= cap
        && cost(inst, larger) == max_subset_weight(inst, &meet, &cap)
}

/// Checks a witness against the definitions, including its numeric fields.
pub fn witness_holds(inst: &PbInstance, w: &Outcome, wit: &Witness) -> bool {
    let (voters, cands) = (&wit.voters, &wit.candidates);
    let covered_by_bar = || cost(inst, &bar(inst, voters, cands).intersection(w.selected()));
    match (&wit.detail, wit.axiom) {
        (Detail::Candidate(c), Axiom::Ipsc | Axiom::IpscApproval | Axiom::Exhaustive) => {
            ipsc_violated_by(inst, w, voters, cands, *c)
                && wit.covered == covered_by_bar()
                && wit.claim == &wit.covered + inst.cost(*c)
                && wit.quota == quota(inst, voters)
        }
        (Detail::Bundle(bundle), Axiom::Cpsc | Axiom::CpscApproval | Axiom::MaxCost | Axiom::CpscMw) => {
            cpsc_violated_by(inst, w, voters, cands, bundle)
                && wit.covered == covered_by_bar()
                && wit.claim == cost(inst, bundle)
                && wit.quota == quota(inst, voters)
        }
        (Detail::Level { level, .. }, Axiom::Pjr) => {
            pjr_violated_by(inst, w, voters, *level) && wit.claim == Rat::from_integer(*level as i64)
        }
        (Detail::Level { level, .. }, Axiom::GenPsc) => gen_psc_violated_by(inst, w, voters, cands, *level),
        (Detail::Level { level, bundle }, Axiom::BpjrL) => {
            let (meet, _) = meet_join(inst, voters);
            bpjr_violated_by(inst, w, voters, *level)
                && bundle.as_ref().is_some_and(|b| b.is_subset(&meet) && cost(inst, b) == wit.claim)
        }
        (Detail::Level { level, bundle: Some(larger) }, Axiom::LocalBpjrL) => {
            local_bpjr_violated_by(inst, w, voters, *level, larger) && wit.claim == cost(inst, larger)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::InstanceBuilder;

    #[test]
    fn tie_breaks_name_different_candidates_but_same_sets() {
        let inst = InstanceBuilder::new("1")
            .candidates(&["a", "b", "c"], "1")
            .voter("1", "1", &[&["a", "b"], &["c"]])
            .build()
            .unwrap();
        assert_eq!(jth_choice(&inst, 0, 1, TieBreak::InputOrder), 0);
        assert_eq!(jth_choice(&inst, 0, 1, TieBreak::ReverseInputOrder), 1);
        for j in 1..=4 {
            assert_eq!(
                pref_set(&inst, 0, j, TieBreak::InputOrder),
                pref_set(&inst, 0, j, TieBreak::ReverseInputOrder)
            );
        }
    }

    #[test]
    fn raw_subset_maximum() {
        let inst = InstanceBuilder::new("2")
            .candidate("a", "1")
            .candidate("b", "0.9")
            .candidate("c", "1")
            .voter("1", "1", &[])
            .build()
            .unwrap();
        assert_eq!(max_subset_weight(&inst, &inst.all_candidates(), inst.limit()), Rat::from_integer(2));
        assert_eq!(subsets(&inst.all_candidates()).count(), 8);
    }
}
