//! Approval-ballot forms: the characterizations of IPSC and CPSC for
//! dichotomous voters, and BPJR-L / Local-BPJR-L.

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, VoterSet};
use crate::oracles::knapsack;
use crate::outcome::Outcome;
use crate::rat::Rat;
use crate::verify::engine::bits;
use crate::verify::{general, require_dichotomous, Axiom, Detail, Profile, Witness};

pub(super) fn ipsc(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    require_dichotomous(p, Axiom::IpscApproval)?;
    let funded = w.selected().to_mask();
    let found = p.first_voter_set(|voters| {
        let (meet, join) = p.approval_meet_join(voters);
        let covered_set = join & funded;
        let covered = p.cost(covered_set);
        let quota = p.quota(voters);
        if covered >= quota {
            return None;
        }
        bits(meet & !covered_set).find_map(|c| {
            let claim = &covered + p.cost_of(c);
            (claim <= quota).then(|| Witness {
                axiom: Axiom::IpscApproval,
                voters: VoterSet::from_mask(voters),
                candidates: CandidateSet::from_mask(meet),
                detail: Detail::Candidate(c),
                covered: covered.clone(),
                claim,
                quota: quota.clone(),
            })
        })
    });
    Ok(found.or_else(|| {
        general::exhaustive(p, w).map(|wit| Witness {
            axiom: Axiom::IpscApproval,
            ..wit
        })
    }))
}

pub(super) fn cpsc(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    require_dichotomous(p, Axiom::CpscApproval)?;
    let funded = w.selected().to_mask();
    let found = p.first_voter_set(|voters| {
        let (meet, join) = p.approval_meet_join(voters);
        let covered = p.cost(join & funded);
        let quota = p.quota(voters);
        let best = knapsack::max_knapsack(p.inst, &CandidateSet::from_mask(meet), &quota);
        (best.best_weight > covered).then(|| Witness {
            axiom: Axiom::CpscApproval,
            voters: VoterSet::from_mask(voters),
            candidates: CandidateSet::from_mask(meet),
            detail: Detail::Bundle(best.best_set),
            covered,
            claim: best.best_weight,
            quota,
        })
    });
    Ok(found.or_else(|| {
        general::max_cost(p, w).map(|wit| Witness {
            axiom: Axiom::CpscApproval,
            ..wit
        })
    }))
}

/// Checks the normalization BPJR-L assumes and returns `L` as an integer.
fn integral_limit(p: &Profile<'_>, axiom: Axiom) -> Result<u64> {
    require_dichotomous(p, axiom)?;
    let precondition = |requirement: String| PbError::Precondition {
        axiom: axiom.label(),
        requirement,
    };
    let min_cost = p.inst.candidates().iter().map(|c| &c.cost).min();
    if min_cost != Some(&Rat::one()) {
        return Err(precondition(format!(
            "the cheapest candidate to cost exactly 1 (found {})",
            min_cost.map_or("no candidates".to_string(), |c| c.to_string())
        )));
    }
    p.inst
        .limit()
        .to_u64()
        .ok_or_else(|| precondition(format!("an integer limit (found {})", p.inst.limit())))
}

/// Levels `ℓ ∈ [1, L]` with `|N'| ≥ ℓ·n/L`.
fn levels(p: &Profile<'_>, voters: crate::instance::Mask, limit: u64) -> impl Iterator<Item = u64> {
    let share = p.head_quota(voters);
    (1..=limit).take_while(move |&l| Rat::from_integer(l as i64) <= share)
}

pub(super) fn bpjr_l(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    let limit = integral_limit(p, Axiom::BpjrL)?;
    let funded = w.selected().to_mask();
    Ok(p.first_voter_set(|voters| {
        let (meet, join) = p.approval_meet_join(voters);
        let meet_cost = p.cost(meet);
        let level = levels(p, voters, limit).find(|&l| meet_cost >= Rat::from_integer(l as i64))?;
        let covered = p.cost(join & funded);
        let quota = p.head_quota(voters);
        let best = knapsack::max_knapsack(p.inst, &CandidateSet::from_mask(meet), &quota);
        (covered < best.best_weight).then(|| Witness {
            axiom: Axiom::BpjrL,
            voters: VoterSet::from_mask(voters),
            candidates: CandidateSet::from_mask(meet),
            detail: Detail::Level {
                level,
                bundle: Some(best.best_set),
            },
            covered,
            claim: best.best_weight,
            quota,
        })
    }))
}

pub(super) fn local_bpjr_l(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    let limit = integral_limit(p, Axiom::LocalBpjrL)?;
    let funded = w.selected().to_mask();
    Ok(p.first_voter_set(|voters| {
        let (meet, join) = p.approval_meet_join(voters);
        let current = join & funded;
        if current & !meet != 0 {
            // No subset of the common approvals can strictly contain W'.
            return None;
        }
        let current_cost = p.cost(current);
        let meet_set = CandidateSet::from_mask(meet);
        let rest = CandidateSet::from_mask(meet & !current);
        levels(p, voters, limit).find_map(|level| {
            let cap = Rat::from_integer(level as i64);
            let best = knapsack::max_knapsack(p.inst, &meet_set, &cap);
            if best.best_weight <= current_cost {
                return None;
            }
            // Best completion of W' within the common approvals.
            let ext = knapsack::max_knapsack(p.inst, &rest, &(&cap - &current_cost));
            (&current_cost + &ext.best_weight == best.best_weight).then(|| Witness {
                axiom: Axiom::LocalBpjrL,
                voters: VoterSet::from_mask(voters),
                candidates: meet_set.clone(),
                detail: Detail::Level {
                    level,
                    bundle: Some(ext.best_set.union(&CandidateSet::from_mask(current))),
                },
                covered: current_cost.clone(),
                claim: best.best_weight,
                quota: cap,
            })
        })
    }))
}
