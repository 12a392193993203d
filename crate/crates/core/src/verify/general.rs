use crate::instance::{CandidateSet, VoterSet};
use crate::oracles::knapsack;
use crate::outcome::Outcome;
use crate::verify::engine::bits;
use crate::verify::{Axiom, Detail, Profile, Witness};

pub(super) fn exhaustive(p: &Profile<'_>, w: &Outcome) -> Option<Witness> {
    let slack = p.inst.limit() - w.total_cost();
    let c = (0..p.m).find(|&c| !w.contains(c) && p.cost_of(c) <= &slack)?;
    Some(Witness {
        axiom: Axiom::Exhaustive,
        voters: p.inst.all_voters(),
        candidates: p.inst.all_candidates(),
        detail: Detail::Candidate(c),
        covered: w.total_cost().clone(),
        claim: w.total_cost() + p.cost_of(c),
        quota: p.inst.limit().clone(),
    })
}

pub(super) fn max_cost(p: &Profile<'_>, w: &Outcome) -> Option<Witness> {
    let best = knapsack::max_knapsack(p.inst, &p.inst.all_candidates(), p.inst.limit());
    (&best.best_weight > w.total_cost()).then(|| Witness {
        axiom: Axiom::MaxCost,
        voters: p.inst.all_voters(),
        candidates: p.inst.all_candidates(),
        detail: Detail::Bundle(best.best_set),
        covered: w.total_cost().clone(),
        claim: best.best_weight,
        quota: p.inst.limit().clone(),
    })
}

pub(super) fn ipsc(p: &Profile<'_>, w: &Outcome) -> Option<Witness> {
    ipsc_with(p, w, false)
}

/// `strict_claim` replaces `claim ≤ quota` with `claim < quota`; only the
/// mutation harness sets it.
pub(super) fn ipsc_with(p: &Profile<'_>, w: &Outcome, strict_claim: bool) -> Option<Witness> {
    let funded = w.selected().to_mask();
    p.first_solid(|cands, voters| {
        let size = cands.count_ones() as usize;
        let covered_set = p.bar(voters, size) & funded;
        let covered = p.cost(covered_set);
        let quota = p.quota(voters);
        if covered >= quota {
            return None;
        }
        bits(cands & !covered_set).find_map(|c| {
            let claim = &covered + p.cost_of(c);
            let fits = if strict_claim { claim < quota } else { claim <= quota };
            fits.then(|| Witness {
                axiom: Axiom::Ipsc,
                voters: VoterSet::from_mask(voters),
                candidates: CandidateSet::from_mask(cands),
                detail: Detail::Candidate(c),
                covered: covered.clone(),
                claim,
                quota: quota.clone(),
            })
        })
    })
}

pub(super) fn cpsc(p: &Profile<'_>, w: &Outcome) -> Option<Witness> {
    let funded = w.selected().to_mask();
    p.first_solid(|cands, voters| {
        let size = cands.count_ones() as usize;
        let covered = p.cost(p.bar(voters, size) & funded);
        let quota = p.quota(voters);
        if covered >= quota {
            return None;
        }
        let best = knapsack::max_knapsack(p.inst, &CandidateSet::from_mask(cands), &quota);
        (best.best_weight > covered).then(|| Witness {
            axiom: Axiom::Cpsc,
            voters: VoterSet::from_mask(voters),
            candidates: CandidateSet::from_mask(cands),
            detail: Detail::Bundle(best.best_set),
            covered,
            claim: best.best_weight,
            quota,
        })
    })
}
