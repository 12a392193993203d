//! Committee-election forms: unit costs, unit weights, limit `k`.

use num_traits::ToPrimitive;

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, Mask, VoterSet};
use crate::outcome::Outcome;
use crate::rat::Rat;
use crate::verify::engine::bits;
use crate::verify::{require_dichotomous, Axiom, Detail, Profile, Witness};

fn committee_size(p: &Profile<'_>, axiom: Axiom, w: &Outcome, exact_size: bool) -> Result<usize> {
    let k = p.inst.committee_size().ok_or_else(|| PbError::Precondition {
        axiom: axiom.label(),
        requirement: "a multi-winner instance (unit costs, unit weights, integer limit k ≤ m)".into(),
    })?;
    if exact_size && w.len() != k {
        return Err(PbError::Precondition {
            axiom: axiom.label(),
            requirement: format!("a committee of exactly {k} candidates (got {})", w.len()),
        });
    }
    Ok(k)
}

fn count(mask: Mask) -> Rat {
    Rat::from_integer(mask.count_ones() as i64)
}

/// `floor(|N'|·k/n)`.
fn max_level(p: &Profile<'_>, voters: Mask) -> u64 {
    p.head_quota(voters).floor_int().to_u64().unwrap_or(0)
}

pub(super) fn pjr(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    committee_size(p, Axiom::Pjr, w, true)?;
    require_dichotomous(p, Axiom::Pjr)?;
    let funded = w.selected().to_mask();
    Ok(p.first_voter_set(|voters| {
        let (meet, join) = p.approval_meet_join(voters);
        let covered = (join & funded).count_ones() as u64;
        let top = max_level(p, voters).min(meet.count_ones() as u64);
        (1..=top).find(|&l| covered < l).map(|level| Witness {
            axiom: Axiom::Pjr,
            voters: VoterSet::from_mask(voters),
            candidates: CandidateSet::from_mask(meet),
            detail: Detail::Level { level, bundle: None },
            covered: Rat::from_integer(covered as i64),
            claim: Rat::from_integer(level as i64),
            quota: p.head_quota(voters),
        })
    }))
}

pub(super) fn gen_psc(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    committee_size(p, Axiom::GenPsc, w, true)?;
    let funded = w.selected().to_mask();
    Ok(p.first_solid(|cands, voters| {
        let size = cands.count_ones() as u64;
        let covered = (p.bar(voters, size as usize) & funded).count_ones() as u64;
        (1..=max_level(p, voters))
            .find(|&l| covered < l.min(size))
            .map(|level| Witness {
                axiom: Axiom::GenPsc,
                voters: VoterSet::from_mask(voters),
                candidates: CandidateSet::from_mask(cands),
                detail: Detail::Level { level, bundle: None },
                covered: Rat::from_integer(covered as i64),
                claim: Rat::from_integer(level.min(size) as i64),
                quota: p.head_quota(voters),
            })
    }))
}

pub(super) fn cpsc_mw(p: &Profile<'_>, w: &Outcome) -> Result<Option<Witness>> {
    committee_size(p, Axiom::CpscMw, w, false)?;
    let funded = w.selected().to_mask();
    Ok(p.first_solid(|cands, voters| {
        let size = cands.count_ones() as u64;
        let covered = count(p.bar(voters, size as usize) & funded);
        // The largest C'' ⊆ C' with |C''| ≤ |N'|k/n.
        let room = max_level(p, voters).min(size) as usize;
        let bundle: Mask = bits(cands).take(room).fold(0, |m, c| m | 1 << c);
        let claim = count(bundle);
        (covered < claim).then(|| Witness {
            axiom: Axiom::CpscMw,
            voters: VoterSet::from_mask(voters),
            candidates: CandidateSet::from_mask(cands),
            detail: Detail::Bundle(CandidateSet::from_mask(bundle)),
            covered,
            claim,
            quota: p.head_quota(voters),
        })
    }))
}
