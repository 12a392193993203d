//! Solid coalitions and the sets derived from them.
//!
//! For a voter `i` and rank `j`, the weak preference set is every candidate
//! that `i` likes at least as much as their `j`-th choice. It does not depend
//! on how ties inside a class are broken, so it is computed directly from the
//! equivalence classes.

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, PbInstance, VoterSet};
use crate::rat::Rat;

/// Candidates voter `i` weakly prefers to their `j`-th most preferred one.
pub fn weak_pref_set(inst: &PbInstance, i: usize, j: usize) -> Result<CandidateSet> {
    if j == 0 {
        return Err(PbError::ZeroRank);
    }
    if i >= inst.num_voters() {
        return Err(PbError::VoterIndex(i));
    }
    Ok(inst.prefs(i).top(j))
}

fn solid_for(inst: &PbInstance, i: usize, cands: &CandidateSet) -> bool {
    let prefs = inst.prefs(i);
    let worst_inside = cands.iter().map(|c| prefs.rank(c)).max();
    let best_outside = (0..inst.num_candidates())
        .filter(|&c| !cands.contains(c))
        .map(|c| prefs.rank(c))
        .min();
    match (worst_inside, best_outside) {
        (Some(w), Some(b)) => w <= b,
        _ => true,
    }
}

/// Every voter in `voters` ranks every member of `cands` weakly above every
/// non-member.
pub fn is_solidly_supported(inst: &PbInstance, voters: &VoterSet, cands: &CandidateSet) -> bool {
    voters.iter().all(|i| solid_for(inst, i, cands))
}

/// The largest voter set solidly supporting `cands`.
pub fn supporters(inst: &PbInstance, cands: &CandidateSet) -> VoterSet {
    (0..inst.num_voters()).filter(|&i| solid_for(inst, i, cands)).collect()
}

/// Union over `voters` of their weak preference sets at rank `|cands|`.
pub fn bar_set(inst: &PbInstance, voters: &VoterSet, cands: &CandidateSet) -> CandidateSet {
    let j = cands.len().max(1);
    let mut out = CandidateSet::new();
    for i in voters.iter() {
        out = out.union(&inst.prefs(i).top(j));
    }
    out
}

/// [`bar_set`] minus `cands`; requires a solid coalition.
pub fn periphery(inst: &PbInstance, voters: &VoterSet, cands: &CandidateSet) -> Result<CandidateSet> {
    if !is_solidly_supported(inst, voters, cands) {
        return Err(PbError::NotSolid {
            voters: inst.voter_ids(voters).join(","),
            candidates: inst.candidate_ids(cands).join(","),
        });
    }
    Ok(bar_set(inst, voters, cands).difference(cands))
}

/// The budget share `b(N')·L/n` of a voter set.
pub fn quota(inst: &PbInstance, voters: &VoterSet) -> Rat {
    inst.weight_of(voters) * inst.limit() / inst.n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::InstanceBuilder;

    fn approvals() -> PbInstance {
        InstanceBuilder::new("2")
            .candidate("a", "1")
            .candidate("b", "0.9")
            .candidate("c", "1")
            .voter("1", "1", &[&["a", "b"]])
            .voter("2", "1", &[&["a"]])
            .voter("3", "1", &[&["c"]])
            .voter("4", "1", &[&["c"]])
            .build()
            .unwrap()
    }

    fn strict() -> PbInstance {
        InstanceBuilder::new("2")
            .candidate("a", "2.1")
            .candidate("b", "0.1")
            .candidate("c", "0.9")
            .candidate("d", "2.1")
            .candidate("y", "2.1")
            .candidate("z", "1.1")
            .voter("1", "1", &[&["a"], &["b", "c"], &["z"], &["d"], &["y"]])
            .voter("2", "1", &[&["b"], &["a", "d"], &["y"], &["c"], &["z"]])
            .voter("3", "1", &[&["z"], &["y"], &["d"], &["c"], &["b"], &["a"]])
            .voter("4", "1", &[&["z"], &["y"], &["d"], &["c"], &["b"], &["a"]])
            .build()
            .unwrap()
    }

    fn c(inst: &PbInstance, ids: &[&str]) -> CandidateSet {
        inst.candidate_set(ids).unwrap()
    }

    fn v(inst: &PbInstance, ids: &[&str]) -> VoterSet {
        inst.voter_set(ids).unwrap()
    }

    #[test]
    fn weak_pref_sets() {
        let inst = InstanceBuilder::new("1")
            .candidates(&["a", "b", "c"], "1")
            .voter("1", "1", &[&["a", "b"], &["c"]])
            .build()
            .unwrap();
        assert_eq!(weak_pref_set(&inst, 0, 1).unwrap(), c(&inst, &["a", "b"]));
        assert_eq!(weak_pref_set(&inst, 0, 2).unwrap(), c(&inst, &["a", "b"]));
        assert_eq!(weak_pref_set(&inst, 0, 3).unwrap(), c(&inst, &["a", "b", "c"]));
        assert_eq!(weak_pref_set(&inst, 0, 7).unwrap(), c(&inst, &["a", "b", "c"]));
        assert!(matches!(weak_pref_set(&inst, 0, 0), Err(PbError::ZeroRank)));
        assert!(matches!(weak_pref_set(&inst, 3, 1), Err(PbError::VoterIndex(3))));
    }

    #[test]
    fn solid_support() {
        let inst = approvals();
        assert!(is_solidly_supported(&inst, &v(&inst, &["1", "2"]), &c(&inst, &["a"])));
        assert!(is_solidly_supported(&inst, &inst.all_voters(), &inst.all_candidates()));
        assert!(!is_solidly_supported(&inst, &v(&inst, &["3"]), &c(&inst, &["a"])));
    }

    #[test]
    fn supporter_sets() {
        let inst = approvals();
        assert_eq!(supporters(&inst, &c(&inst, &["a"])), v(&inst, &["1", "2"]));
        assert_eq!(supporters(&inst, &inst.all_candidates()), inst.all_voters());
        // Voter 2 ranks a strictly above b, so only voter 1 supports {b}.
        assert_eq!(supporters(&inst, &c(&inst, &["b"])), v(&inst, &["1"]));
    }

    #[test]
    fn bar_sets_and_periphery() {
        let inst = approvals();
        let n12 = v(&inst, &["1", "2"]);
        assert_eq!(bar_set(&inst, &n12, &c(&inst, &["a"])), c(&inst, &["a", "b"]));
        assert_eq!(periphery(&inst, &n12, &c(&inst, &["a"])).unwrap(), c(&inst, &["b"]));
        assert!(periphery(&inst, &inst.all_voters(), &inst.all_candidates()).unwrap().is_empty());
        assert!(periphery(&inst, &v(&inst, &["3"]), &c(&inst, &["a"])).is_err());

        let inst = strict();
        let n12 = v(&inst, &["1", "2"]);
        let ab = c(&inst, &["a", "b"]);
        assert!(is_solidly_supported(&inst, &n12, &ab));
        assert_eq!(bar_set(&inst, &n12, &ab), c(&inst, &["a", "b", "c", "d"]));
        assert_eq!(periphery(&inst, &n12, &ab).unwrap(), c(&inst, &["c", "d"]));
        let top = c(&inst, &["z"]);
        assert_eq!(bar_set(&inst, &v(&inst, &["3"]), &top), top);
    }

    #[test]
    fn quotas() {
        let inst = approvals();
        assert_eq!(quota(&inst, &v(&inst, &["1", "2"])), Rat::one());
        assert_eq!(quota(&inst, &VoterSet::new()), Rat::zero());
        assert_eq!(&quota(&inst, &inst.all_voters()), inst.limit());
    }
}
