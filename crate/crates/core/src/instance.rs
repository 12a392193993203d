//! The participatory budgeting data model.

use std::collections::HashMap;
use std::fmt;

use crate::error::{PbError, Result};
use crate::rat::Rat;

/// Bitmask over candidate or voter indices, used by the exhaustive searches.
pub type Mask = u64;

macro_rules! index_set {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<usize>);

        impl $name {
            pub fn new() -> Self {
                Self(Vec::new())
            }

            /// Builds a set from arbitrary indices; duplicates are dropped.
            pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut v: Vec<usize> = iter.into_iter().collect();
                v.sort_unstable();
                v.dedup();
                Self(v)
            }

            pub fn from_mask(mask: Mask) -> Self {
                Self((0..64).filter(|&i| mask >> i & 1 == 1).collect())
            }

            /// Panics if an index does not fit in a [`Mask`].
            pub fn to_mask(&self) -> Mask {
                self.0.iter().fold(0, |m, &i| {
                    assert!(i < 64, "index {i} does not fit in a bitmask");
                    m | 1 << i
                })
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, i: usize) -> bool {
                self.0.binary_search(&i).is_ok()
            }

            pub fn insert(&mut self, i: usize) {
                if let Err(pos) = self.0.binary_search(&i) {
                    self.0.insert(pos, i);
                }
            }

            pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
                self.0.iter().copied()
            }

            pub fn as_slice(&self) -> &[usize] {
                &self.0
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.iter().all(|&i| other.contains(i))
            }

            pub fn union(&self, other: &Self) -> Self {
                Self::from_indices(self.iter().chain(other.iter()))
            }

            pub fn intersection(&self, other: &Self) -> Self {
                Self(self.iter().filter(|&i| other.contains(i)).collect())
            }

            pub fn difference(&self, other: &Self) -> Self {
                Self(self.iter().filter(|&i| !other.contains(i)).collect())
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.0.iter()).finish()
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                Self::from_indices(iter)
            }
        }
    };
}

index_set!(
    /// A set of candidate indices, iterated in input order.
    CandidateSet
);
index_set!(
    /// A set of voter indices, iterated in input order.
    VoterSet
);

/// A voter's weak order: equivalence classes from most to least preferred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrder {
    classes: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

impl WeakOrder {
    /// Builds a weak order over `num_candidates` candidates. Candidates that
    /// appear in no class are appended as a final class.
    pub fn new(mut classes: Vec<Vec<usize>>, num_candidates: usize) -> Result<Self, String> {
        let mut rank = vec![usize::MAX; num_candidates];
        for (k, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(format!("equivalence class {k} is empty"));
            }
            class.sort_unstable();
            for &c in class.iter() {
                if c >= num_candidates {
                    return Err(format!("candidate index {c} out of range"));
                }
                if rank[c] != usize::MAX {
                    return Err(format!("candidate index {c} ranked twice"));
                }
                rank[c] = k;
            }
        }
        let rest: Vec<usize> = (0..num_candidates)
            .filter(|&c| rank[c] == usize::MAX)
            .collect();
        if !rest.is_empty() {
            let k = classes.len();
            for &c in &rest {
                rank[c] = k;
            }
            classes.push(rest);
        }
        Ok(WeakOrder { classes, rank })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class index of candidate `c` (0 is the top class).
    pub fn rank(&self, c: usize) -> usize {
        self.rank[c]
    }

    /// `a` is weakly preferred to `b`.
    pub fn weakly_prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] <= self.rank[b]
    }

    /// Union of the smallest prefix of classes holding at least `j`
    /// candidates; everything when `j` exceeds the candidate count.
    pub fn top(&self, j: usize) -> CandidateSet {
        let mut out = Vec::new();
        for class in &self.classes {
            if out.len() >= j {
                break;
            }
            out.extend_from_slice(class);
        }
        CandidateSet::from_indices(out)
    }

    /// The top class, read as an approval set for dichotomous voters.
    pub fn approval_set(&self) -> CandidateSet {
        CandidateSet::from_indices(self.classes.first().cloned().unwrap_or_default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub id: String,
    pub cost: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Voter {
    pub id: String,
    pub weight: Rat,
    pub prefs: WeakOrder,
}

/// A validated PB instance: weights summing to the number of voters, positive
/// costs and limit, and a weak order over all candidates for every voter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbInstance {
    voters: Vec<Voter>,
    candidates: Vec<Candidate>,
    limit: Rat,
}

impl PbInstance {
    /// Validates and assembles an instance. Weights must already sum to the
    /// number of voters; see [`crate::document`] for the normalizing reader.
    pub fn new(voters: Vec<Voter>, candidates: Vec<Candidate>, limit: Rat) -> Result<Self> {
        let invalid = |path: String, message: String| {
            PbError::Instance(crate::error::InstanceError::Invalid {
                path,
                line: None,
                message,
            })
        };
        if !limit.is_positive() {
            return Err(invalid("limit".into(), format!("limit must be positive, got {limit}")));
        }
        let mut seen = HashMap::new();
        for (k, c) in candidates.iter().enumerate() {
            if !c.cost.is_positive() {
                return Err(invalid(
                    format!("candidates[{k}]"),
                    format!("cost of {:?} must be positive, got {}", c.id, c.cost),
                ));
            }
            if seen.insert(c.id.as_str(), k).is_some() {
                return Err(invalid(format!("candidates[{k}]"), format!("duplicate candidate id {:?}", c.id)));
            }
        }
        let mut seen = HashMap::new();
        for (k, v) in voters.iter().enumerate() {
            if v.weight.is_negative() {
                return Err(invalid(
                    format!("voters[{k}]"),
                    format!("weight of {:?} must be nonnegative, got {}", v.id, v.weight),
                ));
            }
            if seen.insert(v.id.as_str(), k).is_some() {
                return Err(invalid(format!("voters[{k}]"), format!("duplicate voter id {:?}", v.id)));
            }
            if v.prefs.rank.len() != candidates.len() {
                return Err(invalid(
                    format!("voters[{k}].prefs"),
                    "preferences do not cover the candidate set".into(),
                ));
            }
        }
        let total: Rat = voters.iter().map(|v| &v.weight).sum();
        if total != Rat::from_usize(voters.len()) {
            return Err(invalid(
                "voters".into(),
                format!(
                    "weights sum to {total} but must sum to the number of voters ({}); pass normalize to rescale",
                    voters.len()
                ),
            ));
        }
        Ok(PbInstance {
            voters,
            candidates,
            limit,
        })
    }

    pub fn voters(&self) -> &[Voter] {
        &self.voters
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn limit(&self) -> &Rat {
        &self.limit
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    /// `n` as an exact rational; equals the total weight.
    pub fn n(&self) -> Rat {
        Rat::from_usize(self.voters.len())
    }

    pub fn cost(&self, c: usize) -> &Rat {
        &self.candidates[c].cost
    }

    pub fn weight(&self, i: usize) -> &Rat {
        &self.voters[i].weight
    }

    pub fn prefs(&self, i: usize) -> &WeakOrder {
        &self.voters[i].prefs
    }

    pub fn cost_of(&self, set: &CandidateSet) -> Rat {
        set.iter().map(|c| self.cost(c)).sum()
    }

    pub fn weight_of(&self, set: &VoterSet) -> Rat {
        set.iter().map(|i| self.weight(i)).sum()
    }

    pub fn all_candidates(&self) -> CandidateSet {
        CandidateSet((0..self.candidates.len()).collect())
    }

    pub fn all_voters(&self) -> VoterSet {
        VoterSet((0..self.voters.len()).collect())
    }

    pub fn candidate_index(&self, id: &str) -> Result<usize> {
        self.candidates
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| PbError::UnknownCandidate(id.to_string()))
    }

    pub fn voter_index(&self, id: &str) -> Result<usize> {
        self.voters
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| PbError::UnknownVoter(id.to_string()))
    }

    pub fn candidate_set(&self, ids: &[&str]) -> Result<CandidateSet> {
        ids.iter().map(|id| self.candidate_index(id)).collect()
    }

    pub fn voter_set(&self, ids: &[&str]) -> Result<VoterSet> {
        ids.iter().map(|id| self.voter_index(id)).collect()
    }

    pub fn candidate_ids(&self, set: &CandidateSet) -> Vec<&str> {
        set.iter().map(|c| self.candidates[c].id.as_str()).collect()
    }

    pub fn voter_ids(&self, set: &VoterSet) -> Vec<&str> {
        set.iter().map(|i| self.voters[i].id.as_str()).collect()
    }

    /// Every voter has at most two equivalence classes.
    pub fn is_dichotomous(&self) -> bool {
        self.voters.iter().all(|v| v.prefs.num_classes() <= 2)
    }

    pub fn is_strict(&self) -> bool {
        self.voters
            .iter()
            .all(|v| v.prefs.classes().iter().all(|c| c.len() == 1))
    }

    /// Committee size `k` if this is a multi-winner instance: unit costs,
    /// unit weights and an integer limit not above the candidate count.
    pub fn committee_size(&self) -> Option<usize> {
        let unit = Rat::one();
        if self.candidates.iter().any(|c| c.cost != unit) || self.voters.iter().any(|v| v.weight != unit) {
            return None;
        }
        let k = self.limit.to_u64()? as usize;
        (k <= self.candidates.len()).then_some(k)
    }

    /// First voter with more than two classes, if any.
    pub(crate) fn first_non_dichotomous(&self) -> Option<&Voter> {
        self.voters.iter().find(|v| v.prefs.num_classes() > 2)
    }
}
