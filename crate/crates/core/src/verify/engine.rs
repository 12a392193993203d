//! Bitmask view of an instance shared by the exhaustive verifiers.

use itertools::Itertools;

use crate::error::{PbError, Result};
use crate::instance::{Mask, PbInstance};
use crate::rat::Rat;
use crate::verify::Limits;

/// Subset sums are tabulated up to this many elements.
const TABLE_BITS: usize = 10;

pub(crate) fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

pub(crate) fn mask_of(positions: &[usize]) -> Mask {
    positions.iter().fold(0, |m, &p| m | 1 << p)
}

/// Nonempty subsets of `universe` in (size, lexicographic) order.
pub(crate) fn subsets_by_size(universe: Mask) -> impl Iterator<Item = Mask> {
    let members: Vec<usize> = bits(universe).collect();
    (1..=members.len()).flat_map(move |size| {
        members
            .clone()
            .into_iter()
            .combinations(size)
            .map(|combo| mask_of(&combo))
            .collect::<Vec<_>>()
    })
}

/// Subsets of `universe` with exactly `size` members, in lexicographic order.
pub(crate) fn subsets_of_size(universe: Mask, size: usize) -> impl Iterator<Item = Mask> {
    bits(universe).combinations(size).map(|combo| mask_of(&combo))
}

struct SubsetSums {
    values: Vec<Rat>,
    table: Option<Vec<Rat>>,
}

impl SubsetSums {
    fn new(values: Vec<Rat>) -> Self {
        let table = (values.len() <= TABLE_BITS).then(|| {
            let mut t = vec![Rat::zero(); 1 << values.len()];
            for mask in 1..t.len() {
                let low = mask.trailing_zeros() as usize;
                t[mask] = &t[mask & (mask - 1)] + &values[low];
            }
            t
        });
        SubsetSums { values, table }
    }

    fn sum(&self, mask: Mask) -> Rat {
        match &self.table {
            Some(t) => t[mask as usize].clone(),
            None => bits(mask).map(|i| &self.values[i]).sum(),
        }
    }
}

pub(crate) struct Profile<'a> {
    pub inst: &'a PbInstance,
    pub m: usize,
    pub n: usize,
    costs: SubsetSums,
    weights: SubsetSums,
    /// `rank[i][c]`: class index of candidate `c` for voter `i`.
    rank: Vec<Vec<usize>>,
    /// `top[i][j]`: voter `i`'s weak preference set at rank `j` (1-based).
    top: Vec<Vec<Mask>>,
    approval: Vec<Mask>,
    pub all_candidates: Mask,
    pub all_voters: Mask,
}

impl<'a> Profile<'a> {
    pub fn new(inst: &'a PbInstance, limits: &Limits) -> Result<Self> {
        let (n, m) = (inst.num_voters(), inst.num_candidates());
        if n > limits.max_voters() || m > limits.max_candidates() {
            return Err(PbError::TooLarge {
                voters: n,
                candidates: m,
                max_voters: limits.max_voters(),
                max_candidates: limits.max_candidates(),
            });
        }
        let rank: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..m).map(|c| inst.prefs(i).rank(c)).collect())
            .collect();
        let top = (0..n)
            .map(|i| (0..=m).map(|j| inst.prefs(i).top(j.max(1)).to_mask()).collect())
            .collect();
        let approval = (0..n).map(|i| inst.prefs(i).approval_set().to_mask()).collect();
        Ok(Profile {
            inst,
            m,
            n,
            costs: SubsetSums::new(inst.candidates().iter().map(|c| c.cost.clone()).collect()),
            weights: SubsetSums::new(inst.voters().iter().map(|v| v.weight.clone()).collect()),
            rank,
            top,
            approval,
            all_candidates: if m == 64 { u64::MAX } else { (1u64 << m) - 1 },
            all_voters: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        })
    }

    pub fn cost(&self, cands: Mask) -> Rat {
        self.costs.sum(cands)
    }

    pub fn cost_of(&self, c: usize) -> &Rat {
        &self.costs.values[c]
    }

    pub fn weight(&self, voters: Mask) -> Rat {
        self.weights.sum(voters)
    }

    /// `b(N')·L/n`.
    pub fn quota(&self, voters: Mask) -> Rat {
        self.weight(voters) * self.inst.limit() / self.inst.n()
    }

    /// `|N'|·L/n`, the unweighted share used by the approval-ballot axioms.
    pub fn head_quota(&self, voters: Mask) -> Rat {
        Rat::from_integer(voters.count_ones() as i64) * self.inst.limit() / self.inst.n()
    }

    pub fn is_solid_for(&self, i: usize, cands: Mask) -> bool {
        let r = &self.rank[i];
        let worst_inside = bits(cands).map(|c| r[c]).max();
        let best_outside = bits(self.all_candidates & !cands).map(|c| r[c]).min();
        match (worst_inside, best_outside) {
            (Some(w), Some(b)) => w <= b,
            _ => true,
        }
    }

    pub fn supporters(&self, cands: Mask) -> Mask {
        (0..self.n)
            .filter(|&i| self.is_solid_for(i, cands))
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn top(&self, i: usize, j: usize) -> Mask {
        self.top[i][j.min(self.m)]
    }

    /// Union of the voters' weak preference sets at rank `size`.
    pub fn bar(&self, voters: Mask, size: usize) -> Mask {
        bits(voters).fold(0, |acc, i| acc | self.top(i, size))
    }

    /// `(∩ A_i, ∪ A_i)` over a nonempty voter set.
    pub fn approval_meet_join(&self, voters: Mask) -> (Mask, Mask) {
        bits(voters).fold((self.all_candidates, 0), |(meet, join), i| {
            (meet & self.approval[i], join | self.approval[i])
        })
    }

    /// Visits solid coalitions `(C', N')` with `N'` ranging over every
    /// nonempty subset of the supporters of `C'`, in (|C'|, |N'|, C', N')
    /// order, returning the first hit.
    pub fn first_solid<T>(&self, mut visit: impl FnMut(Mask, Mask) -> Option<T>) -> Option<T> {
        for size in 1..=self.m {
            let layer: Vec<(Mask, Mask)> = subsets_of_size(self.all_candidates, size)
                .map(|c| (c, self.supporters(c)))
                .filter(|&(_, s)| s != 0)
                .collect();
            let widest = layer.iter().map(|(_, s)| s.count_ones() as usize).max().unwrap_or(0);
            for voters in 1..=widest {
                for &(cands, support) in &layer {
                    for coalition in subsets_of_size(support, voters) {
                        if let Some(hit) = visit(cands, coalition) {
                            return Some(hit);
                        }
                    }
                }
            }
        }
        None
    }

    /// Visits every nonempty voter set in (size, lexicographic) order.
    pub fn first_voter_set<T>(&self, visit: impl FnMut(Mask) -> Option<T>) -> Option<T> {
        subsets_by_size(self.all_voters).find_map(visit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_order() {
        let all: Vec<Mask> = subsets_by_size(0b111).collect();
        assert_eq!(all, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
        let two: Vec<Mask> = subsets_of_size(0b1101, 2).collect();
        assert_eq!(two, vec![0b0101, 0b1001, 0b1100]);
    }

    #[test]
    fn sums_with_and_without_table() {
        let values: Vec<Rat> = (1..=12).map(|k| Rat::new(k, 3)).collect();
        let small = SubsetSums::new(values[..4].to_vec());
        let large = SubsetSums::new(values.clone());
        assert!(small.table.is_some() && large.table.is_none());
        assert_eq!(small.sum(0b1010), Rat::new(6, 3));
        assert_eq!(large.sum(0b1010), Rat::new(6, 3));
        assert_eq!(large.sum((1 << 12) - 1), Rat::new(78, 3));
    }
}
