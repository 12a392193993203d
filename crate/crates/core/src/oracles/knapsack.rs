//! Exact 0/1 knapsack over rational costs.
//!
//! Value equals weight (we maximize the total cost that fits under a
//! capacity). Among optimal sets the lexicographically smallest list of
//! candidate indices is returned, so results are reproducible.

use crate::instance::{CandidateSet, PbInstance};
use crate::rat::Rat;

/// Item counts up to this size are solved by full subset enumeration.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackResult {
    pub best_weight: Rat,
    pub best_set: CandidateSet,
}

impl KnapsackResult {
    fn empty() -> Self {
        KnapsackResult {
            best_weight: Rat::zero(),
            best_set: CandidateSet::new(),
        }
    }
}

/// Maximum total cost of a subset of `items` not exceeding `capacity`.
pub fn max_knapsack(inst: &PbInstance, items: &CandidateSet, capacity: &Rat) -> KnapsackResult {
    let items: Vec<(usize, Rat)> = items.iter().map(|c| (c, inst.cost(c).clone())).collect();
    solve(&items, capacity)
}

/// Same as [`max_knapsack`] over explicit `(index, cost)` pairs; costs must be
/// positive.
pub fn solve(items: &[(usize, Rat)], capacity: &Rat) -> KnapsackResult {
    if items.len() <= ENUMERATION_LIMIT {
        enumerate(items, capacity)
    } else {
        branch_and_bound(items, capacity)
    }
}

fn sorted(items: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut items = items.to_vec();
    items.sort_by_key(|(c, _)| *c);
    items
}

/// `a` precedes `b` in lexicographic order of their sorted position lists.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff & diff.wrapping_neg();
    let above = !(low | (low - 1));
    if a & low != 0 {
        b & above != 0
    } else {
        !(a & above != 0)
    }
}

/// Full enumeration in Gray-code order, one addition per subset.
pub fn enumerate(items: &[(usize, Rat)], capacity: &Rat) -> KnapsackResult {
    assert!(items.len() < 64, "too many knapsack items for enumeration");
    if capacity.is_negative() {
        return KnapsackResult::empty();
    }
    let items = sorted(items);
    let k = items.len();
    let mut best_mask = 0u64;
    let mut best = Rat::zero();
    let mut sum = Rat::zero();
    let mut gray = 0u64;
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        if gray >> bit & 1 == 1 {
            sum += &items[bit].1;
        } else {
            sum -= &items[bit].1;
        }
        if &sum <= capacity && (sum > best || (sum == best && lex_less(gray, best_mask))) {
            best = sum.clone();
            best_mask = gray;
        }
    }
    KnapsackResult {
        best_weight: best,
        best_set: (0..k).filter(|&p| best_mask >> p & 1 == 1).map(|p| items[p].0).collect(),
    }
}

/// Depth-first branch and bound, including items before excluding them.
///
/// The search visits sets in lexicographic order of index lists (up to
/// prefixes, which can never tie), so keeping only strict improvements yields
/// the lexicographically smallest optimum.
pub fn branch_and_bound(items: &[(usize, Rat)], capacity: &Rat) -> KnapsackResult {
    if capacity.is_negative() {
        return KnapsackResult::empty();
    }
    let items = sorted(items);
    let mut suffix = vec![Rat::zero(); items.len() + 1];
    for p in (0..items.len()).rev() {
        suffix[p] = &suffix[p + 1] + &items[p].1;
    }
    struct Search<'a> {
        items: &'a [(usize, Rat)],
        suffix: &'a [Rat],
        capacity: &'a Rat,
        chosen: Vec<usize>,
        best: Rat,
        best_set: Vec<usize>,
        found: bool,
    }
    impl Search<'_> {
        fn go(&mut self, p: usize, sum: Rat) {
            if sum > self.best || !self.found {
                self.best = sum.clone();
                self.best_set = self.chosen.clone();
                self.found = true;
            }
            if p == self.items.len() || &sum + &self.suffix[p] <= self.best {
                return;
            }
            let with = &sum + &self.items[p].1;
            if &with <= self.capacity {
                self.chosen.push(self.items[p].0);
                self.go(p + 1, with);
                self.chosen.pop();
            }
            self.go(p + 1, sum);
        }
    }
    let mut s = Search {
        items: &items,
        suffix: &suffix,
        capacity,
        chosen: Vec::new(),
        best: Rat::zero(),
        best_set: Vec::new(),
        found: false,
    };
    s.go(0, Rat::zero());
    KnapsackResult {
        best_weight: s.best,
        best_set: CandidateSet::from_indices(s.best_set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(costs: &[&str]) -> Vec<(usize, Rat)> {
        costs.iter().enumerate().map(|(i, c)| (i, c.parse().unwrap())).collect()
    }

    #[test]
    fn single_voter_costs() {
        let it = items(&["3", "2", "2", "2"]);
        let cap = Rat::from_integer(4);
        for r in [enumerate(&it, &cap), branch_and_bound(&it, &cap)] {
            assert_eq!(r.best_weight, Rat::from_integer(4));
            assert_eq!(r.best_set.as_slice(), &[1, 2]);
        }
    }

    #[test]
    fn empty_items() {
        let r = solve(&[], &Rat::one());
        assert_eq!(r.best_weight, Rat::zero());
        assert!(r.best_set.is_empty());
    }

    #[test]
    fn rational_costs() {
        // Subsets of {1, 9/10, 1} under 2: {a,c} = 2 is the unique optimum.
        let it = items(&["1", "0.9", "1"]);
        let r = solve(&it, &Rat::from_integer(2));
        assert_eq!(r.best_weight, Rat::from_integer(2));
        assert_eq!(r.best_set.as_slice(), &[0, 2]);
    }

    #[test]
    fn lexicographic_ties() {
        let it = items(&["1", "2", "1", "1"]);
        let cap = Rat::from_integer(2);
        assert_eq!(enumerate(&it, &cap).best_set.as_slice(), &[0, 2]);
        assert_eq!(branch_and_bound(&it, &cap).best_set.as_slice(), &[0, 2]);
    }

    #[test]
    fn lex_order_of_masks() {
        assert!(lex_less(0b011, 0b101)); // [0,1] < [0,2]
        assert!(lex_less(0b001, 0b011)); // [0] < [0,1]
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0b100, 0b1000)); // [2] < [3]
        assert!(lex_less(0b1001, 0b0110)); // [0,3] < [1,2]
        assert!(lex_less(0, 0b1)); // [] < [0]
    }

    #[test]
    fn nothing_fits() {
        let it = items(&["3", "5"]);
        let r = solve(&it, &Rat::from_integer(2));
        assert_eq!(r.best_weight, Rat::zero());
        assert!(r.best_set.is_empty());
        assert_eq!(solve(&it, &Rat::from_integer(-1)).best_weight, Rat::zero());
    }
}
