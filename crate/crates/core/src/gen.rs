//! Seeded random instances.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PbError, Result};
use crate::instance::{Candidate, PbInstance, Voter, WeakOrder};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostModel {
    Unit,
    /// Decimal costs drawn uniformly from a grid on `[1, L]`.
    UniformRational,
    /// Integer costs in `[1, L]`, with the first candidate costing 1.
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefModel {
    /// A uniformly random linear order.
    Strict,
    /// Each candidate is approved independently with probability `p`. A
    /// voter who approves nothing is indifferent between all candidates.
    Dichotomous { p: Rat },
    /// A random order cut into classes at each gap with probability 1/2.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightModel {
    Unit,
    /// Integer draws in `[1, 4]`, rescaled to sum to `n`.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub limit: Rat,
    pub costs: CostModel,
    pub prefs: PrefModel,
    pub weights: WeightModel,
}

impl GenParams {
    pub fn new(seed: u64, n: usize, m: usize) -> Self {
        GenParams {
            seed,
            n,
            m,
            limit: Rat::from_usize(m.div_ceil(2).max(1)),
            costs: CostModel::Unit,
            prefs: PrefModel::Strict,
            weights: WeightModel::Unit,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(PbError::GenParams(s));
        if self.n == 0 {
            return bad("at least one voter is required".into());
        }
        if !self.limit.is_positive() {
            return bad(format!("limit must be positive, got {}", self.limit));
        }
        if self.costs != CostModel::Unit && self.limit < 1 {
            return bad(format!("cost draws from [1, L] need L ≥ 1, got {}", self.limit));
        }
        if self.costs == CostModel::Integer && !self.limit.is_integer() {
            return bad(format!("integer costs need an integer limit, got {}", self.limit));
        }
        if let PrefModel::Dichotomous { p } = &self.prefs {
            if p.is_negative() || *p > 1 {
                return bad(format!("approval probability must lie in [0, 1], got {p}"));
            }
            if p.numer().to_u32().is_none() || p.denom().to_u32().is_none() {
                return bad(format!("approval probability {p} has too large a numerator or denominator"));
            }
        }
        Ok(())
    }
}

pub fn candidate_id(c: usize, m: usize) -> String {
    if m <= 26 {
        char::from(b'a' + c as u8).to_string()
    } else {
        format!("c{}", c + 1)
    }
}

/// Same parameters, same instance.
pub fn generate(params: &GenParams) -> Result<PbInstance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let m = params.m;

    let candidates: Vec<Candidate> = (0..m)
        .map(|c| Candidate {
            id: candidate_id(c, m),
            cost: draw_cost(&mut rng, &params.costs, &params.limit, c),
        })
        .collect();

    let raw: Vec<u32> = (0..params.n)
        .map(|_| match params.weights {
            WeightModel::Unit => 1,
            WeightModel::Random => rng.gen_range(1..=4),
        })
        .collect();
    let total: u32 = raw.iter().sum();
    let n = Rat::from_usize(params.n);

    let voters = raw
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let classes = draw_classes(&mut rng, &params.prefs, m);
            Voter {
                id: (i + 1).to_string(),
                weight: Rat::from_integer(i64::from(r)) * &n / Rat::from_integer(i64::from(total)),
                prefs: WeakOrder::new(classes, m).expect("generated classes partition the candidates"),
            }
        })
        .collect();
    PbInstance::new(voters, candidates, params.limit.clone())
}

fn draw_cost(rng: &mut ChaCha8Rng, model: &CostModel, limit: &Rat, c: usize) -> Rat {
    match model {
        CostModel::Unit => Rat::one(),
        CostModel::Integer => {
            if c == 0 {
                return Rat::one();
            }
            let top = limit.floor_int().to_i64().expect("limit fits in i64");
            Rat::from_integer(rng.gen_range(1..=top))
        }
        CostModel::UniformRational => {
            const DENOMINATORS: [i64; 4] = [1, 2, 5, 10];
            let d = *DENOMINATORS.choose(rng).expect("nonempty");
            let top = (limit * Rat::from_integer(d)).floor_int().to_i64().expect("limit fits in i64");
            Rat::new(rng.gen_range(d..=top), d)
        }
    }
}

fn draw_classes(rng: &mut ChaCha8Rng, model: &PrefModel, m: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..m).collect();
    match model {
        PrefModel::Strict => {
            order.shuffle(rng);
            order.into_iter().map(|c| vec![c]).collect()
        }
        PrefModel::Dichotomous { p } => {
            let num = p.numer().to_u32().expect("validated");
            let den = p.denom().to_u32().expect("validated");
            let approved: Vec<usize> = order.into_iter().filter(|_| rng.gen_ratio(num, den)).collect();
            if approved.is_empty() {
                Vec::new()
            } else {
                vec![approved]
            }
        }
        PrefModel::Weak => {
            order.shuffle(rng);
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for (k, c) in order.into_iter().enumerate() {
                if k == 0 || rng.gen_ratio(1, 2) {
                    classes.push(vec![c]);
                } else {
                    classes.last_mut().expect("first class exists").push(c);
                }
            }
            classes
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{instance_to_string, parse_instance, ParseOptions};

    fn dichotomous(seed: u64) -> GenParams {
        GenParams {
            prefs: PrefModel::Dichotomous { p: Rat::new(1, 2) },
            ..GenParams::new(seed, 4, 4)
        }
    }

    #[test]
    fn same_seed_same_instance() {
        assert_eq!(generate(&dichotomous(1)).unwrap(), generate(&dichotomous(1)).unwrap());
        assert_ne!(generate(&dichotomous(1)).unwrap(), generate(&dichotomous(2)).unwrap());
    }

    #[test]
    fn round_trip() {
        let inst = generate(&dichotomous(1)).unwrap();
        let text = instance_to_string(&inst);
        assert_eq!(parse_instance(&text, &ParseOptions::default()).unwrap(), inst);
    }

    #[test]
    fn every_model_validates() {
        let costs = [CostModel::Unit, CostModel::UniformRational, CostModel::Integer];
        let prefs = [PrefModel::Strict, PrefModel::Weak, PrefModel::Dichotomous { p: Rat::new(2, 5) }];
        let weights = [WeightModel::Unit, WeightModel::Random];
        for seed in 0..20 {
            for c in &costs {
                for p in &prefs {
                    for w in &weights {
                        let params = GenParams {
                            limit: Rat::new(7, 2),
                            costs: if *c == CostModel::Integer { CostModel::Unit } else { c.clone() },
                            prefs: p.clone(),
                            weights: w.clone(),
                            ..GenParams::new(seed, 5, 6)
                        };
                        let inst = generate(&params).unwrap();
                        for cand in inst.candidates() {
                            assert!(cand.cost >= 1 && cand.cost <= *inst.limit());
                        }
                        let params = GenParams {
                            limit: Rat::from_integer(3),
                            costs: c.clone(),
                            ..params
                        };
                        generate(&params).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn integer_costs_start_at_one() {
        let params = GenParams {
            limit: Rat::from_integer(4),
            costs: CostModel::Integer,
            ..GenParams::new(9, 3, 5)
        };
        let inst = generate(&params).unwrap();
        assert_eq!(inst.cost(0), &Rat::one());
        assert!(inst.candidates().iter().all(|c| c.cost.is_integer()));
    }

    #[test]
    fn bad_params() {
        assert!(generate(&GenParams::new(0, 0, 3)).is_err());
        let p = GenParams {
            prefs: PrefModel::Dichotomous { p: Rat::new(3, 2) },
            ..GenParams::new(0, 2, 3)
        };
        assert!(generate(&p).is_err());
        let p = GenParams {
            limit: Rat::new(1, 2),
            costs: CostModel::UniformRational,
            ..GenParams::new(0, 2, 3)
        };
        assert!(generate(&p).is_err());
    }

    #[test]
    fn ids() {
        assert_eq!(candidate_id(0, 5), "a");
        assert_eq!(candidate_id(25, 26), "z");
        assert_eq!(candidate_id(0, 27), "c1");
    }
}
