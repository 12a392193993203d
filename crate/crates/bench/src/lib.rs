//! Workloads shared by the benchmarks.

use pbear_core::gen::{generate, CostModel, GenParams, PrefModel, WeightModel};
use pbear_core::{PbInstance, Rat};

/// A weak-order instance with rational costs, fixed by `seed`.
pub fn weak_instance(seed: u64, n: usize, m: usize) -> PbInstance {
    let params = GenParams {
        limit: Rat::from_usize(m.div_ceil(2).max(1)),
        costs: CostModel::UniformRational,
        prefs: PrefModel::Weak,
        weights: WeightModel::Random,
        ..GenParams::new(seed, n, m)
    };
    generate(&params).expect("benchmark parameters are valid")
}

/// `(index, cost)` items with decimal costs in `[1, 10]`.
pub fn knapsack_items(count: usize) -> Vec<(usize, Rat)> {
    (0..count)
        .map(|i| (i, Rat::new(10 + (i as i64 * 37) % 91, 10)))
        .collect()
}
