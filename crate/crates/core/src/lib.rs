//! Participatory budgeting with weak ordinal preferences, in exact arithmetic.
//!
//! The crate computes outcomes with the PB Expanding Approvals Rule
//! ([`ear::pb_ear`]) and decides proportional-representation axioms (IPSC,
//! CPSC and their approval-ballot and committee-election forms) with
//! machine-checkable violation witnesses ([`verify`]). The [`oracles`]
//! module holds brute-force ground truth used to cross-check both.

#![cfg_attr(
    feature = "float-poison",
    deny(
        clippy::disallowed_types,
        clippy::float_arithmetic,
        clippy::float_cmp,
        clippy::float_cmp_const,
        clippy::cast_precision_loss,
        clippy::lossy_float_literal
    )
)]

pub mod coalition;
pub mod crosscheck;
pub mod document;
pub mod ear;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod instance;
pub mod oracles;
pub mod outcome;
pub mod rat;
pub mod report;
pub mod verify;

pub use coalition::{bar_set, is_solidly_supported, periphery, quota, supporters, weak_pref_set};
pub use document::{parse_instance, InstanceBuilder, ParseOptions};
pub use ear::{pb_ear, support_of, EarConfig, EarTrace, Reweighting, Selection};
pub use error::{InstanceError, PbError, Result};
pub use instance::{Candidate, CandidateSet, PbInstance, Voter, VoterSet, WeakOrder};
pub use oracles::{cpsc_exists, enumerate_feasible_outcomes, find_outcomes, max_knapsack, KnapsackResult};
pub use outcome::{is_exhaustive, is_maximal_cost, Outcome};
pub use rat::Rat;
pub use verify::{
    check, check_bpjr_l, check_cpsc, check_cpsc_approval, check_cpsc_mw, check_gen_psc, check_ipsc,
    check_ipsc_approval, check_local_bpjr_l, check_pjr, Analyzer, Axiom, Detail, Limits, Verdict, Witness,
};
