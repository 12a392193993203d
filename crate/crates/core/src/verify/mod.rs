//! Decision procedures, with violation witnesses, for the proportionality
//! axioms.
//!
//! All checks are exhaustive searches in exact arithmetic. The general
//! ordinal checks enumerate every candidate set `C'` and every nonempty
//! subset `N'` of its supporters; the approval-ballot checks enumerate voter
//! sets directly. Witnesses are the first violation in (|C'|, |N'|,
//! lexicographic) order, so reports are reproducible.

mod approval;
pub(crate) mod engine;
mod general;
mod multiwinner;

use std::fmt;
use std::str::FromStr;

use crate::error::{PbError, Result};
use crate::instance::{CandidateSet, PbInstance, VoterSet};
use crate::oracles::definitions;
use crate::outcome::Outcome;
use crate::rat::Rat;

pub(crate) use engine::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Exhaustive,
    MaxCost,
    Ipsc,
    Cpsc,
    IpscApproval,
    CpscApproval,
    BpjrL,
    LocalBpjrL,
    Pjr,
    GenPsc,
    CpscMw,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::Exhaustive,
        Axiom::MaxCost,
        Axiom::Ipsc,
        Axiom::Cpsc,
        Axiom::IpscApproval,
        Axiom::CpscApproval,
        Axiom::BpjrL,
        Axiom::LocalBpjrL,
        Axiom::Pjr,
        Axiom::GenPsc,
        Axiom::CpscMw,
    ];

    /// The command-line spelling.
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Exhaustive => "exhaustive",
            Axiom::MaxCost => "maxcost",
            Axiom::Ipsc => "ipsc",
            Axiom::Cpsc => "cpsc",
            Axiom::IpscApproval => "ipsc-approval",
            Axiom::CpscApproval => "cpsc-approval",
            Axiom::BpjrL => "bpjr-l",
            Axiom::LocalBpjrL => "local-bpjr-l",
            Axiom::Pjr => "pjr",
            Axiom::GenPsc => "gen-psc",
            Axiom::CpscMw => "cpsc-mw",
        }
    }

    /// Display name used in reports, e.g. `CPSC`.
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Exhaustive => "exhaustive",
            Axiom::MaxCost => "maximal cost",
            Axiom::Ipsc => "IPSC",
            Axiom::Cpsc => "CPSC",
            Axiom::IpscApproval => "IPSC (approval)",
            Axiom::CpscApproval => "CPSC (approval)",
            Axiom::BpjrL => "BPJR-L",
            Axiom::LocalBpjrL => "Local-BPJR-L",
            Axiom::Pjr => "PJR",
            Axiom::GenPsc => "generalised PSC",
            Axiom::CpscMw => "CPSC (multi-winner)",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Axiom::ALL.iter().map(|a| a.name()).collect();
                format!("unknown axiom {s:?} (expected one of {})", names.join(", "))
            })
    }
}

/// What a witness points at besides `(N', C')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detail {
    /// An unfunded candidate that fits (IPSC-style).
    Candidate(usize),
    /// A competing bundle `C''` (CPSC-style).
    Bundle(CandidateSet),
    /// An integer level `ℓ`, with the optimal bundle where one is involved.
    Level { level: u64, bundle: Option<CandidateSet> },
}

/// A concrete violation.
///
/// `covered` is what the coalition already gets from the outcome (for
/// example `w(bar(N',C') ∩ W)`), `claim` is what the violated condition
/// says it could get (`w(W' ∪ {c})`, `w(C'')`, `ℓ`...), and `quota` is the
/// entitlement bounding the claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: Axiom,
    pub voters: VoterSet,
    pub candidates: CandidateSet,
    pub detail: Detail,
    pub covered: Rat,
    pub claim: Rat,
    pub quota: Rat,
}

impl Witness {
    /// Re-evaluates the violation from the definitions, independently of the
    /// search that produced it.
    pub fn recheck(&self, inst: &PbInstance, w: &Outcome) -> bool {
        definitions::witness_holds(inst, w, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Satisfied,
    Violated(Witness),
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Satisfied => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    fn from_option(found: Option<Witness>) -> Self {
        found.map_or(Verdict::Satisfied, Verdict::Violated)
    }
}

/// Size guard for the exponential searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub force: bool,
}

impl Limits {
    pub const DEFAULT_MAX: usize = 16;
    pub const FORCED_MAX: usize = 64;

    pub fn forced() -> Self {
        Limits { force: true }
    }

    pub fn max_voters(&self) -> usize {
        if self.force {
            Self::FORCED_MAX
        } else {
            Self::DEFAULT_MAX
        }
    }

    pub fn max_candidates(&self) -> usize {
        self.max_voters()
    }
}

/// Checks many outcomes of one instance, sharing the precomputed tables.
pub struct Analyzer<'a> {
    profile: Profile<'a>,
}

impl<'a> Analyzer<'a> {
    pub fn new(inst: &'a PbInstance, limits: Limits) -> Result<Self> {
        Ok(Analyzer {
            profile: Profile::new(inst, &limits)?,
        })
    }

    pub fn instance(&self) -> &'a PbInstance {
        self.profile.inst
    }

    pub fn check(&self, axiom: Axiom, w: &Outcome) -> Result<Verdict> {
        let p = &self.profile;
        let found = match axiom {
            Axiom::Exhaustive => general::exhaustive(p, w),
            Axiom::MaxCost => general::max_cost(p, w),
            Axiom::Ipsc => general::ipsc(p, w),
            Axiom::Cpsc => general::cpsc(p, w),
            Axiom::IpscApproval => approval::ipsc(p, w)?,
            Axiom::CpscApproval => approval::cpsc(p, w)?,
            Axiom::BpjrL => approval::bpjr_l(p, w)?,
            Axiom::LocalBpjrL => approval::local_bpjr_l(p, w)?,
            Axiom::Pjr => multiwinner::pjr(p, w)?,
            Axiom::GenPsc => multiwinner::gen_psc(p, w)?,
            Axiom::CpscMw => multiwinner::cpsc_mw(p, w)?,
        };
        Ok(Verdict::from_option(found))
    }
}

/// A deliberately broken check, used to show that the cross-check suites
/// catch a wrong inequality.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutant {
    /// IPSC with `w(W' ∪ {c}) < quota` in place of `≤`.
    IpscStrictClaim,
}

impl Mutant {
    pub fn axiom(self) -> Axiom {
        match self {
            Mutant::IpscStrictClaim => Axiom::Ipsc,
        }
    }
}

impl FromStr for Mutant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ipsc-strict-claim" => Ok(Mutant::IpscStrictClaim),
            _ => Err(format!("unknown mutant {s:?} (expected ipsc-strict-claim)")),
        }
    }
}

impl Analyzer<'_> {
    /// Runs `axiom`, or its mutated form when `mutant` targets it.
    #[doc(hidden)]
    pub fn check_with(&self, axiom: Axiom, w: &Outcome, mutant: Option<Mutant>) -> Result<Verdict> {
        match mutant {
            Some(Mutant::IpscStrictClaim) if axiom == Axiom::Ipsc => {
                Ok(Verdict::from_option(general::ipsc_with(&self.profile, w, true)))
            }
            _ => self.check(axiom, w),
        }
    }
}

pub fn check(axiom: Axiom, inst: &PbInstance, w: &Outcome, limits: Limits) -> Result<Verdict> {
    Analyzer::new(inst, limits)?.check(axiom, w)
}

macro_rules! shorthand {
    ($($(#[$doc:meta])* $name:ident => $axiom:ident;)*) => {
        $(
            $(#[$doc])*
            pub fn $name(inst: &PbInstance, w: &Outcome) -> Result<Verdict> {
                check(Axiom::$axiom, inst, w, Limits::default())
            }
        )*
    };
}

shorthand! {
    /// Inclusion PSC for weak ordinal preferences.
    check_ipsc => Ipsc;
    /// Comparative PSC for weak ordinal preferences.
    check_cpsc => Cpsc;
    /// IPSC through its approval-ballot characterization.
    check_ipsc_approval => IpscApproval;
    /// CPSC through its approval-ballot characterization.
    check_cpsc_approval => CpscApproval;
    check_bpjr_l => BpjrL;
    check_local_bpjr_l => LocalBpjrL;
    check_pjr => Pjr;
    check_gen_psc => GenPsc;
    check_cpsc_mw => CpscMw;
}

pub(crate) fn require_dichotomous(p: &Profile<'_>, axiom: Axiom) -> Result<()> {
    match p.inst.first_non_dichotomous() {
        Some(v) => Err(PbError::NotDichotomous {
            axiom: axiom.label(),
            voter: v.id.clone(),
            classes: v.prefs.num_classes(),
        }),
        None => Ok(()),
    }
}
