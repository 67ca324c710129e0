//! Categories and groupoids presented by computads.
//!
//! Acyclic bases are handled exactly by congruence closure ([`finite`]);
//! otherwise Knuth–Bendix completion ([`rewrite`]) decides the word problem
//! when it terminates. Groupoids reduce to group presentations ([`group`])
//! decided by Tietze moves, abelianization and coset enumeration ([`coset`]).

pub mod coset;
pub mod finite;
pub mod group;
pub mod rewrite;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

pub use finite::{present_category_finite, satisfies_cancellation_finite, FinQuotient};
pub use group::{
    abelianization_invariants, is_thin_groupoid, is_trivial_group, pi1_presentation,
    pi1_presentation_with_tree, GroupLetter, GroupPresentation, NonTrivial, Triviality,
};
pub use rewrite::{
    is_thin_category, knuth_bendix, normal_form, Completion, RewriteRule, RewriteSystem,
};

/// Step budgets for the procedures that may not terminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_rules: usize,
    pub max_steps: usize,
    pub max_cosets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rules: 10_000,
            max_steps: 200_000,
            max_cosets: 50_000,
        }
    }
}

impl FromStr for Limits {
    type Err = Error;

    /// Parses `rules=N,steps=N,cosets=N`; omitted keys keep their defaults.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut limits = Limits::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse {
                line: 0,
                message: format!("bad limit {part:?}; expected rules=N, steps=N or cosets=N"),
            };
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "rules" => limits.max_rules = value,
                "steps" => limits.max_steps = value,
                "cosets" => limits.max_cosets = value,
                _ => return Err(bad()),
            }
        }
        Ok(limits)
    }
}

/// Three-valued answer of a semi-decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}
