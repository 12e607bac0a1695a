//! The four equational theories of each signature, equality search with
//! checkable proofs, and the trivial-theory preorder decision.

pub mod normalize;
pub mod proof;
pub mod rewrite;
pub mod schema;
pub mod search;
pub mod word;

use std::fmt;
use std::str::FromStr;

use crate::term::Sig;

pub use proof::{verify_proof, Proof, Step};
pub use rewrite::{one_step_rewrites, rewrite_neighbors};
pub use schema::{Dir, Rule, RuleId, Schema, Subst};
pub use search::{decide_trivial, eq_search, search_proof, EqOptions, EqVerdict, Witness};

/// Default number of expanded search nodes.
pub const DEFAULT_BUDGET: usize = 100_000;

/// Cumulative strength of a theory: every level contains the axioms of the
/// levels before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Plain,
    K,
    J,
    Triv,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Plain, Level::K, Level::J, Level::Triv];

    pub fn name(self) -> &'static str {
        match self {
            Level::Plain => "plain",
            Level::K => "k",
            Level::J => "j",
            Level::Triv => "triv",
        }
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Level::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theory `{s}` (expected plain, k, j or triv)"))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Theory {
    pub sig: Sig,
    pub level: Level,
}

impl Theory {
    pub fn new(sig: Sig, level: Level) -> Self {
        Theory { sig, level }
    }

    pub fn contains(&self, rule: Rule) -> bool {
        rule.belongs_to(self.sig) && rule.level() <= self.level
    }

    pub fn rules(&self) -> Vec<Rule> {
        Rule::ALL
            .into_iter()
            .filter(|r| self.contains(*r))
            .collect()
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sig, self.level)
    }
}

/// The equation schemas of a theory.
pub fn axioms(th: Theory) -> Vec<Schema> {
    th.rules().into_iter().map(|r| r.schema().clone()).collect()
}
