//! Alphabets, words and the scheduling primitives shared by every descriptional system.

mod alphabet;
mod bitset;
mod dovetail;
pub(crate) mod graph;
mod word;

pub use alphabet::Alphabet;
pub(crate) use bitset::StateSet;
pub use dovetail::{dovetail, fairness_step_bound, StepTask};
pub use word::{length_lex_words, subword_leq, words_up_to, Word, WordIter};

use serde::{Deserialize, Serialize};

/// Outcome of a decision or semi-decision procedure.
///
/// `True` and `False` are definite. `Unknown` means the step budget ran out before any
/// answer was reached and carries the number of steps spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown { budget_spent: u64 },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::True => write!(f, "True"),
            Verdict::False => write!(f, "False"),
            Verdict::Unknown { budget_spent } => write!(f, "Unknown({budget_spent})"),
        }
    }
}
