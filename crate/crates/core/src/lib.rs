//! Descriptional systems for finite automata and context-free grammars.
//!
//! The crate is organised bottom-up:
//!
//! * [`kernel`]: alphabets, words, the length-lexicographic and scattered-subword orders,
//!   three-valued verdicts and the dove-tailing scheduler.
//! * [`automata`]: NFAs and complete DFAs, their closure constructions (including the
//!   upward and downward subword closures), decision procedures and size enumeration.
//! * [`grammars`]: context-free grammars with CYK membership, emptiness, finiteness,
//!   regular substitution and the Bar-Hillel product with a DFA.
//! * [`systems`]: one [`Descriptor`] type over all supported systems, size measures and
//!   the capability registry.
//! * [`tradeoff`]: exact computation of the size trade-off function between two systems.
//! * [`schemes`]: executable versions of the Down and Up reduction pipelines, with
//!   self-validating JSON reports.

pub mod automata;
pub mod error;
pub mod grammars;
pub mod kernel;
pub mod sample;
pub mod schemes;
pub mod systems;
pub mod tradeoff;

pub use automata::{Dfa, Label, Morphism, Nfa, Side};
pub use error::{Error, Result};
pub use grammars::{Cfg, GSym, Production};
pub use kernel::{Alphabet, StepTask, Verdict, Word};
pub use systems::{Descriptor, MeasureKind, SizeMeasure, SystemCapabilities, SystemId};
pub use tradeoff::{TradeoffRow, TradeoffTable};
