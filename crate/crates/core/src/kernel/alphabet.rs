use std::fmt;

use crate::error::{Error, Result};

/// A non-empty set of single-character symbols in a fixed total order.
///
/// Symbols are kept sorted by code point, which is the order used by every
/// lexicographic comparison in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must not be empty".into()));
        }
        for &c in &symbols {
            if c.is_whitespace() || c.is_control() || matches!(c, '_' | '|' | '#') {
                return Err(Error::Invalid(format!("`{c}` cannot be an alphabet symbol")));
            }
        }
        symbols.sort_unstable();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate symbol `{}`", w[0])));
        }
        Ok(Alphabet { symbols })
    }

    /// Shorthand for tests and fixtures: panics on an invalid spec.
    pub fn of(spec: &str) -> Self {
        Self::new(spec.chars()).expect("valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.binary_search(&c).ok()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Maps a word to symbol indices, rejecting foreign symbols.
    pub fn encode(&self, word: &super::Word) -> Result<Vec<usize>> {
        word.symbols()
            .iter()
            .map(|&c| {
                self.index_of(c).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("symbol `{c}` is not in alphabet {self}"))
                })
            })
            .collect()
    }

    pub fn decode(&self, indices: &[usize]) -> super::Word {
        super::Word::new(indices.iter().map(|&i| self.symbols[i]).collect())
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut all = self.symbols.clone();
        all.extend(other.symbols.iter().copied().filter(|c| !self.contains(*c)));
        Alphabet::new(all).expect("union of valid alphabets")
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
