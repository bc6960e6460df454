use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Alphabet;

/// A finite word. `Ord` is length-lexicographic: shorter words first, ties broken by
/// symbol code point (which is alphabet order, see [`Alphabet`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    symbols: Vec<char>,
}

impl Word {
    pub fn new(symbols: Vec<char>) -> Self {
        Word { symbols }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { symbols }
    }

    /// Renders λ as `_`, the notation used by every text format in the crate.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            "_".to_string()
        } else {
            self.symbols.iter().collect()
        }
    }

    /// Inverse of [`Word::to_text`]; a lone `_` is the empty word.
    pub fn from_text(text: &str) -> Word {
        if text == "_" {
            Word::empty()
        } else {
            Word::from(text)
        }
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word {
            symbols: s.chars().collect(),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols
            .len()
            .cmp(&other.symbols.len())
            .then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "λ");
        }
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbols.iter().collect::<String>())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Word::from(s.as_str()))
    }
}

/// Scattered-subword order: `v ≤ w` iff `v` can be obtained from `w` by deleting symbols.
pub fn subword_leq(v: &Word, w: &Word) -> bool {
    let mut rest = w.symbols.iter();
    v.symbols.iter().all(|c| rest.any(|d| d == c))
}

/// All words of length at most `max_len`, in length-lexicographic order.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    length_lex_words(alphabet, 0)
        .take_while(|w| w.len() <= max_len)
        .collect()
}

/// The infinite length-lexicographic stream of words of length `min_len` and above.
pub fn length_lex_words(alphabet: &Alphabet, min_len: usize) -> WordIter {
    WordIter {
        alphabet: alphabet.clone(),
        digits: vec![0; min_len],
        started: false,
    }
}

/// Odometer over symbol indices; see [`length_lex_words`].
#[derive(Debug, Clone)]
pub struct WordIter {
    alphabet: Alphabet,
    digits: Vec<usize>,
    started: bool,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.started {
            let k = self.alphabet.len();
            let mut i = self.digits.len();
            loop {
                if i == 0 {
                    let len = self.digits.len() + 1;
                    self.digits = vec![0; len];
                    break;
                }
                i -= 1;
                self.digits[i] += 1;
                if self.digits[i] < k {
                    break;
                }
                self.digits[i] = 0;
            }
        }
        self.started = true;
        Some(self.alphabet.decode(&self.digits))
    }
}
