//! Context-free grammars over an [`Alphabet`] of terminals.
//!
//! Nonterminal 0 is always the start symbol. Productions are kept grouped by head in
//! nonterminal order so that printing and re-parsing reproduces the same value.

mod cnf;
mod decide;
mod ops;
mod text;

pub use cnf::CykRun;
pub use decide::{
    cfg_empty, cfg_finite, cfg_member, cfg_trim, longest_generated_of_finite, shortest_generated, CfgRecognizer,
};
pub use ops::{
    bar_hillel, cfg_concat_regular, cfg_down, cfg_morphism, cfg_union, cfg_up, nfa_to_right_linear,
    regular_substitution_cfg, right_linear_to_nfa,
};

pub(crate) use cnf::Cnf;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::kernel::Alphabet;

/// A grammar symbol: terminal (alphabet index) or nonterminal (index into the
/// nonterminal list).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    T(usize),
    N(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub head: usize,
    pub body: Vec<GSym>,
}

impl Production {
    pub fn new(head: usize, body: Vec<GSym>) -> Self {
        Production { head, body }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cfg {
    nonterminals: Vec<String>,
    terminals: Alphabet,
    productions: Vec<Production>,
}

pub(crate) fn valid_nonterminal_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Cfg {
    /// Builds a grammar whose start symbol is `nonterminals[0]`. Productions are grouped
    /// by head (stable) and exact duplicates dropped.
    pub fn new(nonterminals: Vec<String>, terminals: Alphabet, productions: Vec<Production>) -> Result<Self> {
        if nonterminals.is_empty() {
            return Err(Error::Invalid("a grammar needs a start symbol".into()));
        }
        let mut seen = HashSet::new();
        for name in &nonterminals {
            if !valid_nonterminal_name(name) {
                return Err(Error::Invalid(format!("`{name}` is not a nonterminal name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("nonterminal `{name}` declared twice")));
            }
        }
        for p in &productions {
            if p.head >= nonterminals.len() {
                return Err(Error::Invalid(format!("production head {} undeclared", p.head)));
            }
            for s in &p.body {
                match *s {
                    GSym::N(i) if i >= nonterminals.len() => {
                        return Err(Error::Invalid(format!("nonterminal {i} undeclared")))
                    }
                    GSym::T(a) if a >= terminals.len() => {
                        return Err(Error::Invalid(format!("terminal {a} outside the alphabet")))
                    }
                    _ => {}
                }
            }
        }
        let mut unique = HashSet::new();
        let mut productions: Vec<Production> = productions.into_iter().filter(|p| unique.insert(p.clone())).collect();
        productions.sort_by_key(|p| p.head);
        Ok(Cfg {
            nonterminals,
            terminals,
            productions,
        })
    }

    /// The grammar with only a start symbol and no productions.
    pub fn empty(terminals: &Alphabet) -> Self {
        Cfg::new(vec!["S".into()], terminals.clone(), Vec::new()).unwrap()
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn nonterminal_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    /// `Σ (1 + |body|)` over all productions.
    pub fn size(&self) -> usize {
        self.productions.iter().map(|p| 1 + p.body.len()).sum()
    }

    /// Every body is a run of terminals followed by at most one nonterminal.
    pub fn is_right_linear(&self) -> bool {
        self.productions.iter().all(|p| {
            p.body
                .iter()
                .enumerate()
                .all(|(i, s)| matches!(s, GSym::T(_)) || i + 1 == p.body.len())
        })
    }
}

/// Assembles grammars during constructions. Nonterminal 0 is whichever is added first;
/// fresh names are `prefix` plus a monotone counter, skipping names already taken.
pub(crate) struct GrammarBuilder {
    names: Vec<String>,
    used: HashSet<String>,
    counter: usize,
    productions: Vec<Production>,
}

impl GrammarBuilder {
    pub fn new() -> Self {
        GrammarBuilder {
            names: Vec::new(),
            used: HashSet::new(),
            counter: 0,
            productions: Vec::new(),
        }
    }

    /// Reserves names so that fresh names never collide with them.
    pub fn reserve<'a>(&mut self, names: impl IntoIterator<Item = &'a String>) {
        self.used.extend(names.into_iter().cloned());
    }

    pub fn named(&mut self, name: &str) -> usize {
        self.used.insert(name.to_string());
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn fresh(&mut self, prefix: &str) -> usize {
        loop {
            let name = format!("{prefix}{}", self.counter);
            self.counter += 1;
            if !self.used.contains(&name) {
                return self.named(&name);
            }
        }
    }

    pub fn add(&mut self, head: usize, body: Vec<GSym>) {
        self.productions.push(Production { head, body });
    }

    pub fn finish(self, terminals: &Alphabet) -> Cfg {
        Cfg::new(self.names, terminals.clone(), self.productions).expect("builder produces a valid grammar")
    }
}
