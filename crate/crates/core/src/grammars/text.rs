//! Grammar text format:
//!
//! ```text
//! #cfg
//! alphabet: ab
//! S -> a S b | a b
//! A -> _
//! B ->
//! ```
//!
//! Tokens starting with an uppercase letter are nonterminals; any other token is split
//! into terminal symbols. `_` is λ. The head of the first rule is the start symbol.
//! Repeating a head appends alternatives, and `X ->` with nothing after it declares `X`
//! without productions. Without an `alphabet:` line the alphabet is the set of terminals
//! used.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::{valid_nonterminal_name, Cfg, GSym, Production};
use crate::error::{Error, Result};
use crate::kernel::Alphabet;

enum Tok {
    N(String),
    T(char),
}

impl Cfg {
    pub fn parse(text: &str) -> Result<Cfg> {
        let mut alphabet: Option<Alphabet> = None;
        let mut rules: Vec<(usize, String, Vec<Vec<Tok>>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                let a = Alphabet::new(rest.chars().filter(|c| !c.is_whitespace()))
                    .map_err(|e| Error::parse(ln, e.to_string()))?;
                alphabet = Some(a);
                continue;
            }
            let (head, body) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, format!("expected `A -> ...`, found `{line}`")))?;
            let head = head.trim();
            if !valid_nonterminal_name(head) {
                return Err(Error::parse(ln, format!("`{head}` is not a nonterminal name")));
            }
            let mut alts = Vec::new();
            if !body.trim().is_empty() {
                for alt in body.split('|') {
                    let mut syms = Vec::new();
                    let toks: Vec<&str> = alt.split_whitespace().collect();
                    if toks.is_empty() {
                        return Err(Error::parse(ln, "empty alternative (write `_` for λ)"));
                    }
                    for tok in toks {
                        if tok == "_" {
                            continue;
                        }
                        if tok.starts_with(|c: char| c.is_ascii_uppercase()) {
                            if !valid_nonterminal_name(tok) {
                                return Err(Error::parse(ln, format!("`{tok}` is not a nonterminal name")));
                            }
                            syms.push(Tok::N(tok.to_string()));
                        } else {
                            syms.extend(tok.chars().map(Tok::T));
                        }
                    }
                    alts.push(syms);
                }
            }
            rules.push((ln, head.to_string(), alts));
        }
        if rules.is_empty() {
            return Err(Error::parse(0, "no rules"));
        }

        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        for (_, head, _) in &rules {
            intern(head, &mut names);
        }
        for (_, _, alts) in &rules {
            for t in alts.iter().flatten() {
                if let Tok::N(n) = t {
                    intern(n, &mut names);
                }
            }
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => {
                let used: BTreeSet<char> = rules
                    .iter()
                    .flat_map(|(_, _, alts)| alts.iter().flatten())
                    .filter_map(|t| match t {
                        Tok::T(c) => Some(*c),
                        Tok::N(_) => None,
                    })
                    .collect();
                if used.is_empty() {
                    return Err(Error::parse(0, "no terminals used; add an `alphabet:` line"));
                }
                Alphabet::new(used).map_err(|e| Error::parse(0, e.to_string()))?
            }
        };
        let mut productions = Vec::new();
        for (ln, head, alts) in &rules {
            let h = intern(head, &mut names);
            for alt in alts {
                let body = alt
                    .iter()
                    .map(|t| match t {
                        Tok::N(n) => Ok(GSym::N(intern(n, &mut names))),
                        Tok::T(c) => alphabet
                            .index_of(*c)
                            .map(GSym::T)
                            .ok_or_else(|| Error::parse(*ln, format!("terminal `{c}` is not in the alphabet {alphabet}"))),
                    })
                    .collect::<Result<_>>()?;
                productions.push(Production::new(h, body));
            }
        }
        Cfg::new(names, alphabet, productions)
    }

    pub fn to_text(&self) -> String {
        self.to_text_with_header("#cfg")
    }

    pub(crate) fn to_text_with_header(&self, header: &str) -> String {
        let mut out = String::new();
        out.push_str(header);
        out.push('\n');
        let _ = writeln!(out, "alphabet: {}", self.terminals);
        for (i, name) in self.nonterminals.iter().enumerate() {
            let alts: Vec<String> = self
                .productions
                .iter()
                .filter(|p| p.head == i)
                .map(|p| {
                    if p.body.is_empty() {
                        return "_".to_string();
                    }
                    p.body
                        .iter()
                        .map(|s| match *s {
                            GSym::T(a) => self.terminals.symbol(a).to_string(),
                            GSym::N(n) => self.nonterminals[n].clone(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            if alts.is_empty() {
                let _ = writeln!(out, "{name} ->");
            } else {
                let _ = writeln!(out, "{name} -> {}", alts.join(" | "));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = Cfg::parse("# comment\nS -> a S b | ab\nS -> A\nA -> _\n").unwrap();
        assert_eq!(g.nonterminals(), &["S".to_string(), "A".to_string()]);
        assert_eq!(g.terminals().symbols(), &['a', 'b']);
        assert_eq!(g.productions().len(), 4);
        let text = g.to_text();
        assert_eq!(text, "#cfg\nalphabet: ab\nS -> a S b | a b | A\nA -> _\n");
        assert_eq!(Cfg::parse(&text).unwrap(), g);
    }

    #[test]
    fn declarations_and_errors() {
        let g = Cfg::parse("alphabet: abc\nS -> B\nB ->").unwrap();
        assert_eq!(g.terminals().len(), 3);
        assert_eq!(g.productions().len(), 1);
        assert_eq!(Cfg::parse(&g.to_text()).unwrap(), g);
        assert!(Cfg::parse("S -> B").is_err());
        assert!(Cfg::parse("alphabet: a\nS -> b").is_err());
        assert!(Cfg::parse("S a b").is_err());
        assert!(Cfg::parse("s -> a").is_err());
        assert!(Cfg::parse("S -> a ||").is_err());
    }
}
