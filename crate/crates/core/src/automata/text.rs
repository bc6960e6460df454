//! Line-oriented text format shared by NFAs and DFAs:
//!
//! ```text
//! #nfa
//! states: 3
//! alphabet: ab
//! initial: 0 2
//! final: 1
//! trans: 0 a 1
//! trans: 1 _ 2
//! ```
//!
//! `_` is ε. Lines starting with `#` are comments (the first one doubles as the file-type
//! header). A DFA file uses the same keys, with one initial state and exactly one
//! transition per state and symbol.

use std::fmt::Write;

use super::{Dfa, Label, Nfa};
use crate::error::{Error, Result};
use crate::kernel::Alphabet;

struct Raw {
    states: Option<usize>,
    alphabet: Option<Alphabet>,
    initial: Vec<(usize, usize)>,
    finals: Vec<(usize, usize)>,
    trans: Vec<(usize, usize, Option<char>, usize)>,
}

fn parse_state(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("`{tok}` is not a state index")))
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut raw = Raw {
        states: None,
        alphabet: None,
        initial: Vec::new(),
        finals: Vec::new(),
        trans: Vec::new(),
    };
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, format!("expected `key: value`, found `{line}`")))?;
        let rest = rest.trim();
        match key.trim() {
            "states" => raw.states = Some(parse_state(ln, rest)?),
            "alphabet" => {
                raw.alphabet = Some(Alphabet::new(rest.chars().filter(|c| !c.is_whitespace())).map_err(|e| Error::parse(ln, e.to_string()))?)
            }
            "initial" => {
                for tok in rest.split_whitespace() {
                    raw.initial.push((ln, parse_state(ln, tok)?));
                }
            }
            "final" => {
                for tok in rest.split_whitespace() {
                    raw.finals.push((ln, parse_state(ln, tok)?));
                }
            }
            "trans" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [p, sym, q] = toks[..] else {
                    return Err(Error::parse(ln, "expected `trans: <from> <symbol> <to>`"));
                };
                let mut chars = sym.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(Error::parse(ln, format!("`{sym}` is not a single symbol")));
                };
                let label = (c != '_').then_some(c);
                raw.trans.push((ln, parse_state(ln, p)?, label, parse_state(ln, q)?));
            }
            other => return Err(Error::parse(ln, format!("unknown key `{other}`"))),
        }
    }
    Ok(raw)
}

struct Checked {
    alphabet: Alphabet,
    states: usize,
    initial: Vec<usize>,
    finals: Vec<usize>,
    trans: Vec<(usize, usize, Label, usize)>,
}

fn check(raw: Raw) -> Result<Checked> {
    let states = raw.states.ok_or_else(|| Error::parse(0, "missing `states:` line"))?;
    let alphabet = raw.alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet:` line"))?;
    let in_range = |ln: usize, q: usize| {
        if q < states {
            Ok(q)
        } else {
            Err(Error::parse(ln, format!("state {q} out of range 0..{states}")))
        }
    };
    let initial = raw.initial.iter().map(|&(ln, q)| in_range(ln, q)).collect::<Result<Vec<_>>>()?;
    let finals = raw.finals.iter().map(|&(ln, q)| in_range(ln, q)).collect::<Result<Vec<_>>>()?;
    let mut trans = Vec::new();
    for (ln, p, label, q) in raw.trans {
        let label = match label {
            None => Label::Eps,
            Some(c) => Label::Sym(
                alphabet
                    .index_of(c)
                    .ok_or_else(|| Error::parse(ln, format!("symbol `{c}` is not in the alphabet")))?,
            ),
        };
        trans.push((ln, in_range(ln, p)?, label, in_range(ln, q)?));
    }
    if initial.is_empty() {
        return Err(Error::parse(0, "no initial state"));
    }
    Ok(Checked {
        alphabet,
        states,
        initial,
        finals,
        trans,
    })
}

fn write_states(out: &mut String, key: &str, states: impl Iterator<Item = usize>) {
    out.push_str(key);
    out.push(':');
    for q in states {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
}

impl Nfa {
    pub fn parse(text: &str) -> Result<Nfa> {
        let c = check(parse_raw(text)?)?;
        Nfa::new(c.alphabet, c.states, c.trans.into_iter().map(|(_, p, l, q)| (p, l, q)), c.initial, c.finals)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("#nfa\n");
        writeln!(out, "states: {}", self.state_count()).unwrap();
        writeln!(out, "alphabet: {}", self.alphabet()).unwrap();
        write_states(&mut out, "initial", self.initial_states().iter().copied());
        write_states(&mut out, "final", self.final_states().iter().copied());
        for &(p, label, q) in self.transitions() {
            let sym = match label {
                Label::Eps => '_',
                Label::Sym(a) => self.alphabet().symbol(a),
            };
            writeln!(out, "trans: {p} {sym} {q}").unwrap();
        }
        out
    }
}

impl Dfa {
    pub fn parse(text: &str) -> Result<Dfa> {
        let c = check(parse_raw(text)?)?;
        let k = c.alphabet.len();
        if c.initial.len() != 1 {
            return Err(Error::parse(0, "a DFA has exactly one initial state"));
        }
        let mut delta: Vec<Option<usize>> = vec![None; c.states * k];
        for (ln, p, label, q) in c.trans {
            let Label::Sym(a) = label else {
                return Err(Error::parse(ln, "a DFA has no ε-transitions"));
            };
            if delta[p * k + a].replace(q).is_some() {
                return Err(Error::parse(ln, format!("second transition from {p} on `{}`", c.alphabet.symbol(a))));
            }
        }
        let delta = delta
            .iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::parse(0, format!("state {} has no transition on `{}`", i / k, c.alphabet.symbol(i % k)))))
            .collect::<Result<Vec<_>>>()?;
        let mut finals = vec![false; c.states];
        for f in c.finals {
            finals[f] = true;
        }
        Dfa::new(c.alphabet, c.states, delta, c.initial[0], finals)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("#dfa\n");
        writeln!(out, "states: {}", self.state_count()).unwrap();
        writeln!(out, "alphabet: {}", self.alphabet()).unwrap();
        writeln!(out, "initial: {}", self.initial()).unwrap();
        write_states(&mut out, "final", (0..self.state_count()).filter(|&q| self.is_final(q)));
        for q in 0..self.state_count() {
            for (a, &c) in self.alphabet().symbols().iter().enumerate() {
                writeln!(out, "trans: {q} {c} {}", self.next(q, a)).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let nfa = Nfa::parse("#nfa\nstates: 3\nalphabet: ab\ninitial: 0 2\nfinal: 1\ntrans: 0 a 1\ntrans: 1 _ 2\n").unwrap();
        assert_eq!(nfa.state_count(), 3);
        assert_eq!(nfa.initial_states().len(), 2);
        assert!(nfa.transitions().contains(&(1, Label::Eps, 2)));
        assert_eq!(Nfa::parse(&nfa.to_text()).unwrap(), nfa);
    }

    #[test]
    fn out_of_range_index_reports_its_line() {
        let err = Nfa::parse("states: 2\nalphabet: ab\ninitial: 0\ntrans: 0 a 5\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, message: "state 5 out of range 0..2".into() });
        let err = Nfa::parse("states: 2\nalphabet: ab\ninitial: 0\nfinal: 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = Nfa::parse("states: 2\nalphabet: ab\ninitial: 0\ntrans: 0 c 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = Nfa::parse("states: 2\nbogus\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn dfa_files_must_be_complete_and_deterministic() {
        let d = Dfa::length_mod(&Alphabet::of("ab"), 2);
        assert_eq!(Dfa::parse(&d.to_text()).unwrap(), d);
        assert!(Dfa::parse("states: 1\nalphabet: ab\ninitial: 0\ntrans: 0 a 0\n").is_err());
        assert!(Dfa::parse("states: 1\nalphabet: a\ninitial: 0\ntrans: 0 a 0\ntrans: 0 a 0\n").is_err());
        assert!(Dfa::parse("states: 1\nalphabet: a\ninitial: 0\ntrans: 0 _ 0\n").is_err());
    }
}
