//! Chomsky normal form and CYK.
//!
//! The pipeline runs terminal lifting, binarisation, λ-elimination and unit
//! elimination, in that order. Whether λ is generated is carried separately in
//! [`Cnf::accepts_empty`]; the normal form itself only generates `L \ {λ}`.

use std::collections::HashSet;

use super::decide::trim_mask;
use super::{Cfg, GSym};
use crate::kernel::{StateSet, StepTask};

#[derive(Debug, Clone)]
pub(crate) struct Cnf {
    /// Nonterminals are `0..nts`; 0 is the start symbol.
    pub nts: usize,
    pub unary: Vec<(usize, usize)>,
    pub binary: Vec<(usize, usize, usize)>,
    pub accepts_empty: bool,
}

impl Cnf {
    pub fn from_cfg(cfg: &Cfg) -> Cnf {
        let mut nts = cfg.nonterminals().len();
        let mut rules: Vec<(usize, Vec<GSym>)> = cfg.productions().iter().map(|p| (p.head, p.body.clone())).collect();

        // Terminal lifting.
        let mut lift: Vec<Option<usize>> = vec![None; cfg.terminals().len()];
        let mut lifted = Vec::new();
        for (_, body) in rules.iter_mut() {
            if body.len() < 2 {
                continue;
            }
            for s in body.iter_mut() {
                if let GSym::T(a) = *s {
                    let n = *lift[a].get_or_insert_with(|| {
                        nts += 1;
                        lifted.push((nts - 1, vec![GSym::T(a)]));
                        nts - 1
                    });
                    *s = GSym::N(n);
                }
            }
        }
        rules.extend(lifted);

        // Binarisation.
        let mut binarised = Vec::with_capacity(rules.len());
        for (head, body) in rules {
            if body.len() <= 2 {
                binarised.push((head, body));
                continue;
            }
            let mut at = head;
            for s in &body[..body.len() - 2] {
                nts += 1;
                binarised.push((at, vec![*s, GSym::N(nts - 1)]));
                at = nts - 1;
            }
            binarised.push((at, body[body.len() - 2..].to_vec()));
        }

        // λ-elimination.
        let mut nullable = vec![false; nts];
        loop {
            let mut changed = false;
            for (head, body) in &binarised {
                if !nullable[*head] && body.iter().all(|s| matches!(s, GSym::N(n) if nullable[*n])) {
                    nullable[*head] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let is_nullable = |s: &GSym| matches!(s, GSym::N(n) if nullable[*n]);
        let mut nonempty: HashSet<(usize, Vec<GSym>)> = HashSet::new();
        for (head, body) in &binarised {
            match body.as_slice() {
                [] => {}
                [x] => {
                    nonempty.insert((*head, vec![*x]));
                }
                [x, y] => {
                    nonempty.insert((*head, vec![*x, *y]));
                    if is_nullable(x) {
                        nonempty.insert((*head, vec![*y]));
                    }
                    if is_nullable(y) {
                        nonempty.insert((*head, vec![*x]));
                    }
                }
                _ => unreachable!("bodies are binarised"),
            }
        }

        // Unit elimination.
        let mut units = vec![Vec::new(); nts];
        for (head, body) in &nonempty {
            if let [GSym::N(b)] = body.as_slice() {
                units[*head].push(*b);
            }
        }
        let mut unary = HashSet::new();
        let mut binary = HashSet::new();
        let mut sorted: Vec<_> = nonempty.iter().collect();
        sorted.sort();
        for a in 0..nts {
            let mut seen = vec![false; nts];
            seen[a] = true;
            let mut stack = vec![a];
            while let Some(b) = stack.pop() {
                for &c in &units[b] {
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
            for (head, body) in &sorted {
                if !seen[*head] {
                    continue;
                }
                match body.as_slice() {
                    [GSym::T(t)] => {
                        unary.insert((a, *t));
                    }
                    [GSym::N(x), GSym::N(y)] => {
                        binary.insert((a, *x, *y));
                    }
                    _ => {}
                }
            }
        }

        let mut unary: Vec<_> = unary.into_iter().collect();
        let mut binary: Vec<_> = binary.into_iter().collect();
        unary.sort_unstable();
        binary.sort_unstable();
        let mut cnf = Cnf {
            nts,
            unary,
            binary,
            accepts_empty: nullable[0],
        };
        cnf.trim();
        cnf
    }

    /// Drops productions mentioning unproductive or unreachable nonterminals.
    pub fn trim(&mut self) {
        let rules: Vec<(usize, Vec<GSym>)> = self
            .unary
            .iter()
            .map(|&(a, t)| (a, vec![GSym::T(t)]))
            .chain(self.binary.iter().map(|&(a, b, c)| (a, vec![GSym::N(b), GSym::N(c)])))
            .collect();
        let keep = trim_mask(self.nts, &rules, 0);
        self.unary.retain(|&(a, _)| keep[a]);
        self.binary.retain(|&(a, b, c)| keep[a] && keep[b] && keep[c]);
    }

    pub fn run(&self, word: Vec<usize>) -> CykRun<'_> {
        CykRun {
            cnf: self,
            word,
            table: Vec::new(),
            done: None,
        }
    }

    pub fn accepts(&self, word: Vec<usize>) -> bool {
        let mut run = self.run(word);
        loop {
            if let Some(answer) = run.step() {
                return answer;
            }
        }
    }
}

/// A CYK recognition run advanced one span length per step, plus a final step that
/// reads off the answer.
pub struct CykRun<'a> {
    cnf: &'a Cnf,
    word: Vec<usize>,
    /// `table[len - 1][i]`: nonterminals deriving `word[i..i + len]`.
    table: Vec<Vec<StateSet>>,
    done: Option<bool>,
}

impl StepTask for CykRun<'_> {
    fn step(&mut self) -> Option<bool> {
        if self.done.is_some() {
            return self.done;
        }
        let n = self.word.len();
        let len = self.table.len() + 1;
        if n == 0 || len > n {
            let answer = if n == 0 {
                self.cnf.accepts_empty
            } else {
                self.table[n - 1][0].contains(0)
            };
            self.done = Some(answer);
            return self.done;
        }
        let mut row = vec![StateSet::new(self.cnf.nts); n + 1 - len];
        if len == 1 {
            for (i, cell) in row.iter_mut().enumerate() {
                for &(a, t) in &self.cnf.unary {
                    if t == self.word[i] {
                        cell.insert(a);
                    }
                }
            }
        } else {
            for (i, cell) in row.iter_mut().enumerate() {
                for split in 1..len {
                    let left = &self.table[split - 1][i];
                    let right = &self.table[len - split - 1][i + split];
                    if left.is_empty() || right.is_empty() {
                        continue;
                    }
                    for &(a, b, c) in &self.cnf.binary {
                        if left.contains(b) && right.contains(c) {
                            cell.insert(a);
                        }
                    }
                }
            }
        }
        self.table.push(row);
        None
    }
}
