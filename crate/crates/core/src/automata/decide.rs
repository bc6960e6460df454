use std::collections::{HashMap, VecDeque};

use super::{determinize, minimize, Adjacency, Dfa, Label, Nfa};
use crate::error::{Error, Result};
use crate::kernel::graph::{reachable, reversed, scc_ids};
use crate::kernel::{StateSet, StepTask, Word};

/// Membership by on-the-fly subset simulation.
pub fn nfa_member(nfa: &Nfa, word: &Word) -> Result<bool> {
    let sim = NfaSimulator::new(nfa);
    sim.accepts(word)
}

/// Precomputed transition tables for repeated membership queries.
pub struct NfaSimulator {
    nfa: Nfa,
    adj: Adjacency,
}

impl NfaSimulator {
    pub fn new(nfa: &Nfa) -> Self {
        NfaSimulator {
            adj: nfa.adjacency(),
            nfa: nfa.clone(),
        }
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let mut run = self.run(word)?;
        loop {
            if let Some(answer) = run.step() {
                return Ok(answer);
            }
        }
    }

    /// A step-resumable membership run: one step per input symbol plus a final
    /// acceptance check.
    pub fn run(&self, word: &Word) -> Result<NfaRun<'_>> {
        Ok(NfaRun {
            adj: &self.adj,
            word: self.nfa.alphabet().encode(word)?,
            pos: 0,
            current: self.adj.start(self.nfa.initial_states()),
            done: None,
        })
    }
}

pub struct NfaRun<'a> {
    adj: &'a Adjacency,
    word: Vec<usize>,
    pos: usize,
    current: StateSet,
    done: Option<bool>,
}

impl StepTask for NfaRun<'_> {
    fn step(&mut self) -> Option<bool> {
        if self.done.is_some() {
            return self.done;
        }
        if self.pos < self.word.len() && !self.current.is_empty() {
            self.current = self.adj.step(&self.current, self.word[self.pos]);
            self.pos += 1;
            return None;
        }
        self.done = Some(self.pos == self.word.len() && self.adj.accepting(&self.current));
        self.done
    }
}

fn successor_lists(nfa: &Nfa) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nfa.state_count()];
    for &(p, _, q) in nfa.transitions() {
        adj[p].push(q);
    }
    adj
}

/// States both reachable from an initial state and co-reachable to a final state.
pub(crate) fn trim_states(nfa: &Nfa) -> Vec<bool> {
    let adj = successor_lists(nfa);
    let fwd = reachable(&adj, nfa.initial_states().iter().copied());
    let bwd = reachable(&reversed(&adj), nfa.final_states().iter().copied());
    fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
}

/// True iff no final state is reachable from an initial state.
pub fn nfa_empty(nfa: &Nfa) -> bool {
    let fwd = reachable(&successor_lists(nfa), nfa.initial_states().iter().copied());
    !nfa.final_states().iter().any(|&f| fwd[f])
}

/// True iff the language is finite: no cycle through a symbol-reading transition
/// survives in the trim part. ε-cycles do not count.
pub fn nfa_finite(nfa: &Nfa) -> bool {
    let trim = trim_states(nfa);
    let mut adj = vec![Vec::new(); nfa.state_count()];
    for &(p, _, q) in nfa.transitions() {
        if trim[p] && trim[q] {
            adj[p].push(q);
        }
    }
    let comp = scc_ids(&adj);
    !nfa
        .transitions()
        .iter()
        .any(|&(p, label, q)| label != Label::Eps && trim[p] && trim[q] && comp[p] == comp[q])
}

pub fn dfa_equiv(a: &Dfa, b: &Dfa) -> Result<bool> {
    a.alphabet().ensure_same(b.alphabet())?;
    Ok(minimize(a) == minimize(b))
}

pub fn nfa_equiv(a: &Nfa, b: &Nfa) -> Result<bool> {
    a.alphabet().ensure_same(b.alphabet())?;
    Ok(minimize(&determinize(a)) == minimize(&determinize(b)))
}

/// The length-lexicographically least accepted word, by breadth-first search over
/// subsets exploring symbols in alphabet order.
pub fn shortest_accepted(nfa: &Nfa) -> Option<Word> {
    let adj = nfa.adjacency();
    let start = adj.start(nfa.initial_states());
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut subsets = vec![start.clone()];
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if adj.accepting(&subsets[i]) {
            let mut symbols = Vec::new();
            let mut at = i;
            while let Some((prev, a)) = parent[at] {
                symbols.push(a);
                at = prev;
            }
            symbols.reverse();
            return Some(nfa.alphabet().decode(&symbols));
        }
        for a in 0..adj.k {
            let next = adj.step(&subsets[i], a);
            if next.is_empty() || ids.contains_key(&next) {
                continue;
            }
            let id = subsets.len();
            ids.insert(next.clone(), id);
            subsets.push(next);
            parent.push(Some((i, a)));
            queue.push_back(id);
        }
    }
    None
}

/// Length of the longest accepted word of a finite, non-empty language.
pub fn longest_accepted_of_finite(nfa: &Nfa) -> Result<usize> {
    if nfa_empty(nfa) {
        return Err(Error::Precondition("language is empty".into()));
    }
    if !nfa_finite(nfa) {
        return Err(Error::Precondition("language is infinite".into()));
    }
    let dfa = minimize(&determinize(nfa));
    let k = dfa.alphabet().len();
    let n = dfa.state_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|q| (0..k).map(|a| dfa.next(q, a)).collect()).collect();
    let live = reachable(&reversed(&succ), (0..n).filter(|&q| dfa.is_final(q)));
    // The live part of a finite language's DFA is acyclic.
    fn longest(q: usize, succ: &[Vec<usize>], live: &[bool], dfa: &Dfa, memo: &mut [Option<usize>]) -> usize {
        if let Some(v) = memo[q] {
            return v;
        }
        let mut best = 0;
        for &r in &succ[q] {
            if live[r] {
                best = best.max(1 + longest(r, succ, live, dfa, memo));
            }
        }
        memo[q] = Some(best);
        best
    }
    let mut memo = vec![None; n];
    Ok(longest(dfa.initial(), &succ, &live, &dfa, &mut memo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Label::{Eps, Sym};
    use crate::kernel::{words_up_to, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::of("ab")
    }

    fn a_star() -> Nfa {
        Nfa::new(ab(), 1, [(0, Sym(0), 0)], [0], [0]).unwrap()
    }

    fn words(ws: &[&str]) -> Nfa {
        let ws: Vec<Word> = ws.iter().map(|&w| w.into()).collect();
        Nfa::words(&ab(), &ws).unwrap()
    }

    #[test]
    fn membership() {
        assert!(nfa_member(&a_star(), &"aaa".into()).unwrap());
        assert!(!nfa_member(&a_star(), &"b".into()).unwrap());
        assert!(nfa_member(&words(&["ab"]), &"ab".into()).unwrap());
        assert!(nfa_member(&a_star(), &"c".into()).is_err());
    }

    #[test]
    fn emptiness() {
        assert!(nfa_empty(&Nfa::new(ab(), 2, [(0, Sym(0), 1)], [0], []).unwrap()));
        assert!(!nfa_empty(&Nfa::epsilon(&ab())));
        assert!(nfa_empty(&Nfa::new(ab(), 2, [(1, Sym(0), 1)], [0], [1]).unwrap()));
    }

    #[test]
    fn finiteness() {
        assert!(!nfa_finite(&a_star()));
        assert!(nfa_finite(&words(&["ab"])));
        // Cycle 2 <-> 3 is reachable but cannot reach the final state 1.
        let n = Nfa::new(ab(), 4, [(0, Sym(0), 1), (0, Sym(1), 2), (2, Sym(0), 3), (3, Sym(0), 2)], [0], [1]).unwrap();
        assert!(nfa_finite(&n));
        // Bounded enumeration up to 2·states finds only `a`, and nothing longer than |Q|.
        let members: Vec<_> = words_up_to(&ab(), 8).into_iter().filter(|w| nfa_member(&n, w).unwrap()).collect();
        assert_eq!(members, vec![Word::from("a")]);
        // ε-cycles do not pump.
        let e = Nfa::new(ab(), 2, [(0, Eps, 1), (1, Eps, 0), (1, Sym(0), 1)], [0], [0]).unwrap();
        assert!(!nfa_finite(&e));
        let e = Nfa::new(ab(), 2, [(0, Eps, 1), (1, Eps, 0)], [0], [1]).unwrap();
        assert!(nfa_finite(&e));
    }

    #[test]
    fn equivalence() {
        let d = a_star();
        assert!(nfa_equiv(&d, &d).unwrap());
        let a_or_aa = Nfa::new(ab(), 2, [(0, Sym(0), 0), (0, Sym(0), 1), (1, Sym(0), 0)], [0], [0]).unwrap();
        assert!(nfa_equiv(&d, &a_or_aa).unwrap());
        assert_eq!(minimize(&determinize(&d)), minimize(&determinize(&a_or_aa)));
        let a_plus = Nfa::new(ab(), 2, [(0, Sym(0), 1), (1, Sym(0), 1)], [0], [1]).unwrap();
        assert!(!nfa_equiv(&d, &a_plus).unwrap());
        assert!(nfa_equiv(&d, &Nfa::universal(&Alphabet::of("a"))).is_err());
    }

    #[test]
    fn shortest() {
        assert_eq!(shortest_accepted(&words(&["ba", "ab", "aab"])), Some("ab".into()));
        assert_eq!(shortest_accepted(&Nfa::empty(&ab())), None);
        assert_eq!(shortest_accepted(&words(&["", "b"])), Some(Word::empty()));
    }

    #[test]
    fn longest() {
        assert_eq!(longest_accepted_of_finite(&words(&["ab"])).unwrap(), 2);
        assert_eq!(longest_accepted_of_finite(&Nfa::epsilon(&ab())).unwrap(), 0);
        let n = words(&["a", "ba", "bba"]);
        let oracle = words_up_to(&ab(), 6).into_iter().filter(|w| nfa_member(&n, w).unwrap()).map(|w| w.len()).max();
        assert_eq!(oracle, Some(3));
        assert_eq!(longest_accepted_of_finite(&n).unwrap(), 3);
        assert!(longest_accepted_of_finite(&a_star()).is_err());
        assert!(longest_accepted_of_finite(&Nfa::empty(&ab())).is_err());
    }

    #[test]
    fn run_takes_one_step_per_symbol() {
        let sim = NfaSimulator::new(&a_star());
        let mut run = sim.run(&"aaa".into()).unwrap();
        assert_eq!((run.step(), run.step(), run.step()), (None, None, None));
        assert_eq!(run.step(), Some(true));
        assert_eq!(run.step(), Some(true));
    }
}
