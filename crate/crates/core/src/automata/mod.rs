//! Finite automata: ε-NFAs and complete DFAs over a shared [`Alphabet`].
//!
//! States are `0..state_count`. Symbols on transitions are indices into the alphabet.

mod closure;
mod decide;
mod enumerate;
mod text;
mod transform;

pub use closure::{
    concat_regular, down_closure, down_via_substitution, inverse_morphism, morphism, product_intersect,
    regular_substitution, union, up_closure, up_via_substitution, Morphism, Side,
};
pub use decide::{
    dfa_equiv, longest_accepted_of_finite, nfa_empty, nfa_equiv, nfa_finite, nfa_member,
    shortest_accepted, NfaRun, NfaSimulator,
};
pub use enumerate::{dfa_count, enumerate_dfas, enumerate_nfas, nfa_count, DfaSpace, NfaSpace};
pub use transform::{determinize, minimize};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{Alphabet, StateSet, Word};

/// A transition label: a symbol index or the empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Sym(usize),
}

/// Nondeterministic finite automaton with ε-transitions and a set of initial states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    transitions: BTreeSet<(usize, Label, usize)>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        transitions: impl IntoIterator<Item = (usize, Label, usize)>,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let nfa = Nfa {
            alphabet,
            state_count,
            transitions: transitions.into_iter().collect(),
            initial: initial.into_iter().collect(),
            finals: finals.into_iter().collect(),
        };
        nfa.validate()?;
        Ok(nfa)
    }

    fn validate(&self) -> Result<()> {
        let n = self.state_count;
        if self.initial.is_empty() {
            return Err(Error::Invalid("an NFA needs at least one initial state".into()));
        }
        if let Some(q) = self.initial.iter().chain(&self.finals).find(|&&q| q >= n) {
            return Err(Error::Invalid(format!("state {q} out of range 0..{n}")));
        }
        for &(p, label, q) in &self.transitions {
            if p >= n || q >= n {
                return Err(Error::Invalid(format!("transition {p} -> {q} out of range 0..{n}")));
            }
            if let Label::Sym(a) = label {
                if a >= self.alphabet.len() {
                    return Err(Error::Invalid(format!("symbol index {a} outside alphabet")));
                }
            }
        }
        Ok(())
    }

    /// The automaton accepting nothing: one non-final initial state.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Nfa::new(alphabet.clone(), 1, [], [0], []).unwrap()
    }

    /// Accepts exactly `{λ}`.
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Nfa::new(alphabet.clone(), 1, [], [0], [0]).unwrap()
    }

    /// Accepts `A*`.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let loops = (0..alphabet.len()).map(|a| (0, Label::Sym(a), 0));
        Nfa::new(alphabet.clone(), 1, loops, [0], [0]).unwrap()
    }

    /// Accepts the given finite set of words.
    pub fn words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut transitions = Vec::new();
        let mut finals = Vec::new();
        let mut count = 1;
        for w in words {
            let mut at = 0;
            for a in alphabet.encode(w)? {
                transitions.push((at, Label::Sym(a), count));
                at = count;
                count += 1;
            }
            finals.push(at);
        }
        Nfa::new(alphabet.clone(), count, transitions, [0], finals)
    }

    /// Accepts `A* a A*`: the words containing symbol `a`.
    pub fn containing(alphabet: &Alphabet, a: usize) -> Self {
        let mut t: Vec<_> = (0..alphabet.len())
            .flat_map(|b| [(0, Label::Sym(b), 0), (1, Label::Sym(b), 1)])
            .collect();
        t.push((0, Label::Sym(a), 1));
        Nfa::new(alphabet.clone(), 2, t, [0], [1]).unwrap()
    }

    /// Accepts `{λ, a}`.
    pub fn optional(alphabet: &Alphabet, a: usize) -> Self {
        Nfa::new(alphabet.clone(), 2, [(0, Label::Sym(a), 1)], [0], [0, 1]).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, Label, usize)> {
        &self.transitions
    }

    pub fn initial_states(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.1 == Label::Eps)
    }

    pub(crate) fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }
}

/// Transition tables of an [`Nfa`] for fast simulation.
pub(crate) struct Adjacency {
    pub n: usize,
    pub k: usize,
    /// `sym[q * k + a]` = successors of `q` on symbol `a`.
    pub sym: Vec<Vec<usize>>,
    pub eps: Vec<Vec<usize>>,
    pub finals: StateSet,
}

impl Adjacency {
    fn new(nfa: &Nfa) -> Self {
        let n = nfa.state_count;
        let k = nfa.alphabet.len();
        let mut sym = vec![Vec::new(); n * k];
        let mut eps = vec![Vec::new(); n];
        for &(p, label, q) in &nfa.transitions {
            match label {
                Label::Eps => eps[p].push(q),
                Label::Sym(a) => sym[p * k + a].push(q),
            }
        }
        let mut finals = StateSet::new(n);
        for &f in &nfa.finals {
            finals.insert(f);
        }
        Adjacency { n, k, sym, eps, finals }
    }

    pub fn closure(&self, set: &mut StateSet) {
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(p) = stack.pop() {
            for &q in &self.eps[p] {
                if set.insert(q) {
                    stack.push(q);
                }
            }
        }
    }

    pub fn start(&self, initial: &BTreeSet<usize>) -> StateSet {
        let mut s = StateSet::new(self.n);
        for &q in initial {
            s.insert(q);
        }
        self.closure(&mut s);
        s
    }

    /// ε-closed successor set of a ε-closed set.
    pub fn step(&self, set: &StateSet, a: usize) -> StateSet {
        let mut next = StateSet::new(self.n);
        for p in set.iter() {
            for &q in &self.sym[p * self.k + a] {
                next.insert(q);
            }
        }
        self.closure(&mut next);
        next
    }

    pub fn accepting(&self, set: &StateSet) -> bool {
        set.intersects(&self.finals)
    }
}

/// Complete deterministic finite automaton.
///
/// Equality is structural; after [`minimize`] two DFAs are equal exactly when their
/// languages are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dfa {
    alphabet: Alphabet,
    state_count: usize,
    /// `delta[q * |A| + a]`.
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::Invalid("a DFA needs at least one state".into()));
        }
        if delta.len() != state_count * alphabet.len() {
            return Err(Error::Invalid(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                state_count * alphabet.len()
            )));
        }
        if finals.len() != state_count {
            return Err(Error::Invalid("final-state table has the wrong length".into()));
        }
        if initial >= state_count || delta.iter().any(|&q| q >= state_count) {
            return Err(Error::Invalid("state index out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            state_count,
            delta,
            initial,
            finals,
        })
    }

    /// Builds a DFA from a transition function over state and symbol indices.
    pub fn from_fn(
        alphabet: &Alphabet,
        state_count: usize,
        delta: impl Fn(usize, usize) -> usize,
        finals: impl Fn(usize) -> bool,
    ) -> Self {
        let k = alphabet.len();
        let table = (0..state_count * k).map(|i| delta(i / k, i % k)).collect();
        let finals = (0..state_count).map(finals).collect();
        Dfa::new(alphabet.clone(), state_count, table, 0, finals).expect("well-formed DFA")
    }

    /// One state, accepting everything.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Dfa::from_fn(alphabet, 1, |_, _| 0, |_| true)
    }

    /// One state, accepting nothing.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Dfa::from_fn(alphabet, 1, |_, _| 0, |_| false)
    }

    /// Words of length at least `k`.
    pub fn min_length(alphabet: &Alphabet, k: usize) -> Self {
        Dfa::from_fn(alphabet, k + 1, |q, _| (q + 1).min(k), |q| q == k)
    }

    /// `A⁺`, the non-empty words.
    pub fn non_empty(alphabet: &Alphabet) -> Self {
        Dfa::min_length(alphabet, 1)
    }

    /// Words whose length is divisible by `m`.
    pub fn length_mod(alphabet: &Alphabet, m: usize) -> Self {
        Dfa::from_fn(alphabet, m, |q, _| (q + 1) % m, |q| q == 0)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let mut q = self.initial;
        for a in self.alphabet.encode(word)? {
            q = self.next(q, a);
        }
        Ok(self.finals[q])
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for f in d.finals.iter_mut() {
            *f = !*f;
        }
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let transitions = (0..self.state_count)
            .flat_map(|q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| (q, Label::Sym(a), self.next(q, a)));
        let finals = (0..self.state_count).filter(|&q| self.finals[q]);
        Nfa::new(self.alphabet.clone(), self.state_count, transitions, [self.initial], finals)
            .expect("DFA converts to a valid NFA")
    }

    pub(crate) fn delta(&self) -> &[usize] {
        &self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        let ab = Alphabet::of("ab");
        assert!(Nfa::new(ab.clone(), 1, [(0, Label::Sym(0), 1)], [0], []).is_err());
        assert!(Nfa::new(ab.clone(), 1, [], [], []).is_err());
        assert!(Nfa::new(ab.clone(), 1, [(0, Label::Sym(2), 0)], [0], []).is_err());
        assert!(Dfa::new(ab.clone(), 1, vec![0], 0, vec![true]).is_err());
        assert!(Dfa::new(ab, 1, vec![0, 1], 0, vec![true]).is_err());
    }

    #[test]
    fn helper_dfas() {
        let ab = Alphabet::of("ab");
        let even = Dfa::length_mod(&ab, 2);
        assert!(even.accepts(&"".into()).unwrap());
        assert!(!even.accepts(&"a".into()).unwrap());
        assert!(even.accepts(&"ab".into()).unwrap());
        let plus = Dfa::non_empty(&ab);
        assert!(!plus.accepts(&"".into()).unwrap());
        assert!(plus.accepts(&"bab".into()).unwrap());
        assert!(plus.complement().accepts(&"".into()).unwrap());
    }
}
