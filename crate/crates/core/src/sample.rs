//! Seeded random descriptors for property runs. All generators take the RNG by
//! reference, so a fixed seed reproduces a whole sample.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{Dfa, Label, Nfa};
use crate::grammars::{Cfg, GSym, Production};
use crate::kernel::{Alphabet, Word};

/// An NFA with `1..=max_states` states. Each symbol transition is present with
/// probability `density`; ε-moves are rarer. State 0 is initial, and occasionally a
/// second state too.
pub fn random_nfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_states: usize, density: f64) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let k = alphabet.len();
    let mut transitions = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for a in 0..k {
                if rng.gen_bool(density) {
                    transitions.push((p, Label::Sym(a), q));
                }
            }
            if p != q && rng.gen_bool(density / 4.0) {
                transitions.push((p, Label::Eps, q));
            }
        }
    }
    let mut initial = vec![0];
    if n > 1 && rng.gen_bool(0.2) {
        initial.push(rng.gen_range(1..n));
    }
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Nfa::new(alphabet.clone(), n, transitions, initial, finals).expect("valid by construction")
}

/// A complete DFA with exactly `states` states.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, states: usize) -> Dfa {
    let delta: Vec<usize> = (0..states * alphabet.len()).map(|_| rng.gen_range(0..states)).collect();
    let finals: Vec<bool> = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), states, delta, 0, finals).expect("valid by construction")
}

/// An NFA whose language is finite and non-empty: transitions only go from lower to
/// higher states, and some path from 0 reaches a final state.
pub fn random_finite_nfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let k = alphabet.len();
    let mut transitions = Vec::new();
    // A spine 0 → 1 → … → last keeps the final state reachable.
    let last = rng.gen_range(0..n);
    for p in 0..last {
        transitions.push((p, Label::Sym(rng.gen_range(0..k)), p + 1));
    }
    for p in 0..n {
        for q in p + 1..n {
            for a in 0..k {
                if rng.gen_bool(0.3) {
                    transitions.push((p, Label::Sym(a), q));
                }
            }
        }
    }
    let mut finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    finals.push(last);
    Nfa::new(alphabet.clone(), n, transitions, [0], finals).expect("valid by construction")
}

const NAMES: [&str; 6] = ["S", "A", "B", "C", "D", "E"];

/// A grammar with `1..=max_productions` productions over at most `max_nonterminals`
/// nonterminals, bodies of length at most `max_body`.
pub fn random_cfg<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_productions: usize,
    max_nonterminals: usize,
    max_body: usize,
) -> Cfg {
    let m = rng.gen_range(1..=max_nonterminals.min(NAMES.len()));
    let count = rng.gen_range(1..=max_productions);
    let k = alphabet.len();
    let productions = (0..count)
        .map(|_| {
            let head = rng.gen_range(0..m);
            let len = rng.gen_range(0..=max_body);
            let body = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.55) {
                        GSym::T(rng.gen_range(0..k))
                    } else {
                        GSym::N(rng.gen_range(0..m))
                    }
                })
                .collect();
            Production::new(head, body)
        })
        .collect();
    let names = NAMES[..m].iter().map(|s| s.to_string()).collect();
    Cfg::new(names, alphabet.clone(), productions).expect("valid by construction")
}

/// A word of length `0..=max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| *alphabet.symbols().choose(rng).expect("non-empty alphabet")).collect())
}
