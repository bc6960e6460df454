//! Reference implementations used as oracles. They read descriptors only through their
//! raw parts (transitions, productions) and share no algorithm with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use workbench_core::{Alphabet, Cfg, Dfa, GSym, Label, Nfa, Word};

fn symbols(alphabet: &Alphabet, w: &Word) -> Option<Vec<usize>> {
    w.symbols().iter().map(|&c| alphabet.index_of(c)).collect()
}

/// All words of length `0..=max_len` in length-lexicographic order.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.symbols().iter().map(move |&c| w.concat(&Word::new(vec![c]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every way of dropping letters from `w`.
pub fn subwords(w: &Word) -> BTreeSet<Word> {
    let n = w.len();
    (0u32..1 << n)
        .map(|mask| Word::new((0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.symbols()[i]).collect()))
        .collect()
}

/// Direct subset simulation.
pub struct Sim {
    eps: Vec<Vec<usize>>,
    step: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    finals: HashSet<usize>,
    alphabet: Alphabet,
}

impl Sim {
    pub fn new(nfa: &Nfa) -> Sim {
        let n = nfa.state_count();
        let k = nfa.alphabet().len();
        let mut eps = vec![Vec::new(); n];
        let mut step = vec![vec![Vec::new(); k]; n];
        for &(p, l, q) in nfa.transitions() {
            match l {
                Label::Eps => eps[p].push(q),
                Label::Sym(a) => step[p][a].push(q),
            }
        }
        Sim {
            eps,
            step,
            initial: nfa.initial_states().iter().copied().collect(),
            finals: nfa.final_states().iter().copied().collect(),
            alphabet: nfa.alphabet().clone(),
        }
    }

    fn close(&self, mut set: BTreeSet<usize>) -> BTreeSet<usize> {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &q in &self.eps[p] {
                if set.insert(q) {
                    stack.push(q);
                }
            }
        }
        set
    }

    pub fn start(&self) -> BTreeSet<usize> {
        self.close(self.initial.iter().copied().collect())
    }

    pub fn next(&self, set: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        self.close(set.iter().flat_map(|&p| self.step[p][a].iter().copied()).collect())
    }

    pub fn accepting(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().any(|q| self.finals.contains(q))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let Some(idx) = symbols(&self.alphabet, w) else { return false };
        let mut set = self.start();
        for a in idx {
            set = self.next(&set, a);
        }
        self.accepting(&set)
    }
}

pub fn nfa_accepts(nfa: &Nfa, w: &Word) -> bool {
    Sim::new(nfa).accepts(w)
}

pub fn dfa_accepts(dfa: &Dfa, w: &Word) -> bool {
    let Some(idx) = symbols(dfa.alphabet(), w) else { return false };
    dfa.is_final(idx.into_iter().fold(dfa.initial(), |q, a| dfa.next(q, a)))
}

/// Infinite iff some accepted word has length in `[n, 2n)`, `n` the number of states.
pub fn nfa_infinite_by_pumping(nfa: &Nfa) -> bool {
    let n = nfa.state_count();
    let sim = Sim::new(nfa);
    all_words(nfa.alphabet(), 2 * n - 1).iter().filter(|w| w.len() >= n).any(|w| sim.accepts(w))
}

/// A non-empty language has a word shorter than the number of states.
pub fn nfa_empty_by_search(nfa: &Nfa) -> bool {
    let sim = Sim::new(nfa);
    !all_words(nfa.alphabet(), nfa.state_count().saturating_sub(1)).iter().any(|w| sim.accepts(w))
}

/// Longest accepted word of a finite language: every accepted word is shorter than the
/// number of states.
pub fn longest_by_enumeration(nfa: &Nfa) -> Option<usize> {
    let sim = Sim::new(nfa);
    all_words(nfa.alphabet(), nfa.state_count()).iter().filter(|w| sim.accepts(w)).map(Word::len).max()
}

/// States of the minimal complete DFA: reachable subsets, merged when no word of length
/// at most their number tells them apart.
pub fn min_dfa_states(nfa: &Nfa) -> usize {
    let sim = Sim::new(nfa);
    let k = nfa.alphabet().len();
    let mut subsets = vec![sim.start()];
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(subsets[0].clone(), 0)]);
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..k {
            let t = sim.next(&subsets[i], a);
            if !index.contains_key(&t) {
                index.insert(t.clone(), subsets.len());
                subsets.push(t);
            }
        }
        i += 1;
    }
    let probes = all_words(nfa.alphabet(), subsets.len());
    let signatures: HashSet<Vec<bool>> = subsets
        .iter()
        .map(|s| {
            probes
                .iter()
                .map(|w| {
                    let mut set = s.clone();
                    for &c in w.symbols() {
                        set = sim.next(&set, nfa.alphabet().index_of(c).unwrap());
                    }
                    sim.accepting(&set)
                })
                .collect()
        })
        .collect();
    signatures.len()
}

/// Every ε-free NFA with `n` states and initial state set `{0}`.
pub fn raw_nfas(alphabet: &Alphabet, n: usize) -> Vec<Nfa> {
    let k = alphabet.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|p| (0..k).flat_map(move |a| (0..n).map(move |q| (p, a, q)))).collect();
    let bits = triples.len() + n;
    (0u64..1 << bits)
        .map(|mask| {
            let t = triples
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(p, a, q))| (p, Label::Sym(a), q));
            let f = (0..n).filter(|q| mask >> (triples.len() + q) & 1 == 1);
            Nfa::new(alphabet.clone(), n, t, [0], f).unwrap()
        })
        .collect()
}

/// Every complete DFA with `n` states and initial state 0.
pub fn raw_dfas(alphabet: &Alphabet, n: usize) -> Vec<Dfa> {
    let cells = n * alphabet.len();
    let tables = n.pow(cells as u32);
    let mut out = Vec::new();
    for t in 0..tables {
        let mut rest = t;
        let delta: Vec<usize> = (0..cells)
            .map(|_| {
                let d = rest % n;
                rest /= n;
                d
            })
            .collect();
        for f in 0u32..1 << n {
            let finals = (0..n).map(|q| f >> q & 1 == 1).collect();
            out.push(Dfa::new(alphabet.clone(), n, delta.clone(), 0, finals).unwrap());
        }
    }
    out
}

fn perms_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..n).collect(), &mut vec![0], &mut out);
    out
}

/// Isomorphism-class key: the least relabelled presentation over renamings fixing 0.
pub fn nfa_orbit_key(nfa: &Nfa) -> (Vec<(usize, Label, usize)>, Vec<usize>) {
    perms_fixing_zero(nfa.state_count())
        .iter()
        .map(|p| {
            let mut t: Vec<_> = nfa.transitions().iter().map(|&(a, l, b)| (p[a], l, p[b])).collect();
            t.sort();
            let mut f: Vec<usize> = nfa.final_states().iter().map(|&q| p[q]).collect();
            f.sort();
            (t, f)
        })
        .min()
        .unwrap()
}

pub fn dfa_orbit_key(dfa: &Dfa) -> (Vec<usize>, Vec<bool>) {
    let n = dfa.state_count();
    let k = dfa.alphabet().len();
    perms_fixing_zero(n)
        .iter()
        .map(|p| {
            let mut inv = vec![0; n];
            for (q, &r) in p.iter().enumerate() {
                inv[r] = q;
            }
            let delta = (0..n).flat_map(|r| (0..k).map(move |a| (r, a))).map(|(r, a)| p[dfa.next(inv[r], a)]).collect();
            let finals = (0..n).map(|r| dfa.is_final(inv[r])).collect();
            (delta, finals)
        })
        .min()
        .unwrap()
}

/// Generalised CYK: least fixpoint of "nonterminal derives w[i..j]" over arbitrary
/// productions, including λ and unit rules.
pub fn cfg_generates(cfg: &Cfg, w: &Word) -> bool {
    let Some(t) = symbols(cfg.terminals(), w) else { return false };
    let m = t.len();
    let v = cfg.nonterminals().len();
    let mut table = vec![vec![vec![false; m + 1]; m + 1]; v];
    let mut changed = true;
    while changed {
        changed = false;
        for p in cfg.productions() {
            for i in 0..=m {
                let mut reach = vec![false; m + 1];
                reach[i] = true;
                for s in &p.body {
                    let mut next = vec![false; m + 1];
                    for k in (0..=m).filter(|&k| reach[k]) {
                        match *s {
                            GSym::T(a) => {
                                if k < m && t[k] == a {
                                    next[k + 1] = true;
                                }
                            }
                            GSym::N(b) => {
                                for j in k..=m {
                                    if table[b][k][j] {
                                        next[j] = true;
                                    }
                                }
                            }
                        }
                    }
                    reach = next;
                }
                for j in i..=m {
                    if reach[j] && !table[p.head][i][j] {
                        table[p.head][i][j] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    table[cfg.start()][0][m]
}

/// Emptiness from the productive-nonterminal fixpoint.
pub fn cfg_empty_by_productivity(cfg: &Cfg) -> bool {
    let mut productive = vec![false; cfg.nonterminals().len()];
    let mut changed = true;
    while changed {
        changed = false;
        for p in cfg.productions() {
            if !productive[p.head] && p.body.iter().all(|s| matches!(*s, GSym::T(_)) || matches!(*s, GSym::N(b) if productive[b])) {
                productive[p.head] = true;
                changed = true;
            }
        }
    }
    !productive[cfg.start()]
}

/// Terminal words of length at most `max_len` reachable by leftmost derivations of at
/// most `depth` steps. The flag is true when the search ran out of forms before the
/// depth limit, in which case the set is complete for that length.
pub fn leftmost_derivations(cfg: &Cfg, max_len: usize, depth: usize) -> (BTreeSet<Word>, bool) {
    let alphabet = cfg.terminals();
    let mut words = BTreeSet::new();
    let mut frontier: HashSet<Vec<GSym>> = HashSet::from([vec![GSym::N(cfg.start())]]);
    for _ in 0..depth {
        let mut next = HashSet::new();
        for form in &frontier {
            let i = form.iter().position(|s| matches!(s, GSym::N(_))).expect("frontier forms have a nonterminal");
            let GSym::N(head) = form[i] else { unreachable!() };
            for p in cfg.productions().iter().filter(|p| p.head == head) {
                let mut f = form[..i].to_vec();
                f.extend(p.body.iter().copied());
                f.extend(form[i + 1..].iter().copied());
                if f.iter().filter(|s| matches!(s, GSym::T(_))).count() > max_len {
                    continue;
                }
                if f.iter().all(|s| matches!(s, GSym::T(_))) {
                    let idx: Vec<usize> = f.iter().map(|s| if let GSym::T(a) = *s { a } else { unreachable!() }).collect();
                    words.insert(alphabet.decode(&idx));
                } else {
                    next.insert(f);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return (words, true);
        }
    }
    (words, false)
}
