//! Canonical enumeration of ε-free NFAs and complete DFAs with a fixed number of states.
//!
//! Every machine in the space has state 0 as its unique initial state. Machines are
//! identified by an integer code and enumerated in increasing code order. With pruning,
//! only the least code of each isomorphism class (permutations of states `1..n` that fix
//! state 0) is emitted; since that least code comes first in the full order, the first
//! machine attaining any language-invariant extremum is the same with or without
//! pruning.

use super::{Dfa, Label, Nfa};
use crate::kernel::Alphabet;

/// Saturating `2^(n + |A|·n²)`: the number of ε-free `n`-state NFAs with initial state 0.
pub fn nfa_count(n: usize, k: usize) -> u128 {
    let bits = n as u128 + (k as u128) * (n as u128).pow(2);
    if bits >= 128 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

/// Saturating `n^(|A|·n) · 2^n`: the number of complete `n`-state DFAs with initial state 0.
pub fn dfa_count(n: usize, k: usize) -> u128 {
    let exp = (k * n) as u32;
    let Some(trans) = (n as u128).checked_pow(exp) else {
        return u128::MAX;
    };
    if n >= 128 {
        return u128::MAX;
    }
    trans.checked_mul(1u128 << n).unwrap_or(u128::MAX)
}

/// Permutations of `0..n` that fix 0, excluding the identity.
fn nontrivial_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out.retain(|p| p.iter().enumerate().any(|(i, &x)| i != x));
    out
}

/// The code space of `n`-state ε-free NFAs over an alphabet.
///
/// Bit `(p·|A| + a)·n + q` is the transition `p -a-> q`; bit `|A|·n² + q` marks `q` final.
#[derive(Debug, Clone)]
pub struct NfaSpace {
    alphabet: Alphabet,
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl NfaSpace {
    pub fn new(alphabet: &Alphabet, n: usize) -> Self {
        assert!(n >= 1, "machines need at least one state");
        NfaSpace {
            alphabet: alphabet.clone(),
            n,
            perms: nontrivial_perms(n),
        }
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u128 {
        nfa_count(self.n, self.alphabet.len())
    }

    fn transition_bits(&self) -> usize {
        self.alphabet.len() * self.n * self.n
    }

    pub fn decode(&self, code: u64) -> Nfa {
        let (n, k) = (self.n, self.alphabet.len());
        let tb = self.transition_bits();
        let transitions = (0..tb)
            .filter(|&bit| code >> bit & 1 == 1)
            .map(|bit| (bit / n / k, Label::Sym(bit / n % k), bit % n));
        let finals = (0..n).filter(|&q| code >> (tb + q) & 1 == 1);
        Nfa::new(self.alphabet.clone(), n, transitions, [0], finals).expect("decoded NFA is valid")
    }

    /// Inverse of [`NfaSpace::decode`] for ε-free machines of this shape with initial
    /// state set `{0}`.
    pub fn encode(&self, nfa: &Nfa) -> Option<u64> {
        if nfa.state_count() != self.n || nfa.alphabet() != &self.alphabet || nfa.initial_states().iter().ne([0].iter()) {
            return None;
        }
        let (n, k) = (self.n, self.alphabet.len());
        let mut code = 0u64;
        for &(p, label, q) in nfa.transitions() {
            let Label::Sym(a) = label else { return None };
            code |= 1 << ((p * k + a) * n + q);
        }
        for &q in nfa.final_states() {
            code |= 1 << (self.transition_bits() + q);
        }
        Some(code)
    }

    fn permute(&self, code: u64, perm: &[usize]) -> u64 {
        let (n, k) = (self.n, self.alphabet.len());
        let tb = self.transition_bits();
        let mut out = 0u64;
        let mut rest = code;
        while rest != 0 {
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if bit < tb {
                let (p, a, q) = (bit / n / k, bit / n % k, bit % n);
                out |= 1 << ((perm[p] * k + a) * n + perm[q]);
            } else {
                out |= 1 << (tb + perm[bit - tb]);
            }
        }
        out
    }

    /// True if `code` is the least code in its isomorphism class.
    pub fn is_canonical(&self, code: u64) -> bool {
        self.perms.iter().all(|p| self.permute(code, p) >= code)
    }

    /// The least code in the isomorphism class of `code`.
    pub fn canonical_code(&self, code: u64) -> u64 {
        self.perms.iter().map(|p| self.permute(code, p)).fold(code, u64::min)
    }

    /// All codes in increasing order, optionally restricted to class representatives.
    /// The space must fit in 64-bit codes.
    pub fn codes(&self, prune: bool) -> impl Iterator<Item = u64> + '_ {
        let end = u64::try_from(self.count()).expect("NFA space exceeds 64-bit codes");
        (0..end).filter(move |&c| !prune || self.is_canonical(c))
    }
}

/// The code space of complete `n`-state DFAs: the transition table read as base-`n`
/// digits (entry `q·|A| + a` is digit `q·|A| + a`), plus `n^(|A|·n)` times the bitmask of
/// final states.
#[derive(Debug, Clone)]
pub struct DfaSpace {
    alphabet: Alphabet,
    n: usize,
    table_size: u64,
    perms: Vec<Vec<usize>>,
}

impl DfaSpace {
    pub fn new(alphabet: &Alphabet, n: usize) -> Self {
        assert!(n >= 1, "machines need at least one state");
        let table_size = u64::try_from((n as u128).pow((alphabet.len() * n) as u32)).unwrap_or(u64::MAX);
        DfaSpace {
            alphabet: alphabet.clone(),
            n,
            table_size,
            perms: nontrivial_perms(n),
        }
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u128 {
        dfa_count(self.n, self.alphabet.len())
    }

    fn digits(&self, code: u64) -> (Vec<usize>, u64) {
        let mut table = code % self.table_size;
        let entries = self.n * self.alphabet.len();
        let mut delta = Vec::with_capacity(entries);
        for _ in 0..entries {
            delta.push((table % self.n as u64) as usize);
            table /= self.n as u64;
        }
        (delta, code / self.table_size)
    }

    fn compose(&self, delta: &[usize], finals: u64) -> u64 {
        let table = delta.iter().rev().fold(0u64, |acc, &d| acc * self.n as u64 + d as u64);
        finals * self.table_size + table
    }

    pub fn decode(&self, code: u64) -> Dfa {
        let (delta, finals) = self.digits(code);
        let finals = (0..self.n).map(|q| finals >> q & 1 == 1).collect();
        Dfa::new(self.alphabet.clone(), self.n, delta, 0, finals).expect("decoded DFA is valid")
    }

    pub fn encode(&self, dfa: &Dfa) -> Option<u64> {
        if dfa.state_count() != self.n || dfa.alphabet() != &self.alphabet || dfa.initial() != 0 {
            return None;
        }
        let finals = (0..self.n).filter(|&q| dfa.is_final(q)).fold(0u64, |m, q| m | 1 << q);
        Some(self.compose(dfa.delta(), finals))
    }

    fn permute(&self, code: u64, perm: &[usize]) -> u64 {
        let k = self.alphabet.len();
        let (delta, finals) = self.digits(code);
        let mut out = vec![0; delta.len()];
        for q in 0..self.n {
            for a in 0..k {
                out[perm[q] * k + a] = perm[delta[q * k + a]];
            }
        }
        let finals = (0..self.n).filter(|&q| finals >> q & 1 == 1).fold(0u64, |m, q| m | 1 << perm[q]);
        self.compose(&out, finals)
    }

    pub fn is_canonical(&self, code: u64) -> bool {
        self.perms.iter().all(|p| self.permute(code, p) >= code)
    }

    pub fn canonical_code(&self, code: u64) -> u64 {
        self.perms.iter().map(|p| self.permute(code, p)).fold(code, u64::min)
    }

    pub fn codes(&self, prune: bool) -> impl Iterator<Item = u64> + '_ {
        let end = u64::try_from(self.count()).expect("DFA space exceeds 64-bit codes");
        (0..end).filter(move |&c| !prune || self.is_canonical(c))
    }
}

/// All ε-free `n`-state NFAs over `alphabet` with initial state 0, in code order.
pub fn enumerate_nfas(n: usize, alphabet: &Alphabet, prune: bool) -> impl Iterator<Item = Nfa> {
    let space = NfaSpace::new(alphabet, n);
    let end = u64::try_from(space.count()).expect("NFA space exceeds 64-bit codes");
    (0..end).filter_map(move |c| (!prune || space.is_canonical(c)).then(|| space.decode(c)))
}

/// All complete `n`-state DFAs over `alphabet` with initial state 0, in code order.
pub fn enumerate_dfas(n: usize, alphabet: &Alphabet, prune: bool) -> impl Iterator<Item = Dfa> {
    let space = DfaSpace::new(alphabet, n);
    let end = u64::try_from(space.count()).expect("DFA space exceeds 64-bit codes");
    (0..end).filter_map(move |c| (!prune || space.is_canonical(c)).then(|| space.decode(c)))
}
