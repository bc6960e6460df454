//! Exact membership oracles for `closure --verify-bounded`. Each one answers "is `w` in
//! the result?" from the operands alone, without the construction under test.

use std::collections::HashSet;

use anyhow::bail;
use workbench_core::automata::{determinize, up_closure};
use workbench_core::kernel::words_up_to;
use workbench_core::systems;
use workbench_core::{Descriptor, Dfa, Label, Morphism, Nfa, Side, Word};

pub enum Oracle {
    Up(Descriptor),
    Down(Descriptor),
    Union(Descriptor, Descriptor),
    Intersect(Descriptor, Dfa),
    Concat(Descriptor, Nfa, Side),
    Morphism(Descriptor, Morphism),
    InverseMorphism(Descriptor, Morphism),
    Substitute(Descriptor, Vec<Nfa>),
}

fn slice(w: &Word, i: usize, j: usize) -> Word {
    Word::new(w.symbols()[i..j].to_vec())
}

/// Does `L(d)` meet `L(regular)`?
fn meets(d: &Descriptor, regular: &Nfa) -> anyhow::Result<bool> {
    Ok(!systems::is_empty(&systems::intersect_regular(d, &determinize(regular))?))
}

/// The words `v` over the source alphabet of `d` with `w ∈ σ(v)`, where `piece(a, x)`
/// decides `x ∈ σ(a)`: a path automaton over the positions of `w`.
fn preimage(d: &Descriptor, w: &Word, mut piece: impl FnMut(usize, &Word) -> anyhow::Result<bool>) -> anyhow::Result<Nfa> {
    let m = w.len();
    let mut transitions = Vec::new();
    for i in 0..=m {
        for j in i..=m {
            let x = slice(w, i, j);
            for a in 0..d.alphabet().len() {
                if piece(a, &x)? {
                    transitions.push((i, Label::Sym(a), j));
                }
            }
        }
    }
    Ok(Nfa::new(d.alphabet().clone(), m + 1, transitions, [0], [m])?)
}

impl Oracle {
    pub fn expected(&self, w: &Word) -> anyhow::Result<bool> {
        Ok(match self {
            Oracle::Up(d) => {
                let n = w.len();
                if n > 20 {
                    bail!("the superword oracle is limited to words of length 20");
                }
                let mut seen = HashSet::new();
                let mut found = false;
                for mask in 0u32..(1 << n) {
                    let v = Word::new((0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.symbols()[i]).collect());
                    if seen.insert(v.clone()) && systems::member(d, &v)? {
                        found = true;
                        break;
                    }
                }
                found
            }
            Oracle::Down(d) => meets(d, &up_closure(&Nfa::words(d.alphabet(), [w])?))?,
            Oracle::Union(a, b) => systems::member(a, w)? || systems::member(b, w)?,
            Oracle::Intersect(d, r) => systems::member(d, w)? && r.accepts(w)?,
            Oracle::Concat(d, r, side) => {
                let mut hit = false;
                for i in 0..=w.len() {
                    let (x, y) = (slice(w, 0, i), slice(w, i, w.len()));
                    let ok = match side {
                        Side::Left => workbench_core::automata::nfa_member(r, &x)? && systems::member(d, &y)?,
                        Side::Right => systems::member(d, &x)? && workbench_core::automata::nfa_member(r, &y)?,
                    };
                    if ok {
                        hit = true;
                        break;
                    }
                }
                hit
            }
            Oracle::Morphism(d, h) => meets(d, &preimage(d, w, |a, x| Ok(h.image(a) == x))?)?,
            Oracle::InverseMorphism(d, h) => systems::member(d, &h.apply(w)?)?,
            Oracle::Substitute(d, images) => {
                meets(d, &preimage(d, w, |a, x| Ok(workbench_core::automata::nfa_member(&images[a], x)?))?)?
            }
        })
    }
}

/// Compares `result` with the oracle on every word up to `len` over the result's
/// alphabet; returns the number of words checked.
pub fn verify_bounded(result: &Descriptor, oracle: &Oracle, len: usize) -> anyhow::Result<usize> {
    let words = words_up_to(result.alphabet(), len);
    for w in &words {
        let got = systems::member(result, w)?;
        let want = oracle.expected(w)?;
        if got != want {
            bail!("verification failed on `{}`: construction says {got}, oracle says {want}", w.to_text());
        }
    }
    Ok(words.len())
}
