//! Closure constructions: the effective full-trio operations on NFAs together with the
//! upward and downward subword closures.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Dfa, Label, Nfa};
use crate::error::{Error, Result};
use crate::kernel::{Alphabet, Word};

/// Which side a regular language is attached on in a concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A morphism `h: source* → target*` given by one image word per source symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: impl IntoIterator<Item = (char, Word)>) -> Result<Self> {
        let mut table: Vec<Option<Word>> = vec![None; source.len()];
        for (c, w) in images {
            let i = source
                .index_of(c)
                .ok_or_else(|| Error::AlphabetMismatch(format!("morphism maps `{c}`, which is not in {source}")))?;
            target.encode(&w)?;
            table[i] = Some(w);
        }
        let images = table
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| Error::Invalid(format!("no image for `{}`", source.symbol(i)))))
            .collect::<Result<_>>()?;
        Ok(Morphism { source, target, images })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = alphabet.symbols().iter().map(|&c| Word::new(vec![c])).collect();
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, a: usize) -> &Word {
        &self.images[a]
    }

    /// True if some symbol maps to λ.
    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Word::is_empty)
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        let idx = self.source.encode(word)?;
        Ok(idx.iter().fold(Word::empty(), |acc, &a| acc.concat(&self.images[a])))
    }
}

struct Builder {
    count: usize,
    transitions: Vec<(usize, Label, usize)>,
}

impl Builder {
    fn new(count: usize) -> Self {
        Builder {
            count,
            transitions: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.count += 1;
        self.count - 1
    }

    /// Copies `nfa` into fresh states; returns the offset of its state 0.
    fn embed(&mut self, nfa: &Nfa) -> usize {
        let base = self.count;
        self.count += nfa.state_count();
        self.transitions
            .extend(nfa.transitions().iter().map(|&(p, l, q)| (p + base, l, q + base)));
        base
    }

    fn path(&mut self, from: usize, symbols: &[usize], to: usize) {
        if symbols.is_empty() {
            self.transitions.push((from, Label::Eps, to));
            return;
        }
        let mut at = from;
        for (i, &a) in symbols.iter().enumerate() {
            let next = if i + 1 == symbols.len() { to } else { self.fresh() };
            self.transitions.push((at, Label::Sym(a), next));
            at = next;
        }
    }

    fn finish(self, alphabet: &Alphabet, initial: impl IntoIterator<Item = usize>, finals: impl IntoIterator<Item = usize>) -> Nfa {
        Nfa::new(alphabet.clone(), self.count, self.transitions, initial, finals).expect("construction yields a valid NFA")
    }
}

/// Pair construction for `L(nfa) ∩ L(dfa)`; ε-moves advance only the NFA component.
/// Only reachable pairs are built.
pub fn product_intersect(nfa: &Nfa, dfa: &Dfa) -> Result<Nfa> {
    nfa.alphabet().ensure_same(dfa.alphabet())?;
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut initial = Vec::new();
    for &q in nfa.initial_states() {
        let id = ids.len();
        ids.insert((q, dfa.initial()), id);
        queue.push_back((q, dfa.initial()));
        initial.push(id);
    }
    let mut out: BTreeMap<usize, Vec<(Label, usize)>> = BTreeMap::new();
    for &(p, l, q) in nfa.transitions() {
        out.entry(p).or_default().push((l, q));
    }
    let mut transitions = Vec::new();
    while let Some((q, d)) = queue.pop_front() {
        let from = ids[&(q, d)];
        for &(label, r) in out.get(&q).map(Vec::as_slice).unwrap_or(&[]) {
            let e = match label {
                Label::Eps => d,
                Label::Sym(a) => dfa.next(d, a),
            };
            let len = ids.len();
            let to = *ids.entry((r, e)).or_insert_with(|| {
                queue.push_back((r, e));
                len
            });
            transitions.push((from, label, to));
        }
    }
    let finals: Vec<usize> = ids
        .iter()
        .filter(|((q, d), _)| nfa.final_states().contains(q) && dfa.is_final(*d))
        .map(|(_, &id)| id)
        .collect();
    Nfa::new(nfa.alphabet().clone(), ids.len(), transitions, initial, finals)
}

fn concat(first: &Nfa, second: &Nfa) -> Nfa {
    let mut b = Builder::new(0);
    let o1 = b.embed(first);
    let o2 = b.embed(second);
    for &f in first.final_states() {
        for &i in second.initial_states() {
            b.transitions.push((f + o1, Label::Eps, i + o2));
        }
    }
    let initial: Vec<_> = first.initial_states().iter().map(|q| q + o1).collect();
    let finals: Vec<_> = second.final_states().iter().map(|q| q + o2).collect();
    b.finish(first.alphabet(), initial, finals)
}

/// `L(regular)·L(nfa)` for [`Side::Left`], `L(nfa)·L(regular)` for [`Side::Right`].
pub fn concat_regular(nfa: &Nfa, regular: &Nfa, side: Side) -> Result<Nfa> {
    nfa.alphabet().ensure_same(regular.alphabet())?;
    Ok(match side {
        Side::Left => concat(regular, nfa),
        Side::Right => concat(nfa, regular),
    })
}

/// Disjoint union of the two state sets.
pub fn union(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.alphabet().ensure_same(b.alphabet())?;
    let mut builder = Builder::new(0);
    let oa = builder.embed(a);
    let ob = builder.embed(b);
    let initial: Vec<_> = a.initial_states().iter().map(|q| q + oa).chain(b.initial_states().iter().map(|q| q + ob)).collect();
    let finals: Vec<_> = a.final_states().iter().map(|q| q + oa).chain(b.final_states().iter().map(|q| q + ob)).collect();
    Ok(builder.finish(a.alphabet(), initial, finals))
}

/// `h(L(nfa))`: every `a`-transition becomes a path spelling `h(a)`, or an ε-move when
/// `h(a) = λ`.
pub fn morphism(nfa: &Nfa, h: &Morphism) -> Result<Nfa> {
    nfa.alphabet().ensure_same(h.source())?;
    let mut b = Builder::new(nfa.state_count());
    for &(p, label, q) in nfa.transitions() {
        match label {
            Label::Eps => b.transitions.push((p, Label::Eps, q)),
            Label::Sym(a) => {
                let image = h.target().encode(h.image(a))?;
                b.path(p, &image, q);
            }
        }
    }
    Ok(b.finish(h.target(), nfa.initial_states().iter().copied(), nfa.final_states().iter().copied()))
}

/// `h⁻¹(L(nfa))` over `h`'s source alphabet: `q -b-> q'` whenever `q'` is reachable from
/// `q` reading `h(b)`. The result is ε-free; states whose ε-closure meets a final state
/// become final.
pub fn inverse_morphism(nfa: &Nfa, h: &Morphism) -> Result<Nfa> {
    nfa.alphabet().ensure_same(h.target())?;
    let adj = nfa.adjacency();
    let mut transitions = Vec::new();
    let mut finals = Vec::new();
    for q in 0..nfa.state_count() {
        let from = adj.start(&[q].into());
        if adj.accepting(&from) {
            finals.push(q);
        }
        for b in 0..h.source().len() {
            let mut set = from.clone();
            for a in nfa.alphabet().encode(h.image(b))? {
                set = adj.step(&set, a);
            }
            transitions.extend(set.iter().map(|r| (q, Label::Sym(b), r)));
        }
    }
    Nfa::new(h.source().clone(), nfa.state_count(), transitions, nfa.initial_states().iter().copied(), finals)
}

/// `σ(L(nfa))` where `σ(a) = L(images[a])`: each `a`-transition is replaced by a fresh
/// copy of `images[a]` glued in with ε-moves. All images must share one alphabet.
pub fn regular_substitution(nfa: &Nfa, images: &[Nfa]) -> Result<Nfa> {
    if images.len() != nfa.alphabet().len() {
        return Err(Error::Invalid(format!(
            "substitution has {} images for an alphabet of {} symbols",
            images.len(),
            nfa.alphabet().len()
        )));
    }
    let output = images[0].alphabet().clone();
    for img in images {
        output.ensure_same(img.alphabet())?;
    }
    let mut b = Builder::new(nfa.state_count());
    for &(p, label, q) in nfa.transitions() {
        match label {
            Label::Eps => b.transitions.push((p, Label::Eps, q)),
            Label::Sym(a) => {
                let img = &images[a];
                let base = b.embed(img);
                for &i in img.initial_states() {
                    b.transitions.push((p, Label::Eps, i + base));
                }
                for &f in img.final_states() {
                    b.transitions.push((f + base, Label::Eps, q));
                }
            }
        }
    }
    Ok(b.finish(&output, nfa.initial_states().iter().copied(), nfa.final_states().iter().copied()))
}

/// Upward closure `{x | ∃y ∈ L: y ≤ x}`: a self-loop on every symbol at every state.
pub fn up_closure(nfa: &Nfa) -> Nfa {
    let k = nfa.alphabet().len();
    let loops = (0..nfa.state_count()).flat_map(|q| (0..k).map(move |a| (q, Label::Sym(a), q)));
    let transitions: Vec<_> = nfa.transitions().iter().copied().chain(loops).collect();
    Nfa::new(
        nfa.alphabet().clone(),
        nfa.state_count(),
        transitions,
        nfa.initial_states().iter().copied(),
        nfa.final_states().iter().copied(),
    )
    .expect("same states")
}

/// Downward closure `{x | ∃y ∈ L: x ≤ y}`: an ε-move parallel to every symbol move.
pub fn down_closure(nfa: &Nfa) -> Nfa {
    let skips: Vec<_> = nfa
        .transitions()
        .iter()
        .filter(|t| t.1 != Label::Eps && t.0 != t.2)
        .map(|&(p, _, q)| (p, Label::Eps, q))
        .collect();
    let transitions: Vec<_> = nfa.transitions().iter().copied().chain(skips).collect();
    Nfa::new(
        nfa.alphabet().clone(),
        nfa.state_count(),
        transitions,
        nfa.initial_states().iter().copied(),
        nfa.final_states().iter().copied(),
    )
    .expect("same states")
}

/// `Up(L)` through the substitution `a ↦ A* a A*`. The substitution maps λ to λ, so
/// `A*` is added when λ ∈ L.
pub fn up_via_substitution(nfa: &Nfa) -> Nfa {
    let a = nfa.alphabet();
    let images: Vec<Nfa> = (0..a.len()).map(|i| Nfa::containing(a, i)).collect();
    let sub = regular_substitution(nfa, &images).expect("images share the alphabet");
    if super::nfa_member(nfa, &Word::empty()).expect("λ is over every alphabet") {
        union(&sub, &Nfa::universal(a)).expect("same alphabet")
    } else {
        sub
    }
}

/// `Down(L)` through the substitution `a ↦ {λ, a}`.
pub fn down_via_substitution(nfa: &Nfa) -> Nfa {
    let a = nfa.alphabet();
    let images: Vec<Nfa> = (0..a.len()).map(|i| Nfa::optional(a, i)).collect();
    regular_substitution(nfa, &images).expect("images share the alphabet")
}
