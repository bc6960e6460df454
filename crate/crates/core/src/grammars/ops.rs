//! Grammar constructions: regular substitution (and the subword closures through it),
//! the Bar-Hillel product with a DFA, and the remaining trio operations.

use std::collections::HashMap;

use super::{Cfg, Cnf, GSym, GrammarBuilder};
use crate::automata::{Dfa, Label, Morphism, Nfa, Side};
use crate::error::{Error, Result};
use crate::kernel::Alphabet;

/// Adds right-linear productions generating `L(nfa)`; returns the entry nonterminal.
/// Terminals are mapped by symbol into `output`.
fn embed_nfa(b: &mut GrammarBuilder, nfa: &Nfa, output: &Alphabet, prefix: &str) -> Result<usize> {
    let map: Vec<usize> = nfa
        .alphabet()
        .symbols()
        .iter()
        .map(|&c| output.index_of(c).ok_or_else(|| Error::AlphabetMismatch(format!("`{c}` is not in {output}"))))
        .collect::<Result<_>>()?;
    let entry = b.fresh(prefix);
    let states: Vec<usize> = (0..nfa.state_count()).map(|_| b.fresh(prefix)).collect();
    for &i in nfa.initial_states() {
        b.add(entry, vec![GSym::N(states[i])]);
    }
    for &(p, label, q) in nfa.transitions() {
        match label {
            Label::Eps => b.add(states[p], vec![GSym::N(states[q])]),
            Label::Sym(a) => b.add(states[p], vec![GSym::T(map[a]), GSym::N(states[q])]),
        }
    }
    for &f in nfa.final_states() {
        b.add(states[f], vec![]);
    }
    Ok(entry)
}

/// Copies the productions of `cfg` into `b` using `index` for its nonterminals and
/// `terminal` to rewrite each terminal occurrence.
fn copy_productions(b: &mut GrammarBuilder, cfg: &Cfg, index: &[usize], mut terminal: impl FnMut(usize) -> Vec<GSym>) {
    for p in cfg.productions() {
        let body = p
            .body
            .iter()
            .flat_map(|s| match *s {
                GSym::N(n) => vec![GSym::N(index[n])],
                GSym::T(a) => terminal(a),
            })
            .collect();
        b.add(index[p.head], body);
    }
}

/// `σ(L(cfg))` with `σ(a) = L(images[a])`: each terminal is replaced by a fresh
/// nonterminal that generates the image through right-linear productions.
pub fn regular_substitution_cfg(cfg: &Cfg, images: &[Nfa]) -> Result<Cfg> {
    if images.len() != cfg.terminals().len() {
        return Err(Error::Invalid(format!(
            "substitution has {} images for {} terminals",
            images.len(),
            cfg.terminals().len()
        )));
    }
    let output = images[0].alphabet().clone();
    for img in images {
        output.ensure_same(img.alphabet())?;
    }
    let mut b = GrammarBuilder::new();
    b.reserve(cfg.nonterminals());
    let index: Vec<usize> = cfg.nonterminals().iter().map(|n| b.named(n)).collect();
    let mut entry: Vec<Option<usize>> = vec![None; images.len()];
    for p in cfg.productions() {
        for s in &p.body {
            if let GSym::T(a) = *s {
                if entry[a].is_none() {
                    let prefix = format!("Sub{}", cfg.terminals().symbol(a).to_ascii_uppercase());
                    let prefix = if super::valid_nonterminal_name(&prefix) { prefix } else { "Sub".to_string() };
                    entry[a] = Some(embed_nfa(&mut b, &images[a], &output, &prefix)?);
                }
            }
        }
    }
    copy_productions(&mut b, cfg, &index, |a| vec![GSym::N(entry[a].expect("embedded above"))]);
    Ok(b.finish(&output))
}

/// Upward closure via the substitution `a ↦ A* a A*`. The substitution fixes λ, so
/// when the grammar generates λ the universal language is added.
pub fn cfg_up(cfg: &Cfg) -> Cfg {
    let a = cfg.terminals();
    let images: Vec<Nfa> = (0..a.len()).map(|i| Nfa::containing(a, i)).collect();
    let up = regular_substitution_cfg(cfg, &images).expect("images share the terminal alphabet");
    if super::cfg_member(cfg, &crate::kernel::Word::empty()).expect("λ is over every alphabet") {
        cfg_union(&up, &nfa_to_right_linear(&Nfa::universal(a))).expect("same terminals")
    } else {
        up
    }
}

/// Downward closure via the substitution `a ↦ {λ, a}`.
pub fn cfg_down(cfg: &Cfg) -> Cfg {
    let a = cfg.terminals();
    let images: Vec<Nfa> = (0..a.len()).map(|i| Nfa::optional(a, i)).collect();
    regular_substitution_cfg(cfg, &images).expect("images share the terminal alphabet")
}

/// Bar-Hillel triple construction for `L(cfg) ∩ L(dfa)` on the Chomsky normal form of
/// `cfg`. Only productive, reachable triples are kept.
pub fn bar_hillel(cfg: &Cfg, dfa: &Dfa) -> Result<Cfg> {
    cfg.terminals().ensure_same(dfa.alphabet())?;
    let cnf = Cnf::from_cfg(cfg);
    let q = dfa.state_count();
    let n = cnf.nts;
    // Triple (p, X, r) is nonterminal 1 + (p·n + X)·q + r; 0 is the new start.
    let triple = |p: usize, x: usize, r: usize| 1 + (p * n + x) * q + r;
    let total = 1 + q * n * q;
    let mut rules: Vec<(usize, Vec<GSym>)> = Vec::new();
    for &(x, t) in &cnf.unary {
        for p in 0..q {
            rules.push((triple(p, x, dfa.next(p, t)), vec![GSym::T(t)]));
        }
    }
    for &(x, y, z) in &cnf.binary {
        for p in 0..q {
            for m in 0..q {
                for r in 0..q {
                    rules.push((triple(p, x, r), vec![GSym::N(triple(p, y, m)), GSym::N(triple(m, z, r))]));
                }
            }
        }
    }
    for f in (0..q).filter(|&f| dfa.is_final(f)) {
        rules.push((0, vec![GSym::N(triple(dfa.initial(), 0, f))]));
    }
    if cnf.accepts_empty && dfa.is_final(dfa.initial()) {
        rules.push((0, vec![]));
    }
    let keep = super::decide::trim_mask(total, &rules, 0);

    let mut b = GrammarBuilder::new();
    let mut names: HashMap<usize, usize> = HashMap::new();
    names.insert(0, b.named("S"));
    let mut name = |b: &mut GrammarBuilder, i: usize| *names.entry(i).or_insert_with(|| b.fresh("N"));
    for (head, body) in &rules {
        let all_kept = keep[*head] && body.iter().all(|s| !matches!(s, GSym::N(m) if !keep[*m]));
        if !all_kept {
            continue;
        }
        let h = name(&mut b, *head);
        let body = body
            .iter()
            .map(|s| match *s {
                GSym::N(m) => GSym::N(name(&mut b, m)),
                t => t,
            })
            .collect();
        b.add(h, body);
    }
    Ok(b.finish(cfg.terminals()))
}

/// `L(regular)·L(cfg)` (left) or `L(cfg)·L(regular)` (right), with a fresh start symbol.
pub fn cfg_concat_regular(cfg: &Cfg, regular: &Nfa, side: Side) -> Result<Cfg> {
    cfg.terminals().ensure_same(regular.alphabet())?;
    let mut b = GrammarBuilder::new();
    b.reserve(cfg.nonterminals());
    let start = b.fresh("S");
    let index: Vec<usize> = cfg.nonterminals().iter().map(|n| b.named(n)).collect();
    copy_productions(&mut b, cfg, &index, |a| vec![GSym::T(a)]);
    let r = embed_nfa(&mut b, regular, cfg.terminals(), "R")?;
    let body = match side {
        Side::Left => vec![GSym::N(r), GSym::N(index[0])],
        Side::Right => vec![GSym::N(index[0]), GSym::N(r)],
    };
    b.add(start, body);
    Ok(b.finish(cfg.terminals()))
}

/// `L(a) ∪ L(b)`: a fresh start with one alternative per operand; clashing names in `b`
/// are renamed.
pub fn cfg_union(a: &Cfg, b: &Cfg) -> Result<Cfg> {
    a.terminals().ensure_same(b.terminals())?;
    let mut g = GrammarBuilder::new();
    g.reserve(a.nonterminals());
    g.reserve(b.nonterminals());
    let start = g.fresh("S");
    let ia: Vec<usize> = a.nonterminals().iter().map(|n| g.named(n)).collect();
    let ib: Vec<usize> = b
        .nonterminals()
        .iter()
        .map(|n| {
            if a.nonterminal_index(n).is_some() {
                g.fresh(&format!("{n}_"))
            } else {
                g.named(n)
            }
        })
        .collect();
    copy_productions(&mut g, a, &ia, |t| vec![GSym::T(t)]);
    copy_productions(&mut g, b, &ib, |t| vec![GSym::T(t)]);
    g.add(start, vec![GSym::N(ia[0])]);
    g.add(start, vec![GSym::N(ib[0])]);
    Ok(g.finish(a.terminals()))
}

/// `h(L(cfg))` by rewriting every terminal occurrence with its image.
pub fn cfg_morphism(cfg: &Cfg, h: &Morphism) -> Result<Cfg> {
    cfg.terminals().ensure_same(h.source())?;
    let images: Vec<Vec<GSym>> = (0..h.source().len())
        .map(|a| Ok(h.target().encode(h.image(a))?.into_iter().map(GSym::T).collect()))
        .collect::<Result<_>>()?;
    let mut b = GrammarBuilder::new();
    let index: Vec<usize> = cfg.nonterminals().iter().map(|n| b.named(n)).collect();
    copy_productions(&mut b, cfg, &index, |a| images[a].clone());
    Ok(b.finish(h.target()))
}

/// NFA for a right-linear grammar: one state per nonterminal plus one accepting state,
/// with intermediate states spelling out terminal runs.
pub fn right_linear_to_nfa(cfg: &Cfg) -> Result<Nfa> {
    if !cfg.is_right_linear() {
        return Err(Error::Precondition("grammar is not right-linear".into()));
    }
    let accept = cfg.nonterminals().len();
    let mut count = accept + 1;
    let mut transitions = Vec::new();
    for p in cfg.productions() {
        let (terms, target) = match p.body.last() {
            Some(&GSym::N(b)) => (&p.body[..p.body.len() - 1], b),
            _ => (&p.body[..], accept),
        };
        if terms.is_empty() {
            transitions.push((p.head, Label::Eps, target));
            continue;
        }
        let mut at = p.head;
        for (i, s) in terms.iter().enumerate() {
            let GSym::T(a) = *s else { unreachable!("right-linear prefix is terminal") };
            let next = if i + 1 == terms.len() {
                target
            } else {
                count += 1;
                count - 1
            };
            transitions.push((at, Label::Sym(a), next));
            at = next;
        }
    }
    Nfa::new(cfg.terminals().clone(), count, transitions, [0], [accept])
}

/// Right-linear grammar for an NFA: nonterminal `Q<i>` per state, `Q<p> -> a Q<q>` per
/// transition and `Q<f> -> λ` per final state. A separate start symbol is added unless
/// state 0 is the only initial state.
pub fn nfa_to_right_linear(nfa: &Nfa) -> Cfg {
    let mut b = GrammarBuilder::new();
    let single = nfa.initial_states().len() == 1 && nfa.initial_states().contains(&0);
    let start = (!single).then(|| b.named("S"));
    let states: Vec<usize> = (0..nfa.state_count()).map(|i| b.named(&format!("Q{i}"))).collect();
    if let Some(s) = start {
        for &i in nfa.initial_states() {
            b.add(s, vec![GSym::N(states[i])]);
        }
    }
    for &(p, label, q) in nfa.transitions() {
        match label {
            Label::Eps => b.add(states[p], vec![GSym::N(states[q])]),
            Label::Sym(a) => b.add(states[p], vec![GSym::T(a), GSym::N(states[q])]),
        }
    }
    for &f in nfa.final_states() {
        b.add(states[f], vec![]);
    }
    b.finish(nfa.alphabet())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{nfa_equiv, nfa_member};
    use crate::grammars::{cfg_empty, cfg_member};
    use crate::kernel::{subword_leq, words_up_to, Word};

    fn g(text: &str) -> Cfg {
        Cfg::parse(text).unwrap()
    }

    fn agree(a: &Cfg, b: &Cfg, len: usize) -> bool {
        words_up_to(a.terminals(), len)
            .iter()
            .all(|w| cfg_member(a, w).unwrap() == cfg_member(b, w).unwrap())
    }

    #[test]
    fn identity_substitution_preserves_language() {
        let gr = g("S -> a S b | b A\nA -> a | _");
        let ab = gr.terminals().clone();
        let id: Vec<Nfa> = (0..2).map(|i| Nfa::words(&ab, &[ab.decode(&[i])]).unwrap()).collect();
        assert!(agree(&gr, &regular_substitution_cfg(&gr, &id).unwrap(), 6));
    }

    #[test]
    fn down_of_anbn() {
        let anbn = g("S -> a S b | a b");
        let down = cfg_down(&anbn);
        let ab = anbn.terminals();
        // Brute force: subwords of aⁿbⁿ for n ≤ 4, on words of length ≤ 4.
        let sources: Vec<Word> = (1..=4).map(|n| Word::from(format!("{}{}", "a".repeat(n), "b".repeat(n)).as_str())).collect();
        for w in words_up_to(ab, 4) {
            let expected = sources.iter().any(|y| subword_leq(&w, y));
            assert_eq!(cfg_member(&down, &w).unwrap(), expected, "{w}");
        }
        assert!(agree(&cfg_down(&down), &down, 5));
        assert!(cfg_empty(&cfg_up(&Cfg::empty(ab))));
    }

    #[test]
    fn up_of_anbn() {
        let up = cfg_up(&g("S -> a S b | a b"));
        for w in words_up_to(up.terminals(), 5) {
            assert_eq!(cfg_member(&up, &w).unwrap(), subword_leq(&"ab".into(), &w), "{w}");
        }
        let lambda = g("alphabet: ab\nS -> _");
        let up = cfg_up(&lambda);
        assert!(words_up_to(up.terminals(), 4).iter().all(|w| cfg_member(&up, w).unwrap()));
    }

    #[test]
    fn bar_hillel_examples() {
        let anbn = g("S -> a S b | a b");
        let ab = anbn.terminals().clone();
        assert!(agree(&bar_hillel(&anbn, &Dfa::universal(&ab)).unwrap(), &anbn, 6));
        assert!(agree(&bar_hillel(&anbn, &Dfa::length_mod(&ab, 2)).unwrap(), &anbn, 8));
        let a_star = Dfa::from_fn(&ab, 2, |q, a| if q == 0 && a == 0 { 0 } else { 1 }, |q| q == 0);
        assert!(cfg_empty(&bar_hillel(&anbn, &a_star).unwrap()));
        let with_lambda = g("alphabet: ab\nS -> a S | _");
        let inter = bar_hillel(&with_lambda, &Dfa::length_mod(&ab, 2)).unwrap();
        assert!(cfg_member(&inter, &Word::empty()).unwrap());
        assert!(cfg_member(&inter, &"aa".into()).unwrap());
        assert!(!cfg_member(&inter, &"a".into()).unwrap());
    }

    #[test]
    fn concat_union_morphism() {
        let gr = g("S -> a S b | a b");
        let ab = gr.terminals().clone();
        assert!(agree(&cfg_concat_regular(&gr, &Nfa::epsilon(&ab), Side::Left).unwrap(), &gr, 6));
        let b = Nfa::words(&ab, &["b".into()]).unwrap();
        let left = cfg_concat_regular(&gr, &b, Side::Left).unwrap();
        assert!(cfg_member(&left, &"bab".into()).unwrap());
        assert!(!cfg_member(&left, &"abb".into()).unwrap());
        let right = cfg_concat_regular(&gr, &b, Side::Right).unwrap();
        assert!(cfg_member(&right, &"abb".into()).unwrap());

        assert!(agree(&cfg_union(&gr, &Cfg::empty(&ab)).unwrap(), &gr, 6));
        let u = cfg_union(&gr, &g("S -> b a")).unwrap();
        assert!(cfg_member(&u, &"ba".into()).unwrap() && cfg_member(&u, &"aabb".into()).unwrap());
        assert!(agree(&cfg_morphism(&gr, &Morphism::identity(&ab)).unwrap(), &gr, 6));
        let h = Morphism::new(ab.clone(), Alphabet::of("c"), [('a', "c".into()), ('b', Word::empty())]).unwrap();
        let img = cfg_morphism(&gr, &h).unwrap();
        assert!(cfg_member(&img, &"ccc".into()).unwrap());
        assert!(!cfg_member(&img, &Word::empty()).unwrap());
    }

    #[test]
    fn right_linear_round_trip() {
        let rl = g("S -> a b S | b A | _\nA -> a A | b");
        let nfa = right_linear_to_nfa(&rl).unwrap();
        for w in words_up_to(rl.terminals(), 6) {
            assert_eq!(nfa_member(&nfa, &w).unwrap(), cfg_member(&rl, &w).unwrap());
        }
        let back = nfa_to_right_linear(&nfa);
        assert!(back.is_right_linear());
        assert!(nfa_equiv(&right_linear_to_nfa(&back).unwrap(), &nfa).unwrap());
        assert!(right_linear_to_nfa(&g("S -> a S b")).is_err());
    }
}
