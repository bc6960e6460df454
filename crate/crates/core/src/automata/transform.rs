use std::collections::{HashMap, VecDeque};

use super::{Dfa, Nfa};

/// Subset construction with ε-closure. Only reachable subsets are built; the empty
/// subset, when reachable, becomes the explicit dead state so the result is complete.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let adj = nfa.adjacency();
    let k = adj.k;
    let start = adj.start(nfa.initial_states());
    let mut ids = HashMap::new();
    let mut subsets = vec![start.clone()];
    ids.insert(start, 0usize);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..k {
            let next = adj.step(&subsets[i], a);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    ids.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let finals = subsets.iter().map(|s| adj.accepting(s)).collect();
    Dfa::new(nfa.alphabet().clone(), subsets.len(), delta, 0, finals).expect("subset DFA is complete")
}

/// Minimal complete DFA for the same language, by Moore partition refinement.
///
/// States of the result are numbered in breadth-first discovery order from the initial
/// state, following symbols in alphabet order, so equivalent inputs give identical
/// outputs.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let k = dfa.alphabet().len();
    let reach = bfs_order(dfa.state_count(), dfa.initial(), k, |q, a| dfa.next(q, a));
    let live: Vec<usize> = reach.order;

    // Moore refinement over reachable states; classes are labelled by first occurrence.
    let mut class: Vec<usize> = vec![usize::MAX; dfa.state_count()];
    let mut count = relabel(&live, &mut class, |q| dfa.is_final(q) as usize);
    loop {
        let snapshot = class.clone();
        let next_count = relabel(&live, &mut class, |q| {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(snapshot[q]);
            sig.extend((0..k).map(|a| snapshot[dfa.next(q, a)]));
            sig
        });
        if next_count == count {
            break;
        }
        count = next_count;
    }

    let mut rep = vec![usize::MAX; count];
    for &q in &live {
        if rep[class[q]] == usize::MAX {
            rep[class[q]] = q;
        }
    }
    let quotient = |c: usize, a: usize| class[dfa.next(rep[c], a)];
    let canon = bfs_order(count, class[dfa.initial()], k, quotient);
    let mut delta = Vec::with_capacity(count * k);
    for &c in &canon.order {
        for a in 0..k {
            delta.push(canon.index[quotient(c, a)]);
        }
    }
    let finals = canon.order.iter().map(|&c| dfa.is_final(rep[c])).collect();
    Dfa::new(dfa.alphabet().clone(), count, delta, 0, finals).expect("quotient DFA is complete")
}

struct BfsOrder {
    order: Vec<usize>,
    index: Vec<usize>,
}

fn bfs_order(n: usize, start: usize, k: usize, next: impl Fn(usize, usize) -> usize) -> BfsOrder {
    let mut index = vec![usize::MAX; n];
    let mut order = vec![start];
    index[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let r = next(q, a);
            if index[r] == usize::MAX {
                index[r] = order.len();
                order.push(r);
                queue.push_back(r);
            }
        }
    }
    BfsOrder { order, index }
}

fn relabel<K: std::hash::Hash + Eq>(live: &[usize], class: &mut [usize], key: impl Fn(usize) -> K) -> usize {
    let mut labels = HashMap::new();
    let keys: Vec<K> = live.iter().map(|&q| key(q)).collect();
    for (&q, key) in live.iter().zip(keys) {
        let next = labels.len();
        class[q] = *labels.entry(key).or_insert(next);
    }
    labels.len()
}
