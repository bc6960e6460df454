use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use workbench_core::automata::{determinize, minimize, nfa_member, up_closure};
use workbench_core::grammars::{cfg_member, cfg_up, nfa_to_right_linear};
use workbench_core::kernel::words_up_to;
use workbench_core::sample::{random_cfg, random_dfa, random_nfa};
use workbench_core::systems::{self, shortest};
use workbench_core::{Alphabet, Descriptor, SystemId};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn descriptors(seed: u64) -> Vec<Descriptor> {
    let ab = Alphabet::of("ab");
    let mut r = rng(seed);
    let nfa = random_nfa(&mut r, &ab, 5, 0.3);
    vec![
        Descriptor::Nfa(nfa.clone()),
        Descriptor::Dfa(random_dfa(&mut r, &ab, 4)),
        Descriptor::Cfg(random_cfg(&mut r, &ab, 6, 3, 3)),
        Descriptor::right_linear(nfa_to_right_linear(&nfa)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        for d in descriptors(seed) {
            let text = d.to_text();
            prop_assert_eq!(Descriptor::parse(&text, None).unwrap(), d.clone(), "{}", text);
            let hint = Some(d.system());
            let body: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
            if d.system() != SystemId::RightLinearCfg {
                prop_assert_eq!(Descriptor::parse(&body, hint).unwrap(), d);
            }
        }
    }

    #[test]
    fn minimization_preserves_language_and_is_canonical(seed in any::<u64>()) {
        let ab = Alphabet::of("ab");
        let n = random_nfa(&mut rng(seed), &ab, 5, 0.3);
        let m = minimize(&determinize(&n));
        prop_assert_eq!(minimize(&m), m.clone());
        for w in words_up_to(&ab, 6) {
            prop_assert_eq!(m.accepts(&w).unwrap(), nfa_member(&n, &w).unwrap());
        }
    }

    #[test]
    fn grammar_and_automaton_up_agree(seed in any::<u64>()) {
        let ab = Alphabet::of("ab");
        let n = random_nfa(&mut rng(seed), &ab, 4, 0.3);
        let via_grammar = cfg_up(&nfa_to_right_linear(&n));
        let direct = up_closure(&n);
        for w in words_up_to(&ab, 5) {
            prop_assert_eq!(cfg_member(&via_grammar, &w).unwrap(), nfa_member(&direct, &w).unwrap(), "{}", w);
        }
    }

    #[test]
    fn shortest_is_length_lex_least(seed in any::<u64>()) {
        for d in descriptors(seed) {
            let first = words_up_to(d.alphabet(), 6).into_iter().find(|w| systems::member(&d, w).unwrap());
            match shortest(&d) {
                Some(w) if w.len() <= 6 => prop_assert_eq!(Some(w), first),
                Some(_) => prop_assert!(first.is_none()),
                None => prop_assert!(systems::is_empty(&d) && first.is_none()),
            }
        }
    }
}
