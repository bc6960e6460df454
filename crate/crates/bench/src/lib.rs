//! Seeded fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use workbench_core::sample::{random_cfg, random_nfa, random_word};
use workbench_core::{Alphabet, Cfg, Nfa, Word};

pub fn binary() -> Alphabet {
    Alphabet::of("ab")
}

pub fn nfas(seed: u64, count: usize, max_states: usize) -> Vec<Nfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_nfa(&mut rng, &binary(), max_states, 0.3)).collect()
}

pub fn grammars(seed: u64, count: usize) -> Vec<Cfg> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_cfg(&mut rng, &binary(), 6, 3, 3)).collect()
}

pub fn words(seed: u64, count: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_word(&mut rng, &binary(), max_len)).collect()
}

/// `aⁿbⁿ`, the usual CYK workload.
pub fn anbn() -> Cfg {
    Cfg::parse("S -> a S b | a b").expect("valid grammar")
}
