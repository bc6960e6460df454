use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use workbench_bench::{anbn, binary, grammars, words};
use workbench_core::grammars::{bar_hillel, cfg_finite, CfgRecognizer};
use workbench_core::{Dfa, Word};

fn cyk(c: &mut Criterion) {
    let rec = CfgRecognizer::new(&anbn());
    let mut group = c.benchmark_group("cyk a^n b^n");
    for n in [8usize, 32, 64] {
        let w = Word::from(format!("{}{}", "a".repeat(n), "b".repeat(n)).as_str());
        group.bench_with_input(BenchmarkId::from_parameter(2 * n), &w, |b, w| b.iter(|| black_box(rec.accepts(w).unwrap())));
    }
    group.finish();
}

fn random_membership(c: &mut Criterion) {
    let recs: Vec<CfgRecognizer> = grammars(5, 16).iter().map(CfgRecognizer::new).collect();
    let ws = words(6, 32, 10);
    c.bench_function("cyk, 16 grammars x 32 words", |b| {
        b.iter(|| {
            for r in &recs {
                for w in &ws {
                    black_box(r.accepts(w).unwrap());
                }
            }
        })
    });
}

fn intersection(c: &mut Criterion) {
    let g = anbn();
    let dfa = Dfa::length_mod(&binary(), 3);
    c.bench_function("bar-hillel a^n b^n x length mod 3", |b| {
        b.iter(|| {
            let h = bar_hillel(&g, &dfa).unwrap();
            black_box(cfg_finite(&h))
        })
    });
}

criterion_group!(benches, cyk, random_membership, intersection);
criterion_main!(benches);
