//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Reference values come from the oracles in `common`, never from the library itself.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use workbench_core::automata::{
    down_closure, down_via_substitution, nfa_equiv, regular_substitution, up_closure, up_via_substitution,
};
use workbench_core::grammars::{bar_hillel, cfg_member};
use workbench_core::sample::{random_cfg, random_dfa, random_finite_nfa, random_nfa};
use workbench_core::schemes::{emptiness_via_up, finiteness_via_down, longest_word_bound_search};
use workbench_core::systems::{self, enumerate_by_size};
use workbench_core::tradeoff::{min_equivalent_sizes, tradeoff_table, Strategy, TradeoffConfig};
use workbench_core::{Alphabet, Cfg, Descriptor, Nfa, SizeMeasure, SystemId, TradeoffTable, Word};

use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ab() -> Alphabet {
    Alphabet::of("ab")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn nfa_dfa_table(range: std::ops::RangeInclusive<usize>, strategy: Strategy, prune: bool) -> Result<TradeoffTable, String> {
    let mut config = TradeoffConfig::new(ab(), SystemId::Nfa, SystemId::Dfa);
    config.strategy = strategy;
    config.prune_iso = prune;
    tradeoff_table(&config, range).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut small = Vec::new();
    for (strategy, prune) in [(Strategy::Schema, false), (Strategy::Schema, true), (Strategy::Shortcut, false), (Strategy::Shortcut, true)] {
        let (table, took) = timed(|| nfa_dfa_table(1..=2, strategy, prune));
        let table = table?;
        ensure!(took < Duration::from_secs(10), "n<=2 {strategy:?} prune={prune} took {took:?}");
        notes.push(format!("{strategy:?}{} {:.1}s", if prune { "+prune" } else { "" }, took.as_secs_f64()));
        small.push(table.rows);
    }
    for other in &small[1..] {
        ensure!(other == &small[0], "strategies disagree on n<=2: {:?} vs {:?}", other, small[0]);
    }

    let (big, took) = timed(|| nfa_dfa_table(3..=3, Strategy::Shortcut, true));
    let big = big?;
    ensure!(took < Duration::from_secs(600), "n=3 took {took:?}");
    notes.push(format!("n=3 shortcut+prune {:.1}s", took.as_secs_f64()));

    let rows: Vec<_> = small[0].iter().chain(big.rows.iter()).collect();
    for r in &rows {
        ensure!(r.f_of_n >= r.n && r.f_of_n <= (1 << r.n) + 1, "f({}) = {} out of bounds", r.n, r.f_of_n);
        ensure!(r.exact && r.excluded_count == 0, "row {} not exact", r.n);
        let source = r.witness_source.as_ref().ok_or("missing witness")?.to_nfa().map_err(|e| e.to_string())?;
        ensure!(min_dfa_states(&source) == r.f_of_n, "witness for n={} does not attain f", r.n);
        let target = r.witness_target.as_ref().ok_or("missing target witness")?;
        ensure!(systems::SizeMeasure::default_for(SystemId::Dfa).size(target).unwrap() == r.f_of_n, "target size");
        for w in all_words(&ab(), 8) {
            ensure!(nfa_accepts(&source, &w) == systems::member(target, &w).unwrap(), "witness pair differs on {}", w.to_text());
        }
    }

    // Independent maxima over the whole raw space for n <= 2, and per-machine agreement.
    let config = TradeoffConfig::new(ab(), SystemId::Nfa, SystemId::Dfa);
    for n in 1..=2 {
        let raw = raw_nfas(&ab(), n);
        let descriptors: Vec<Descriptor> = raw.iter().cloned().map(Descriptor::Nfa).collect();
        let engine = min_equivalent_sizes(&descriptors, &config).map_err(|e| e.to_string())?;
        let oracle: Vec<usize> = raw.par_iter().map(min_dfa_states).collect();
        for (i, ((got, _), want)) in engine.iter().zip(&oracle).enumerate() {
            ensure!(got == want, "n={n} machine {i}: engine {got}, oracle {want}");
        }
        let max = *oracle.iter().max().unwrap();
        ensure!(max == rows[n - 1].f_of_n, "n={n}: oracle max {max}, table {}", rows[n - 1].f_of_n);
    }

    let f: Vec<usize> = rows.iter().map(|r| r.f_of_n).collect();
    ensure!(f == vec![2, 4, 8], "goldens changed: {f:?}");
    Ok(format!("f = {f:?}; {}", notes.join(", ")))
}

fn criterion_2() -> Outcome {
    let config = TradeoffConfig::new(ab(), SystemId::Dfa, SystemId::Nfa);
    let table = tradeoff_table(&config, 1..=3).map_err(|e| e.to_string())?;
    for r in &table.rows {
        ensure!(r.f_of_n == r.n, "f({}) = {}", r.n, r.f_of_n);
        let target = r.witness_target.as_ref().ok_or("missing target")?.to_nfa().unwrap();
        let source = r.witness_source.as_ref().ok_or("missing source")?;
        ensure!(target.state_count() == r.n, "target has {} states", target.state_count());
        for w in all_words(&ab(), 8) {
            ensure!(nfa_accepts(&target, &w) == systems::member(source, &w).unwrap(), "witnesses differ on {}", w.to_text());
        }
    }
    Ok(format!("f = {:?}", table.rows.iter().map(|r| r.f_of_n).collect::<Vec<_>>()))
}

fn insertions(w: &Word, alphabet: &Alphabet) -> Vec<Word> {
    let s = w.symbols();
    (0..=s.len())
        .flat_map(|i| {
            alphabet.symbols().iter().map(move |&c| {
                let mut v = s.to_vec();
                v.insert(i, c);
                Word::new(v)
            })
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words = all_words(&ab(), 6);
    let mut with_lambda = 0;
    for i in 0..120 {
        let n = random_nfa(&mut rng, &ab(), 6, 0.25);
        let up = up_closure(&n);
        let down = down_closure(&n);
        let eq = |a: &Nfa, b: &Nfa| nfa_equiv(a, b).unwrap();
        ensure!(eq(&up_closure(&up), &up), "#{i}: up not idempotent");
        ensure!(eq(&down_closure(&down), &down), "#{i}: down not idempotent");
        ensure!(eq(&up, &up_via_substitution(&n)), "#{i}: up differs from the substitution construction");
        ensure!(eq(&down, &down_via_substitution(&n)), "#{i}: down differs from the substitution construction");

        let lambda = nfa_accepts(&n, &Word::empty());
        let images: Vec<Nfa> = (0..2).map(|a| Nfa::containing(&ab(), a)).collect();
        let literal = eq(&up, &regular_substitution(&n, &images).unwrap());
        if lambda {
            with_lambda += 1;
        } else {
            ensure!(literal, "#{i}: λ-free input, up differs from the plain substitution");
        }

        let (s_n, s_up, s_down) = (Sim::new(&n), Sim::new(&up), Sim::new(&down));
        for w in &words {
            let in_n = s_n.accepts(w);
            let in_up = s_up.accepts(w);
            ensure!(!in_n || in_up, "#{i}: {} in L but not in Up", w.to_text());
            ensure!(!in_n || s_down.accepts(w), "#{i}: {} in L but not in Down", w.to_text());
            ensure!(in_up == subwords(w).iter().any(|v| s_n.accepts(v)), "#{i}: Up membership of {} is wrong", w.to_text());
            if in_up && w.len() < 6 {
                ensure!(insertions(w, &ab()).iter().all(|v| s_up.accepts(v)), "#{i}: Up not upward closed at {}", w.to_text());
            }
            if s_down.accepts(w) {
                ensure!(subwords(w).iter().all(|v| s_down.accepts(v)), "#{i}: Down not downward closed at {}", w.to_text());
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("120 NFAs ({with_lambda} accept λ), {:.1}s", took.as_secs_f64()))
}

fn lambda_cases() -> Vec<Descriptor> {
    vec![
        Descriptor::Cfg(Cfg::parse("alphabet: ab\nS -> _").unwrap()),
        Descriptor::Cfg(Cfg::parse("alphabet: ab\nS -> A A | _\nA -> _").unwrap()),
        Descriptor::Nfa(Nfa::epsilon(&ab())),
        Descriptor::Nfa(Nfa::new(ab(), 2, [(0, workbench_core::Label::Eps, 1)], [0], [1]).unwrap()),
    ]
}

fn transfer_sample(seed: u64) -> (Vec<Cfg>, Vec<Nfa>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfgs = (0..120).map(|_| random_cfg(&mut rng, &ab(), 6, 3, 3)).collect();
    let nfas = (0..120).map(|_| random_nfa(&mut rng, &ab(), 5, 0.25)).collect();
    (cfgs, nfas)
}

fn criterion_4() -> Outcome {
    let (cfgs, nfas) = transfer_sample(4);
    let mut infinite = 0;
    let all = cfgs.into_iter().map(Descriptor::Cfg).chain(nfas.into_iter().map(Descriptor::Nfa)).chain(lambda_cases());
    let mut count = 0;
    for (i, d) in all.enumerate() {
        let via = finiteness_via_down(&d).map_err(|e| format!("#{i}: {e}"))?;
        let direct = systems::is_finite(&d);
        ensure!(via == direct, "#{i}: via Down {via}, direct {direct}\n{}", d.to_text());
        if let Descriptor::Nfa(n) = &d {
            ensure!(direct == !nfa_infinite_by_pumping(n), "#{i}: pumping oracle disagrees");
        }
        infinite += usize::from(!direct);
        count += 1;
    }
    Ok(format!("{count} descriptors, {infinite} infinite"))
}

fn criterion_5() -> Outcome {
    let (cfgs, nfas) = transfer_sample(5);
    let all = cfgs.into_iter().map(Descriptor::Cfg).chain(nfas.into_iter().map(Descriptor::Nfa)).chain(lambda_cases());
    let (mut count, mut empty) = (0, 0);
    for (i, d) in all.enumerate() {
        let via = emptiness_via_up(&d).map_err(|e| format!("#{i}: {e}"))?;
        let direct = systems::is_empty(&d);
        ensure!(via == direct, "#{i}: via Up {via}, direct {direct}\n{}", d.to_text());
        let oracle = match &d {
            Descriptor::Nfa(n) => nfa_empty_by_search(n),
            Descriptor::Cfg(g) => cfg_empty_by_productivity(g),
            _ => unreachable!(),
        };
        ensure!(direct == oracle, "#{i}: oracle says empty={oracle}");
        empty += usize::from(direct);
        count += 1;
    }
    Ok(format!("{count} descriptors (4 with λ only or λ-heavy), {empty} empty"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..60 {
        let size = rng.gen_range(1..=4);
        let set: Vec<Nfa> = (0..size).map(|_| random_finite_nfa(&mut rng, &ab(), 6)).collect();
        let want = set.iter().map(|n| longest_by_enumeration(n).expect("non-empty")).max().unwrap();
        let list: Vec<Descriptor> = set.into_iter().map(Descriptor::Nfa).collect();
        let got = longest_word_bound_search(&list, &ab()).map_err(|e| format!("set {i}: {e}"))?;
        ensure!(got == want, "set {i}: search {got}, enumeration {want}");
    }
    Ok("60 sets".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words = all_words(&ab(), 8);
    let results: Vec<Result<(), String>> = (0..60)
        .map(|_| {
            let g = random_cfg(&mut rng, &ab(), 6, 3, 3);
            let states = rng.gen_range(1..=4);
            (g, random_dfa(&mut rng, &ab(), states))
        })
        .collect::<Vec<_>>()
        .into_par_iter()
        .enumerate()
        .map(|(i, (g, d))| {
            let h = bar_hillel(&g, &d).map_err(|e| e.to_string())?;
            let rec = workbench_core::grammars::CfgRecognizer::new(&h);
            for w in &words {
                let want = cfg_generates(&g, w) && dfa_accepts(&d, w);
                ensure!(rec.accepts(w).unwrap() == want, "pair {i}: disagreement on {}", w.to_text());
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("60 pairs x {} words", words.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let words = all_words(&ab(), 6);
    let mut saturated = 0;
    for i in 0..60 {
        let g = random_cfg(&mut rng, &ab(), 5, 3, 3);
        let (derived, complete) = leftmost_derivations(&g, 6, 10);
        for w in &derived {
            ensure!(cfg_member(&g, w).unwrap(), "grammar {i}: derivable {} rejected\n{}", w.to_text(), g.to_text());
        }
        for w in &words {
            let member = cfg_member(&g, w).unwrap();
            ensure!(member == cfg_generates(&g, w), "grammar {i}: fixpoint disagrees on {}\n{}", w.to_text(), g.to_text());
            if complete {
                ensure!(member == derived.contains(w), "grammar {i}: exhaustive derivations disagree on {}", w.to_text());
            }
        }
        saturated += usize::from(complete);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut infinite = 0;
    for i in 0..120 {
        let n = random_nfa(&mut rng, &ab(), 6, 0.2);
        let direct = workbench_core::automata::nfa_finite(&n);
        ensure!(direct == !nfa_infinite_by_pumping(&n), "NFA {i}: nfa_finite {direct}, pumping oracle disagrees");
        infinite += usize::from(!direct);
    }
    Ok(format!("60 grammars ({saturated} with exhaustive derivations), 120 NFAs ({infinite} infinite)"))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_workbench"))
            .current_dir(dir.path())
            .env_remove("WORKBENCH_CEILING")
            .args(args)
            .output()
            .expect("binary runs")
    };
    let cases = [("down", "S -> a S | a", "inf.cfg", "down.json"), ("up", "S -> a S", "empty.cfg", "up.json")];
    let mut verdicts = Vec::new();
    for (kind, grammar, file, report) in cases {
        std::fs::write(dir.path().join(file), format!("{grammar}\n")).unwrap();
        let o = run(&["scheme", kind, "--input", file, "--bound", "2", "-o", report]);
        ensure!(o.status.success(), "{kind} scheme failed: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(dir.path().join(report)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let d = Descriptor::Cfg(Cfg::parse(grammar).unwrap());
        let direct = match kind {
            "down" if systems::is_finite(&d) => "finite",
            "down" => "infinite",
            _ if systems::is_empty(&d) => "empty",
            _ => "non-empty",
        };
        ensure!(value["verdict"] == direct, "{kind}: report says {}, direct decision {direct}", value["verdict"]);
        let o = run(&["scheme", "--check", report]);
        ensure!(o.status.code() == Some(0), "--check rejected {report}: {}", String::from_utf8_lossy(&o.stderr));
        let other = match direct {
            "infinite" => "finite",
            "finite" => "infinite",
            "empty" => "non-empty",
            _ => "empty",
        };
        let flipped = text.replacen(&format!("\"verdict\": \"{direct}\""), &format!("\"verdict\": \"{other}\""), 1);
        for (label, modified) in [("whitespace", text.replacen("{\n", "{\n ", 1)), ("verdict", flipped)] {
            ensure!(modified != text, "{label} tamper of {report} did not apply");
            let tampered = format!("tampered-{report}");
            std::fs::write(dir.path().join(&tampered), modified).unwrap();
            ensure!(run(&["scheme", "--check", &tampered]).status.code() == Some(1), "--check accepted a {label}-modified {report}");
        }
        verdicts.push(format!("{kind}: {direct}"));
    }
    Ok(verdicts.join(", "))
}

fn criterion_10() -> Outcome {
    let nfa = SizeMeasure::default_for(SystemId::Nfa);
    let dfa = SizeMeasure::default_for(SystemId::Dfa);
    let count = |m, n, prune| enumerate_by_size(m, &ab(), n, prune).map(|v| v.len()).map_err(|e| e.to_string());
    ensure!(count(nfa, 1, true)? == 8, "NFA n=1: {} canonical descriptors", count(nfa, 1, true)?);
    ensure!(count(dfa, 1, true)? == 2, "DFA n=1: {} canonical descriptors", count(dfa, 1, true)?);

    let mut sizes = BTreeMap::new();
    for (system, measure, max) in [(SystemId::Dfa, dfa, 3), (SystemId::Nfa, nfa, 2)] {
        let mut stream = Vec::new();
        for n in 1..=max {
            stream.extend(enumerate_by_size(measure, &ab(), n, true).map_err(|e| e.to_string())?);
        }
        for n in 1..=max {
            let filtered: Vec<&Descriptor> = stream.iter().filter(|d| measure.size(d).unwrap() == n).collect();
            let direct = enumerate_by_size(measure, &ab(), n, true).map_err(|e| e.to_string())?;
            ensure!(filtered.iter().copied().eq(direct.iter()), "{system} n={n}: filtered stream differs");

            let unpruned = enumerate_by_size(measure, &ab(), n, false).map_err(|e| e.to_string())?;
            let (raw_count, orbits, pruned_keys, unpruned_set, raw_set) = match system {
                SystemId::Nfa => {
                    let raw = raw_nfas(&ab(), n);
                    let orbits: BTreeSet<_> = raw.iter().map(nfa_orbit_key).collect();
                    let keys: BTreeSet<_> = direct.iter().map(|d| nfa_orbit_key(&d.to_nfa().unwrap())).collect();
                    let u: BTreeSet<String> = unpruned.iter().map(Descriptor::to_text).collect();
                    let r: BTreeSet<String> = raw.iter().map(|m| Descriptor::Nfa(m.clone()).to_text()).collect();
                    (raw.len(), orbits.len(), (keys.len(), keys == orbits), u, r)
                }
                _ => {
                    let raw = raw_dfas(&ab(), n);
                    let orbits: BTreeSet<_> = raw.iter().map(dfa_orbit_key).collect();
                    let keys: BTreeSet<_> = direct
                        .iter()
                        .map(|d| match d {
                            Descriptor::Dfa(m) => dfa_orbit_key(m),
                            _ => unreachable!(),
                        })
                        .collect();
                    let u: BTreeSet<String> = unpruned.iter().map(Descriptor::to_text).collect();
                    let r: BTreeSet<String> = raw.iter().map(|m| Descriptor::Dfa(m.clone()).to_text()).collect();
                    (raw.len(), orbits.len(), (keys.len(), keys == orbits), u, r)
                }
            };
            let formula = match system {
                SystemId::Nfa => 1usize << (n + 2 * n * n),
                _ => n.pow(2 * n as u32) << n,
            };
            ensure!(raw_count == formula && unpruned.len() == formula, "{system} n={n}: {} unpruned, formula {formula}", unpruned.len());
            ensure!(unpruned_set == raw_set, "{system} n={n}: unpruned stream is not the raw space");
            ensure!(direct.len() == orbits && pruned_keys == (orbits, true), "{system} n={n}: {} canonical, {orbits} classes", direct.len());
            sizes.insert(format!("{system}{n}"), (direct.len(), formula));
        }
    }
    Ok(format!("canonical/raw {sizes:?}"))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "NFA->DFA trade-off table", criterion_1),
        (2, "DFA->NFA trade-off table", criterion_2),
        (3, "subword closure suite", criterion_3),
        (4, "finiteness transfer", criterion_4),
        (5, "emptiness transfer", criterion_5),
        (6, "longest-word bound search", criterion_6),
        (7, "Bar-Hillel intersection", criterion_7),
        (8, "decision procedures vs oracles", criterion_8),
        (9, "scheme reports end to end", criterion_9),
        (10, "enumeration soundness", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, run) in criteria {
        let (outcome, took) = timed(|| panic::catch_unwind(AssertUnwindSafe(run)));
        let outcome = outcome.unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS  {name} [{:.1}s] {detail}", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL  {name} [{:.1}s] {why}", took.as_secs_f64());
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
