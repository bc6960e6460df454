//! Exact trade-off values between two descriptional systems at small sizes.
//!
//! For a source size `n` the engine takes every size-`n` source descriptor whose
//! language is known to lie in the target family, finds the least size of an equivalent
//! target descriptor, and reports `f(n) = max({n} ∪ {those sizes})` together with the
//! first source (in enumeration order) attaining it.
//!
//! Two strategies compute the minimum. [`Strategy::Schema`] enumerates target
//! descriptors by increasing size until an equivalent one appears; equivalence is
//! decided by comparing canonical minimal DFAs. All sources of a row are resolved in one
//! pass over the target sizes. [`Strategy::Shortcut`] (DFA targets only) reads the size
//! off the minimal DFA directly.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::automata::{determinize, minimize, Dfa, DfaSpace, NfaSpace};
use crate::error::{Error, Result};
use crate::grammars::{bar_hillel, cfg_empty, cfg_member, nfa_to_right_linear};
use crate::kernel::{words_up_to, Alphabet, Verdict};
use crate::systems::{enumerate_by_size, enumeration_estimate, Descriptor, MeasureKind, SizeMeasure, SystemId};

/// Default cap on the number of descriptors one enumeration step may walk through.
pub const DEFAULT_CEILING: u64 = 10_000_000;

/// Word length up to which a promised grammar is compared against a regular candidate.
pub const DEFAULT_PROMISE_CHECK_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// Every canonical source descriptor of each size.
    Exhaustive,
    /// Only the given descriptors, each asserted by the caller to describe a language of
    /// the target family.
    Promise(Vec<Descriptor>),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Promise(_) => "promise",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Schema,
    Shortcut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Settled from the source and target systems alone.
    Systems,
    /// Asserted by the caller.
    Promise,
}

/// Is `L(d)` in the language family of `target`? True when the source family is
/// contained in the target family; Unknown for a grammar against a regular target,
/// since regularity of context-free languages is undecidable.
pub fn s2ness(d: &Descriptor, target: SystemId) -> Verdict {
    if !target.is_regular() || d.system().is_regular() {
        Verdict::True
    } else {
        Verdict::Unknown { budget_spent: 0 }
    }
}

/// [`s2ness`] with a caller promise: a promised descriptor is True.
pub fn s2ness_with_promise(d: &Descriptor, target: SystemId, promised: bool) -> (Verdict, Provenance) {
    match s2ness(d, target) {
        Verdict::True => (Verdict::True, Provenance::Systems),
        _ if promised => (Verdict::True, Provenance::Promise),
        v => (v, Provenance::Systems),
    }
}

#[derive(Debug, Clone)]
pub struct TradeoffConfig {
    pub alphabet: Alphabet,
    pub source: SizeMeasure,
    pub target: SizeMeasure,
    pub mode: Mode,
    pub strategy: Strategy,
    pub prune_iso: bool,
    pub ceiling: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub promise_check_length: usize,
}

impl TradeoffConfig {
    pub fn new(alphabet: Alphabet, source: SystemId, target: SystemId) -> Self {
        TradeoffConfig {
            alphabet,
            source: SizeMeasure::default_for(source),
            target: SizeMeasure::default_for(target),
            mode: Mode::Exhaustive,
            strategy: Strategy::Schema,
            prune_iso: false,
            ceiling: DEFAULT_CEILING,
            jobs: None,
            promise_check_length: DEFAULT_PROMISE_CHECK_LENGTH,
        }
    }

    fn check_ceiling(&self, measure: SizeMeasure, n: usize) -> Result<()> {
        let estimate = enumeration_estimate(measure, &self.alphabet, n)?;
        if estimate > self.ceiling as u128 {
            return Err(Error::CeilingExceeded {
                estimate,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(j) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffRow {
    pub n: usize,
    pub f_of_n: usize,
    /// First size-`n` source attaining `f_of_n`; `None` if no source attains it.
    pub witness_source: Option<Descriptor>,
    /// A minimal equivalent target descriptor for the witness source.
    pub witness_target: Option<Descriptor>,
    /// Sources whose membership in the target family was not established.
    pub excluded_count: u64,
    /// Sources that entered the maximum.
    pub considered: u64,
    /// No exclusions, and every minimum was decided exactly.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffTable {
    pub alphabet: Alphabet,
    pub source: SizeMeasure,
    pub target: SizeMeasure,
    pub mode: Mode,
    pub strategy: Strategy,
    pub prune_iso: bool,
    pub rows: Vec<TradeoffRow>,
}

/// An indexable stream of descriptors of one size. Index order is enumeration order;
/// `get` is `None` for codes removed by isomorphism pruning.
enum Space {
    Nfa(NfaSpace, bool),
    Dfa(DfaSpace, bool),
    List(Vec<Descriptor>),
}

impl Space {
    fn build(measure: SizeMeasure, alphabet: &Alphabet, n: usize, prune: bool) -> Result<Space> {
        Ok(match (measure.system, measure.kind) {
            (SystemId::Nfa, MeasureKind::States) => Space::Nfa(NfaSpace::new(alphabet, n), prune),
            (SystemId::Dfa, _) => Space::Dfa(DfaSpace::new(alphabet, n), prune),
            _ => Space::List(enumerate_by_size(measure, alphabet, n, prune)?),
        })
    }

    fn len(&self) -> u64 {
        match self {
            Space::Nfa(s, _) => s.count() as u64,
            Space::Dfa(s, _) => s.count() as u64,
            Space::List(v) => v.len() as u64,
        }
    }

    fn get(&self, i: u64) -> Option<Descriptor> {
        match self {
            Space::Nfa(s, prune) => (!prune || s.is_canonical(i)).then(|| Descriptor::Nfa(s.decode(i))),
            Space::Dfa(s, prune) => (!prune || s.is_canonical(i)).then(|| Descriptor::Dfa(s.decode(i))),
            Space::List(v) => Some(v[i as usize].clone()),
        }
    }

    /// Canonical minimal DFA of entry `i`.
    fn min_dfa(&self, i: u64) -> Option<Dfa> {
        match self {
            Space::Nfa(s, prune) => (!prune || s.is_canonical(i)).then(|| minimize(&determinize(&s.decode(i)))),
            Space::Dfa(s, prune) => (!prune || s.is_canonical(i)).then(|| minimize(&s.decode(i))),
            Space::List(v) => Some(v[i as usize].to_min_dfa().expect("regular system")),
        }
    }
}

/// A size at which an equivalent target descriptor certainly exists.
fn target_size_bound(target: SizeMeasure, min: &Dfa) -> usize {
    let n = min.state_count();
    match (target.system, target.kind) {
        (SystemId::Nfa, MeasureKind::StatesAndTransitions) => n + n * min.alphabet().len(),
        (SystemId::Nfa | SystemId::Dfa, _) => n,
        _ => nfa_to_right_linear(&min.to_nfa()).size(),
    }
}

/// For each wanted canonical DFA, the least target size with an equivalent descriptor
/// and the first such descriptor in enumeration order.
fn resolve_targets(config: &TradeoffConfig, wanted: HashSet<Dfa>) -> Result<HashMap<Dfa, (usize, Descriptor)>> {
    let target = config.target;
    if !target.system.is_regular() {
        return Err(Error::Unsupported(format!("{} targets cannot be enumerated", target.system)));
    }
    let bound = wanted.iter().map(|d| target_size_bound(target, d)).max().unwrap_or(0);
    let mut remaining = wanted;
    let mut resolved = HashMap::new();
    let mut size = 1;
    while !remaining.is_empty() {
        if size > bound {
            return Err(Error::Consistency(format!(
                "{} languages have no equivalent {} of size ≤ {bound}",
                remaining.len(),
                target.system
            )));
        }
        config.check_ceiling(target, size)?;
        let space = Space::build(target, &config.alphabet, size, config.prune_iso)?;
        let found: HashMap<Dfa, u64> = config.install(|| {
            (0..space.len())
                .into_par_iter()
                .filter_map(|i| space.min_dfa(i).filter(|m| remaining.contains(m)).map(|m| (m, i)))
                .fold(HashMap::new, |mut acc: HashMap<Dfa, u64>, (m, i)| {
                    acc.entry(m).and_modify(|j| *j = (*j).min(i)).or_insert(i);
                    acc
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (m, i) in b {
                        a.entry(m).and_modify(|j| *j = (*j).min(i)).or_insert(i);
                    }
                    a
                })
        })?;
        for (m, i) in found {
            remaining.remove(&m);
            resolved.insert(m, (size, space.get(i).expect("index came from this space")));
        }
        size += 1;
    }
    Ok(resolved)
}

/// Least size of a target descriptor equivalent to `d`, with the first such descriptor,
/// found by enumerating targets by increasing size. Refuses unless `L(d)` is known to
/// lie in the target family.
pub fn min_equivalent_size(d: &Descriptor, config: &TradeoffConfig) -> Result<(usize, Descriptor)> {
    if s2ness(d, config.target.system) != Verdict::True {
        return Err(Error::Precondition(format!(
            "a {} is not known to describe a {} language",
            d.system(),
            config.target.system
        )));
    }
    let min = d.to_min_dfa()?;
    let mut resolved = resolve_targets(config, HashSet::from([min.clone()]))?;
    Ok(resolved.remove(&min).expect("resolved or errored"))
}

/// [`min_equivalent_size`] for many descriptors, sharing one pass over the targets.
pub fn min_equivalent_sizes(list: &[Descriptor], config: &TradeoffConfig) -> Result<Vec<(usize, Descriptor)>> {
    let mut mins = Vec::with_capacity(list.len());
    for d in list {
        if s2ness(d, config.target.system) != Verdict::True {
            return Err(Error::Precondition(format!(
                "a {} is not known to describe a {} language",
                d.system(),
                config.target.system
            )));
        }
        mins.push(d.to_min_dfa()?);
    }
    let resolved = resolve_targets(config, mins.iter().cloned().collect())?;
    Ok(mins.iter().map(|m| resolved[m].clone()).collect())
}

/// State count of the minimal DFA of `d`.
pub fn min_equivalent_size_shortcut(d: &Descriptor) -> Result<usize> {
    Ok(d.to_min_dfa()?.state_count())
}

/// The first DFA in enumeration order that is isomorphic to `min`.
fn first_isomorphic(min: &Dfa) -> Dfa {
    let space = DfaSpace::new(min.alphabet(), min.state_count());
    let code = space.encode(min).expect("minimal DFAs start in state 0");
    space.decode(space.canonical_code(code))
}

/// Least size of a target descriptor equivalent to the promised grammar `g`. Inclusion
/// of `L(g)` in a candidate is decided exactly; the converse is checked on words up to
/// `config.promise_check_length`, so the result is exact only if the promise holds and
/// no shorter candidate differs only on longer words.
fn min_equivalent_size_promised(g: &crate::grammars::Cfg, config: &TradeoffConfig) -> Result<(usize, Descriptor)> {
    let words = words_up_to(&config.alphabet, config.promise_check_length);
    let in_g: Vec<bool> = words.iter().map(|w| cfg_member(g, w)).collect::<Result<_>>()?;
    let mut size = 1;
    loop {
        config.check_ceiling(config.target, size)?;
        let space = Space::build(config.target, &config.alphabet, size, config.prune_iso)?;
        let mut tried: HashSet<Dfa> = HashSet::new();
        for i in 0..space.len() {
            let Some(m) = space.min_dfa(i) else { continue };
            if !tried.insert(m.clone()) {
                continue;
            }
            let agrees = words
                .iter()
                .zip(&in_g)
                .all(|(w, &x)| m.accepts(w).expect("same alphabet") == x);
            if agrees && cfg_empty(&bar_hillel(g, &m.complement())?) {
                return Ok((size, space.get(i).expect("index came from this space")));
            }
        }
        size += 1;
    }
}

struct Candidate {
    index: usize,
    value: usize,
    target: Descriptor,
}

/// Keeps the larger value, and the earlier index on ties.
fn better(a: Option<Candidate>, b: Candidate) -> Option<Candidate> {
    match a {
        Some(a) if (a.value, std::cmp::Reverse(a.index)) >= (b.value, std::cmp::Reverse(b.index)) => Some(a),
        _ => Some(b),
    }
}

/// One row of the table: `f(n)` with its witnesses.
pub fn tradeoff_value(config: &TradeoffConfig, n: usize) -> Result<TradeoffRow> {
    if config.strategy == Strategy::Shortcut && config.target.system != SystemId::Dfa {
        return Err(Error::Unsupported("the minimization shortcut needs a DFA target".into()));
    }
    let (space, promised) = match &config.mode {
        Mode::Exhaustive => {
            config.check_ceiling(config.source, n)?;
            (Space::build(config.source, &config.alphabet, n, config.prune_iso)?, false)
        }
        Mode::Promise(list) => {
            let mut of_size = Vec::new();
            for d in list {
                if d.system() != config.source.system {
                    return Err(Error::Invalid(format!(
                        "promised {} where the source system is {}",
                        d.system(),
                        config.source.system
                    )));
                }
                if config.source.size(d)? == n {
                    of_size.push(d.clone());
                }
            }
            (Space::List(of_size), true)
        }
    };

    let target = config.target.system;
    let mut excluded = 0u64;
    let mut considered = 0u64;
    let mut exact = true;
    let mut best: Option<Candidate> = None;

    if !config.source.system.is_regular() {
        // Promised grammars: no canonical form to batch on.
        for i in 0..space.len() {
            let d = space.get(i).expect("lists are not pruned");
            let (verdict, _) = s2ness_with_promise(&d, target, promised);
            if verdict != Verdict::True {
                excluded += 1;
                continue;
            }
            let Descriptor::Cfg(g) = &d else { unreachable!("only CFG sources are not regular") };
            let (value, witness) = if target.is_regular() {
                exact = false;
                min_equivalent_size_promised(g, config)?
            } else {
                return Err(Error::Unsupported(format!("{target} targets cannot be enumerated")));
            };
            considered += 1;
            best = better(best, Candidate { index: i as usize, value, target: witness });
        }
    } else {
        let len = space.len();
        let mins: Vec<(u64, Dfa)> = config.install(|| {
            (0..len).into_par_iter().filter_map(|i| space.min_dfa(i).map(|m| (i, m))).collect()
        })?;
        considered = mins.len() as u64;
        let lookup: HashMap<Dfa, (usize, Descriptor)> = match config.strategy {
            Strategy::Schema => resolve_targets(config, mins.iter().map(|(_, m)| m.clone()).collect())?,
            Strategy::Shortcut => HashMap::new(),
        };
        for (i, m) in mins {
            let (value, witness) = match config.strategy {
                Strategy::Schema => lookup[&m].clone(),
                Strategy::Shortcut => (m.state_count(), Descriptor::Dfa(m)),
            };
            best = better(best, Candidate { index: i as usize, value, target: witness });
        }
        if let (Strategy::Shortcut, Some(b)) = (config.strategy, best.as_mut()) {
            if let Descriptor::Dfa(m) = &b.target {
                b.target = Descriptor::Dfa(first_isomorphic(m));
            }
        }
    }

    let f_of_n = best.as_ref().map_or(n, |b| b.value.max(n));
    let (witness_source, witness_target) = match best {
        Some(b) if b.value == f_of_n => (space.get(b.index as u64), Some(b.target)),
        _ => (None, None),
    };
    if let (Some(s), Some(t)) = (&witness_source, &witness_target) {
        if s.system().is_regular() && crate::systems::equivalent(s, t)? != Verdict::True {
            return Err(Error::Consistency(format!("row {n}: witness target is not equivalent to its source")));
        }
    }
    if config.source.system == SystemId::Nfa
        && config.source.kind == MeasureKind::States
        && target == SystemId::Dfa
        && n < 64
        && f_of_n as u128 > (1u128 << n) + 1
    {
        return Err(Error::Consistency(format!("row {n}: f(n) = {f_of_n} exceeds 2^n + 1")));
    }
    Ok(TradeoffRow {
        n,
        f_of_n,
        witness_source,
        witness_target,
        excluded_count: excluded,
        considered,
        exact: exact && excluded == 0,
    })
}

pub fn tradeoff_table(config: &TradeoffConfig, sizes: RangeInclusive<usize>) -> Result<TradeoffTable> {
    let rows = sizes.map(|n| tradeoff_value(config, n)).collect::<Result<_>>()?;
    Ok(TradeoffTable {
        alphabet: config.alphabet.clone(),
        source: config.source,
        target: config.target,
        mode: config.mode.clone(),
        strategy: config.strategy,
        prune_iso: config.prune_iso,
        rows,
    })
}

/// File name of a witness sidecar, e.g. `n2-source.nfa`.
pub fn witness_file_name(n: usize, role: &str, d: &Descriptor) -> String {
    format!("n{n}-{role}.{}", d.system().tag())
}

impl TradeoffTable {
    /// Witness sidecar files as `(file name, contents)`.
    pub fn witness_files(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (role, d) in [("source", &row.witness_source), ("target", &row.witness_target)] {
                if let Some(d) = d {
                    out.push((witness_file_name(row.n, role, d), d.to_text()));
                }
            }
        }
        out
    }

    fn file_ref(dir: &str, n: usize, role: &str, d: &Option<Descriptor>) -> String {
        match d {
            Some(d) if dir.is_empty() => witness_file_name(n, role, d),
            Some(d) => format!("{}/{}", dir.trim_end_matches('/'), witness_file_name(n, role, d)),
            None => String::new(),
        }
    }

    /// CSV with columns `n,f_n,witness_source_file,witness_target_file,excluded`; file
    /// names are prefixed with `dir`.
    pub fn to_csv(&self, dir: &str) -> String {
        let mut out = String::from("n,f_n,witness_source_file,witness_target_file,excluded\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.n,
                r.f_of_n,
                Self::file_ref(dir, r.n, "source", &r.witness_source),
                Self::file_ref(dir, r.n, "target", &r.witness_target),
                r.excluded_count
            );
        }
        out
    }

    pub fn to_json(&self, dir: &str) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "f_n": r.f_of_n,
                    "witness_source_file": Self::file_ref(dir, r.n, "source", &r.witness_source),
                    "witness_target_file": Self::file_ref(dir, r.n, "target", &r.witness_target),
                    "excluded": r.excluded_count,
                    "considered": r.considered,
                    "exact": r.exact,
                })
            })
            .collect();
        json!({
            "source": self.source.system,
            "target": self.target.system,
            "source_measure": self.source.name(),
            "target_measure": self.target.name(),
            "alphabet": self.alphabet.to_string(),
            "mode": self.mode.name(),
            "strategy": self.strategy,
            "prune_iso": self.prune_iso,
            "rows": rows,
        })
    }
}
