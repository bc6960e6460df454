//! The Down and Up reduction pipelines, run on concrete descriptors.
//!
//! Both pipelines take an `assumed_bound`: a hypothetical bound on the size of the
//! smallest NFA for the closure language. The pipeline is executed as if the bound were
//! valid, every intermediate artifact is recorded, and the final claim is compared with
//! the direct decision. A claim that contradicts the direct decision shows the bound was
//! not valid for this input; the report says so instead of hiding it.

use std::cell::Cell;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automata::{
    longest_accepted_of_finite, nfa_count, nfa_finite, shortest_accepted, Dfa, Label, Nfa, NfaSimulator, NfaSpace,
    Side,
};
use crate::error::{Error, Result};
use crate::grammars::{longest_generated_of_finite, CfgRecognizer};
use crate::kernel::{dovetail, length_lex_words, Alphabet, StepTask, Verdict, Word};
use crate::systems::{
    self, check_scheme_preconditions, require_capability, Descriptor, PreconditionReport, SchemeKind, SizeMeasure,
    SystemId,
};
use crate::tradeoff::DEFAULT_CEILING;

/// Step budget of the dove-tailed membership search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// `L(D)` is finite iff `Down(L(D))` is. Computes the closure, decides its finiteness
/// and checks the answer against the direct decision.
pub fn finiteness_via_down(d: &Descriptor) -> Result<bool> {
    require_capability(d.system(), "finiteness", "finiteness_decidable")?;
    let closed = systems::down(d)?;
    let via = systems::is_finite(&closed);
    let direct = systems::is_finite(d);
    if via != direct {
        return Err(Error::Consistency(format!(
            "finiteness through the down closure is {via}, directly {direct}"
        )));
    }
    Ok(via)
}

/// `Up(L(D)) ∩ A⁺` for the alphabet of `d`.
pub fn up_nonempty(d: &Descriptor) -> Result<Descriptor> {
    systems::intersect_regular(&systems::up(d)?, &Dfa::non_empty(d.alphabet()))
}

/// `L(D)` is empty iff `Up(L(D)) ∩ A⁺` is empty and `λ ∉ L(D)`. Checks the answer
/// against the direct decision.
pub fn emptiness_via_up(d: &Descriptor) -> Result<bool> {
    require_capability(d.system(), "emptiness", "emptiness_decidable")?;
    require_capability(d.system(), "membership", "word_decidable")?;
    let derived = up_nonempty(d)?;
    let via = systems::is_empty(&derived) && !systems::member(d, &Word::empty())?;
    let direct = systems::is_empty(d);
    if via != direct {
        return Err(Error::Consistency(format!(
            "emptiness through the up closure is {via}, directly {direct}"
        )));
    }
    Ok(via)
}

fn a_star(alphabet: &Alphabet) -> Nfa {
    Nfa::new(alphabet.clone(), 1, [(0, Label::Sym(0), 0)], [0], [0]).expect("one-state loop")
}

fn longest_direct(d: &Descriptor) -> Result<usize> {
    match d {
        Descriptor::Cfg(g) | Descriptor::RightLinear(g) => longest_generated_of_finite(g),
        _ => longest_accepted_of_finite(&d.to_nfa()?),
    }
}

/// Longest word of a finite non-empty language, as the largest `k` for which
/// `a*·(L ∩ A^{≥k})` is infinite.
fn longest_via_infiniteness(d: &Descriptor, pad: &Nfa) -> Result<usize> {
    let mut k = 0;
    loop {
        let cut = systems::intersect_regular(d, &Dfa::min_length(d.alphabet(), k))?;
        if systems::is_finite(&systems::concat_regular(&cut, pad, Side::Left)?) {
            return Ok(k - 1);
        }
        k += 1;
    }
}

fn check_finite_nonempty(list: &[Descriptor], alphabet: &Alphabet) -> Result<()> {
    for (i, d) in list.iter().enumerate() {
        alphabet.ensure_same(d.alphabet())?;
        if systems::is_empty(d) {
            return Err(Error::Precondition(format!("descriptor {i} describes the empty language")));
        }
        if !systems::is_finite(d) {
            return Err(Error::Precondition(format!("descriptor {i} describes an infinite language")));
        }
    }
    Ok(())
}

/// Largest word length over the finite, non-empty languages of `list` (0 for an empty
/// list), searched with the padding construction and checked against a direct
/// longest-word computation.
pub fn longest_word_bound_search(list: &[Descriptor], alphabet: &Alphabet) -> Result<usize> {
    check_finite_nonempty(list, alphabet)?;
    let pad = a_star(alphabet);
    let mut best = 0;
    for (i, d) in list.iter().enumerate() {
        let k = longest_via_infiniteness(d, &pad)?;
        let direct = longest_direct(d)?;
        if k != direct {
            return Err(Error::Consistency(format!(
                "descriptor {i}: padding search gives {k}, direct longest word {direct}"
            )));
        }
        best = best.max(k);
    }
    Ok(best)
}

/// The length-lexicographically least word of each language.
pub fn lex_first_words(list: &[Descriptor]) -> Result<Vec<Word>> {
    list.iter()
        .enumerate()
        .map(|(i, d)| {
            systems::shortest(d)
                .ok_or_else(|| Error::Precondition(format!("descriptor {i} describes the empty language")))
        })
        .collect()
}

/// Step-resumable membership runs for one descriptor.
enum Recognizer {
    Nfa(NfaSimulator),
    Cfg(CfgRecognizer),
}

impl Recognizer {
    fn new(d: &Descriptor) -> Result<Self> {
        Ok(match d {
            Descriptor::Cfg(g) | Descriptor::RightLinear(g) => Recognizer::Cfg(CfgRecognizer::new(g)),
            _ => Recognizer::Nfa(NfaSimulator::new(&d.to_nfa()?)),
        })
    }

    fn run<'a>(&'a self, w: &Word) -> Box<dyn StepTask + 'a> {
        match self {
            Recognizer::Nfa(s) => Box::new(s.run(w).expect("word over the alphabet")),
            Recognizer::Cfg(r) => Box::new(r.run(w).expect("word over the alphabet")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Finite,
    Infinite,
    Empty,
    NonEmpty,
    Unknown,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Finite => "finite",
            Claim::Infinite => "infinite",
            Claim::Empty => "empty",
            Claim::NonEmpty => "non-empty",
            Claim::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorText {
    pub system: SystemId,
    pub size: usize,
    pub text: String,
}

impl DescriptorText {
    fn of(d: &Descriptor) -> Self {
        DescriptorText {
            system: d.system(),
            size: SizeMeasure::default_for(d.system()).size(d).expect("default measure"),
            text: d.to_text(),
        }
    }

    fn parse(&self) -> Result<Descriptor> {
        let d = Descriptor::parse(&self.text, Some(self.system))?;
        if d.system() != self.system {
            return Err(Error::Report(format!("descriptor recorded as {} parses as {}", self.system, d.system())));
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeCount {
    pub size: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteEntry {
    pub size: usize,
    pub text: String,
    /// Longest word; `None` for the empty language.
    pub longest: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DovetailRecord {
    /// Inputs are all words of at least this length, in length-lexicographic order.
    pub min_length: usize,
    pub budget: u64,
    pub steps: u64,
    pub tasks_admitted: u64,
    pub hit: Option<Word>,
    pub hit_index: Option<u64>,
    pub outcome: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DownReport {
    pub scheme: SchemeKind,
    pub preconditions: PreconditionReport,
    pub input: DescriptorText,
    pub assumed_bound: usize,
    pub target_system: SystemId,
    pub derived: DescriptorText,
    pub enumerated: Vec<SizeCount>,
    pub finite: Vec<FiniteEntry>,
    pub longest_word_bound: usize,
    pub dovetail: DovetailRecord,
    pub scheme_claim: Claim,
    pub direct: Claim,
    pub verdict: Claim,
    pub assumed_bound_refuted: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonEmptyEntry {
    pub size: usize,
    pub text: String,
    pub first_word: Word,
    pub in_derived: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpReport {
    pub scheme: SchemeKind,
    pub preconditions: PreconditionReport,
    pub input: DescriptorText,
    pub assumed_bound: usize,
    pub target_system: SystemId,
    pub derived: DescriptorText,
    /// The separate `λ ∈ L(D)` query; the derived descriptor excludes λ.
    pub lambda_in_input: bool,
    pub enumerated: Vec<SizeCount>,
    pub nonempty: Vec<NonEmptyEntry>,
    pub scheme_claim: Claim,
    pub direct: Claim,
    pub verdict: Claim,
    pub assumed_bound_refuted: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeReport {
    Down(DownReport),
    Up(UpReport),
}

impl SchemeReport {
    /// Pretty JSON with a trailing newline; the stored form that `check_report` compares.
    pub fn to_json(&self) -> String {
        let text = match self {
            SchemeReport::Down(r) => serde_json::to_string_pretty(r),
            SchemeReport::Up(r) => serde_json::to_string_pretty(r),
        };
        text.expect("reports serialize") + "\n"
    }

    pub fn verdict(&self) -> Claim {
        match self {
            SchemeReport::Down(r) => r.verdict,
            SchemeReport::Up(r) => r.verdict,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub assumed_bound: usize,
    pub budget: u64,
    pub ceiling: u64,
    pub jobs: Option<usize>,
}

impl SchemeConfig {
    pub fn new(assumed_bound: usize) -> Self {
        SchemeConfig {
            assumed_bound,
            budget: DEFAULT_BUDGET,
            ceiling: DEFAULT_CEILING,
            jobs: None,
        }
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(j) => Ok(rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
                .install(f)),
        }
    }
}

/// All NFAs of size `1..=bound` (up to isomorphism) whose entry passes `keep`.
fn enumerate_targets<T: Send>(
    config: &SchemeConfig,
    alphabet: &Alphabet,
    keep: impl Fn(usize, Nfa) -> Option<T> + Sync,
) -> Result<(Vec<SizeCount>, Vec<T>)> {
    if config.assumed_bound == 0 {
        return Err(Error::Invalid("the assumed bound must be at least 1".into()));
    }
    let estimate = (1..=config.assumed_bound).fold(0u128, |acc, n| acc.saturating_add(nfa_count(n, alphabet.len())));
    if estimate > config.ceiling as u128 {
        return Err(Error::CeilingExceeded {
            estimate,
            ceiling: config.ceiling,
        });
    }
    let mut counts = Vec::new();
    let mut kept = Vec::new();
    for n in 1..=config.assumed_bound {
        let space = NfaSpace::new(alphabet, n);
        let end = space.count() as u64;
        let (count, items): (u64, Vec<T>) = config.install(|| {
            let found: Vec<Option<T>> = (0..end)
                .into_par_iter()
                .filter(|&c| space.is_canonical(c))
                .map(|c| keep(n, space.decode(c)))
                .collect();
            (found.len() as u64, found.into_iter().flatten().collect())
        })?;
        counts.push(SizeCount { size: n, count });
        kept.extend(items);
    }
    Ok((counts, kept))
}

fn claim_finite(finite: bool) -> Claim {
    if finite {
        Claim::Finite
    } else {
        Claim::Infinite
    }
}

fn claim_empty(empty: bool) -> Claim {
    if empty {
        Claim::Empty
    } else {
        Claim::NonEmpty
    }
}

/// Runs the dove-tailed membership search of `derived` over all words of length at
/// least `min_length`.
fn dovetail_search(derived: &Descriptor, min_length: usize, budget: u64) -> Result<DovetailRecord> {
    let recognizer = Recognizer::new(derived)?;
    let steps = Cell::new(0u64);
    let admitted = Cell::new(0u64);
    let hit: Cell<Option<u64>> = Cell::new(None);
    let words = length_lex_words(derived.alphabet(), min_length);
    let tasks = words.map(|w| {
        let index = admitted.get();
        admitted.set(index + 1);
        let mut run = recognizer.run(&w);
        let (steps, hit) = (&steps, &hit);
        move || {
            steps.set(steps.get() + 1);
            let r = run.step();
            if r == Some(true) && hit.get().is_none() {
                hit.set(Some(index));
            }
            r
        }
    });
    let outcome = dovetail(tasks, budget);
    let hit_index = hit.get();
    let hit_word = hit_index.map(|i| {
        length_lex_words(derived.alphabet(), min_length)
            .nth(i as usize)
            .expect("admitted index")
    });
    Ok(DovetailRecord {
        min_length,
        budget,
        steps: steps.get(),
        tasks_admitted: admitted.get(),
        hit: hit_word,
        hit_index,
        outcome,
    })
}

/// The Down pipeline: `D' = Down(D)`; the finite-language NFAs `F` of size at most the
/// assumed bound; their longest word length `k`; a dove-tailed search for a word of
/// length `> k` in `L(D')`. A hit means `L(D)` is infinite.
pub fn run_down_scheme_report(d: &Descriptor, config: &SchemeConfig) -> Result<SchemeReport> {
    require_capability(SystemId::Nfa, "finiteness", "finiteness_decidable")?;
    require_capability(d.system(), "membership", "word_decidable")?;
    let alphabet = d.alphabet().clone();
    let derived = systems::down(d)?;
    let pad = a_star(&alphabet);
    let (enumerated, finite) = enumerate_targets(config, &alphabet, |size, nfa| {
        if !nfa_finite(&nfa) {
            return None;
        }
        let text = nfa.to_text();
        let desc = Descriptor::Nfa(nfa);
        let longest = (!systems::is_empty(&desc)).then(|| longest_via_infiniteness(&desc, &pad).expect("finite"));
        Some(FiniteEntry { size, text, longest })
    })?;

    let nonempty: Vec<Descriptor> = finite
        .iter()
        .filter(|e| e.longest.is_some())
        .map(|e| Descriptor::parse(&e.text, Some(SystemId::Nfa)))
        .collect::<Result<_>>()?;
    let k = longest_word_bound_search(&nonempty, &alphabet)?;

    let search = dovetail_search(&derived, k + 1, config.budget)?;
    let scheme_claim = match search.outcome {
        Verdict::True => Claim::Infinite,
        Verdict::False => Claim::Finite,
        Verdict::Unknown { .. } => Claim::Unknown,
    };
    let direct = claim_finite(systems::is_finite(d));
    let refuted = scheme_claim != Claim::Unknown && scheme_claim != direct;
    let mut notes = vec![format!(
        "the assumed bound {} stands in for the unknown size bound on an NFA for Down(L(D))",
        config.assumed_bound
    )];
    if scheme_claim == Claim::Unknown {
        notes.push(format!("no word of length > {k} found within {} steps", config.budget));
    }
    if refuted {
        notes.push(format!(
            "the pipeline claims {scheme_claim} but L(D) is {direct}: no NFA of size ≤ {} describes Down(L(D))",
            config.assumed_bound
        ));
    }
    Ok(SchemeReport::Down(DownReport {
        scheme: SchemeKind::Down,
        preconditions: check_scheme_preconditions(d.system(), SystemId::Nfa, SchemeKind::Down),
        input: DescriptorText::of(d),
        assumed_bound: config.assumed_bound,
        target_system: SystemId::Nfa,
        derived: DescriptorText::of(&derived),
        enumerated,
        finite,
        longest_word_bound: k,
        dovetail: search,
        scheme_claim,
        direct,
        verdict: direct,
        assumed_bound_refuted: refuted,
        notes,
    }))
}

/// The Up pipeline: `D' = Up(D) ∩ A⁺`; the non-empty NFAs of size at most the assumed
/// bound and their least words `w_i`; `L(D)` is non-empty iff some `w_i ∈ L(D')` (or
/// `λ ∈ L(D)`, asked separately).
pub fn run_up_scheme_report(d: &Descriptor, config: &SchemeConfig) -> Result<SchemeReport> {
    require_capability(SystemId::Nfa, "emptiness", "emptiness_decidable")?;
    require_capability(d.system(), "membership", "word_decidable")?;
    let alphabet = d.alphabet().clone();
    let derived = up_nonempty(d)?;
    let lambda = systems::member(d, &Word::empty())?;
    let (enumerated, found) = enumerate_targets(config, &alphabet, |size, nfa| {
        let first = shortest_accepted(&nfa)?;
        Some((size, nfa.to_text(), first))
    })?;
    let recognizer = Recognizer::new(&derived)?;
    let nonempty: Vec<NonEmptyEntry> = found
        .into_iter()
        .map(|(size, text, first_word)| {
            let mut run = recognizer.run(&first_word);
            let in_derived = loop {
                if let Some(r) = run.step() {
                    break r;
                }
            };
            NonEmptyEntry {
                size,
                text,
                first_word,
                in_derived,
            }
        })
        .collect();
    let scheme_claim = claim_empty(!lambda && !nonempty.iter().any(|e| e.in_derived));
    let direct = claim_empty(systems::is_empty(d));
    let refuted = scheme_claim != direct;
    let mut notes = vec![
        format!(
            "the assumed bound {} stands in for the unknown size bound on an NFA for Up(L(D)) ∩ A⁺",
            config.assumed_bound
        ),
        format!("λ ∈ L(D) asked directly: {lambda}"),
    ];
    if refuted {
        notes.push(format!(
            "the pipeline claims {scheme_claim} but L(D) is {direct}: no NFA of size ≤ {} describes Up(L(D)) ∩ A⁺",
            config.assumed_bound
        ));
    }
    Ok(SchemeReport::Up(UpReport {
        scheme: SchemeKind::Up,
        preconditions: check_scheme_preconditions(d.system(), SystemId::Nfa, SchemeKind::Up),
        input: DescriptorText::of(d),
        assumed_bound: config.assumed_bound,
        target_system: SystemId::Nfa,
        derived: DescriptorText::of(&derived),
        lambda_in_input: lambda,
        enumerated,
        nonempty,
        scheme_claim,
        direct,
        verdict: direct,
        assumed_bound_refuted: refuted,
        notes,
    }))
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Report(what()))
    }
}

fn parse_nfa(text: &str, i: usize) -> Result<Nfa> {
    Nfa::parse(text).map_err(|e| Error::Report(format!("entry {i}: {e}")))
}

fn check_down(r: &DownReport) -> Result<()> {
    let input = r.input.parse()?;
    let derived = r.derived.parse()?;
    expect(derived == systems::down(&input)?, || "derived descriptor is not Down(input)".into())?;
    let mut k = 0;
    for (i, e) in r.finite.iter().enumerate() {
        let nfa = parse_nfa(&e.text, i)?;
        expect(e.size == nfa.state_count() && e.size <= r.assumed_bound, || format!("entry {i}: wrong size"))?;
        expect(nfa_finite(&nfa), || format!("entry {i} is not finite"))?;
        let longest = (!crate::automata::nfa_empty(&nfa)).then(|| longest_accepted_of_finite(&nfa)).transpose()?;
        expect(longest == e.longest, || format!("entry {i}: wrong longest word"))?;
        k = k.max(longest.unwrap_or(0));
    }
    expect(k == r.longest_word_bound, || "longest word bound does not match the entries".into())?;
    let dt = &r.dovetail;
    expect(dt.min_length == k + 1, || "dove-tail inputs start at the wrong length".into())?;
    match (&dt.outcome, &dt.hit) {
        (Verdict::True, Some(w)) => {
            expect(w.len() > k, || "dove-tail hit is too short".into())?;
            expect(systems::member(&derived, w)?, || "dove-tail hit is not in L(D')".into())?;
        }
        (Verdict::True, None) => return Err(Error::Report("dove-tail succeeded without a hit".into())),
        (_, Some(_)) => return Err(Error::Report("dove-tail hit recorded without success".into())),
        _ => {}
    }
    let claim = match dt.outcome {
        Verdict::True => Claim::Infinite,
        Verdict::False => Claim::Finite,
        Verdict::Unknown { .. } => Claim::Unknown,
    };
    expect(claim == r.scheme_claim, || "scheme claim does not follow from the dove-tail outcome".into())?;
    let direct = claim_finite(systems::is_finite(&input));
    expect(direct == r.direct && r.verdict == direct, || "verdict does not match the direct decision".into())?;
    let refuted = claim != Claim::Unknown && claim != direct;
    expect(refuted == r.assumed_bound_refuted, || "bound refutation flag is wrong".into())
}

fn check_up(r: &UpReport) -> Result<()> {
    let input = r.input.parse()?;
    let derived = r.derived.parse()?;
    expect(derived == up_nonempty(&input)?, || "derived descriptor is not Up(input) ∩ A⁺".into())?;
    let lambda = systems::member(&input, &Word::empty())?;
    expect(lambda == r.lambda_in_input, || "λ membership is wrong".into())?;
    for (i, e) in r.nonempty.iter().enumerate() {
        let nfa = parse_nfa(&e.text, i)?;
        expect(e.size == nfa.state_count() && e.size <= r.assumed_bound, || format!("entry {i}: wrong size"))?;
        expect(shortest_accepted(&nfa).as_ref() == Some(&e.first_word), || format!("entry {i}: wrong first word"))?;
        expect(systems::member(&derived, &e.first_word)? == e.in_derived, || format!("entry {i}: wrong membership"))?;
    }
    let claim = claim_empty(!lambda && !r.nonempty.iter().any(|e| e.in_derived));
    expect(claim == r.scheme_claim, || "scheme claim does not follow from the memberships".into())?;
    let direct = claim_empty(systems::is_empty(&input));
    expect(direct == r.direct && r.verdict == direct, || "verdict does not match the direct decision".into())?;
    expect((claim != direct) == r.assumed_bound_refuted, || "bound refutation flag is wrong".into())
}

/// Validates a stored report: re-derives every recorded verdict from the serialized
/// intermediates, then regenerates the report from its input and requires the stored
/// text to match byte for byte.
pub fn check_report(text: &str) -> Result<SchemeReport> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
    let report = match value.get("scheme").and_then(|s| s.as_str()) {
        Some("down") => SchemeReport::Down(serde_json::from_value(value).map_err(|e| Error::Report(e.to_string()))?),
        Some("up") => SchemeReport::Up(serde_json::from_value(value).map_err(|e| Error::Report(e.to_string()))?),
        _ => return Err(Error::Report("missing or unknown `scheme`".into())),
    };
    let (input, bound, budget) = match &report {
        SchemeReport::Down(r) => {
            check_down(r)?;
            (r.input.parse()?, r.assumed_bound, r.dovetail.budget)
        }
        SchemeReport::Up(r) => {
            check_up(r)?;
            (r.input.parse()?, r.assumed_bound, DEFAULT_BUDGET)
        }
    };
    let config = SchemeConfig {
        budget,
        ceiling: u64::MAX,
        ..SchemeConfig::new(bound)
    };
    let regenerated = match &report {
        SchemeReport::Down(_) => run_down_scheme_report(&input, &config)?,
        SchemeReport::Up(_) => run_up_scheme_report(&input, &config)?,
    };
    expect(regenerated.to_json() == text, || "stored report differs from the regenerated one".into())?;
    Ok(report)
}
