//! One interface over the concrete descriptional systems: size measures, enumeration
//! by size, decision questions, closure operations and the fixed capability registry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::{
    self, determinize, dfa_count, minimize, nfa_count, Dfa, Morphism, Nfa, Side,
};
use crate::error::{Error, Result};
use crate::grammars::{self, Cfg, GSym, Production};
use crate::kernel::{Alphabet, Verdict, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SystemId {
    Nfa,
    Dfa,
    Cfg,
    RightLinearCfg,
}

impl SystemId {
    pub const ALL: [SystemId; 4] = [SystemId::Nfa, SystemId::Dfa, SystemId::Cfg, SystemId::RightLinearCfg];

    /// File extension and text header (without `#`).
    pub fn tag(self) -> &'static str {
        match self {
            SystemId::Nfa => "nfa",
            SystemId::Dfa => "dfa",
            SystemId::Cfg => "cfg",
            SystemId::RightLinearCfg => "rlg",
        }
    }

    pub fn from_tag(tag: &str) -> Option<SystemId> {
        SystemId::ALL.into_iter().find(|s| s.tag() == tag)
    }

    /// The language family is exactly the regular languages.
    pub fn is_regular(self) -> bool {
        !matches!(self, SystemId::Cfg)
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemId::Nfa => "NFA",
            SystemId::Dfa => "DFA",
            SystemId::Cfg => "CFG",
            SystemId::RightLinearCfg => "RIGHT_LINEAR_CFG",
        })
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nfa" => Ok(SystemId::Nfa),
            "dfa" => Ok(SystemId::Dfa),
            "cfg" => Ok(SystemId::Cfg),
            "rlg" | "right-linear" | "right_linear_cfg" => Ok(SystemId::RightLinearCfg),
            _ => Err(Error::Invalid(format!("unknown system `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Nfa(Nfa),
    Dfa(Dfa),
    Cfg(Cfg),
    /// A grammar whose productions are all right-linear.
    RightLinear(Cfg),
}

impl Descriptor {
    pub fn right_linear(cfg: Cfg) -> Result<Self> {
        if cfg.is_right_linear() {
            Ok(Descriptor::RightLinear(cfg))
        } else {
            Err(Error::Invalid("grammar is not right-linear".into()))
        }
    }

    pub fn system(&self) -> SystemId {
        match self {
            Descriptor::Nfa(_) => SystemId::Nfa,
            Descriptor::Dfa(_) => SystemId::Dfa,
            Descriptor::Cfg(_) => SystemId::Cfg,
            Descriptor::RightLinear(_) => SystemId::RightLinearCfg,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Descriptor::Nfa(m) => m.alphabet(),
            Descriptor::Dfa(m) => m.alphabet(),
            Descriptor::Cfg(g) | Descriptor::RightLinear(g) => g.terminals(),
        }
    }

    /// Parses a descriptor file. A first-line header (`#nfa`, `#dfa`, `#cfg`, `#rlg`)
    /// selects the parser; otherwise `hint` (usually from the file extension) must.
    pub fn parse(text: &str, hint: Option<SystemId>) -> Result<Self> {
        let header = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .and_then(|l| l.strip_prefix('#'))
            .and_then(|h| SystemId::from_tag(h.trim()));
        let system = header.or(hint).ok_or_else(|| {
            Error::parse(1, "cannot tell the descriptor type: add a `#nfa`, `#dfa`, `#cfg` or `#rlg` header")
        })?;
        Ok(match system {
            SystemId::Nfa => Descriptor::Nfa(Nfa::parse(text)?),
            SystemId::Dfa => Descriptor::Dfa(Dfa::parse(text)?),
            SystemId::Cfg => Descriptor::Cfg(Cfg::parse(text)?),
            SystemId::RightLinearCfg => Descriptor::right_linear(Cfg::parse(text)?)?,
        })
    }

    pub fn to_text(&self) -> String {
        match self {
            Descriptor::Nfa(m) => m.to_text(),
            Descriptor::Dfa(m) => m.to_text(),
            Descriptor::Cfg(g) => g.to_text(),
            Descriptor::RightLinear(g) => g.to_text_with_header("#rlg"),
        }
    }

    /// An equivalent NFA, for the regular systems.
    pub fn to_nfa(&self) -> Result<Nfa> {
        match self {
            Descriptor::Nfa(m) => Ok(m.clone()),
            Descriptor::Dfa(m) => Ok(m.to_nfa()),
            Descriptor::RightLinear(g) => grammars::right_linear_to_nfa(g),
            Descriptor::Cfg(_) => Err(Error::Unsupported("no conversion from CFG to NFA".into())),
        }
    }

    /// The grammar view; regular systems go through the right-linear conversion.
    pub fn to_cfg(&self) -> Cfg {
        match self {
            Descriptor::Cfg(g) | Descriptor::RightLinear(g) => g.clone(),
            Descriptor::Nfa(m) => grammars::nfa_to_right_linear(m),
            Descriptor::Dfa(m) => grammars::nfa_to_right_linear(&m.to_nfa()),
        }
    }

    /// The canonical minimal DFA, for the regular systems.
    pub fn to_min_dfa(&self) -> Result<Dfa> {
        match self {
            Descriptor::Dfa(m) => Ok(minimize(m)),
            _ => Ok(minimize(&determinize(&self.to_nfa()?))),
        }
    }

    /// Converts a regular-language NFA back into `system`.
    fn from_nfa(system: SystemId, nfa: Nfa) -> Result<Descriptor> {
        Ok(match system {
            SystemId::Nfa => Descriptor::Nfa(nfa),
            SystemId::Dfa => Descriptor::Dfa(minimize(&determinize(&nfa))),
            SystemId::RightLinearCfg => Descriptor::RightLinear(grammars::nfa_to_right_linear(&nfa)),
            SystemId::Cfg => Descriptor::Cfg(grammars::nfa_to_right_linear(&nfa)),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    /// Number of states.
    States,
    /// Number of states plus number of transitions.
    StatesAndTransitions,
    /// `Σ (1 + |body|)` over the productions.
    ProductionSymbols,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::States => "states",
            MeasureKind::StatesAndTransitions => "states-and-transitions",
            MeasureKind::ProductionSymbols => "production-symbols",
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [MeasureKind::States, MeasureKind::StatesAndTransitions, MeasureKind::ProductionSymbols]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown measure `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SizeMeasure {
    pub system: SystemId,
    pub kind: MeasureKind,
}

impl SizeMeasure {
    pub fn new(system: SystemId, kind: MeasureKind) -> Result<Self> {
        let ok = match system {
            SystemId::Nfa => matches!(kind, MeasureKind::States | MeasureKind::StatesAndTransitions),
            SystemId::Dfa => kind == MeasureKind::States,
            SystemId::Cfg | SystemId::RightLinearCfg => kind == MeasureKind::ProductionSymbols,
        };
        if ok {
            Ok(SizeMeasure { system, kind })
        } else {
            Err(Error::Invalid(format!("measure `{}` is not defined for {system}", kind.name())))
        }
    }

    /// States for automata, production symbols for grammars.
    pub fn default_for(system: SystemId) -> Self {
        let kind = match system {
            SystemId::Nfa | SystemId::Dfa => MeasureKind::States,
            SystemId::Cfg | SystemId::RightLinearCfg => MeasureKind::ProductionSymbols,
        };
        SizeMeasure { system, kind }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn size(&self, d: &Descriptor) -> Result<usize> {
        if d.system() != self.system {
            return Err(Error::Invalid(format!("measure for {} applied to a {}", self.system, d.system())));
        }
        Ok(match (d, self.kind) {
            (Descriptor::Nfa(m), MeasureKind::States) => m.state_count(),
            (Descriptor::Nfa(m), MeasureKind::StatesAndTransitions) => m.state_count() + m.transitions().len(),
            (Descriptor::Dfa(m), _) => m.state_count(),
            (Descriptor::Cfg(g) | Descriptor::RightLinear(g), _) => g.size(),
            _ => unreachable!("checked in SizeMeasure::new"),
        })
    }
}

/// Upper bound on the number of descriptors `enumerate_by_size` walks through for `n`.
pub fn enumeration_estimate(measure: SizeMeasure, alphabet: &Alphabet, n: usize) -> Result<u128> {
    let k = alphabet.len();
    match (measure.system, measure.kind) {
        (SystemId::Nfa, MeasureKind::States) => Ok(nfa_count(n, k)),
        (SystemId::Nfa, _) => Ok((1..=n).fold(0u128, |acc, s| acc.saturating_add(nfa_count(s, k)))),
        (SystemId::Dfa, _) => Ok(dfa_count(n, k)),
        (SystemId::RightLinearCfg, _) => Ok((1..=n).fold(0u128, |acc, m| {
            let c = rl_candidates(m, k, n).len() as u128;
            (0..=n as u128).fold(acc, |acc, j| acc.saturating_add(binomial(c, j)))
        })),
        (SystemId::Cfg, _) => Err(unsupported_cfg_enumeration()),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn unsupported_cfg_enumeration() -> Error {
    Error::Unsupported("enumeration by size is not supported for general CFGs".into())
}

/// All canonical descriptors of size exactly `n`, in enumeration order. Automata have
/// the single initial state 0; `prune` keeps one representative per isomorphism class.
/// Right-linear grammars use nonterminals `S, N1, N2, …`, all reachable from `S`.
pub fn enumerate_by_size(measure: SizeMeasure, alphabet: &Alphabet, n: usize, prune: bool) -> Result<Vec<Descriptor>> {
    if n == 0 {
        return Err(Error::Invalid("sizes start at 1".into()));
    }
    Ok(match (measure.system, measure.kind) {
        (SystemId::Nfa, MeasureKind::States) => automata::enumerate_nfas(n, alphabet, prune).map(Descriptor::Nfa).collect(),
        (SystemId::Nfa, _) => (1..=n)
            .flat_map(|s| automata::enumerate_nfas(s, alphabet, prune))
            .filter(|m| m.state_count() + m.transitions().len() == n)
            .map(Descriptor::Nfa)
            .collect(),
        (SystemId::Dfa, _) => automata::enumerate_dfas(n, alphabet, prune).map(Descriptor::Dfa).collect(),
        (SystemId::RightLinearCfg, _) => enumerate_right_linear(alphabet, n),
        (SystemId::Cfg, _) => return Err(unsupported_cfg_enumeration()),
    })
}

/// Right-linear productions with heads below `m` and size at most `n`.
fn rl_candidates(m: usize, k: usize, n: usize) -> Vec<Production> {
    let mut bodies: Vec<Vec<GSym>> = Vec::new();
    let mut words: Vec<Vec<GSym>> = vec![Vec::new()];
    for len in 0..n {
        for w in &words {
            bodies.push(w.clone());
            if len + 1 < n {
                for b in 0..m {
                    let mut body = w.clone();
                    body.push(GSym::N(b));
                    bodies.push(body);
                }
            }
        }
        words = words
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w = w.clone();
                    w.push(GSym::T(a));
                    w
                })
            })
            .collect();
    }
    (0..m)
        .flat_map(|h| bodies.iter().map(move |b| Production::new(h, b.clone())))
        .collect()
}

fn enumerate_right_linear(alphabet: &Alphabet, n: usize) -> Vec<Descriptor> {
    fn walk(
        cands: &[Production],
        from: usize,
        left: usize,
        chosen: &mut Vec<Production>,
        emit: &mut dyn FnMut(&[Production]),
    ) {
        if left == 0 {
            emit(chosen);
            return;
        }
        for i in from..cands.len() {
            let s = 1 + cands[i].body.len();
            if s <= left {
                chosen.push(cands[i].clone());
                walk(cands, i + 1, left - s, chosen, emit);
                chosen.pop();
            }
        }
    }

    let mut out = Vec::new();
    for m in 1..=n {
        let names: Vec<String> = (0..m).map(|i| if i == 0 { "S".to_string() } else { format!("N{i}") }).collect();
        let cands = rl_candidates(m, alphabet.len(), n);
        walk(&cands, 0, n, &mut Vec::new(), &mut |ps| {
            let mut seen = vec![false; m];
            seen[0] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for p in ps {
                    if let (true, Some(&GSym::N(b))) = (seen[p.head], p.body.last()) {
                        if !seen[b] {
                            seen[b] = true;
                            changed = true;
                        }
                    }
                }
            }
            if seen.iter().all(|&x| x) {
                let g = Cfg::new(names.clone(), alphabet.clone(), ps.to_vec()).expect("candidates are valid");
                out.push(Descriptor::RightLinear(g));
            }
        });
    }
    out
}

/// Fixed facts about each system; not configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SystemCapabilities {
    pub emptiness_decidable: bool,
    pub finiteness_decidable: bool,
    pub word_decidable: bool,
    pub equivalence_decidable: bool,
    pub is_effective_trio: bool,
    pub is_effective_full_trio: bool,
    /// The inverse-morphism closure has a construction implemented here.
    pub inverse_morphism_constructive: bool,
    /// `enumerate_by_size` supports the system.
    pub enumerable_by_size: bool,
}

impl SystemCapabilities {
    pub fn of(system: SystemId) -> Self {
        let regular = SystemCapabilities {
            emptiness_decidable: true,
            finiteness_decidable: true,
            word_decidable: true,
            equivalence_decidable: true,
            is_effective_trio: true,
            is_effective_full_trio: true,
            inverse_morphism_constructive: true,
            enumerable_by_size: true,
        };
        match system {
            SystemId::Cfg => SystemCapabilities {
                equivalence_decidable: false,
                inverse_morphism_constructive: false,
                enumerable_by_size: false,
                ..regular
            },
            _ => regular,
        }
    }

    /// Looks up a flag by its field name.
    pub fn flag(&self, name: &str) -> Option<bool> {
        Some(match name {
            "emptiness_decidable" => self.emptiness_decidable,
            "finiteness_decidable" => self.finiteness_decidable,
            "word_decidable" => self.word_decidable,
            "equivalence_decidable" => self.equivalence_decidable,
            "is_effective_trio" => self.is_effective_trio,
            "is_effective_full_trio" => self.is_effective_full_trio,
            "inverse_morphism_constructive" => self.inverse_morphism_constructive,
            "enumerable_by_size" => self.enumerable_by_size,
            _ => return None,
        })
    }
}

/// Errors unless `system` declares `flag`.
pub fn require_capability(system: SystemId, operation: &str, flag: &str) -> Result<()> {
    require(&SystemCapabilities::of(system), system, operation, flag)
}

fn require(caps: &SystemCapabilities, system: SystemId, operation: &str, flag: &str) -> Result<()> {
    if caps.flag(flag) == Some(true) {
        Ok(())
    } else {
        Err(Error::Capability {
            system: system.to_string(),
            operation: operation.to_string(),
            flag: flag.to_string(),
        })
    }
}

/// Superword closure, staying in the descriptor's system.
pub fn up(d: &Descriptor) -> Result<Descriptor> {
    up_with(&SystemCapabilities::of(d.system()), d)
}

/// Subword closure, staying in the descriptor's system.
pub fn down(d: &Descriptor) -> Result<Descriptor> {
    down_with(&SystemCapabilities::of(d.system()), d)
}

pub(crate) fn up_with(caps: &SystemCapabilities, d: &Descriptor) -> Result<Descriptor> {
    require(caps, d.system(), "up", "is_effective_trio")?;
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::cfg_up(g))),
        _ => Descriptor::from_nfa(d.system(), automata::up_closure(&d.to_nfa()?)),
    }
}

pub(crate) fn down_with(caps: &SystemCapabilities, d: &Descriptor) -> Result<Descriptor> {
    require(caps, d.system(), "down", "is_effective_full_trio")?;
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::cfg_down(g))),
        _ => Descriptor::from_nfa(d.system(), automata::down_closure(&d.to_nfa()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Question {
    Empty,
    Finite,
    Member(Word),
}

/// Decides `q` for `d`. Every supported system decides all three questions, so the
/// verdict is always definite; an alphabet mismatch in `Member` is an error.
pub fn decide(d: &Descriptor, q: &Question) -> Result<Verdict> {
    let answer = match (d, q) {
        (Descriptor::Cfg(g) | Descriptor::RightLinear(g), Question::Empty) => grammars::cfg_empty(g),
        (Descriptor::Cfg(g) | Descriptor::RightLinear(g), Question::Finite) => grammars::cfg_finite(g),
        (Descriptor::Cfg(g) | Descriptor::RightLinear(g), Question::Member(w)) => grammars::cfg_member(g, w)?,
        (Descriptor::Dfa(m), Question::Member(w)) => m.accepts(w)?,
        (_, Question::Empty) => automata::nfa_empty(&d.to_nfa()?),
        (_, Question::Finite) => automata::nfa_finite(&d.to_nfa()?),
        (_, Question::Member(w)) => automata::nfa_member(&d.to_nfa()?, w)?,
    };
    Ok(Verdict::from_bool(answer))
}

pub fn member(d: &Descriptor, w: &Word) -> Result<bool> {
    Ok(decide(d, &Question::Member(w.clone()))?.as_bool().expect("membership is decidable"))
}

pub fn is_empty(d: &Descriptor) -> bool {
    match d {
        Descriptor::Cfg(g) | Descriptor::RightLinear(g) => grammars::cfg_empty(g),
        _ => automata::nfa_empty(&d.to_nfa().expect("regular system")),
    }
}

pub fn is_finite(d: &Descriptor) -> bool {
    match d {
        Descriptor::Cfg(g) | Descriptor::RightLinear(g) => grammars::cfg_finite(g),
        _ => automata::nfa_finite(&d.to_nfa().expect("regular system")),
    }
}

/// The length-lexicographically least word of `L(d)`.
pub fn shortest(d: &Descriptor) -> Option<Word> {
    match d {
        Descriptor::Cfg(g) | Descriptor::RightLinear(g) => grammars::shortest_generated(g),
        _ => automata::shortest_accepted(&d.to_nfa().expect("regular system")),
    }
}

/// Language equivalence. Exact for two regular descriptors; Unknown when a general CFG
/// is involved.
pub fn equivalent(a: &Descriptor, b: &Descriptor) -> Result<Verdict> {
    if !a.system().is_regular() || !b.system().is_regular() {
        return Ok(Verdict::Unknown { budget_spent: 0 });
    }
    Ok(Verdict::from_bool(automata::dfa_equiv(&a.to_min_dfa()?, &b.to_min_dfa()?)?))
}

/// `L(d) ∩ L(regular)`.
pub fn intersect_regular(d: &Descriptor, regular: &Dfa) -> Result<Descriptor> {
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::bar_hillel(g, regular)?)),
        _ => Descriptor::from_nfa(d.system(), automata::product_intersect(&d.to_nfa()?, regular)?),
    }
}

pub fn concat_regular(d: &Descriptor, regular: &Nfa, side: Side) -> Result<Descriptor> {
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::cfg_concat_regular(g, regular, side)?)),
        _ => Descriptor::from_nfa(d.system(), automata::concat_regular(&d.to_nfa()?, regular, side)?),
    }
}

/// Union of two descriptors of the same system.
pub fn union(a: &Descriptor, b: &Descriptor) -> Result<Descriptor> {
    if a.system() != b.system() {
        return Err(Error::Invalid(format!("cannot unite a {} with a {}", a.system(), b.system())));
    }
    match (a, b) {
        (Descriptor::Cfg(x), Descriptor::Cfg(y)) => Ok(Descriptor::Cfg(grammars::cfg_union(x, y)?)),
        _ => Descriptor::from_nfa(a.system(), automata::union(&a.to_nfa()?, &b.to_nfa()?)?),
    }
}

pub fn morphism(d: &Descriptor, h: &Morphism) -> Result<Descriptor> {
    let caps = SystemCapabilities::of(d.system());
    if h.is_erasing() {
        require(&caps, d.system(), "morphism", "is_effective_full_trio")?;
    } else {
        require(&caps, d.system(), "morphism", "is_effective_trio")?;
    }
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::cfg_morphism(g, h)?)),
        _ => Descriptor::from_nfa(d.system(), automata::morphism(&d.to_nfa()?, h)?),
    }
}

/// `h⁻¹(L(d))`. Grammars are refused: no construction is implemented on that side.
pub fn inverse_morphism(d: &Descriptor, h: &Morphism) -> Result<Descriptor> {
    require(&SystemCapabilities::of(d.system()), d.system(), "inverse-morphism", "inverse_morphism_constructive")?;
    Descriptor::from_nfa(d.system(), automata::inverse_morphism(&d.to_nfa()?, h)?)
}

/// Regular substitution with `images[a]` the image of the `a`-th symbol.
pub fn substitute(d: &Descriptor, images: &[Nfa]) -> Result<Descriptor> {
    require(&SystemCapabilities::of(d.system()), d.system(), "substitute", "is_effective_full_trio")?;
    match d {
        Descriptor::Cfg(g) => Ok(Descriptor::Cfg(grammars::regular_substitution_cfg(g, images)?)),
        _ => Descriptor::from_nfa(d.system(), automata::regular_substitution(&d.to_nfa()?, images)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Down,
    Up,
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "down" => Ok(SchemeKind::Down),
            "up" => Ok(SchemeKind::Up),
            _ => Err(Error::Invalid(format!("unknown scheme `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionItem {
    pub condition: String,
    pub status: CheckStatus,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionReport {
    pub source: SystemId,
    pub target: SystemId,
    pub scheme: SchemeKind,
    pub items: Vec<PreconditionItem>,
    pub note: String,
}

impl PreconditionReport {
    /// Every mechanical item holds.
    pub fn mechanical_ok(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fails)
    }
}

impl fmt::Display for PreconditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} scheme, {} -> {}", self.scheme, self.source, self.target)?;
        for item in &self.items {
            let mark = match item.status {
                CheckStatus::Holds => "ok",
                CheckStatus::Fails => "FAILS",
                CheckStatus::NotApplicable => "n/a",
            };
            writeln!(f, "  [{mark}] {} ({})", item.condition, item.note)?;
        }
        writeln!(f, "  note: {}", self.note)
    }
}

/// Which hypotheses of the down/up proof schemes hold for the pair. The hypotheses about
/// undecidability on the source side cannot hold for any system implemented here and are
/// reported as not applicable.
pub fn check_scheme_preconditions(s1: SystemId, s2: SystemId, scheme: SchemeKind) -> PreconditionReport {
    let c1 = SystemCapabilities::of(s1);
    let c2 = SystemCapabilities::of(s2);
    let flag = |condition: String, holds: bool, note: &str| PreconditionItem {
        condition,
        status: if holds { CheckStatus::Holds } else { CheckStatus::Fails },
        note: note.to_string(),
    };
    let stand_in = |condition: &str, decidable: bool| PreconditionItem {
        condition: condition.to_string(),
        status: CheckStatus::NotApplicable,
        note: if decidable {
            format!("{s1} is a decidable stand-in; the property is inverted for it")
        } else {
            format!("{s1} does not have the property")
        },
    };
    let items = match scheme {
        SchemeKind::Down => vec![
            flag(format!("{s1} is an effective full trio"), c1.is_effective_full_trio, "registry"),
            flag(format!("{s2} is an effective full trio"), c2.is_effective_full_trio, "registry"),
            stand_in("infiniteness not semi-decidable for the source", c1.finiteness_decidable),
            flag(format!("infiniteness decidable for {s2}"), c2.finiteness_decidable, "registry"),
        ],
        SchemeKind::Up => vec![
            flag(format!("{s1} is an effective trio"), c1.is_effective_trio, "registry"),
            flag(format!("{s2} is an effective trio"), c2.is_effective_trio, "registry"),
            flag(format!("word problem decidable for {s1}"), c1.word_decidable, "registry"),
            stand_in("emptiness undecidable for the source", c1.emptiness_decidable),
            flag(format!("emptiness decidable for {s2}"), c2.emptiness_decidable, "registry"),
        ],
    };
    PreconditionReport {
        source: s1,
        target: s2,
        scheme,
        items,
        note: "source systems with the undecidability property (Turing machines, context-sensitive grammars) are \
               outside this workbench; the pipeline runs on decidable stand-ins"
            .into(),
    }
}
