use super::{Cfg, Cnf, GSym, Production};
use crate::error::{Error, Result};
use crate::kernel::graph::scc_ids;
use crate::kernel::Word;

/// Nonterminals that are productive and reachable from `start` through productions
/// whose symbols are all productive.
pub(crate) fn trim_mask(nts: usize, rules: &[(usize, Vec<GSym>)], start: usize) -> Vec<bool> {
    let productive = productive_mask(nts, rules.iter().map(|(h, b)| (*h, b.as_slice())));
    let mut reach = vec![false; nts];
    if !productive[start] {
        return reach;
    }
    reach[start] = true;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for (head, body) in rules {
            if *head != a || !body.iter().all(|s| matches!(s, GSym::T(_)) || matches!(s, GSym::N(n) if productive[*n])) {
                continue;
            }
            for s in body {
                if let GSym::N(n) = *s {
                    if !reach[n] {
                        reach[n] = true;
                        stack.push(n);
                    }
                }
            }
        }
    }
    reach
}

fn productive_mask<'a>(nts: usize, rules: impl Iterator<Item = (usize, &'a [GSym])> + Clone) -> Vec<bool> {
    let mut productive = vec![false; nts];
    loop {
        let mut changed = false;
        for (head, body) in rules.clone() {
            if !productive[head] && body.iter().all(|s| matches!(s, GSym::T(_)) || matches!(s, GSym::N(n) if productive[*n])) {
                productive[head] = true;
                changed = true;
            }
        }
        if !changed {
            return productive;
        }
    }
}

/// Removes unproductive and unreachable nonterminals (the start symbol always stays).
pub fn cfg_trim(cfg: &Cfg) -> Cfg {
    let rules: Vec<(usize, Vec<GSym>)> = cfg.productions().iter().map(|p| (p.head, p.body.clone())).collect();
    let live = trim_mask(cfg.nonterminals().len(), &rules, 0);
    let mut index = vec![usize::MAX; live.len()];
    let mut names = Vec::new();
    for (i, name) in cfg.nonterminals().iter().enumerate() {
        if live[i] || i == 0 {
            index[i] = names.len();
            names.push(name.clone());
        }
    }
    let productions = cfg
        .productions()
        .iter()
        .filter(|p| live[p.head] && p.body.iter().all(|s| !matches!(s, GSym::N(n) if !live[*n])))
        .map(|p| Production {
            head: index[p.head],
            body: p
                .body
                .iter()
                .map(|s| match *s {
                    GSym::N(n) => GSym::N(index[n]),
                    t => t,
                })
                .collect(),
        })
        .collect();
    Cfg::new(names, cfg.terminals().clone(), productions).expect("trimmed grammar is valid")
}

/// Reusable CYK recognizer.
pub struct CfgRecognizer {
    cfg: Cfg,
    cnf: Cnf,
}

impl CfgRecognizer {
    pub fn new(cfg: &Cfg) -> Self {
        CfgRecognizer {
            cnf: Cnf::from_cfg(cfg),
            cfg: cfg.clone(),
        }
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.cnf.accepts(self.cfg.terminals().encode(word)?))
    }

    /// A step-resumable membership run (one step per CYK span length).
    pub fn run(&self, word: &Word) -> Result<super::CykRun<'_>> {
        Ok(self.cnf.run(self.cfg.terminals().encode(word)?))
    }
}

/// Membership via Chomsky normal form and CYK.
pub fn cfg_member(cfg: &Cfg, word: &Word) -> Result<bool> {
    CfgRecognizer::new(cfg).accepts(word)
}

/// True iff the start symbol is unproductive.
pub fn cfg_empty(cfg: &Cfg) -> bool {
    let productive = productive_mask(
        cfg.nonterminals().len(),
        cfg.productions().iter().map(|p| (p.head, p.body.as_slice())),
    );
    !productive[0]
}

/// True iff the language is finite: after trimming and removing λ- and unit-productions,
/// the nonterminal dependency graph has no cycle.
pub fn cfg_finite(cfg: &Cfg) -> bool {
    let cnf = Cnf::from_cfg(cfg);
    let mut adj = vec![Vec::new(); cnf.nts];
    for &(a, b, c) in &cnf.binary {
        adj[a].push(b);
        adj[a].push(c);
    }
    let comp = scc_ids(&adj);
    !cnf.binary.iter().any(|&(a, b, c)| comp[a] == comp[b] || comp[a] == comp[c])
}

/// Length of the longest generated word of a finite, non-empty language.
pub fn longest_generated_of_finite(cfg: &Cfg) -> Result<usize> {
    if cfg_empty(cfg) {
        return Err(Error::Precondition("the language is empty".into()));
    }
    if !cfg_finite(cfg) {
        return Err(Error::Precondition("the language is infinite".into()));
    }
    // The trimmed normal form of a finite language is acyclic; evaluate bottom-up.
    let cnf = Cnf::from_cfg(cfg);
    let mut longest: Vec<Option<usize>> = vec![None; cnf.nts];
    for &(a, _) in &cnf.unary {
        longest[a] = Some(1);
    }
    loop {
        let mut changed = false;
        for &(a, b, c) in &cnf.binary {
            if let (Some(x), Some(y)) = (longest[b], longest[c]) {
                if longest[a].map_or(true, |v| v < x + y) {
                    longest[a] = Some(x + y);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(longest[0].unwrap_or(0))
}

/// The length-lexicographically least generated word, or `None` for an empty language.
///
/// Least-yield values per nonterminal compose: the least word of `X Y` is the least word
/// of `X` followed by the least word of `Y`. The fixpoint iteration only ever lowers
/// values in a well-order, so it terminates.
pub fn shortest_generated(cfg: &Cfg) -> Option<Word> {
    let n = cfg.nonterminals().len();
    let mut best: Vec<Option<Vec<usize>>> = vec![None; n];
    let better = |cand: &Vec<usize>, cur: &Option<Vec<usize>>| match cur {
        None => true,
        Some(c) => (cand.len(), cand) < (c.len(), c),
    };
    loop {
        let mut changed = false;
        for p in cfg.productions() {
            let mut cand = Vec::new();
            let mut complete = true;
            for s in &p.body {
                match *s {
                    GSym::T(a) => cand.push(a),
                    GSym::N(m) => match &best[m] {
                        Some(w) => cand.extend_from_slice(w),
                        None => {
                            complete = false;
                            break;
                        }
                    },
                }
            }
            if complete && better(&cand, &best[p.head]) {
                best[p.head] = Some(cand);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    best[0].as_ref().map(|w| cfg.terminals().decode(w))
}
