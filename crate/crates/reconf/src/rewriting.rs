//! String rewriting systems and the one-position-per-step rule splitting.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{fresh_symbol, Alphabet, Symbol, Word};
use crate::engine::{self, ReconfigurationSequence, SearchLimits};
use crate::error::{Error, Result};

/// A rewriting rule. In a symmetric system a rule is an unordered pair and
/// is stored with `lhs <= rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::validation("rule sides must be non-empty"));
        }
        Ok(Rule { lhs, rhs })
    }

    /// Canonical unordered form.
    pub fn unordered(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs <= rhs {
            Rule::new(lhs, rhs)
        } else {
            Rule::new(rhs, lhs)
        }
    }

    pub fn is_two_balanced(&self) -> bool {
        self.lhs.len() == 2 && self.rhs.len() == 2
    }

    /// For a 2-balanced rule: does it leave the left or right position fixed?
    pub fn is_one_side_fixed(&self) -> bool {
        self.is_two_balanced() && (self.lhs[0] == self.rhs[0] || self.lhs[1] == self.rhs[1])
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <-> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:?}, {:?}}}", self.lhs, self.rhs)
    }
}

/// An alphabet together with a rule set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewritingSystem {
    pub alphabet: Alphabet,
    pub rules: BTreeSet<Rule>,
    /// When set, rules are unordered pairs and both directions apply.
    pub symmetric: bool,
}

impl RewritingSystem {
    pub fn new(alphabet: Alphabet, rules: BTreeSet<Rule>, symmetric: bool) -> Result<Self> {
        for rule in &rules {
            rule.lhs.check_over(&alphabet)?;
            rule.rhs.check_over(&alphabet)?;
            if symmetric && rule.rhs < rule.lhs {
                return Err(Error::validation(format!(
                    "symmetric rule {rule} is not stored canonically"
                )));
            }
        }
        Ok(RewritingSystem {
            alphabet,
            rules,
            symmetric,
        })
    }

    pub fn symmetric(alphabet: Alphabet, pairs: impl IntoIterator<Item = (Word, Word)>) -> Result<Self> {
        let mut rules = BTreeSet::new();
        for (l, r) in pairs {
            rules.insert(Rule::unordered(l, r)?);
        }
        RewritingSystem::new(alphabet, rules, true)
    }

    pub fn is_balanced(&self) -> bool {
        self.rules.iter().all(|r| r.lhs.len() == r.rhs.len())
    }

    pub fn is_two_balanced(&self) -> bool {
        self.rules.iter().all(Rule::is_two_balanced)
    }

    pub fn is_one_side_fixed(&self) -> bool {
        self.rules.iter().all(Rule::is_one_side_fixed)
    }

    /// Rules in canonical order, indexed from 1.
    pub fn indexed_rules(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules.iter().enumerate().map(|(i, r)| (i + 1, r))
    }
}

/// Replaces the occurrence of `rule.lhs` at `pos` in `w` by `rule.rhs`.
pub fn apply_rule_at(w: &Word, rule: &Rule, pos: usize) -> Result<Word> {
    let k = rule.lhs.len();
    if pos + k > w.len() || w.symbols()[pos..pos + k] != *rule.lhs.symbols() {
        return Err(Error::validation(format!(
            "rule {rule} does not match at position {pos} of {w}"
        )));
    }
    Ok(w.splice(pos, k, rule.rhs.symbols()))
}

/// All words obtainable from `w` by one rule application, deduplicated and
/// sorted. Symmetric systems apply each stored pair in both directions.
pub fn rewrite_neighbors(w: &Word, sys: &RewritingSystem) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for rule in &sys.rules {
        directed_matches(w, &rule.lhs, &rule.rhs, &mut out);
        if sys.symmetric && rule.lhs != rule.rhs {
            directed_matches(w, &rule.rhs, &rule.lhs, &mut out);
        }
    }
    out.remove(w);
    out.into_iter().collect()
}

fn directed_matches(w: &Word, from: &Word, to: &Word, out: &mut BTreeSet<Word>) {
    if from.len() > w.len() {
        return;
    }
    for pos in 0..=w.len() - from.len() {
        if w.symbols()[pos..pos + from.len()] == *from.symbols() {
            out.insert(w.splice(pos, from.len(), to.symbols()));
        }
    }
}

/// Configuration space of words under one-step rewriting.
pub struct WordSpace<'a> {
    system: &'a RewritingSystem,
    initial: Word,
    target: Word,
}

impl<'a> WordSpace<'a> {
    pub fn new(system: &'a RewritingSystem, initial: Word, target: Word) -> Result<Self> {
        initial.check_over(&system.alphabet)?;
        target.check_over(&system.alphabet)?;
        Ok(WordSpace {
            system,
            initial,
            target,
        })
    }
}

impl engine::Space for WordSpace<'_> {
    type Config = Word;

    fn initial(&self) -> &Word {
        &self.initial
    }

    fn target(&self) -> &Word {
        &self.target
    }

    fn is_valid(&self, w: &Word) -> bool {
        w.check_over(&self.system.alphabet).is_ok()
    }

    fn neighbors(&self, w: &Word) -> Vec<Word> {
        rewrite_neighbors(w, self.system)
    }

    fn move_name(&self) -> &'static str {
        "rewrite"
    }
}

/// Shortest rewriting sequence from `s` to `t`, `Ok(None)` when the full
/// search space is exhausted without reaching `t`.
pub fn srs_reachability(
    s: &Word,
    t: &Word,
    sys: &RewritingSystem,
    limits: &SearchLimits,
) -> Result<Option<ReconfigurationSequence<Word>>> {
    if sys.is_balanced() && s.len() != t.len() {
        return Ok(None);
    }
    let space = WordSpace::new(sys, s.clone(), t.clone())?;
    let (seq, _) = engine::bfs_reach(&space, limits)?;
    Ok(seq)
}

/// One split rule with its fresh symbol pair. `kept` is the canonical lhs
/// of the original rule and `replaced` its rhs; the retraction sends
/// `x y -> kept`, a lone `x -> kept[0]` and a lone `y -> replaced[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEntry {
    pub x: Symbol,
    pub y: Symbol,
    pub kept: (Symbol, Symbol),
    pub replaced: (Symbol, Symbol),
}

/// Substitution plan produced by [`split_rules`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitRetraction {
    pub extended_alphabet: Alphabet,
    pub entries: Vec<SplitEntry>,
}

/// Rewrites every rule that changes both positions into four rules over a
/// fresh symbol pair, so that every rule of the result fixes one side.
/// Requires a 2-balanced symmetric system; idempotent on its own output.
pub fn split_rules(sys: &RewritingSystem) -> Result<(RewritingSystem, SplitRetraction)> {
    if !sys.symmetric || !sys.is_two_balanced() {
        return Err(Error::validation(
            "rule splitting requires a 2-balanced symmetric system",
        ));
    }
    let mut alphabet = sys.alphabet.clone();
    let mut rules: BTreeSet<Rule> = BTreeSet::new();
    let mut entries = Vec::new();
    let mut violating_index = 0usize;
    for rule in &sys.rules {
        if rule.is_one_side_fixed() {
            rules.insert(rule.clone());
            continue;
        }
        violating_index += 1;
        let x = fresh_symbol(&format!("X{violating_index}"), &alphabet);
        alphabet.insert(x.clone());
        let y = fresh_symbol(&format!("Y{violating_index}"), &alphabet);
        alphabet.insert(y.clone());
        let (a1, a2) = (rule.lhs[0].clone(), rule.lhs[1].clone());
        let (b1, b2) = (rule.rhs[0].clone(), rule.rhs[1].clone());
        let word = |s: &Symbol, t: &Symbol| Word::new(vec![s.clone(), t.clone()]);
        rules.insert(Rule::unordered(word(&a1, &a2), word(&x, &a2))?);
        rules.insert(Rule::unordered(word(&x, &a2), word(&x, &y))?);
        rules.insert(Rule::unordered(word(&x, &y), word(&b1, &y))?);
        rules.insert(Rule::unordered(word(&b1, &y), word(&b1, &b2))?);
        entries.push(SplitEntry {
            x,
            y,
            kept: (a1, a2),
            replaced: (b1, b2),
        });
    }
    let out = RewritingSystem::new(alphabet.clone(), rules, true)?;
    Ok((
        out,
        SplitRetraction {
            extended_alphabet: alphabet,
            entries,
        },
    ))
}

/// Projects a word over the extended alphabet back to the original one:
/// adjacent `x y` of one entry becomes the kept pair, remaining lone fresh
/// symbols fall back to their single-symbol images.
pub fn retraction_apply(retr: &SplitRetraction, w: &Word) -> Word {
    let by_x: std::collections::BTreeMap<&Symbol, &SplitEntry> =
        retr.entries.iter().map(|e| (&e.x, e)).collect();
    let by_y: std::collections::BTreeMap<&Symbol, &SplitEntry> =
        retr.entries.iter().map(|e| (&e.y, e)).collect();
    let syms = w.symbols();
    let mut out = Vec::with_capacity(syms.len());
    let mut i = 0;
    while i < syms.len() {
        if let Some(entry) = by_x.get(&syms[i]) {
            if i + 1 < syms.len() && syms[i + 1] == entry.y {
                out.push(entry.kept.0.clone());
                out.push(entry.kept.1.clone());
                i += 2;
                continue;
            }
            out.push(entry.kept.0.clone());
        } else if let Some(entry) = by_y.get(&syms[i]) {
            out.push(entry.replaced.1.clone());
        } else {
            out.push(syms[i].clone());
        }
        i += 1;
    }
    Word::new(out)
}
