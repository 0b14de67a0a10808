//! H-words: words over the vertex set of a digraph H in which every two
//! consecutive symbols form an arc, i.e. walks in H. Reachability asks
//! whether one H-word can be turned into another by changing one symbol at
//! a time through H-words only.
//!
//! [`HStructure::for_system`] builds, from a 2-balanced symmetric rewriting
//! system in which every rule fixes one side, a digraph whose walks encode
//! the words of the system: a rewrite step corresponds to exactly three
//! single-symbol changes through a per-rule marker symbol.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{fresh_symbol, Symbol, Word};
use crate::engine::{self, ReconfigurationSequence, SearchLimits, Space};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::rewriting::{Rule, RewritingSystem};

/// True iff `w` is a walk in `h`. Empty and single-symbol words are walks.
pub fn is_h_word(w: &Word, h: &Digraph<Symbol>) -> Result<bool> {
    for sym in w.iter() {
        if !h.contains_vertex(sym) {
            return Err(Error::validation(format!(
                "symbol {sym} is not a vertex of the walk structure"
            )));
        }
    }
    Ok(w.symbols().windows(2).all(|p| h.has_arc(&p[0], &p[1])))
}

/// All words differing from `w` in exactly one position that are still
/// walks in `h`, in deterministic order.
pub fn hword_neighbors(w: &Word, h: &Digraph<Symbol>) -> Vec<Word> {
    let syms = w.symbols();
    let mut out = Vec::new();
    for i in 0..syms.len() {
        for candidate in h.vertices() {
            if *candidate == syms[i] {
                continue;
            }
            let left_ok = i == 0 || h.has_arc(&syms[i - 1], candidate);
            let right_ok = i + 1 == syms.len() || h.has_arc(candidate, &syms[i + 1]);
            if left_ok && right_ok {
                let mut next = syms.to_vec();
                next[i] = candidate.clone();
                out.push(Word::new(next));
            }
        }
    }
    out
}

/// Fixed-length H-words under single-symbol changes.
pub struct HWordSpace<'a> {
    h: &'a Digraph<Symbol>,
    length: usize,
    initial: Word,
    target: Word,
}

impl<'a> HWordSpace<'a> {
    pub fn new(h: &'a Digraph<Symbol>, initial: Word, target: Word) -> Result<Self> {
        if initial.len() != target.len() {
            return Err(Error::validation(format!(
                "H-words must have equal length, got {} and {}",
                initial.len(),
                target.len()
            )));
        }
        if !is_h_word(&initial, h)? {
            return Err(Error::validation(format!("{initial} is not an H-word")));
        }
        if !is_h_word(&target, h)? {
            return Err(Error::validation(format!("{target} is not an H-word")));
        }
        Ok(HWordSpace {
            h,
            length: initial.len(),
            initial,
            target,
        })
    }
}

impl Space for HWordSpace<'_> {
    type Config = Word;

    fn initial(&self) -> &Word {
        &self.initial
    }

    fn target(&self) -> &Word {
        &self.target
    }

    fn is_valid(&self, w: &Word) -> bool {
        w.len() == self.length && is_h_word(w, self.h).unwrap_or(false)
    }

    fn neighbors(&self, w: &Word) -> Vec<Word> {
        hword_neighbors(w, self.h)
    }

    fn move_name(&self) -> &'static str {
        "symbol change"
    }
}

/// Shortest single-symbol-change sequence between two equal-length
/// H-words; `Ok(None)` only after exhausting the component.
pub fn hword_reachability(
    s: &Word,
    t: &Word,
    h: &Digraph<Symbol>,
    limits: &SearchLimits,
) -> Result<Option<ReconfigurationSequence<Word>>> {
    let space = HWordSpace::new(h, s.clone(), t.clone())?;
    let (seq, _) = engine::bfs_reach(&space, limits)?;
    Ok(seq)
}

/// The walk structure of a one-side-fixed system, with the bookkeeping
/// needed to move between system words and H-words.
#[derive(Clone, Debug)]
pub struct HStructure {
    digraph: Digraph<Symbol>,
    special: BTreeSet<Symbol>,
    pairs: BTreeMap<Symbol, (Symbol, Symbol)>,
    pair_of: BTreeMap<(Symbol, Symbol), Symbol>,
    rule_symbols: BTreeMap<Symbol, Rule>,
    rule_to_symbol: BTreeMap<Rule, Symbol>,
    pad: Symbol,
    left_end: Symbol,
    right_end: Symbol,
    system: RewritingSystem,
}

impl HStructure {
    /// Builds the walk structure of `sys`.
    ///
    /// The symbol set is two end symbols and one marker per rule (the
    /// special symbols) plus all component pairs over the base alphabet
    /// extended by a padding symbol (the pair symbols). Arcs:
    ///
    /// * overlapping pairs `(u,b) -> (b,v)` for base `b` and padded `u,v`;
    /// * the left end into `(pad, a)` and `(a, pad)` into the right end;
    /// * `(u, l)` into the marker of any rule whose sides start with `l`,
    ///   and that marker into `(r, v)` for the sides' second symbols `r`.
    ///
    /// Every generated symbol is freshened against the base alphabet, so
    /// composing pipeline stages never confuses same-named symbols.
    pub fn for_system(sys: &RewritingSystem) -> Result<Self> {
        if !sys.symmetric || !sys.is_two_balanced() {
            return Err(Error::validation(
                "walk structures need a 2-balanced symmetric system",
            ));
        }
        if !sys.is_one_side_fixed() {
            return Err(Error::validation(
                "every rule must fix one side; apply split_rules first",
            ));
        }

        let base = &sys.alphabet;
        let mut taken = base.clone();
        let pad = fresh_symbol("\u{2423}", &taken);
        taken.insert(pad.clone());
        let left_end = fresh_symbol("$", &taken);
        taken.insert(left_end.clone());
        let right_end = fresh_symbol("\u{a2}", &taken);
        taken.insert(right_end.clone());

        let mut padded: Vec<Symbol> = base.iter().cloned().collect();
        padded.push(pad.clone());
        padded.sort();

        let mut digraph = Digraph::new();
        let mut special = BTreeSet::new();
        let mut pairs = BTreeMap::new();
        let mut pair_of: BTreeMap<(Symbol, Symbol), Symbol> = BTreeMap::new();
        for end in [&left_end, &right_end] {
            digraph.add_vertex(end.clone());
            special.insert(end.clone());
        }
        for l in &padded {
            for r in &padded {
                let sym = fresh_symbol(&format!("({l},{r})"), &taken);
                taken.insert(sym.clone());
                digraph.add_vertex(sym.clone());
                pairs.insert(sym.clone(), (l.clone(), r.clone()));
                pair_of.insert((l.clone(), r.clone()), sym);
            }
        }

        let mut rule_symbols = BTreeMap::new();
        let mut rule_to_symbol = BTreeMap::new();
        for (i, rule) in sys.indexed_rules() {
            let sym = fresh_symbol(&format!("x{i}"), &taken);
            taken.insert(sym.clone());
            digraph.add_vertex(sym.clone());
            special.insert(sym.clone());
            rule_symbols.insert(sym.clone(), rule.clone());
            rule_to_symbol.insert(rule.clone(), sym);
        }

        let pair = |l: &Symbol, r: &Symbol| pair_of[&(l.clone(), r.clone())].clone();

        // overlap arcs between pair symbols
        for b in base {
            for u in &padded {
                for v in &padded {
                    digraph.add_arc(pair(u, b), pair(b, v))?;
                }
            }
        }
        // boundary arcs
        for a in base {
            digraph.add_arc(left_end.clone(), pair(&pad, a))?;
            digraph.add_arc(pair(a, &pad), right_end.clone())?;
        }
        // marker arcs
        for (sym, rule) in &rule_symbols {
            for side in [&rule.lhs, &rule.rhs] {
                for u in &padded {
                    digraph.add_arc(pair(u, &side[0]), sym.clone())?;
                    digraph.add_arc(sym.clone(), pair(&side[1], u))?;
                }
            }
        }

        Ok(HStructure {
            digraph,
            special,
            pairs,
            pair_of,
            rule_symbols,
            rule_to_symbol,
            pad,
            left_end,
            right_end,
            system: sys.clone(),
        })
    }

    pub fn digraph(&self) -> &Digraph<Symbol> {
        &self.digraph
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    pub fn pad(&self) -> &Symbol {
        &self.pad
    }

    pub fn left_end(&self) -> &Symbol {
        &self.left_end
    }

    pub fn right_end(&self) -> &Symbol {
        &self.right_end
    }

    pub fn special_symbols(&self) -> &BTreeSet<Symbol> {
        &self.special
    }

    pub fn pair_symbols(&self) -> &BTreeMap<Symbol, (Symbol, Symbol)> {
        &self.pairs
    }

    pub fn rule_symbols(&self) -> &BTreeMap<Symbol, Rule> {
        &self.rule_symbols
    }

    pub fn is_special(&self, sym: &Symbol) -> bool {
        self.special.contains(sym)
    }

    fn pair(&self, l: &Symbol, r: &Symbol) -> Result<Symbol> {
        self.pair_of
            .get(&(l.clone(), r.clone()))
            .cloned()
            .ok_or_else(|| Error::validation(format!("no pair symbol for ({l},{r})")))
    }

    /// Embeds a non-empty base word `a1..an` as the H-word
    /// `$ (pad,a1) (a1,a2) .. (an,pad) ¢` of length n+3.
    pub fn embed_word(&self, s: &Word) -> Result<Word> {
        if s.is_empty() {
            return Err(Error::validation("cannot embed the empty word"));
        }
        s.check_over(&self.system.alphabet)?;
        let mut out = Vec::with_capacity(s.len() + 3);
        out.push(self.left_end.clone());
        out.push(self.pair(&self.pad, &s[0])?);
        for pair in s.symbols().windows(2) {
            out.push(self.pair(&pair[0], &pair[1])?);
        }
        out.push(self.pair(&s[s.len() - 1], &self.pad)?);
        out.push(self.right_end.clone());
        Ok(Word::new(out))
    }

    /// Decodes an H-word of length n+3 with the boundary shape
    /// `$ (pad,·) .. (·,pad) ¢` back to the base word of length n. Each
    /// inner position is read off a flanking pair symbol; when both
    /// flanking symbols are pairs the two readings must agree.
    pub fn decode_word(&self, w: &Word) -> Result<Word> {
        if w.len() < 4 {
            return Err(Error::validation(format!(
                "H-word of length {} is too short to decode",
                w.len()
            )));
        }
        let n = w.len() - 3;
        let syms = w.symbols();
        if syms[0] != self.left_end || syms[n + 2] != self.right_end {
            return Err(Error::validation(
                "H-word does not start with the left end and finish with the right end",
            ));
        }
        match self.pairs.get(&syms[1]) {
            Some((l, _)) if *l == self.pad => {}
            _ => {
                return Err(Error::validation(
                    "second symbol must be a pair starting with the padding symbol",
                ))
            }
        }
        match self.pairs.get(&syms[n + 1]) {
            Some((_, r)) if *r == self.pad => {}
            _ => {
                return Err(Error::validation(
                    "second-to-last symbol must be a pair ending with the padding symbol",
                ))
            }
        }
        let mut out = Vec::with_capacity(n);
        for i in 1..=n {
            let from_left = self.pairs.get(&syms[i]).map(|(_, r)| r.clone());
            let from_right = self.pairs.get(&syms[i + 1]).map(|(l, _)| l.clone());
            let value = match (from_left, from_right) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Err(Error::validation(format!(
                            "pair symbols disagree at position {i}: {a} vs {b}"
                        )));
                    }
                    a
                }
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(Error::validation(format!(
                        "two consecutive special symbols at position {i}"
                    )))
                }
            };
            if !self.system.alphabet.contains(value.as_str()) {
                return Err(Error::validation(format!(
                    "decoded symbol {value} is outside the base alphabet"
                )));
            }
            out.push(value);
        }
        Ok(Word::new(out))
    }

    /// Expands a rewriting sequence into an H-word sequence: the embedding
    /// of each word, with every rule application lowered to three
    /// single-symbol changes through the rule's marker symbol.
    pub fn lift_sequence(
        &self,
        seq: &ReconfigurationSequence<Word>,
    ) -> Result<ReconfigurationSequence<Word>> {
        if seq.steps.is_empty() {
            return Err(Error::validation("cannot lift an empty sequence"));
        }
        let mut current = self.embed_word(seq.first())?.symbols().to_vec();
        let mut out = vec![Word::new(current.clone())];
        for step in seq.steps.windows(2) {
            let (word, next) = (&step[0], &step[1]);
            let (rule, marker, pos, to_side) = self.step_rule(word, next)?;
            let read = |i: isize| -> Symbol {
                if i < 0 || i as usize >= word.len() {
                    self.pad.clone()
                } else {
                    word[i as usize].clone()
                }
            };
            // marker in, fixed-side flank, marker out
            current[pos + 2] = marker;
            out.push(Word::new(current.clone()));
            if rule.lhs[1] == rule.rhs[1] {
                current[pos + 1] = self.pair(&read(pos as isize - 1), &to_side[0])?;
            } else {
                current[pos + 3] = self.pair(&to_side[1], &read(pos as isize + 2))?;
            }
            out.push(Word::new(current.clone()));
            current[pos + 2] = self.pair(&to_side[0], &to_side[1])?;
            out.push(Word::new(current.clone()));
            debug_assert_eq!(Word::new(current.clone()), self.embed_word(next)?);
        }
        Ok(ReconfigurationSequence::new(out))
    }

    /// Identifies the rule application turning `word` into `next`:
    /// returns (rule, marker, window position, replacement side).
    fn step_rule(&self, word: &Word, next: &Word) -> Result<(Rule, Symbol, usize, Word)> {
        if word.len() != next.len() {
            return Err(Error::validation("sequence steps have different lengths"));
        }
        let diffs: Vec<usize> = (0..word.len()).filter(|&i| word[i] != next[i]).collect();
        let [q] = diffs.as_slice() else {
            return Err(Error::validation(format!(
                "{word} -> {next} is not a single one-side-fixed rule application"
            )));
        };
        for (rule, marker) in &self.rule_to_symbol {
            for pos in [q.checked_sub(1), Some(*q)].into_iter().flatten() {
                if pos + 2 > word.len() {
                    continue;
                }
                let now = &word.symbols()[pos..pos + 2];
                let then = &next.symbols()[pos..pos + 2];
                for (from, to) in [(&rule.lhs, &rule.rhs), (&rule.rhs, &rule.lhs)] {
                    if now == from.symbols() && then == to.symbols() {
                        return Ok((rule.clone(), marker.clone(), pos, to.clone()));
                    }
                }
            }
        }
        Err(Error::validation(format!(
            "no rule of the system turns {word} into {next}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::engine::verify_sequence;
    use crate::rewriting::srs_reachability;

    fn w(names: &str) -> Word {
        Word::from_names(names.split_whitespace())
    }

    fn system(alpha: &[&str], rules: &[(&str, &str)]) -> RewritingSystem {
        let alphabet: Alphabet = alpha.iter().map(|s| Symbol::new(s)).collect();
        RewritingSystem::symmetric(alphabet, rules.iter().map(|(l, r)| (w(l), w(r)))).unwrap()
    }

    #[test]
    fn rule_free_structure_over_one_symbol() {
        let h = HStructure::for_system(&system(&["a"], &[])).unwrap();
        assert_eq!(h.pair_symbols().len(), 4);
        assert_eq!(h.special_symbols().len(), 2);
        let d = h.digraph();
        assert!(d.has_arc(&Symbol::new("$"), &Symbol::new("(\u{2423},a)")));
        assert!(d.has_arc(&Symbol::new("(a,\u{2423})"), &Symbol::new("\u{a2}")));
        assert!(d.has_arc(&Symbol::new("(a,a)"), &Symbol::new("(a,a)")));
        assert_eq!(d.arc_count(), 6);
    }

    #[test]
    fn one_marker_symbol_per_rule() {
        let sys = system(&["a", "b", "c"], &[("a b", "c b"), ("b a", "b c")]);
        let h = HStructure::for_system(&sys).unwrap();
        assert_eq!(h.rule_symbols().len(), 2);
        let names: Vec<&str> = h.rule_symbols().keys().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["x1", "x2"]);
    }

    #[test]
    fn overlap_arcs_cover_all_triples() {
        let sys = system(&["a", "b"], &[]);
        let h = HStructure::for_system(&sys).unwrap();
        for a in ["a", "b"] {
            for b in ["a", "b"] {
                for c in ["a", "b"] {
                    assert!(h.digraph().has_arc(
                        &Symbol::new(format!("({a},{b})")),
                        &Symbol::new(format!("({b},{c})"))
                    ));
                }
            }
        }
    }

    #[test]
    fn construction_requires_one_side_fixed_rules() {
        let sys = system(&["a", "b", "c", "d"], &[("a b", "c d")]);
        let err = HStructure::for_system(&sys).unwrap_err();
        assert!(err.to_string().contains("split_rules"));
    }

    #[test]
    fn embed_produces_h_words() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();
        let e = h.embed_word(&w("a b")).unwrap();
        assert_eq!(e.to_string(), "$ (\u{2423},a) (a,b) (b,\u{2423}) \u{a2}");
        assert!(is_h_word(&e, h.digraph()).unwrap());

        let single = h.embed_word(&w("a")).unwrap();
        assert_eq!(single.to_string(), "$ (\u{2423},a) (a,\u{2423}) \u{a2}");
        assert!(is_h_word(&single, h.digraph()).unwrap());

        assert!(h.embed_word(&Word::default()).is_err());
    }

    #[test]
    fn empty_and_single_words_are_walks() {
        let sys = system(&["a"], &[]);
        let h = HStructure::for_system(&sys).unwrap();
        assert!(is_h_word(&Word::default(), h.digraph()).unwrap());
        assert!(is_h_word(&w("(a,a)"), h.digraph()).unwrap());
        assert!(is_h_word(&w("unknown"), h.digraph()).is_err());
    }

    #[test]
    fn consecutive_special_symbols_never_form_walks() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();
        for s in h.special_symbols() {
            for t in h.special_symbols() {
                assert!(!h.digraph().has_arc(s, t), "special arc {s} -> {t}");
            }
        }
    }

    #[test]
    fn decode_inverts_embed() {
        let sys = system(&["a", "b", "c"], &[("a b", "c b")]);
        let h = HStructure::for_system(&sys).unwrap();
        for word in ["a", "b c", "a b c", "c c a b"] {
            let word = w(word);
            assert_eq!(h.decode_word(&h.embed_word(&word).unwrap()).unwrap(), word);
        }
    }

    #[test]
    fn decode_reads_through_marker_symbols() {
        let sys = system(&["a", "b", "c"], &[("a b", "c b")]);
        let h = HStructure::for_system(&sys).unwrap();
        let embedded = h.embed_word(&w("a b")).unwrap();
        let mut syms = embedded.symbols().to_vec();
        syms[2] = Symbol::new("x1");
        let with_marker = Word::new(syms);
        assert!(is_h_word(&with_marker, h.digraph()).unwrap());
        assert_eq!(h.decode_word(&with_marker).unwrap(), w("a b"));
    }

    #[test]
    fn decode_validates_boundary() {
        let sys = system(&["a", "b"], &[]);
        let h = HStructure::for_system(&sys).unwrap();
        let embedded = h.embed_word(&w("a b")).unwrap();
        let mut syms = embedded.symbols().to_vec();
        syms.swap(0, 4);
        assert!(h.decode_word(&Word::new(syms)).is_err());
    }

    #[test]
    fn left_end_admits_no_replacement_in_embeddings() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();
        let e = h.embed_word(&w("a b")).unwrap();
        let changed_first: Vec<Word> = hword_neighbors(&e, h.digraph())
            .into_iter()
            .filter(|n| n[0] != e[0])
            .collect();
        assert!(changed_first.is_empty());
    }

    #[test]
    fn applicable_rule_offers_its_marker() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();
        let e = h.embed_word(&w("a b")).unwrap();
        let neighbors = hword_neighbors(&e, h.digraph());
        let marker = neighbors
            .iter()
            .any(|n| n.symbols().iter().any(|s| s.as_str() == "x1"));
        assert!(marker, "expected a marker replacement among {neighbors:?}");
    }

    #[test]
    fn length_one_words_move_anywhere() {
        let sys = system(&["a"], &[]);
        let h = HStructure::for_system(&sys).unwrap();
        let word = w("(a,a)");
        let n = hword_neighbors(&word, h.digraph());
        assert_eq!(n.len(), h.digraph().vertex_count() - 1);
    }

    #[test]
    fn lift_expands_each_application_into_three_moves() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();

        let trivial = h
            .lift_sequence(&ReconfigurationSequence::new(vec![w("a b")]))
            .unwrap();
        assert_eq!(trivial.steps, vec![h.embed_word(&w("a b")).unwrap()]);

        let seq = srs_reachability(&w("a b"), &w("a a"), &sys, &SearchLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(seq.moves(), 1);
        let lifted = h.lift_sequence(&seq).unwrap();
        assert_eq!(lifted.moves(), 3);
        assert_eq!(*lifted.first(), h.embed_word(&w("a b")).unwrap());
        assert_eq!(*lifted.last(), h.embed_word(&w("a a")).unwrap());
        let space =
            HWordSpace::new(h.digraph(), lifted.first().clone(), lifted.last().clone()).unwrap();
        assert!(verify_sequence(&space, &lifted));
    }

    #[test]
    fn lift_handles_left_fixed_rules_and_longer_runs() {
        let sys = system(&["a", "b", "c"], &[("a b", "a c"), ("c b", "a b")]);
        let h = HStructure::for_system(&sys).unwrap();
        let seq = srs_reachability(&w("a b b"), &w("a a b"), &sys, &SearchLimits::default())
            .unwrap()
            .expect("reachable");
        let lifted = h.lift_sequence(&seq).unwrap();
        assert_eq!(lifted.moves(), 3 * seq.moves());
        let space =
            HWordSpace::new(h.digraph(), lifted.first().clone(), lifted.last().clone()).unwrap();
        assert!(verify_sequence(&space, &lifted));
    }

    #[test]
    fn reachability_agrees_with_rewriting() {
        let sys = system(&["a", "b"], &[("a b", "a a")]);
        let h = HStructure::for_system(&sys).unwrap();
        let limits = SearchLimits::default();
        let s = w("b a b");
        let t = w("b a a");
        let srs = srs_reachability(&s, &t, &sys, &limits).unwrap();
        let hw = hword_reachability(
            &h.embed_word(&s).unwrap(),
            &h.embed_word(&t).unwrap(),
            h.digraph(),
            &limits,
        )
        .unwrap();
        assert_eq!(srs.is_some(), hw.is_some());
        assert!(srs.is_some());

        let s = w("b b");
        let t = w("a b");
        assert!(srs_reachability(&s, &t, &sys, &limits).unwrap().is_none());
        assert!(hword_reachability(
            &h.embed_word(&s).unwrap(),
            &h.embed_word(&t).unwrap(),
            h.digraph(),
            &limits
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn zero_move_reachability() {
        let sys = system(&["a"], &[]);
        let h = HStructure::for_system(&sys).unwrap();
        let e = h.embed_word(&w("a a")).unwrap();
        let seq = hword_reachability(&e, &e, h.digraph(), &SearchLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(seq.moves(), 0);
    }
}
