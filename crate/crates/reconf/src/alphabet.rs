//! Interned symbols, alphabets and words.
//!
//! Symbols compare by their display text, so every `BTreeSet`/`BTreeMap`
//! iteration in the crate is lexicographic and therefore reproducible
//! across runs.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An interned token with a stable total order (lexicographic on text).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(text: impl AsRef<str>) -> Self {
        Symbol(Arc::from(text.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

pub type Alphabet = BTreeSet<Symbol>;

/// Returns `base`, extended with `'` marks until it collides with nothing
/// in `taken`. Used whenever a construction introduces new symbols next to
/// a caller-supplied alphabet.
pub fn fresh_symbol(base: &str, taken: &BTreeSet<Symbol>) -> Symbol {
    let mut name = base.to_string();
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    Symbol::new(name)
}

/// A finite sequence of symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Word(names.into_iter().map(Symbol::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    /// Checks that every symbol belongs to `alphabet`.
    pub fn check_over(&self, alphabet: &Alphabet) -> Result<()> {
        for sym in &self.0 {
            if !alphabet.contains(sym) {
                return Err(Error::validation(format!(
                    "symbol `{sym}` is not in the declared alphabet"
                )));
            }
        }
        Ok(())
    }

    /// Replaces `count` symbols starting at `pos` with `replacement`.
    pub fn splice(&self, pos: usize, count: usize, replacement: &[Symbol]) -> Word {
        let mut out = Vec::with_capacity(self.0.len() - count + replacement.len());
        out.extend_from_slice(&self.0[..pos]);
        out.extend_from_slice(replacement);
        out.extend_from_slice(&self.0[pos + count..]);
        Word(out)
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, sym) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_order_lexicographically() {
        let mut set = BTreeSet::new();
        set.insert(Symbol::new("b"));
        set.insert(Symbol::new("a"));
        set.insert(Symbol::new("(q0,$)"));
        let names: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["(q0,$)", "a", "b"]);
    }

    #[test]
    fn fresh_symbol_avoids_collisions() {
        let taken: Alphabet = ["X1", "X1'"].iter().map(|s| Symbol::new(s)).collect();
        assert_eq!(fresh_symbol("X1", &taken).as_str(), "X1''");
        assert_eq!(fresh_symbol("Y1", &taken).as_str(), "Y1");
    }

    #[test]
    fn splice_replaces_subword() {
        let w = Word::from_names(["a", "b", "c"]);
        let out = w.splice(1, 2, &[Symbol::new("x")]);
        assert_eq!(out, Word::from_names(["a", "x"]));
    }
}
