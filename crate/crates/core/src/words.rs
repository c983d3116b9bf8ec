// SPDX-License-Identifier: Apache-2.0

//! Symbols, structured alphabets and nested words.
//!
//! A [`NestedWord`] carries its call/return tags with every letter, so
//! well-nestedness can be decided without consulting an alphabet. Matching
//! between calls and returns is positional (stack discipline); symbol names
//! impose no correspondence.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Reserved name of the bottom call symbol adjoined by the fcns encoding.
pub const BOT_CALL: &str = "⊥c";
/// Reserved name of the bottom return symbol adjoined by the fcns encoding.
pub const BOT_RETURN: &str = "⊥r";

/// An opaque symbol name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: impl AsRef<str>) -> Self {
        Symbol(Arc::from(name.as_ref()))
    }

    pub fn bot_call() -> Self {
        Symbol::new(BOT_CALL)
    }

    pub fn bot_return() -> Self {
        Symbol::new(BOT_RETURN)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_bottom(&self) -> bool {
        self.is_bot_call() || self.is_bot_return()
    }

    pub fn is_bot_call(&self) -> bool {
        &*self.0 == BOT_CALL
    }

    pub fn is_bot_return(&self) -> bool {
        &*self.0 == BOT_RETURN
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Call,
    Return,
}

/// A tagged symbol of a nested word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub tag: Tag,
    pub symbol: Symbol,
}

impl Letter {
    pub fn call(symbol: impl Into<Symbol>) -> Self {
        Letter {
            tag: Tag::Call,
            symbol: symbol.into(),
        }
    }

    pub fn ret(symbol: impl Into<Symbol>) -> Self {
        Letter {
            tag: Tag::Return,
            symbol: symbol.into(),
        }
    }

    pub fn is_call(&self) -> bool {
        self.tag == Tag::Call
    }

    pub fn is_return(&self) -> bool {
        self.tag == Tag::Return
    }

    pub fn bot_call() -> Self {
        Letter::call(Symbol::bot_call())
    }

    pub fn bot_return() -> Self {
        Letter::ret(Symbol::bot_return())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbol.fmt(f)
    }
}

/// A pair of disjoint call and return symbol sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StructuredAlphabet {
    calls: BTreeSet<Symbol>,
    returns: BTreeSet<Symbol>,
}

impl StructuredAlphabet {
    /// Builds an alphabet. The bottom symbols may only appear on their own
    /// side, and only together.
    pub fn new(
        calls: impl IntoIterator<Item = Symbol>,
        returns: impl IntoIterator<Item = Symbol>,
    ) -> Result<Self> {
        let calls: BTreeSet<Symbol> = calls.into_iter().collect();
        let returns: BTreeSet<Symbol> = returns.into_iter().collect();
        if let Some(s) = calls.intersection(&returns).next() {
            return Err(Error::Alphabet(format!(
                "`{s}` is both a call and a return"
            )));
        }
        if calls.iter().any(Symbol::is_bot_return) || returns.iter().any(Symbol::is_bot_call) {
            return Err(Error::Alphabet("bottom symbol on the wrong side".into()));
        }
        let bc = calls.iter().any(Symbol::is_bot_call);
        let br = returns.iter().any(Symbol::is_bot_return);
        if bc != br {
            return Err(Error::Alphabet(format!(
                "{BOT_CALL} and {BOT_RETURN} must be declared together"
            )));
        }
        Ok(StructuredAlphabet { calls, returns })
    }

    /// Convenience constructor from string names.
    pub fn from_names(calls: &[&str], returns: &[&str]) -> Result<Self> {
        Self::new(
            calls.iter().map(Symbol::new),
            returns.iter().map(Symbol::new),
        )
    }

    pub fn calls(&self) -> &BTreeSet<Symbol> {
        &self.calls
    }

    pub fn returns(&self) -> &BTreeSet<Symbol> {
        &self.returns
    }

    pub fn has_bottom(&self) -> bool {
        self.calls.iter().any(Symbol::is_bot_call)
    }

    /// `Σ⊥`: the alphabet extended with `⊥c` and `⊥r`.
    pub fn with_bottom(&self) -> Self {
        let mut out = self.clone();
        out.calls.insert(Symbol::bot_call());
        out.returns.insert(Symbol::bot_return());
        out
    }

    pub fn without_bottom(&self) -> Self {
        StructuredAlphabet {
            calls: self.calls.iter().filter(|s| !s.is_bottom()).cloned().collect(),
            returns: self.returns.iter().filter(|s| !s.is_bottom()).cloned().collect(),
        }
    }

    pub fn tag_of(&self, s: &Symbol) -> Option<Tag> {
        if self.calls.contains(s) {
            Some(Tag::Call)
        } else if self.returns.contains(s) {
            Some(Tag::Return)
        } else {
            None
        }
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.tag_of(s).is_some()
    }

    pub fn contains_letter(&self, l: &Letter) -> bool {
        self.tag_of(&l.symbol) == Some(l.tag)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        let symbol = Symbol::new(name);
        match self.tag_of(&symbol) {
            Some(tag) => Ok(Letter { tag, symbol }),
            None => Err(Error::UnknownSymbol(name.to_string())),
        }
    }

    /// Resolves tags for a plain word.
    pub fn tag_word(&self, word: &Word) -> Result<NestedWord> {
        word.iter()
            .map(|s| self.letter(s.as_str()))
            .collect::<Result<Vec<_>>>()
            .map(NestedWord)
    }

    /// Parses whitespace-separated symbol names.
    pub fn parse_word(&self, text: &str) -> Result<NestedWord> {
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(|t| self.letter(t))
            .collect::<Result<Vec<_>>>()
            .map(NestedWord)
    }

    pub fn union(&self, other: &StructuredAlphabet) -> Result<Self> {
        Self::new(
            self.calls.iter().chain(&other.calls).cloned(),
            self.returns.iter().chain(&other.returns).cloned(),
        )
    }
}

/// A finite word over a structured alphabet, each letter carrying its tag.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedWord(pub Vec<Letter>);

/// `w = c·inner·r·rest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub call: Symbol,
    pub inner: NestedWord,
    pub ret: Symbol,
    pub rest: NestedWord,
}

impl NestedWord {
    pub fn empty() -> Self {
        NestedWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// Offset of the first violation of the counter scan, or `None` if the
    /// word is well-nested.
    pub fn nesting_violation(&self) -> Option<usize> {
        let mut depth = 0usize;
        for (i, l) in self.0.iter().enumerate() {
            match l.tag {
                Tag::Call => depth += 1,
                Tag::Return => {
                    if depth == 0 {
                        return Some(i);
                    }
                    depth -= 1;
                }
            }
        }
        (depth != 0).then_some(self.0.len())
    }

    pub fn is_well_nested(&self) -> bool {
        self.nesting_violation().is_none()
    }

    pub(crate) fn check_well_nested(&self) -> Result<()> {
        match self.nesting_violation() {
            None => Ok(()),
            Some(offset) => Err(Error::NotWellNested { offset }),
        }
    }

    /// For each call position, the position of its matching return.
    /// Positions of returns map to `usize::MAX`.
    pub fn matching(&self) -> Result<Vec<usize>> {
        self.check_well_nested()?;
        let mut out = vec![usize::MAX; self.0.len()];
        let mut stack = Vec::new();
        for (i, l) in self.0.iter().enumerate() {
            match l.tag {
                Tag::Call => stack.push(i),
                Tag::Return => {
                    let open = stack.pop().expect("checked well-nested");
                    out[open] = i;
                }
            }
        }
        Ok(out)
    }

    /// Unique decomposition `c·w1·r·w2` of a non-empty well-nested word.
    pub fn decompose(&self) -> Result<Decomposition> {
        if self.0.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.check_well_nested()?;
        let mut depth = 0usize;
        let close = self
            .0
            .iter()
            .position(|l| {
                match l.tag {
                    Tag::Call => depth += 1,
                    Tag::Return => depth -= 1,
                }
                depth == 0
            })
            .expect("well-nested non-empty word closes its first call");
        Ok(Decomposition {
            call: self.0[0].symbol.clone(),
            inner: NestedWord(self.0[1..close].to_vec()),
            ret: self.0[close].symbol.clone(),
            rest: NestedWord(self.0[close + 1..].to_vec()),
        })
    }

    /// Nesting height; an error on words that are not well-nested.
    pub fn height(&self) -> Result<usize> {
        self.check_well_nested()?;
        let mut depth = 0usize;
        let mut max = 0usize;
        for l in &self.0 {
            match l.tag {
                Tag::Call => {
                    depth += 1;
                    max = max.max(depth);
                }
                Tag::Return => depth -= 1,
            }
        }
        Ok(max)
    }

    pub fn concat(&self, other: &NestedWord) -> NestedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        NestedWord(v)
    }

    /// `c·self·r`.
    pub fn wrap(&self, call: Symbol, ret: Symbol) -> NestedWord {
        let mut v = Vec::with_capacity(self.0.len() + 2);
        v.push(Letter::call(call));
        v.extend_from_slice(&self.0);
        v.push(Letter::ret(ret));
        NestedWord(v)
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.iter().map(|l| l.symbol.clone()).collect())
    }
}

impl fmt::Display for NestedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            l.fmt(f)?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for NestedWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        NestedWord(iter.into_iter().collect())
    }
}

/// An untagged output word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_names(names: &[&str]) -> Self {
        Word(names.iter().map(Symbol::new).collect())
    }

    /// Splits on whitespace; `ε` denotes the empty word.
    pub fn parse(text: &str) -> Self {
        Word(
            text.split_whitespace()
                .filter(|t| *t != "ε")
                .map(Symbol::new)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(parts: &[&Word]) -> Word {
        let mut v = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// `[a b]`, with `[]` for ε.
    pub fn bracketed(&self) -> String {
        let names: Vec<&str> = self.0.iter().map(Symbol::as_str).collect();
        format!("[{}]", names.join(" "))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            s.fmt(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketed())
    }
}

/// The output alphabet of a transducer: a plain symbol set, or a structured
/// alphabet when outputs are meant to be nested words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputAlphabet {
    Plain(BTreeSet<Symbol>),
    Structured(StructuredAlphabet),
}

impl OutputAlphabet {
    pub fn plain(names: &[&str]) -> Self {
        OutputAlphabet::Plain(names.iter().map(Symbol::new).collect())
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        match self {
            OutputAlphabet::Plain(set) => set.contains(s),
            OutputAlphabet::Structured(a) => a.contains(s),
        }
    }

    pub fn structured(&self) -> Option<&StructuredAlphabet> {
        match self {
            OutputAlphabet::Plain(_) => None,
            OutputAlphabet::Structured(a) => Some(a),
        }
    }

    pub fn require_structured(&self) -> Result<&StructuredAlphabet> {
        self.structured().ok_or(Error::UnstructuredOutput)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        match self {
            OutputAlphabet::Plain(set) => set.clone(),
            OutputAlphabet::Structured(a) => a.calls().union(a.returns()).cloned().collect(),
        }
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::UnknownSymbol(s.to_string())),
            None => Ok(()),
        }
    }

    /// Whether `w` is a well-nested word; `Err` if the alphabet is plain.
    pub fn is_well_nested(&self, w: &Word) -> Result<bool> {
        let a = self.require_structured()?;
        Ok(a.tag_word(w)?.is_well_nested())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> StructuredAlphabet {
        StructuredAlphabet::from_names(&["c1", "c2", "c"], &["r"]).unwrap()
    }

    fn w(text: &str) -> NestedWord {
        sigma().parse_word(text).unwrap()
    }

    #[test]
    fn well_nested_examples() {
        assert!(w("c1 r c2 r").is_well_nested());
        assert!(!w("r c1").is_well_nested());
        assert!(w("").is_well_nested());
        assert_eq!(w("r c1").nesting_violation(), Some(0));
        assert_eq!(w("c1 c1 r").nesting_violation(), Some(3));
    }

    #[test]
    fn decompose_examples() {
        let d = w("c1 r c2 r").decompose().unwrap();
        assert_eq!(d.call.as_str(), "c1");
        assert_eq!(d.inner, NestedWord::empty());
        assert_eq!(d.ret.as_str(), "r");
        assert_eq!(d.rest, w("c2 r"));

        let d = w("c1 c2 r r").decompose().unwrap();
        assert_eq!(d.inner, w("c2 r"));
        assert!(d.rest.is_empty());

        let d = w("c r").decompose().unwrap();
        assert!(d.inner.is_empty() && d.rest.is_empty());

        assert_eq!(NestedWord::empty().decompose(), Err(Error::EmptyWord));
        assert!(matches!(
            w("r c1").decompose(),
            Err(Error::NotWellNested { .. })
        ));
    }

    #[test]
    fn size_and_height() {
        assert_eq!(w("").size(), 0);
        assert_eq!(w("c r").size(), 2);
        assert_eq!(w("c1 r c2 r").size(), 4);
        assert_eq!(w("").height().unwrap(), 0);
        assert_eq!(w("c r").height().unwrap(), 1);
        assert_eq!(w("c c r r c r").height().unwrap(), 2);
        assert!(w("r").height().is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(StructuredAlphabet::from_names(&["a"], &["a"]).is_err());
        assert!(StructuredAlphabet::from_names(&["⊥c"], &["r"]).is_err());
        assert!(StructuredAlphabet::from_names(&["⊥r"], &["r"]).is_err());
        let s = StructuredAlphabet::from_names(&["c", "⊥c"], &["r", "⊥r"]).unwrap();
        assert!(s.has_bottom());
        assert!(!s.without_bottom().has_bottom());
        assert_eq!(s.without_bottom().with_bottom(), s);
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        assert_eq!(
            sigma().parse_word("c1 x"),
            Err(Error::UnknownSymbol("x".into()))
        );
    }
}
