// SPDX-License-Identifier: Apache-2.0

//! Hedges, binary trees, and the encodings between them and nested words:
//! `lin`, `hedge`, and the first-child next-sibling encoding (on hedges and
//! directly on linearizations).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Letter, NestedWord, StructuredAlphabet, Symbol, Tag};

/// A node label. Hedges obtained from nested words carry `(call, return)`
/// pairs; hand-written hedges carry atoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(Symbol),
    Pair(Symbol, Symbol),
}

impl Label {
    pub fn atom(name: &str) -> Self {
        Label::Atom(Symbol::new(name))
    }

    pub fn pair(call: &str, ret: &str) -> Self {
        Label::Pair(Symbol::new(call), Symbol::new(ret))
    }

    /// Opening symbol under `lin`: `c_a` for an atom `a`, `c` for `(c, r)`.
    pub fn call_symbol(&self) -> Symbol {
        match self {
            Label::Atom(a) => Symbol::new(format!("c_{a}")),
            Label::Pair(c, _) => c.clone(),
        }
    }

    /// Closing symbol under `lin`.
    pub fn return_symbol(&self) -> Symbol {
        match self {
            Label::Atom(a) => Symbol::new(format!("r_{a}")),
            Label::Pair(_, r) => r.clone(),
        }
    }

    /// The label as a single output symbol (used by the mirror transducer).
    pub fn as_symbol(&self) -> Symbol {
        match self {
            Label::Atom(a) => a.clone(),
            Label::Pair(..) => Symbol::new(self.to_string()),
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Label::Pair(..))
    }

    /// Parses `a` or `<c,r>`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            let (c, r) = inner
                .split_once(',')
                .ok_or_else(|| Error::parse(1, 1, format!("malformed pair label `{text}`")))?;
            if c.is_empty() || r.is_empty() {
                return Err(Error::parse(1, 1, format!("malformed pair label `{text}`")));
            }
            return Ok(Label::Pair(Symbol::new(c), Symbol::new(r)));
        }
        if text.is_empty() || text.contains(|ch: char| "()<>".contains(ch) || ch.is_whitespace()) {
            return Err(Error::parse(1, 1, format!("malformed label `{text}`")));
        }
        Ok(Label::Atom(Symbol::new(text)))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(a) => a.fmt(f),
            Label::Pair(c, r) => write!(f, "<{c},{r}>"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The structured alphabet `Λs` that `lin` targets.
pub fn lin_alphabet<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Result<StructuredAlphabet> {
    let labels: Vec<&Label> = labels.into_iter().collect();
    StructuredAlphabet::new(
        labels.iter().map(|l| l.call_symbol()),
        labels.iter().map(|l| l.return_symbol()),
    )
}

/// The product alphabet `Σc × Σr` as hedge labels.
pub fn product_labels(sigma: &StructuredAlphabet) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    for c in sigma.calls() {
        for r in sigma.returns() {
            out.insert(Label::Pair(c.clone(), r.clone()));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub label: Label,
    pub children: Hedge,
}

/// A hedge in flattened canonical form: a sequence of trees. The empty
/// sequence is the empty hedge, and concatenation is sequence concatenation.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hedge(pub Vec<Tree>);

impl Hedge {
    pub fn empty() -> Self {
        Hedge(Vec::new())
    }

    /// `label(children)` as a one-tree hedge.
    pub fn node(label: Label, children: Hedge) -> Self {
        Hedge(vec![Tree { label, children }])
    }

    pub fn leaf(label: Label) -> Self {
        Hedge::node(label, Hedge::empty())
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Hedge) -> Hedge {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Hedge(v)
    }

    /// Linearization into a well-nested word.
    pub fn lin(&self) -> NestedWord {
        fn go(h: &Hedge, out: &mut Vec<Letter>) {
            for t in &h.0 {
                out.push(Letter::call(t.label.call_symbol()));
                go(&t.children, out);
                out.push(Letter::ret(t.label.return_symbol()));
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        NestedWord(out)
    }

    /// Number of labeled nodes.
    pub fn node_count(&self) -> usize {
        self.0.iter().map(|t| 1 + t.children.node_count()).sum()
    }

    /// Height, equal to the height of the linearization.
    pub fn height(&self) -> usize {
        self.0
            .iter()
            .map(|t| 1 + t.children.height())
            .max()
            .unwrap_or(0)
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        fn go(h: &Hedge, out: &mut BTreeSet<Label>) {
            for t in &h.0 {
                out.insert(t.label.clone());
                go(&t.children, out);
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// First-child next-sibling encoding.
    pub fn fcns(&self) -> BinaryTree {
        let mut acc = BinaryTree::Bot;
        for t in self.0.iter().rev() {
            acc = BinaryTree::Node(t.label.clone(), Box::new(t.children.fcns()), Box::new(acc));
        }
        acc
    }

    /// Parses the term syntax: `a`, `a(b c)`, concatenation by whitespace,
    /// `ε` (or nothing) for the empty hedge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = TermParser::new(text);
        let h = p.hedge()?;
        p.finish()?;
        Ok(h)
    }
}

impl fmt::Display for Hedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            t.label.fmt(f)?;
            if !t.children.is_empty() {
                write!(f, "({})", t.children)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Hedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Binary trees: `⊥` or `f(t1 t2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Bot,
    Node(Label, Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    /// Linearization, with `⊥` leaves written `⊥c ⊥r`.
    pub fn lin(&self) -> NestedWord {
        fn go(t: &BinaryTree, out: &mut Vec<Letter>) {
            match t {
                BinaryTree::Bot => {
                    out.push(Letter::bot_call());
                    out.push(Letter::bot_return());
                }
                BinaryTree::Node(l, a, b) => {
                    out.push(Letter::call(l.call_symbol()));
                    go(a, out);
                    go(b, out);
                    out.push(Letter::ret(l.return_symbol()));
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        NestedWord(out)
    }

    /// Inverse of [`Hedge::fcns`].
    pub fn to_hedge(&self) -> Hedge {
        let mut trees = Vec::new();
        let mut cur = self;
        while let BinaryTree::Node(l, first, next) = cur {
            trees.push(Tree {
                label: l.clone(),
                children: first.to_hedge(),
            });
            cur = next;
        }
        Hedge(trees)
    }

    pub fn internal_count(&self) -> usize {
        match self {
            BinaryTree::Bot => 0,
            BinaryTree::Node(_, a, b) => 1 + a.internal_count() + b.internal_count(),
        }
    }

    /// Parses the term syntax with `_` for `⊥`: `a(_ b(_ _))`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = TermParser::new(text);
        let t = p.binary()?;
        p.finish()?;
        Ok(t)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Bot => f.write_str("_"),
            BinaryTree::Node(l, a, b) => write!(f, "{l}({a} {b})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `hedge(w)`: the hedge over `Σc × Σr` encoded by a well-nested word.
pub fn hedge_of(w: &NestedWord) -> Result<Hedge> {
    w.check_well_nested()?;
    let mut stack: Vec<(Symbol, Vec<Tree>)> = Vec::new();
    let mut top: Vec<Tree> = Vec::new();
    for l in w.letters() {
        match l.tag {
            Tag::Call => stack.push((l.symbol.clone(), std::mem::take(&mut top))),
            Tag::Return => {
                let (c, parent) = stack.pop().expect("checked well-nested");
                let children = std::mem::replace(&mut top, parent);
                top.push(Tree {
                    label: Label::Pair(c, l.symbol.clone()),
                    children: Hedge(children),
                });
            }
        }
    }
    Ok(Hedge(top))
}

/// fcns on linearizations: `fcns(ε) = ⊥c⊥r`, `fcns(c w1 r w2) = c fcns(w1) fcns(w2) r`.
pub fn fcns_word(w: &NestedWord) -> Result<NestedWord> {
    w.check_well_nested()?;
    // One frame per open sibling list; each holds the returns still owed by
    // the trees of that list, emitted in reverse once the list ends.
    let mut lists: Vec<Vec<Symbol>> = vec![Vec::new()];
    let mut out = Vec::with_capacity(2 * w.len() + 2);
    let close_list = |pending: Vec<Symbol>, out: &mut Vec<Letter>| {
        out.push(Letter::bot_call());
        out.push(Letter::bot_return());
        out.extend(pending.into_iter().rev().map(Letter::ret));
    };
    for l in w.letters() {
        match l.tag {
            Tag::Call => {
                out.push(l.clone());
                lists.push(Vec::new());
            }
            Tag::Return => {
                let children = lists.pop().expect("checked well-nested");
                close_list(children, &mut out);
                lists
                    .last_mut()
                    .expect("parent list exists")
                    .push(l.symbol.clone());
            }
        }
    }
    close_list(lists.pop().expect("top-level list"), &mut out);
    Ok(NestedWord(out))
}

/// Token of a binary word with holes: either a letter or a numbered slot
/// standing for a complete subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Piece {
    Letter(Letter),
    Slot(usize),
}

/// Applies `fcns⁻¹` to a binary well-nested word in which slots stand for
/// whole subtrees. Reports the earliest offset of a shape violation.
pub(crate) fn invert_binary(pieces: &[Piece]) -> Result<Vec<Piece>> {
    struct Frame {
        call: Letter,
        first: Option<Vec<Piece>>,
        second: Option<Vec<Piece>>,
    }
    let bad = |offset, reason| Error::NotBinary { offset, reason };
    let mut stack: Vec<Frame> = Vec::new();
    let mut result: Option<Vec<Piece>> = None;

    let deliver = |stack: &mut Vec<Frame>, result: &mut Option<Vec<Piece>>, value, at| {
        match stack.last_mut() {
            None => {
                *result = Some(value);
                Ok(())
            }
            Some(top) if top.first.is_none() => {
                top.first = Some(value);
                Ok(())
            }
            Some(top) if top.second.is_none() => {
                top.second = Some(value);
                Ok(())
            }
            Some(_) => Err(bad(at, "node has more than two subtrees")),
        }
    };

    let mut i = 0;
    while i < pieces.len() {
        if result.is_some() {
            return Err(bad(i, "trailing symbols after a complete tree"));
        }
        match &pieces[i] {
            Piece::Slot(k) => {
                deliver(&mut stack, &mut result, vec![Piece::Slot(*k)], i)?;
                i += 1;
            }
            Piece::Letter(l) if l.is_call() && l.symbol.is_bot_call() => {
                match pieces.get(i + 1) {
                    Some(Piece::Letter(n)) if n.is_return() && n.symbol.is_bot_return() => {}
                    _ => return Err(bad(i + 1, "⊥c must be followed by ⊥r")),
                }
                deliver(&mut stack, &mut result, Vec::new(), i)?;
                i += 2;
            }
            Piece::Letter(l) if l.is_call() => {
                if let Some(top) = stack.last() {
                    if top.second.is_some() {
                        return Err(bad(i, "node has more than two subtrees"));
                    }
                }
                stack.push(Frame {
                    call: l.clone(),
                    first: None,
                    second: None,
                });
                i += 1;
            }
            Piece::Letter(l) if l.symbol.is_bot_return() => {
                return Err(bad(i, "unexpected ⊥r"));
            }
            Piece::Letter(l) => {
                let frame = stack.pop().ok_or_else(|| bad(i, "unmatched return"))?;
                let (Some(first), Some(second)) = (frame.first, frame.second) else {
                    return Err(bad(i, "node closes before two subtrees"));
                };
                let mut value = Vec::with_capacity(first.len() + second.len() + 2);
                value.push(Piece::Letter(frame.call));
                value.extend(first);
                value.push(Piece::Letter(l.clone()));
                value.extend(second);
                deliver(&mut stack, &mut result, value, i)?;
                i += 1;
            }
        }
    }
    if !stack.is_empty() {
        return Err(bad(pieces.len(), "unterminated node"));
    }
    result.ok_or_else(|| bad(0, "empty word"))
}

/// `fcns⁻¹` on binary well-nested words.
pub fn fcns_inv_word(w: &NestedWord) -> Result<NestedWord> {
    let pieces: Vec<Piece> = w.letters().iter().cloned().map(Piece::Letter).collect();
    let out = invert_binary(&pieces)?;
    Ok(out
        .into_iter()
        .map(|p| match p {
            Piece::Letter(l) => l,
            Piece::Slot(_) => unreachable!("no slots in input"),
        })
        .collect())
}

/// Membership in the set of binary well-nested words.
pub fn is_binary_wn(w: &NestedWord) -> bool {
    let pieces: Vec<Piece> = w.letters().iter().cloned().map(Piece::Letter).collect();
    invert_binary(&pieces).is_ok()
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn new(src: &'a str) -> Self {
        TermParser { src, pos: 0 }
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{ch}`")))
        }
    }

    fn label_token(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = if rest.starts_with('<') {
            rest.find('>')
                .map(|i| i + 1)
                .ok_or_else(|| self.err("unterminated pair label"))?
        } else {
            rest.find(|c: char| c.is_whitespace() || "()<>".contains(c))
                .unwrap_or(rest.len())
        };
        if len == 0 {
            return Err(self.err("expected a label"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn label(&mut self) -> Result<Label> {
        let column = self.column();
        let tok = self.label_token()?;
        Label::parse(tok).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(1, column, message),
            e => e,
        })
    }

    fn hedge(&mut self) -> Result<Hedge> {
        let mut trees = Vec::new();
        loop {
            match self.peek() {
                None | Some(')') => break,
                Some('ε') => {
                    self.pos += 'ε'.len_utf8();
                }
                Some(_) => {
                    let label = self.label()?;
                    let children = if self.peek() == Some('(') {
                        self.expect('(')?;
                        let h = self.hedge()?;
                        self.expect(')')?;
                        h
                    } else {
                        Hedge::empty()
                    };
                    trees.push(Tree { label, children });
                }
            }
        }
        Ok(Hedge(trees))
    }

    fn binary(&mut self) -> Result<BinaryTree> {
        if self.peek() == Some('_') {
            let save = self.pos;
            self.pos += 1;
            match self.src[self.pos..].chars().next() {
                None => return Ok(BinaryTree::Bot),
                Some(c) if c.is_whitespace() || c == ')' => return Ok(BinaryTree::Bot),
                _ => self.pos = save,
            }
        }
        let label = self.label()?;
        self.expect('(')?;
        let a = self.binary()?;
        let b = self.binary()?;
        self.expect(')')?;
        Ok(BinaryTree::Node(label, Box::new(a), Box::new(b)))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}
