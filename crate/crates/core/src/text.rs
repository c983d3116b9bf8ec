// SPDX-License-Identifier: Apache-2.0

//! Line-oriented text formats for the two models.
//!
//! ```text
//! vpt
//! calls: c_a c_b        returns: r_a r_b
//! out: x y
//! states: q0 q1         stack: g0 g1
//! initial: q0           final: q1
//! call q0 c_a g0 [x y] q1
//! ret  q1 r_a g0 []    q0
//! ```
//!
//! ```text
//! h2s
//! in: a b            out: x y
//! states: q p        initial: q
//! leaf q
//! rule q a -> [x] p [y] q []
//! ```
//!
//! `out-calls:` / `out-returns:` replace `out:` for a structured output
//! alphabet. A `#` at the start of a token comments out the rest of the
//! line. The `h2s-ext` header allows `leaf q [w]`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::h2s::{H2s, LeafRule, NodeRule};
use crate::hedges::Label;
use crate::vpt::{fmt_call, fmt_return, CallTransition, ReturnTransition, Vpt};
use crate::words::{OutputAlphabet, StructuredAlphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Vpt(Vpt),
    H2s(H2s),
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize<'a>(src: &'a str) -> Vec<Vec<Token<'a>>> {
    let mut lines = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        let push = |tokens: &mut Vec<Token<'a>>, from: usize, to: usize| {
            tokens.push(Token {
                text: &line[from..to],
                line: i + 1,
                column: line[..from].chars().count() + 1,
            });
        };
        let mut comment = false;
        for (at, ch) in line.char_indices() {
            if ch.is_whitespace() || ch == '[' || ch == ']' {
                if let Some(s) = start.take() {
                    push(&mut tokens, s, at);
                }
                if ch != '[' && ch != ']' {
                    continue;
                }
                push(&mut tokens, at, at + 1);
            } else if start.is_none() {
                if ch == '#' {
                    comment = true;
                    break;
                }
                start = Some(at);
            }
        }
        if !comment {
            if let Some(s) = start {
                push(&mut tokens, s, line.len());
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn err(t: &Token<'_>, msg: impl Into<String>) -> Error {
    Error::parse(t.line, t.column, msg)
}

struct Cursor<'t, 'a> {
    tokens: &'t [Token<'a>],
    pos: usize,
    /// Position reported when the line ends early.
    end: (usize, usize),
}

impl<'t, 'a> Cursor<'t, 'a> {
    fn new(tokens: &'t [Token<'a>]) -> Self {
        let last = tokens.last().expect("non-empty line");
        Cursor {
            tokens,
            pos: 0,
            end: (last.line, last.column + last.text.chars().count()),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'t Token<'a>> {
        let t = self
            .tokens
            .get(self.pos)
            .ok_or_else(|| Error::parse(self.end.0, self.end.1, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn name(&mut self, what: &str) -> Result<Symbol> {
        let t = self.next(what)?;
        if t.text == "[" || t.text == "]" {
            return Err(err(t, format!("expected {what}, found `{}`", t.text)));
        }
        Ok(Symbol::new(t.text))
    }

    fn expect(&mut self, text: &str) -> Result<()> {
        let t = self.next(&format!("`{text}`"))?;
        if t.text != text {
            return Err(err(t, format!("expected `{text}`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn word(&mut self) -> Result<Word> {
        self.expect("[")?;
        let mut w = Vec::new();
        loop {
            let t = self.next("`]`")?;
            match t.text {
                "]" => return Ok(Word(w)),
                "[" => return Err(err(t, "nested `[`")),
                s => w.push(Symbol::new(s)),
            }
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(err(t, format!("unexpected `{}`", t.text))),
        }
    }
}

/// `key: values…` groups of a declaration line.
fn sections<'t, 'a>(tokens: &'t [Token<'a>]) -> Result<Vec<(&'t Token<'a>, Vec<&'t Token<'a>>)>> {
    let mut out: Vec<(&Token, Vec<&Token>)> = Vec::new();
    for t in tokens {
        if t.text.ends_with(':') && t.text.len() > 1 {
            out.push((t, Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, values)) => values.push(t),
                None => return Err(err(t, format!("unexpected `{}`", t.text))),
            }
        }
    }
    Ok(out)
}

#[derive(Default)]
struct Decls {
    sigma_calls: Option<Vec<Symbol>>,
    sigma_returns: Option<Vec<Symbol>>,
    labels: Option<BTreeSet<Label>>,
    out: Option<Vec<Symbol>>,
    out_calls: Option<Vec<Symbol>>,
    out_returns: Option<Vec<Symbol>>,
    states: Vec<Symbol>,
    stack: Vec<Symbol>,
    initial: Vec<Symbol>,
    finals: Vec<Symbol>,
}

impl Decls {
    fn read(&mut self, line: &[Token<'_>], vpt: bool) -> Result<()> {
        for (key, values) in sections(line)? {
            let names = || values.iter().map(|t| Symbol::new(t.text)).collect::<Vec<_>>();
            let dup = || err(key, format!("duplicate `{}`", key.text));
            let set = |slot: &mut Option<Vec<Symbol>>| {
                if slot.is_some() {
                    return Err(dup());
                }
                *slot = Some(names());
                Ok(())
            };
            match (key.text, vpt) {
                ("calls:", true) => set(&mut self.sigma_calls)?,
                ("returns:", true) => set(&mut self.sigma_returns)?,
                ("in:", false) => {
                    if self.labels.is_some() {
                        return Err(dup());
                    }
                    let mut labels = BTreeSet::new();
                    for t in &values {
                        labels.insert(Label::parse(t.text).map_err(|_| err(t, format!("malformed label `{}`", t.text)))?);
                    }
                    self.labels = Some(labels);
                }
                ("out:", _) => set(&mut self.out)?,
                ("out-calls:", _) => set(&mut self.out_calls)?,
                ("out-returns:", _) => set(&mut self.out_returns)?,
                ("states:", _) => self.states.extend(names()),
                ("stack:", true) => self.stack.extend(names()),
                ("initial:", _) => self.initial.extend(names()),
                ("final:", true) => self.finals.extend(names()),
                _ => return Err(err(key, format!("unknown section `{}`", key.text))),
            }
        }
        Ok(())
    }

    fn output(&mut self, at: (usize, usize)) -> Result<OutputAlphabet> {
        let wrap = |e: Error| match e {
            Error::Alphabet(m) => Error::parse(at.0, at.1, m),
            e => e,
        };
        match (self.out.take(), self.out_calls.take(), self.out_returns.take()) {
            (Some(out), None, None) => Ok(OutputAlphabet::Plain(out.into_iter().collect())),
            (None, calls, returns) => Ok(OutputAlphabet::Structured(
                StructuredAlphabet::new(calls.unwrap_or_default(), returns.unwrap_or_default()).map_err(wrap)?,
            )),
            _ => Err(Error::parse(at.0, at.1, "`out:` cannot be combined with `out-calls:`/`out-returns:`")),
        }
    }
}

/// Parses either format, chosen by the header.
pub fn parse_model(src: &str) -> Result<Model> {
    let lines = tokenize(src);
    let Some(first) = lines.first() else {
        return Err(Error::parse(1, 1, "empty model file"));
    };
    match first[0].text {
        "vpt" => parse_vpt(src).map(Model::Vpt),
        "h2s" | "h2s-ext" => parse_h2s(src).map(Model::H2s),
        other => Err(err(&first[0], format!("expected `vpt` or `h2s` header, found `{other}`"))),
    }
}

fn header<'t, 'a>(lines: &'t [Vec<Token<'a>>], allowed: &[&str]) -> Result<&'t Token<'a>> {
    let Some(first) = lines.first() else {
        return Err(Error::parse(1, 1, "empty model file"));
    };
    let h = &first[0];
    if !allowed.contains(&h.text) {
        return Err(err(h, format!("expected `{}` header, found `{}`", allowed[0], h.text)));
    }
    if let Some(t) = first.get(1) {
        return Err(err(t, format!("unexpected `{}`", t.text)));
    }
    Ok(h)
}

pub fn parse_vpt(src: &str) -> Result<Vpt> {
    let lines = tokenize(src);
    let h = header(&lines, &["vpt"])?;
    let mut d = Decls::default();
    let mut calls = Vec::new();
    let mut returns = Vec::new();
    for line in &lines[1..] {
        let mut c = Cursor::new(line);
        match line[0].text {
            "call" | "ret" => {
                c.next("keyword")?;
                let from = c.name("source state")?;
                let input = c.name("input symbol")?;
                let gamma = c.name("stack symbol")?;
                let output = c.word()?;
                let to = c.name("target state")?;
                c.finish()?;
                if line[0].text == "call" {
                    calls.push((line[0].clone(), CallTransition { from, input, push: gamma, output, to }));
                } else {
                    returns.push((line[0].clone(), ReturnTransition { from, input, pop: gamma, output, to }));
                }
            }
            _ => d.read(line, true)?,
        }
    }
    let at = (h.line, h.column);
    let input = StructuredAlphabet::new(d.sigma_calls.take().unwrap_or_default(), d.sigma_returns.take().unwrap_or_default())
        .map_err(|e| Error::parse(at.0, at.1, e.to_string()))?;
    let output = d.output(at)?;
    let mut b = Vpt::builder(input, output);
    b.states = d.states.into_iter().collect();
    b.stack = d.stack.into_iter().collect();
    b.initial = d.initial.into_iter().collect();
    b.finals = d.finals.into_iter().collect();
    // validate transitions one by one so errors point at a line
    for (tok, t) in calls {
        let mut probe = b.clone();
        probe.calls = vec![t.clone()];
        probe.returns.clear();
        probe.build().map_err(|e| err(&tok, e.to_string()))?;
        b.calls.push(t);
    }
    for (tok, t) in returns {
        let mut probe = b.clone();
        probe.calls.clear();
        probe.returns = vec![t.clone()];
        probe.build().map_err(|e| err(&tok, e.to_string()))?;
        b.returns.push(t);
    }
    b.build().map_err(|e| Error::parse(at.0, at.1, e.to_string()))
}

pub fn parse_h2s(src: &str) -> Result<H2s> {
    let lines = tokenize(src);
    let h = header(&lines, &["h2s", "h2s-ext"])?;
    let extended = h.text == "h2s-ext";
    let mut d = Decls::default();
    let mut leaves = Vec::new();
    let mut rules = Vec::new();
    for line in &lines[1..] {
        let mut c = Cursor::new(line);
        match line[0].text {
            "leaf" => {
                c.next("keyword")?;
                let state = c.name("state")?;
                let output = if c.at_end() {
                    Word::empty()
                } else if extended {
                    c.word()?
                } else {
                    let t = c.next("end of line")?;
                    return Err(err(t, "leaf outputs need the `h2s-ext` header"));
                };
                c.finish()?;
                leaves.push((line[0].clone(), LeafRule { state, output }));
            }
            "rule" => {
                c.next("keyword")?;
                let state = c.name("state")?;
                let lt = c.next("label")?;
                let label = Label::parse(lt.text).map_err(|_| err(lt, format!("malformed label `{}`", lt.text)))?;
                c.expect("->")?;
                let w1 = c.word()?;
                let child = c.name("child state")?;
                let w2 = c.word()?;
                let sibling = c.name("sibling state")?;
                let w3 = c.word()?;
                c.finish()?;
                rules.push((
                    line[0].clone(),
                    NodeRule { state, label, w1, child, w2, sibling, w3 },
                ));
            }
            _ => d.read(line, false)?,
        }
    }
    let at = (h.line, h.column);
    let labels = d.labels.take().unwrap_or_default();
    let output = d.output(at)?;
    let mut b = H2s::builder(labels, output);
    b.states = d.states.into_iter().collect();
    b.initial = d.initial.into_iter().collect();
    for (tok, l) in leaves {
        let mut probe = b.clone();
        probe.leaves = vec![l.clone()];
        probe.build().map_err(|e| err(&tok, e.to_string()))?;
        b.leaves.push(l);
    }
    for (tok, r) in rules {
        let mut probe = b.clone();
        probe.leaves.clear();
        probe.rules = vec![r.clone()];
        probe.build().map_err(|e| err(&tok, e.to_string()))?;
        b.rules.push(r);
    }
    b.build().map_err(|e| Error::parse(at.0, at.1, e.to_string()))
}

fn join<'a>(items: impl IntoIterator<Item = &'a Symbol>) -> String {
    items.into_iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
}

fn write_output(s: &mut String, out: &OutputAlphabet) {
    match out {
        OutputAlphabet::Plain(set) => {
            let _ = writeln!(s, "out: {}", join(set));
        }
        OutputAlphabet::Structured(sigma) => {
            let _ = writeln!(s, "out-calls: {}", join(sigma.calls()));
            let _ = writeln!(s, "out-returns: {}", join(sigma.returns()));
        }
    }
}

pub fn write_vpt(a: &Vpt) -> String {
    let mut s = String::from("vpt\n");
    let _ = writeln!(s, "calls: {}", join(a.input().calls()));
    let _ = writeln!(s, "returns: {}", join(a.input().returns()));
    write_output(&mut s, a.output());
    let _ = writeln!(s, "states: {}", join(a.states()));
    let _ = writeln!(s, "stack: {}", join(a.stack_alphabet()));
    let _ = writeln!(s, "initial: {}", join(a.initial()));
    let _ = writeln!(s, "final: {}", join(a.finals()));
    for t in a.calls() {
        let _ = writeln!(s, "{}", fmt_call(t));
    }
    for t in a.returns() {
        let _ = writeln!(s, "{}", fmt_return(t));
    }
    s
}

pub fn write_h2s(t: &H2s) -> String {
    let mut s = String::from(if t.is_standard() { "h2s\n" } else { "h2s-ext\n" });
    let labels: Vec<String> = t.input().iter().map(Label::to_string).collect();
    let _ = writeln!(s, "in: {}", labels.join(" "));
    write_output(&mut s, t.output());
    let _ = writeln!(s, "states: {}", join(t.states()));
    let _ = writeln!(s, "initial: {}", join(t.initial()));
    for l in t.leaves() {
        if l.output.is_empty() {
            let _ = writeln!(s, "leaf {}", l.state);
        } else {
            let _ = writeln!(s, "leaf {} {}", l.state, l.output.bracketed());
        }
    }
    for r in t.rules() {
        let _ = writeln!(
            s,
            "rule {} {} -> {} {} {} {} {}",
            r.state,
            r.label,
            r.w1.bracketed(),
            r.child,
            r.w2.bracketed(),
            r.sibling,
            r.w3.bracketed()
        );
    }
    s
}

pub fn write_model(m: &Model) -> String {
    match m {
        Model::Vpt(a) => write_vpt(a),
        Model::H2s(t) => write_h2s(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hedges::Hedge;

    const VPT: &str = "vpt
calls: c_a c_b        returns: r_a r_b
out: x y
states: q0 q1         stack: g0 g1
initial: q0           final: q1   # comment
call q0 c_a g0 [x y] q1
ret  q1 r_a g0 []    q0
";

    #[test]
    fn vpt_example() {
        let a = parse_vpt(VPT).unwrap();
        assert_eq!(a.states().len(), 2);
        assert_eq!(a.calls()[0].output, Word::from_names(&["x", "y"]));
        assert_eq!(parse_vpt(&write_vpt(&a)).unwrap(), a);
        assert!(matches!(parse_model(VPT), Ok(Model::Vpt(_))));
    }

    #[test]
    fn h2s_example() {
        let src = "h2s\nin: a b            out: x y\nstates: q p        initial: q\nleaf q\nrule q a -> [x] p [y] q []\n";
        let t = parse_h2s(src).unwrap();
        assert_eq!(t.rules().len(), 1);
        assert_eq!(parse_h2s(&write_h2s(&t)).unwrap(), t);
    }

    #[test]
    fn builtins_round_trip() {
        let labels: BTreeSet<Label> = [Label::atom("f"), Label::pair("c", "r")].into();
        for name in ["mirror", "subhedge_root", "flatten"] {
            let t = H2s::builtin(name, &labels).unwrap();
            let back = parse_h2s(&write_h2s(&t)).unwrap();
            assert_eq!(back, t, "{name}");
            let h = Hedge::parse("f <c,r>").unwrap();
            assert_eq!(back.eval(&h).unwrap(), t.eval(&h).unwrap());
        }
    }

    #[test]
    fn hash_inside_symbol() {
        let src = "h2s\nin: f\nout-calls: c_# c_f\nout-returns: r_# r_f\nstates: q\ninitial: q\nleaf q\nrule q f -> [c_# c_f] q [r_f r_#] q []\n";
        let t = parse_h2s(src).unwrap();
        assert_eq!(t.rules()[0].w1.to_string(), "c_# c_f");
    }

    #[test]
    fn extended_leaves() {
        let src = "h2s\nin: a\nout: x\nstates: q\ninitial: q\nleaf q [x]\n";
        assert_eq!(
            parse_h2s(src),
            Err(Error::parse(6, 8, "leaf outputs need the `h2s-ext` header"))
        );
        let t = parse_h2s(&src.replacen("h2s", "h2s-ext", 1)).unwrap();
        assert!(!t.is_standard());
        assert!(write_h2s(&t).starts_with("h2s-ext\n"));
    }

    #[test]
    fn errors_have_positions() {
        let bad = VPT.replace("call q0 c_a g0 [x y] q1", "call q0 c_a g0 [x y q1");
        assert_eq!(parse_vpt(&bad), Err(Error::parse(6, 23, "expected `]`")));
        let bad = VPT.replace("call q0 c_a", "call q9 c_a");
        match parse_vpt(&bad) {
            Err(Error::Parse { line: 6, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        let bad = VPT.replace("out: x y", "outs: x y");
        match parse_vpt(&bad) {
            Err(Error::Parse { line: 3, column: 1, message }) => assert!(message.contains("outs:")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_model("nonsense"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(parse_model("# only a comment\n").is_err());
    }
}
