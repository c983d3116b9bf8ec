// SPDX-License-Identifier: Apache-2.0

//! Hedge-to-string transducers with linear, order-preserving rules
//!
//! ```text
//! q(0) → w              (leaf rule; w = ε outside the extended dialect)
//! q(f(x1)·x2) → w1 q1(x1) w2 q2(x2) w3
//! ```
//!
//! and the derived subclasses: tail-recursive (`w3 = ε`), hedge-to-hedge
//! (`w1 w2 w3` well-nested) and hedge-to-binary-tree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::hedges::{is_binary_wn, Hedge, Label};
use crate::vpt::DEFAULT_OUTPUT_CAP;
use crate::words::{Letter, NestedWord, OutputAlphabet, StructuredAlphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRule {
    pub state: Symbol,
    pub label: Label,
    pub w1: Word,
    pub child: Symbol,
    pub w2: Word,
    pub sibling: Symbol,
    pub w3: Word,
}

impl NodeRule {
    pub fn new(
        state: &str,
        label: Label,
        w1: &[&str],
        child: &str,
        w2: &[&str],
        sibling: &str,
        w3: &[&str],
    ) -> Self {
        NodeRule {
            state: Symbol::new(state),
            label,
            w1: Word::from_names(w1),
            child: Symbol::new(child),
            w2: Word::from_names(w2),
            sibling: Symbol::new(sibling),
            w3: Word::from_names(w3),
        }
    }

    /// `w1 · w2 · w3`.
    pub fn skeleton(&self) -> Word {
        Word::concat(&[&self.w1, &self.w2, &self.w3])
    }
}

impl fmt::Display for NodeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}(x1)·x2) → {} {}(x1) {} {}(x2) {}",
            self.state,
            self.label,
            self.w1.bracketed(),
            self.child,
            self.w2.bracketed(),
            self.sibling,
            self.w3.bracketed()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafRule {
    pub state: Symbol,
    pub output: Word,
}

#[derive(Clone, Debug)]
pub struct H2sBuilder {
    pub input: BTreeSet<Label>,
    pub output: OutputAlphabet,
    pub states: BTreeSet<Symbol>,
    pub initial: BTreeSet<Symbol>,
    pub leaves: Vec<LeafRule>,
    pub rules: Vec<NodeRule>,
}

impl H2sBuilder {
    pub fn new(input: BTreeSet<Label>, output: OutputAlphabet) -> Self {
        H2sBuilder {
            input,
            output,
            states: BTreeSet::new(),
            initial: BTreeSet::new(),
            leaves: Vec::new(),
            rules: Vec::new(),
        }
    }

    pub fn state(&mut self, q: &str) -> &mut Self {
        self.states.insert(Symbol::new(q));
        self
    }

    pub fn initial(&mut self, q: &str) -> &mut Self {
        self.state(q);
        self.initial.insert(Symbol::new(q));
        self
    }

    /// `q(0) → ε`.
    pub fn leaf(&mut self, q: &str) -> &mut Self {
        self.leaf_with(q, &[])
    }

    /// `q(0) → w` (extended dialect when `w` is non-empty).
    pub fn leaf_with(&mut self, q: &str, output: &[&str]) -> &mut Self {
        self.state(q);
        self.leaves.push(LeafRule {
            state: Symbol::new(q),
            output: Word::from_names(output),
        });
        self
    }

    pub fn rule(&mut self, rule: NodeRule) -> &mut Self {
        self.states.insert(rule.state.clone());
        self.states.insert(rule.child.clone());
        self.states.insert(rule.sibling.clone());
        self.rules.push(rule);
        self
    }

    pub fn build(&self) -> Result<H2s> {
        for q in &self.initial {
            if !self.states.contains(q) {
                return Err(Error::Model(format!("undeclared state `{q}`")));
            }
        }
        for l in &self.leaves {
            if !self.states.contains(&l.state) {
                return Err(Error::Model(format!("undeclared state `{}`", l.state)));
            }
            self.output.check_word(&l.output)?;
        }
        for r in &self.rules {
            for q in [&r.state, &r.child, &r.sibling] {
                if !self.states.contains(q) {
                    return Err(Error::Model(format!("undeclared state `{q}` in {r}")));
                }
            }
            if !self.input.contains(&r.label) {
                return Err(Error::UnknownLabel(r.label.to_string()));
            }
            for w in [&r.w1, &r.w2, &r.w3] {
                self.output.check_word(w)?;
            }
        }
        let leaves: BTreeSet<LeafRule> = self.leaves.iter().cloned().collect();
        let rules: BTreeSet<NodeRule> = self.rules.iter().cloned().collect();
        Ok(H2s {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            leaves: leaves.into_iter().collect(),
            rules: rules.into_iter().collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2s {
    input: BTreeSet<Label>,
    output: OutputAlphabet,
    states: BTreeSet<Symbol>,
    initial: BTreeSet<Symbol>,
    leaves: Vec<LeafRule>,
    rules: Vec<NodeRule>,
}

enum Suffix<'h> {
    Empty,
    Cons {
        label: &'h Label,
        child: usize,
        next: usize,
    },
}

/// Every suffix of every sibling list of a hedge, numbered so that a
/// suffix's first-child and next-sibling suffixes come before it.
fn suffixes(h: &Hedge) -> (Vec<Suffix<'_>>, usize) {
    fn go<'h>(h: &'h Hedge, arena: &mut Vec<Suffix<'h>>) -> usize {
        let mut next = 0;
        for t in h.trees().iter().rev() {
            let child = go(&t.children, arena);
            arena.push(Suffix::Cons {
                label: &t.label,
                child,
                next,
            });
            next = arena.len() - 1;
        }
        next
    }
    let mut arena = vec![Suffix::Empty];
    let root = go(h, &mut arena);
    (arena, root)
}

impl H2s {
    pub fn builder(input: BTreeSet<Label>, output: OutputAlphabet) -> H2sBuilder {
        H2sBuilder::new(input, output)
    }

    pub fn to_builder(&self) -> H2sBuilder {
        H2sBuilder {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            leaves: self.leaves.clone(),
            rules: self.rules.clone(),
        }
    }

    /// Renames each atom `a` to the pair `<c_a,r_a>` it becomes under `lin`.
    pub fn with_pair_labels(&self) -> Result<H2s> {
        let relabel = |l: &Label| Label::Pair(l.call_symbol(), l.return_symbol());
        let mut b = self.to_builder();
        b.input = self.input.iter().map(relabel).collect();
        if b.input.len() != self.input.len() {
            return Err(Error::Alphabet("two labels have the same linearization".into()));
        }
        for r in &mut b.rules {
            r.label = relabel(&r.label);
        }
        b.build()
    }

    pub fn input(&self) -> &BTreeSet<Label> {
        &self.input
    }

    pub fn output(&self) -> &OutputAlphabet {
        &self.output
    }

    pub fn states(&self) -> &BTreeSet<Symbol> {
        &self.states
    }

    pub fn initial(&self) -> &BTreeSet<Symbol> {
        &self.initial
    }

    pub fn leaves(&self) -> &[LeafRule] {
        &self.leaves
    }

    pub fn rules(&self) -> &[NodeRule] {
        &self.rules
    }

    /// States with a leaf rule.
    pub fn leaf_states(&self) -> BTreeSet<Symbol> {
        self.leaves.iter().map(|l| l.state.clone()).collect()
    }

    /// True when every leaf rule outputs ε.
    pub fn is_standard(&self) -> bool {
        self.leaves.iter().all(|l| l.output.is_empty())
    }

    /// Input labels are `(call, return)` pairs.
    pub fn has_product_input(&self) -> bool {
        !self.input.is_empty() && self.input.iter().all(Label::is_pair)
    }

    /// The structured alphabet `Σ` such that the input labels lie in `Σc × Σr`.
    pub fn product_base(&self) -> Result<StructuredAlphabet> {
        if !self.has_product_input() {
            return Err(Error::Precondition(
                "input alphabet is not a product Σc×Σr".into(),
            ));
        }
        let mut calls = BTreeSet::new();
        let mut returns = BTreeSet::new();
        for l in &self.input {
            if let Label::Pair(c, r) = l {
                calls.insert(c.clone());
                returns.insert(r.clone());
            }
        }
        StructuredAlphabet::new(calls, returns)
    }

    fn check_labels(&self, h: &Hedge) -> Result<()> {
        match h.labels().into_iter().find(|l| !self.input.contains(l)) {
            Some(l) => Err(Error::UnknownLabel(l.to_string())),
            None => Ok(()),
        }
    }

    /// `⟦q⟧` for every state on every suffix of `h`.
    fn table(&self, h: &Hedge, cap: usize) -> Result<(Vec<Vec<BTreeSet<Word>>>, usize, HashMap<&Symbol, usize>)> {
        self.check_labels(h)?;
        let idx: HashMap<&Symbol, usize> = self.states.iter().enumerate().map(|(i, q)| (q, i)).collect();
        let n = self.states.len();
        let mut leaf = vec![BTreeSet::new(); n];
        for l in &self.leaves {
            leaf[idx[&l.state]].insert(l.output.clone());
        }
        let mut by_label: HashMap<&Label, Vec<(usize, &NodeRule, usize, usize)>> = HashMap::new();
        for r in &self.rules {
            by_label
                .entry(&r.label)
                .or_default()
                .push((idx[&r.state], r, idx[&r.child], idx[&r.sibling]));
        }
        let (arena, root) = suffixes(h);
        let mut table: Vec<Vec<BTreeSet<Word>>> = Vec::with_capacity(arena.len());
        for node in &arena {
            let row = match node {
                Suffix::Empty => leaf.clone(),
                Suffix::Cons { label, child, next } => {
                    let mut row = vec![BTreeSet::new(); n];
                    for &(q, r, q1, q2) in by_label.get(label).into_iter().flatten() {
                        let left = &table[*child][q1];
                        let right = &table[*next][q2];
                        let cell: &mut BTreeSet<Word> = &mut row[q];
                        for a in left {
                            for b in right {
                                cell.insert(Word::concat(&[&r.w1, a, &r.w2, b, &r.w3]));
                            }
                            if cell.len() > cap {
                                return Err(Error::OutputOverflow { cap });
                            }
                        }
                    }
                    row
                }
            };
            table.push(row);
        }
        Ok((table, root, idx))
    }

    /// Union of `⟦q⟧(h)` over the initial states.
    pub fn eval(&self, h: &Hedge) -> Result<BTreeSet<Word>> {
        self.eval_capped(h, DEFAULT_OUTPUT_CAP)
    }

    pub fn eval_capped(&self, h: &Hedge, cap: usize) -> Result<BTreeSet<Word>> {
        let (table, root, idx) = self.table(h, cap)?;
        let mut out = BTreeSet::new();
        for q in &self.initial {
            out.extend(table[root][idx[q]].iter().cloned());
            if out.len() > cap {
                return Err(Error::OutputOverflow { cap });
            }
        }
        Ok(out)
    }

    /// `⟦q⟧(h)`.
    pub fn eval_state(&self, q: &Symbol, h: &Hedge) -> Result<BTreeSet<Word>> {
        if !self.states.contains(q) {
            return Err(Error::Model(format!("undeclared state `{q}`")));
        }
        let (mut table, root, idx) = self.table(h, DEFAULT_OUTPUT_CAP)?;
        Ok(std::mem::take(&mut table[root][idx[q]]))
    }

    pub fn is_tail_recursive(&self) -> bool {
        self.first_non_tail_recursive().is_none()
    }

    /// The first rule with a non-empty `w3`.
    pub fn first_non_tail_recursive(&self) -> Option<&NodeRule> {
        self.rules.iter().find(|r| !r.w3.is_empty())
    }

    pub fn is_h2h(&self) -> Result<bool> {
        Ok(self.h2h_violation()?.is_none())
    }

    /// The first rule (or leaf output) that is not well-nested.
    pub fn h2h_violation(&self) -> Result<Option<String>> {
        let out = self.output.require_structured()?;
        for l in &self.leaves {
            if !out.tag_word(&l.output)?.is_well_nested() {
                return Ok(Some(format!("leaf {} → {}", l.state, l.output.bracketed())));
            }
        }
        for r in &self.rules {
            if !out.tag_word(&r.skeleton())?.is_well_nested() {
                return Ok(Some(r.to_string()));
            }
        }
        Ok(None)
    }

    pub fn is_h2b(&self) -> Result<bool> {
        Ok(self.h2b_violation()?.is_none())
    }

    /// The first rule breaking the binary-tree shape. Leaf rules must output
    /// `⊥c ⊥r`, the encoding of the empty hedge.
    pub fn h2b_violation(&self) -> Result<Option<String>> {
        let out = self.output.require_structured()?;
        if !out.has_bottom() {
            return Err(Error::Precondition(
                "output alphabet does not contain ⊥c and ⊥r".into(),
            ));
        }
        let bot = Word(vec![Symbol::bot_call(), Symbol::bot_return()]);
        for l in &self.leaves {
            if l.output != bot {
                return Ok(Some(format!("leaf {} → {}", l.state, l.output.bracketed())));
            }
        }
        for r in &self.rules {
            if h2b_split(r, out)?.is_none() {
                return Ok(Some(r.to_string()));
            }
        }
        Ok(None)
    }

    /// Removes states that are unreachable from the initial states or that
    /// produce nothing on every hedge, together with their rules.
    pub fn prune(&self) -> H2s {
        let mut productive: BTreeSet<&Symbol> = self.leaves.iter().map(|l| &l.state).collect();
        loop {
            let before = productive.len();
            for r in &self.rules {
                if productive.contains(&r.child) && productive.contains(&r.sibling) {
                    productive.insert(&r.state);
                }
            }
            if productive.len() == before {
                break;
            }
        }
        let useful = |r: &&NodeRule| {
            productive.contains(&r.state) && productive.contains(&r.child) && productive.contains(&r.sibling)
        };
        let mut reachable: BTreeSet<&Symbol> =
            self.initial.iter().filter(|q| productive.contains(q)).collect();
        let mut work: Vec<&Symbol> = reachable.iter().copied().collect();
        let mut by_state: BTreeMap<&Symbol, Vec<&NodeRule>> = BTreeMap::new();
        for r in self.rules.iter().filter(useful) {
            by_state.entry(&r.state).or_default().push(r);
        }
        while let Some(q) = work.pop() {
            for r in by_state.get(q).into_iter().flatten() {
                for s in [&r.child, &r.sibling] {
                    if reachable.insert(s) {
                        work.push(s);
                    }
                }
            }
        }
        let keep = |q: &Symbol| reachable.contains(q);
        H2s {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.iter().filter(|q| keep(q)).cloned().collect(),
            initial: self.initial.iter().filter(|q| keep(q)).cloned().collect(),
            leaves: self.leaves.iter().filter(|l| keep(&l.state)).cloned().collect(),
            rules: self
                .rules
                .iter()
                .filter(|r| keep(&r.state) && keep(&r.child) && keep(&r.sibling))
                .cloned()
                .collect(),
        }
    }

    /// One of the example transducers, instantiated over `labels`:
    /// `mirror`, `subhedge_root` or `flatten`.
    pub fn builtin(name: &str, labels: &BTreeSet<Label>) -> Result<H2s> {
        match name {
            "mirror" => Ok(mirror(labels)),
            "subhedge_root" => subhedge_root(labels),
            "flatten" => flatten(labels),
            _ => Err(Error::Precondition(format!("unknown builtin `{name}`"))),
        }
    }
}

/// Finds a cut point `k` of `w2` making the rule a binary-tree rule:
/// `w1 = c·w1'`, `w3 = w3'·r`, and both `w1'·⊥c⊥r·w2[..k]` and
/// `w2[k..]·⊥c⊥r·w3'` are binary well-nested words.
pub fn h2b_split(rule: &NodeRule, out: &StructuredAlphabet) -> Result<Option<usize>> {
    let w1 = out.tag_word(&rule.w1)?;
    let w2 = out.tag_word(&rule.w2)?;
    let w3 = out.tag_word(&rule.w3)?;
    let (Some(first), Some(last)) = (w1.letters().first(), w3.letters().last()) else {
        return Ok(None);
    };
    if !first.is_call() || first.symbol.is_bottom() || !last.is_return() || last.symbol.is_bottom() {
        return Ok(None);
    }
    let inner1 = &w1.letters()[1..];
    let inner3 = &w3.letters()[..w3.len() - 1];
    let hole = [Letter::bot_call(), Letter::bot_return()];
    for k in 0..=w2.len() {
        let left: NestedWord = inner1
            .iter()
            .chain(&hole)
            .chain(&w2.letters()[..k])
            .cloned()
            .collect();
        let right: NestedWord = w2.letters()[k..]
            .iter()
            .chain(&hole)
            .chain(inner3)
            .cloned()
            .collect();
        if is_binary_wn(&left) && is_binary_wn(&right) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn mirror(labels: &BTreeSet<Label>) -> H2s {
    let out = OutputAlphabet::Plain(labels.iter().map(Label::as_symbol).collect());
    let mut b = H2s::builder(labels.clone(), out);
    b.initial("q").initial("q'").leaf("q").leaf("q'");
    for f in labels {
        let mut r = NodeRule::new("q", f.clone(), &[], "q'", &[], "q", &[]);
        r.w3 = Word(vec![f.as_symbol()]);
        b.rule(r);
    }
    b.build().expect("mirror is well-formed")
}

const HASH_CALL: &str = "c_#";
const HASH_RETURN: &str = "r_#";

fn subhedge_root(labels: &BTreeSet<Label>) -> Result<H2s> {
    let calls = labels
        .iter()
        .map(Label::call_symbol)
        .chain([Symbol::new(HASH_CALL)]);
    let returns = labels
        .iter()
        .map(Label::return_symbol)
        .chain([Symbol::new(HASH_RETURN)]);
    let out = OutputAlphabet::Structured(StructuredAlphabet::new(calls, returns)?);
    let mut b = H2s::builder(labels.clone(), out);
    b.initial("q0").state("q1").leaf("q0").leaf("q2");
    for f in labels {
        let c = f.call_symbol();
        let r = f.return_symbol();
        let (c, r) = (c.as_str(), r.as_str());
        let rule = |q, w1: &[&str], q1, w2: &[&str], q2| NodeRule::new(q, f.clone(), w1, q1, w2, q2, &[]);
        b.rule(rule("q0", &[c], "q0", &[r], "q0"));
        b.rule(rule("q0", &[HASH_CALL, c], "q2", &[r, HASH_RETURN], "q0"));
        b.rule(rule("q0", &[HASH_CALL, c], "q2", &[r], "q1"));
        b.rule(rule("q1", &[c], "q2", &[r, HASH_RETURN], "q0"));
        b.rule(rule("q1", &[c], "q2", &[r], "q1"));
        b.rule(rule("q2", &[c], "q2", &[r], "q2"));
    }
    b.build()
}

fn flatten(labels: &BTreeSet<Label>) -> Result<H2s> {
    let out = OutputAlphabet::Structured(StructuredAlphabet::new(
        labels.iter().map(Label::call_symbol),
        labels.iter().map(Label::return_symbol),
    )?);
    let mut b = H2s::builder(labels.clone(), out);
    b.initial("q").leaf("q");
    for f in labels {
        let c = f.call_symbol();
        let r = f.return_symbol();
        b.rule(NodeRule::new("q", f.clone(), &[c.as_str(), r.as_str()], "q", &[], "q", &[]));
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> BTreeSet<Label> {
        names.iter().map(|n| Label::atom(n)).collect()
    }

    fn h(t: &str) -> Hedge {
        Hedge::parse(t).unwrap()
    }

    fn words(v: &[&str]) -> BTreeSet<Word> {
        v.iter().map(|t| Word::parse(t)).collect()
    }

    #[test]
    fn mirror_reverses_strings() {
        let t = H2s::builtin("mirror", &labels(&["a", "b"])).unwrap();
        assert_eq!(t.eval(&h("a b")).unwrap(), words(&["b a"]));
        assert_eq!(t.eval(&h("a a b")).unwrap(), words(&["b a a"]));
        assert_eq!(t.eval(&h("")).unwrap(), words(&[""]));
        // not a string: the child state q' has only a leaf rule
        assert!(t.eval(&h("a(b)")).unwrap().is_empty());
        assert!(!t.is_tail_recursive());
    }

    #[test]
    fn eval_state_examples() {
        let t = H2s::builtin("mirror", &labels(&["a", "b"])).unwrap();
        let q1 = Symbol::new("q'");
        assert_eq!(t.eval_state(&q1, &h("")).unwrap(), words(&[""]));
        assert!(t.eval_state(&q1, &h("a b")).unwrap().is_empty());

        let mut b = H2s::builder(labels(&["a"]), OutputAlphabet::plain(&[]));
        b.initial("q");
        let t = b.build().unwrap();
        assert!(t.eval_state(&Symbol::new("q"), &h("")).unwrap().is_empty());
        assert!(t.eval_state(&Symbol::new("zz"), &h("")).is_err());
    }

    #[test]
    fn subhedge_root_example_outputs() {
        let t = H2s::builtin("subhedge_root", &labels(&["f", "a", "b", "c", "d"])).unwrap();
        assert!(t.is_tail_recursive());
        // `c_#` and `r_#` are emitted by different rules
        assert!(!t.is_h2h().unwrap());
        let out = t.eval(&h("f(a b c d)")).unwrap();
        let lin = |s: &str| h(s).lin().to_word();
        assert!(out.contains(&lin("f(a #(b c) d)")));
        assert!(out.contains(&lin("f(#(a b) #(c d))")));
        assert!(out.contains(&lin("f(a b c d)")));
        assert_eq!(
            lin("f(a #(b c) d)").to_string(),
            "c_f c_a r_a c_# c_b r_b c_c r_c r_# c_d r_d r_f"
        );
    }

    #[test]
    fn subhedge_root_on_one_node() {
        let t = H2s::builtin("subhedge_root", &labels(&["f"])).unwrap();
        let out = t.eval(&h("f")).unwrap();
        assert!(out.contains(&h("f").lin().to_word()));
        assert!(out.contains(&Word::parse("c_# c_f r_f r_#")));
    }

    #[test]
    fn flatten_examples() {
        let t = H2s::builtin("flatten", &labels(&["f"])).unwrap();
        assert_eq!(t.eval(&h("f(f)")).unwrap(), words(&["c_f r_f c_f r_f"]));
        assert!(t.is_tail_recursive() && t.is_h2h().unwrap());
        assert!(H2s::builtin("nope", &labels(&["f"])).is_err());
    }

    #[test]
    fn unknown_label() {
        let t = H2s::builtin("flatten", &labels(&["f"])).unwrap();
        assert_eq!(t.eval(&h("g")), Err(Error::UnknownLabel("g".into())));
    }

    #[test]
    fn tail_recursion_and_h2h() {
        let mut b = H2s::builder(labels(&["a"]), OutputAlphabet::plain(&[]));
        b.initial("q").leaf("q");
        assert!(b.build().unwrap().is_tail_recursive());

        // mirror over a structured reading in which `a` is a lone call
        let out = OutputAlphabet::Structured(StructuredAlphabet::from_names(&["a"], &["z"]).unwrap());
        let mut b = H2s::builder(labels(&["a"]), out);
        b.initial("q").leaf("q").leaf("q'");
        b.rule(NodeRule::new("q", Label::atom("a"), &[], "q'", &[], "q", &["a"]));
        let t = b.build().unwrap();
        assert!(!t.is_h2h().unwrap());
        assert_eq!(
            H2s::builtin("mirror", &labels(&["a"])).unwrap().is_h2h(),
            Err(Error::UnstructuredOutput)
        );
    }

    fn bot_out() -> OutputAlphabet {
        OutputAlphabet::Structured(
            StructuredAlphabet::from_names(&["c", "d"], &["r", "s"]).unwrap().with_bottom(),
        )
    }

    #[test]
    fn h2b_examples() {
        let mut b = H2s::builder(labels(&["a"]), bot_out());
        b.initial("q").leaf_with("q", &["⊥c", "⊥r"]);
        b.rule(NodeRule::new("q", Label::atom("a"), &["c"], "q", &[], "q", &["r"]));
        assert!(b.build().unwrap().is_h2b().unwrap());

        let mut b = H2s::builder(labels(&["a"]), bot_out());
        b.initial("q").leaf_with("q", &["⊥c", "⊥r"]);
        b.rule(NodeRule::new("q", Label::atom("a"), &[], "q", &["c"], "q", &["r"]));
        assert!(!b.build().unwrap().is_h2b().unwrap());

        // slot 1 sits under a nested node: c d [x1] ⊥c⊥r s [x2] r
        let mut b = H2s::builder(labels(&["a"]), bot_out());
        b.initial("q").leaf_with("q", &["⊥c", "⊥r"]);
        b.rule(NodeRule::new("q", Label::atom("a"), &["c", "d"], "q", &["⊥c", "⊥r", "s"], "q", &["r"]));
        let t = b.build().unwrap();
        assert!(t.is_h2b().unwrap());
        assert_eq!(h2b_split(&t.rules()[0], t.output().structured().unwrap()).unwrap(), Some(3));

        let flatten = H2s::builtin("flatten", &labels(&["a"])).unwrap();
        assert!(flatten.is_h2b().is_err());
    }

    #[test]
    fn prune_drops_useless_states() {
        let mut b = H2s::builder(labels(&["a"]), OutputAlphabet::plain(&[]));
        b.initial("q").leaf("q").state("island").state("dead");
        b.rule(NodeRule::new("q", Label::atom("a"), &[], "q", &[], "q", &[]));
        b.rule(NodeRule::new("q", Label::atom("a"), &[], "dead", &[], "q", &[]));
        b.rule(NodeRule::new("island", Label::atom("a"), &[], "q", &[], "q", &[]));
        let t = b.build().unwrap().prune();
        assert_eq!(t.states().len(), 1);
        assert_eq!(t.rules().len(), 1);
    }
}
