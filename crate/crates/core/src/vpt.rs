// SPDX-License-Identifier: Apache-2.0

//! Visibly pushdown transducers with empty-stack acceptance.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::words::{Letter, NestedWord, OutputAlphabet, StructuredAlphabet, Symbol, Tag, Word};

/// Default bound on the number of distinct outputs per input.
pub const DEFAULT_OUTPUT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CallTransition {
    pub from: Symbol,
    pub input: Symbol,
    pub push: Symbol,
    pub output: Word,
    pub to: Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReturnTransition {
    pub from: Symbol,
    pub input: Symbol,
    pub pop: Symbol,
    pub output: Word,
    pub to: Symbol,
}

/// Unvalidated parts of a [`Vpt`].
#[derive(Clone, Debug)]
pub struct VptBuilder {
    pub input: StructuredAlphabet,
    pub output: OutputAlphabet,
    pub states: BTreeSet<Symbol>,
    pub initial: BTreeSet<Symbol>,
    pub finals: BTreeSet<Symbol>,
    pub stack: BTreeSet<Symbol>,
    pub calls: Vec<CallTransition>,
    pub returns: Vec<ReturnTransition>,
}

impl VptBuilder {
    pub fn new(input: StructuredAlphabet, output: OutputAlphabet) -> Self {
        VptBuilder {
            input,
            output,
            states: BTreeSet::new(),
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
            stack: BTreeSet::new(),
            calls: Vec::new(),
            returns: Vec::new(),
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

    pub fn final_state(&mut self, q: &str) -> &mut Self {
        self.state(q);
        self.finals.insert(Symbol::new(q));
        self
    }

    /// Adds a call transition, declaring its states and stack symbol.
    pub fn call(&mut self, from: &str, input: &str, push: &str, output: &[&str], to: &str) -> &mut Self {
        self.state(from).state(to);
        self.stack.insert(Symbol::new(push));
        self.calls.push(CallTransition {
            from: Symbol::new(from),
            input: Symbol::new(input),
            push: Symbol::new(push),
            output: Word::from_names(output),
            to: Symbol::new(to),
        });
        self
    }

    /// Adds a return transition, declaring its states and stack symbol.
    pub fn ret(&mut self, from: &str, input: &str, pop: &str, output: &[&str], to: &str) -> &mut Self {
        self.state(from).state(to);
        self.stack.insert(Symbol::new(pop));
        self.returns.push(ReturnTransition {
            from: Symbol::new(from),
            input: Symbol::new(input),
            pop: Symbol::new(pop),
            output: Word::from_names(output),
            to: Symbol::new(to),
        });
        self
    }

    pub fn build(&self) -> Result<Vpt> {
        let bad = |msg: String| Err(Error::Model(msg));
        for q in self.initial.iter().chain(&self.finals) {
            if !self.states.contains(q) {
                return bad(format!("undeclared state `{q}`"));
            }
        }
        if self.stack.iter().any(Symbol::is_bottom) {
            return bad("the bottom marker cannot be a stack symbol".into());
        }
        for t in &self.calls {
            if !self.states.contains(&t.from) || !self.states.contains(&t.to) {
                return bad(format!("call transition uses an undeclared state: {}", fmt_call(t)));
            }
            if self.input.tag_of(&t.input) != Some(Tag::Call) {
                return bad(format!("`{}` is not a call symbol", t.input));
            }
            if !self.stack.contains(&t.push) {
                return bad(format!("undeclared stack symbol `{}`", t.push));
            }
            self.output.check_word(&t.output)?;
        }
        for t in &self.returns {
            if !self.states.contains(&t.from) || !self.states.contains(&t.to) {
                return bad(format!("return transition uses an undeclared state: {}", fmt_return(t)));
            }
            if self.input.tag_of(&t.input) != Some(Tag::Return) {
                return bad(format!("`{}` is not a return symbol", t.input));
            }
            if !self.stack.contains(&t.pop) {
                return bad(format!("undeclared stack symbol `{}`", t.pop));
            }
            self.output.check_word(&t.output)?;
        }
        let mut calls = self.calls.clone();
        let mut returns = self.returns.clone();
        calls.sort();
        calls.dedup();
        returns.sort();
        returns.dedup();
        Ok(Vpt {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
            stack: self.stack.clone(),
            calls,
            returns,
        })
    }
}

pub fn fmt_call(t: &CallTransition) -> String {
    format!("call {} {} {} {} {}", t.from, t.input, t.push, t.output.bracketed(), t.to)
}

pub fn fmt_return(t: &ReturnTransition) -> String {
    format!("ret {} {} {} {} {}", t.from, t.input, t.pop, t.output.bracketed(), t.to)
}

/// A validated visibly pushdown transducer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vpt {
    input: StructuredAlphabet,
    output: OutputAlphabet,
    states: BTreeSet<Symbol>,
    initial: BTreeSet<Symbol>,
    finals: BTreeSet<Symbol>,
    stack: BTreeSet<Symbol>,
    calls: Vec<CallTransition>,
    returns: Vec<ReturnTransition>,
}

type Config = (usize, Vec<usize>);

/// Dense indices over states and stack symbols used during runs.
struct Compiled<'a> {
    initial: Vec<usize>,
    finals: Vec<bool>,
    calls: HashMap<(usize, &'a Symbol), Vec<(usize, &'a Word, usize)>>,
    returns: HashMap<(usize, &'a Symbol, usize), Vec<(&'a Word, usize)>>,
}

impl Vpt {
    pub fn builder(input: StructuredAlphabet, output: OutputAlphabet) -> VptBuilder {
        VptBuilder::new(input, output)
    }

    pub fn to_builder(&self) -> VptBuilder {
        VptBuilder {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
            stack: self.stack.clone(),
            calls: self.calls.clone(),
            returns: self.returns.clone(),
        }
    }

    pub fn input(&self) -> &StructuredAlphabet {
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

    pub fn finals(&self) -> &BTreeSet<Symbol> {
        &self.finals
    }

    pub fn stack_alphabet(&self) -> &BTreeSet<Symbol> {
        &self.stack
    }

    pub fn calls(&self) -> &[CallTransition] {
        &self.calls
    }

    pub fn returns(&self) -> &[ReturnTransition] {
        &self.returns
    }

    fn compile(&self) -> Compiled<'_> {
        let idx: HashMap<&Symbol, usize> = self.states.iter().enumerate().map(|(i, q)| (q, i)).collect();
        let sidx: HashMap<&Symbol, usize> = self.stack.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut calls: HashMap<_, Vec<_>> = HashMap::new();
        for t in &self.calls {
            calls
                .entry((idx[&t.from], &t.input))
                .or_default()
                .push((sidx[&t.push], &t.output, idx[&t.to]));
        }
        let mut returns: HashMap<_, Vec<_>> = HashMap::new();
        for t in &self.returns {
            returns
                .entry((idx[&t.from], &t.input, sidx[&t.pop]))
                .or_default()
                .push((&t.output, idx[&t.to]));
        }
        Compiled {
            initial: self.initial.iter().map(|q| idx[q]).collect(),
            finals: self.states.iter().map(|q| self.finals.contains(q)).collect(),
            calls,
            returns,
        }
    }

    fn check_input(&self, w: &NestedWord) -> Result<()> {
        match w.letters().iter().find(|l| !self.input.contains_letter(l)) {
            Some(l) => Err(Error::UnknownSymbol(l.symbol.to_string())),
            None => Ok(()),
        }
    }

    /// All outputs of accepting runs on `w`.
    pub fn run_all(&self, w: &NestedWord) -> Result<BTreeSet<Word>> {
        self.run_all_capped(w, DEFAULT_OUTPUT_CAP)
    }

    pub fn run_all_capped(&self, w: &NestedWord, cap: usize) -> Result<BTreeSet<Word>> {
        self.check_input(w)?;
        let m = self.compile();
        let mut live: HashMap<Config, BTreeSet<Word>> = HashMap::new();
        for &q in &m.initial {
            live.entry((q, Vec::new())).or_default().insert(Word::empty());
        }
        for letter in w.letters() {
            if live.is_empty() {
                break;
            }
            let mut next: HashMap<Config, BTreeSet<Word>> = HashMap::new();
            for ((q, stack), outs) in &live {
                for (target, out) in step(&m, letter, *q, stack) {
                    let entry = next.entry(target).or_default();
                    for o in outs {
                        let mut v = o.clone();
                        v.extend_from(out);
                        entry.insert(v);
                    }
                    if entry.len() > cap {
                        return Err(Error::OutputOverflow { cap });
                    }
                }
            }
            live = next;
        }
        let mut result = BTreeSet::new();
        for ((q, stack), outs) in live {
            if stack.is_empty() && m.finals[q] {
                result.extend(outs);
                if result.len() > cap {
                    return Err(Error::OutputOverflow { cap });
                }
            }
        }
        Ok(result)
    }

    /// Whether some accepting run exists on `w`, without computing outputs.
    pub fn accepts(&self, w: &NestedWord) -> Result<bool> {
        self.check_input(w)?;
        let m = self.compile();
        let mut live: HashSet<Config> = m.initial.iter().map(|&q| (q, Vec::new())).collect();
        for letter in w.letters() {
            let mut next = HashSet::new();
            for (q, stack) in &live {
                next.extend(step(&m, letter, *q, stack).into_iter().map(|(c, _)| c));
            }
            live = next;
            if live.is_empty() {
                return Ok(false);
            }
        }
        Ok(live.iter().any(|(q, s)| s.is_empty() && m.finals[*q]))
    }

    /// Whether every call/return pair sharing a stack symbol has a
    /// well-nested concatenated output.
    pub fn is_wn_vpt(&self) -> Result<bool> {
        Ok(self.wn_violation()?.is_none())
    }

    /// A call/return pair whose outputs do not concatenate to a well-nested word.
    pub fn wn_violation(&self) -> Result<Option<(CallTransition, ReturnTransition)>> {
        let out = self.output.require_structured()?;
        for c in &self.calls {
            for r in self.returns.iter().filter(|r| r.pop == c.push) {
                let w = Word::concat(&[&c.output, &r.output]);
                if !out.tag_word(&w)?.is_well_nested() {
                    return Ok(Some((c.clone(), r.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Pairs `(q1, q2)` such that some well-nested word leads from `q1` to
    /// `q2`, both with an empty stack. Computed by worklist saturation.
    pub fn summaries(&self) -> BTreeSet<(Symbol, Symbol)> {
        let names: Vec<&Symbol> = self.states.iter().collect();
        let idx: HashMap<&Symbol, usize> = names.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let n = names.len();
        // wraps[(p1, p2)] = targets (q1, q') produced by one call/return pair around (p1, p2)
        let mut wraps: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for c in &self.calls {
            for r in self.returns.iter().filter(|r| r.pop == c.push) {
                wraps
                    .entry((idx[&c.to], idx[&r.from]))
                    .or_default()
                    .push((idx[&c.from], idx[&r.to]));
            }
        }
        let mut rel = vec![vec![false; n]; n];
        let mut work = Vec::new();
        for q in 0..n {
            rel[q][q] = true;
            work.push((q, q));
        }
        let add = |rel: &mut Vec<Vec<bool>>, work: &mut Vec<(usize, usize)>, a: usize, b: usize| {
            if !rel[a][b] {
                rel[a][b] = true;
                work.push((a, b));
            }
        };
        while let Some((a, b)) = work.pop() {
            if let Some(ts) = wraps.get(&(a, b)) {
                for &(x, y) in ts {
                    add(&mut rel, &mut work, x, y);
                }
            }
            for x in 0..n {
                if rel[b][x] {
                    add(&mut rel, &mut work, a, x);
                }
                if rel[x][a] {
                    add(&mut rel, &mut work, x, b);
                }
            }
        }
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if rel[a][b] {
                    out.insert((names[a].clone(), names[b].clone()));
                }
            }
        }
        out
    }

    /// Pairs connected by exactly the word `⊥c ⊥r`.
    pub fn bot_summaries(&self) -> Result<BTreeSet<(Symbol, Symbol)>> {
        if !self.input.has_bottom() {
            return Err(Error::Precondition(
                "input alphabet does not contain ⊥c and ⊥r".into(),
            ));
        }
        let mut out = BTreeSet::new();
        for c in self.calls.iter().filter(|c| c.input.is_bot_call()) {
            for r in self
                .returns
                .iter()
                .filter(|r| r.input.is_bot_return() && r.pop == c.push && r.from == c.to)
            {
                out.insert((c.from.clone(), r.to.clone()));
            }
        }
        Ok(out)
    }

    /// A copy with a different set of initial and final states.
    pub fn with_endpoints(&self, initial: BTreeSet<Symbol>, finals: BTreeSet<Symbol>) -> Result<Vpt> {
        let mut b = self.to_builder();
        b.initial = initial;
        b.finals = finals;
        b.build()
    }
}

fn step<'m>(m: &Compiled<'m>, letter: &Letter, q: usize, stack: &[usize]) -> Vec<(Config, &'m Word)> {
    match letter.tag {
        Tag::Call => match m.calls.get(&(q, &letter.symbol)) {
            Some(ts) => ts
                .iter()
                .map(|&(g, out, to)| {
                    let mut s = stack.to_vec();
                    s.push(g);
                    ((to, s), out)
                })
                .collect(),
            None => Vec::new(),
        },
        Tag::Return => {
            // no return transition on the empty stack
            let Some((&top, rest)) = stack.split_last() else {
                return Vec::new();
            };
            match m.returns.get(&(q, &letter.symbol, top)) {
                Some(ts) => ts.iter().map(|&(out, to)| ((to, rest.to_vec()), out)).collect(),
                None => Vec::new(),
            }
        }
    }
}
