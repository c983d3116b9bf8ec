// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use super::{pair_name, Namer};
use crate::error::Result;
use crate::h2s::{H2s, NodeRule};
use crate::hedges::{product_labels, Label};
use crate::vpt::{CallTransition, ReturnTransition, Vpt};
use crate::words::{StructuredAlphabet, Symbol, Tag, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum PairKey {
    Pair(Symbol, Symbol),
    /// A copy of a pair state standing for one non-empty leaf output.
    Split(Symbol, Word, Symbol),
}

/// VPT over `Σ⊥` to H2S over `Σc × Σr` such that `A ∘ fcns = T ∘ hedge` on
/// non-empty well-nested words.
///
/// States are pairs `(p, q)` connected by the encoding of one tree (`c…r`)
/// or of the empty hedge (`⊥c ⊥r`). Leaf outputs produced by `⊥c ⊥r` are
/// moved into the rule that uses the leaf, through a dedicated copy of the
/// pair state, so the result has ε leaves only.
pub fn vpt_fcns_to_h2s(a: &Vpt) -> Result<H2s> {
    let bot = a.bot_summaries()?;
    let summaries = a.summaries();

    // (call, return) pairs around a non-⊥ node
    let mut nodes = Vec::new();
    for call in a.calls().iter().filter(|c| !c.input.is_bot_call()) {
        for ret in a.returns().iter().filter(|r| r.pop == call.push && !r.input.is_bot_return()) {
            if summaries.contains(&(call.to.clone(), ret.from.clone())) {
                nodes.push((call, ret));
            }
        }
    }
    let tree: BTreeSet<(Symbol, Symbol)> = nodes.iter().map(|(c, r)| (c.from.clone(), r.to.clone())).collect();
    let states: BTreeSet<(Symbol, Symbol)> = tree.union(&bot).cloned().collect();
    let mut succ: BTreeMap<&Symbol, Vec<&Symbol>> = BTreeMap::new();
    for (p, q) in &states {
        succ.entry(p).or_default().push(q);
    }

    let mut leaves: BTreeMap<(Symbol, Symbol), BTreeSet<Word>> = BTreeMap::new();
    for call in a.calls().iter().filter(|c| c.input.is_bot_call()) {
        for ret in a.returns().iter().filter(|r| {
            r.input.is_bot_return() && r.pop == call.push && r.from == call.to
        }) {
            leaves
                .entry((call.from.clone(), ret.to.clone()))
                .or_default()
                .insert(Word::concat(&[&call.output, &ret.output]));
        }
    }
    // non-empty leaf outputs of a pair
    let split = |p: &Symbol, q: &Symbol| -> Vec<&Word> {
        leaves
            .get(&(p.clone(), q.clone()))
            .into_iter()
            .flatten()
            .filter(|w| !w.is_empty())
            .collect()
    };

    let mut names: Namer<PairKey> = Namer::new();
    let mut name = |k: &PairKey| {
        names.name(k, || match k {
            PairKey::Pair(p, q) => pair_name(p, q),
            PairKey::Split(p, x, q) => {
                let x: Vec<&str> = x.iter().map(Symbol::as_str).collect();
                format!("({p},{},{q})", x.join("."))
            }
        })
    };

    let labels = product_labels(&a.input().without_bottom());
    let mut b = H2s::builder(labels, a.output().clone());
    for (p, q) in &states {
        let s = name(&PairKey::Pair(p.clone(), q.clone()));
        b.states.insert(s.clone());
        if leaves.get(&(p.clone(), q.clone())).is_some_and(|ws| ws.contains(&Word::empty())) {
            b.leaf(s.as_str());
        }
        for x in split(p, q) {
            let s = name(&PairKey::Split(p.clone(), x.clone(), q.clone()));
            b.leaf(s.as_str());
        }
    }
    for (p, q) in &tree {
        if a.initial().contains(p) && a.finals().contains(q) {
            b.initial.insert(name(&PairKey::Pair(p.clone(), q.clone())));
        }
    }

    for (call, ret) in &nodes {
        let (p1, p3) = (&call.to, &ret.from);
        for p2 in succ.get(p1).into_iter().flatten() {
            if !states.contains(&((*p2).clone(), p3.clone())) {
                continue;
            }
            // variants: the pair state itself, or one of its leaf copies
            // with the leaf output moved into the adjacent slot
            let variants = |p: &Symbol, q: &Symbol| {
                let mut v = vec![(PairKey::Pair(p.clone(), q.clone()), Word::empty())];
                for x in split(p, q) {
                    v.push((PairKey::Split(p.clone(), x.clone(), q.clone()), x.clone()));
                }
                v
            };
            for (child, x1) in variants(p1, p2) {
                for (sibling, x2) in variants(p2, p3) {
                    b.rule(NodeRule {
                        state: name(&PairKey::Pair(call.from.clone(), ret.to.clone())),
                        label: Label::Pair(call.input.clone(), ret.input.clone()),
                        w1: Word::concat(&[&call.output, &x1]),
                        child: name(&child),
                        w2: x2,
                        sibling: name(&sibling),
                        w3: ret.output.clone(),
                    });
                }
            }
        }
    }
    Ok(b.build()?.prune())
}

/// `w1 w2 w3 = A B · C D · E F` such that `A F`, `B C` and `D E` are
/// well-nested whenever `w1 w2 w3` is; otherwise `A = w1`, `C = w2`,
/// `F = w3` and the rest is empty.
fn split_outputs(r: &NodeRule, out: Option<&StructuredAlphabet>) -> [Word; 6] {
    let literal = || {
        [r.w1.clone(), Word::empty(), r.w2.clone(), Word::empty(), Word::empty(), r.w3.clone()]
    };
    let Some(out) = out else {
        return literal();
    };
    let skeleton = r.skeleton();
    let Ok(tagged) = out.tag_word(&skeleton) else {
        return literal();
    };
    if !tagged.is_well_nested() {
        return literal();
    }
    let mut depth = vec![0i64];
    for l in tagged.letters() {
        let d = depth[depth.len() - 1];
        depth.push(if l.tag == Tag::Call { d + 1 } else { d - 1 });
    }
    let p1 = r.w1.len();
    let p2 = p1 + r.w2.len();
    let level = *depth[p1..=p2].iter().min().expect("non-empty range");
    let b = (p1..=p2).rev().find(|&k| depth[k] == level).expect("minimum is attained");
    let a = (0..=p1).rev().find(|&k| depth[k] == level).expect("depth 0 at start");
    let e = (p2..depth.len()).find(|&k| depth[k] == level).expect("depth 0 at end");
    let cut = |i: usize, j: usize| skeleton.slice(i..j);
    [cut(0, a), cut(a, p1), cut(p1, b), cut(b, p2), cut(p2, e), cut(e, skeleton.len())]
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Top(Symbol, u8),
    Rule(usize, u8),
    Bot,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum StackKey {
    Top(Symbol, usize),
    Nested(usize, u8, usize),
    Leaf(usize, u8),
}

/// H2S over `Σc × Σr` to VPT over `Σ⊥` such that `A ∘ fcns = T ∘ hedge` on
/// non-empty hedges.
///
/// State `(t,i)` means rule `t` is being applied and its slot `i` is next.
/// The stack symbol pushed on a call records the parent position and the
/// rule chosen for the node, so each call/return pair shares one symbol.
pub fn h2s_to_vpt_fcns(t: &H2s) -> Result<Vpt> {
    let t = &t.with_pair_labels()?;
    let sigma = t.product_base()?.with_bottom();
    let out = t.output().structured();
    let rules = t.rules();
    let parts: Vec<[Word; 6]> = rules.iter().map(|r| split_outputs(r, out)).collect();
    // the output emitted around slot i of rule k: before (B or D) and after (C or E)
    let before = |k: usize, i: u8| &parts[k][if i == 0 { 1 } else { 3 }];
    let after = |k: usize, i: u8| &parts[k][if i == 0 { 2 } else { 4 }];
    let slot = |k: usize, i: u8| if i == 0 { &rules[k].child } else { &rules[k].sibling };

    let mut states: Namer<StateKey> = Namer::new();
    let mut state = |k: &StateKey| {
        states.name(k, || match k {
            StateKey::Top(q, i) => format!("({q},{i})"),
            StateKey::Rule(r, i) => format!("(t{r},{i})"),
            StateKey::Bot => "q⊥".into(),
        })
    };
    let mut stacks: Namer<StackKey> = Namer::new();
    let mut stack = |k: &StackKey| {
        stacks.name(k, || match k {
            StackKey::Top(q, r) => format!("({q},0)>t{r}"),
            StackKey::Nested(p, i, r) => format!("(t{p},{i})>t{r}"),
            StackKey::Leaf(p, i) => format!("(t{p},{i})>⊥"),
        })
    };

    let mut b = Vpt::builder(sigma, t.output().clone());
    for q in t.initial() {
        let s0 = state(&StateKey::Top(q.clone(), 0));
        let s1 = state(&StateKey::Top(q.clone(), 1));
        b.states.insert(s0.clone());
        b.states.insert(s1.clone());
        b.initial.insert(s0);
        b.finals.insert(s1);
    }
    for k in 0..rules.len() {
        for i in 0..3 {
            b.states.insert(state(&StateKey::Rule(k, i)));
        }
    }
    b.states.insert(state(&StateKey::Bot));

    let mut leaf_outputs: BTreeMap<&Symbol, Vec<&Word>> = BTreeMap::new();
    for l in t.leaves() {
        leaf_outputs.entry(&l.state).or_default().push(&l.output);
    }

    let mut calls = Vec::new();
    let mut returns = Vec::new();
    for (k, r) in rules.iter().enumerate() {
        let Label::Pair(c, ret) = &r.label else {
            unreachable!("product input checked above")
        };
        let [a_k, _, _, _, _, f_k] = &parts[k];
        if t.initial().contains(&r.state) {
            let g = stack(&StackKey::Top(r.state.clone(), k));
            calls.push(CallTransition {
                from: state(&StateKey::Top(r.state.clone(), 0)),
                input: c.clone(),
                push: g.clone(),
                output: a_k.clone(),
                to: state(&StateKey::Rule(k, 0)),
            });
            returns.push(ReturnTransition {
                from: state(&StateKey::Rule(k, 2)),
                input: ret.clone(),
                pop: g,
                output: f_k.clone(),
                to: state(&StateKey::Top(r.state.clone(), 1)),
            });
        }
        for p in 0..rules.len() {
            for i in 0..2u8 {
                if slot(p, i) != &r.state {
                    continue;
                }
                let g = stack(&StackKey::Nested(p, i, k));
                calls.push(CallTransition {
                    from: state(&StateKey::Rule(p, i)),
                    input: c.clone(),
                    push: g.clone(),
                    output: Word::concat(&[before(p, i), a_k]),
                    to: state(&StateKey::Rule(k, 0)),
                });
                returns.push(ReturnTransition {
                    from: state(&StateKey::Rule(k, 2)),
                    input: ret.clone(),
                    pop: g,
                    output: Word::concat(&[f_k, after(p, i)]),
                    to: state(&StateKey::Rule(p, i + 1)),
                });
            }
        }
    }
    for p in 0..rules.len() {
        for i in 0..2u8 {
            let Some(xs) = leaf_outputs.get(slot(p, i)) else {
                continue;
            };
            let g = stack(&StackKey::Leaf(p, i));
            for x in xs {
                calls.push(CallTransition {
                    from: state(&StateKey::Rule(p, i)),
                    input: Symbol::bot_call(),
                    push: g.clone(),
                    output: Word::concat(&[before(p, i), x]),
                    to: state(&StateKey::Bot),
                });
            }
            returns.push(ReturnTransition {
                from: state(&StateKey::Bot),
                input: Symbol::bot_return(),
                pop: g,
                output: after(p, i).clone(),
                to: state(&StateKey::Rule(p, i + 1)),
            });
        }
    }
    for c in &calls {
        b.stack.insert(c.push.clone());
    }
    b.calls = calls;
    b.returns = returns;
    b.build()
}
