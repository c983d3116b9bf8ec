// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use super::{pair_name, Namer};
use crate::error::{Error, Result};
use crate::h2s::{H2s, NodeRule};
use crate::hedges::{product_labels, Label};
use crate::vpt::{CallTransition, ReturnTransition, Vpt};
use crate::words::{Symbol, Word};

/// VPT to tail-recursive H2S over summary pairs.
///
/// A state `(q1, q2)` of the result computes the outputs of runs from `q1`
/// to `q2` over the linearization of its hedge.
pub fn vpt_to_h2s_tr(a: &Vpt) -> H2s {
    let summaries = a.summaries();
    let mut succ: BTreeMap<&Symbol, BTreeSet<&Symbol>> = BTreeMap::new();
    for (p, q) in &summaries {
        succ.entry(p).or_default().insert(q);
    }
    let mut names: Namer<(Symbol, Symbol)> = Namer::new();
    let mut name = |p: &Symbol, q: &Symbol| names.name(&(p.clone(), q.clone()), || pair_name(p, q));

    let mut b = H2s::builder(product_labels(a.input()), a.output().clone());
    for (p, q) in &summaries {
        let s = name(p, q);
        b.states.insert(s.clone());
        if p == q {
            b.leaf(s.as_str());
        }
        if a.initial().contains(p) && a.finals().contains(q) {
            b.initial.insert(s);
        }
    }
    for call in a.calls() {
        for ret in a.returns().iter().filter(|r| r.pop == call.push) {
            if !summaries.contains(&(call.to.clone(), ret.from.clone())) {
                continue;
            }
            let (Some(after_call), Some(after_ret)) = (succ.get(&call.from), succ.get(&ret.to)) else {
                continue;
            };
            for q2 in after_call.intersection(after_ret) {
                b.rule(NodeRule {
                    state: name(&call.from, q2),
                    label: Label::Pair(call.input.clone(), ret.input.clone()),
                    w1: call.output.clone(),
                    child: name(&call.to, &ret.from),
                    w2: ret.output.clone(),
                    sibling: name(&ret.to, q2),
                    w3: Word::empty(),
                });
            }
        }
    }
    b.build().expect("generated transducer is well-formed").prune()
}

/// Tail-recursive H2S over `Σc × Σr` to VPT. Stack symbols are rule indices;
/// the final states are the states with a leaf rule. Atom labels are read
/// through `lin`.
pub fn h2s_tr_to_vpt(t: &H2s) -> Result<Vpt> {
    if let Some(r) = t.first_non_tail_recursive() {
        return Err(Error::Precondition(format!(
            "not tail-recursive: rule {r} has a non-empty w3"
        )));
    }
    if !t.is_standard() {
        return Err(Error::Precondition("leaf rules must output ε".into()));
    }
    let t = &t.with_pair_labels()?;
    let sigma = t.product_base()?;
    let mut b = Vpt::builder(sigma, t.output().clone());
    b.states = t.states().clone();
    b.initial = t.initial().clone();
    b.finals = t.leaf_states();
    for (k, r) in t.rules().iter().enumerate() {
        let Label::Pair(c, ret) = &r.label else {
            unreachable!("product input checked above")
        };
        let gamma = Symbol::new(format!("t{k}"));
        b.stack.insert(gamma.clone());
        b.calls.push(CallTransition {
            from: r.state.clone(),
            input: c.clone(),
            push: gamma.clone(),
            output: r.w1.clone(),
            to: r.child.clone(),
        });
        for q in t.leaf_states() {
            b.returns.push(ReturnTransition {
                from: q,
                input: ret.clone(),
                pop: gamma.clone(),
                output: r.w2.clone(),
                to: r.sibling.clone(),
            });
        }
    }
    b.build()
}
