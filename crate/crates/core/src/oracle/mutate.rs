// SPDX-License-Identifier: Apache-2.0

//! Single-step corruptions of a model, used to check that the equivalence
//! oracles are not vacuous.

use crate::h2s::H2s;
use crate::vpt::Vpt;
use crate::words::{Symbol, Word};

fn appended(w: &Word, s: &Symbol) -> Word {
    let mut w = w.clone();
    w.0.push(s.clone());
    w
}

/// Every VPT obtained by dropping one transition or by appending one
/// output symbol to one transition.
pub fn vpt_mutants(a: &Vpt) -> Vec<Vpt> {
    let extra = a.output().symbols().into_iter().next();
    let mut out = Vec::new();
    for i in 0..a.calls().len() {
        let mut b = a.to_builder();
        b.calls.remove(i);
        out.extend(b.build().ok());
        if let Some(s) = &extra {
            let mut b = a.to_builder();
            b.calls[i].output = appended(&b.calls[i].output, s);
            out.extend(b.build().ok());
        }
    }
    for i in 0..a.returns().len() {
        let mut b = a.to_builder();
        b.returns.remove(i);
        out.extend(b.build().ok());
        if let Some(s) = &extra {
            let mut b = a.to_builder();
            b.returns[i].output = appended(&b.returns[i].output, s);
            out.extend(b.build().ok());
        }
    }
    out
}

/// Every H2S obtained by dropping one rule or by appending one output
/// symbol to the `w1` of one rule.
pub fn h2s_mutants(t: &H2s) -> Vec<H2s> {
    let extra = t.output().symbols().into_iter().next();
    let mut out = Vec::new();
    for i in 0..t.rules().len() {
        let mut b = t.to_builder();
        b.rules.remove(i);
        out.extend(b.build().ok());
        if let Some(s) = &extra {
            let mut b = t.to_builder();
            b.rules[i].w1 = appended(&b.rules[i].w1, s);
            out.extend(b.build().ok());
        }
    }
    out
}
