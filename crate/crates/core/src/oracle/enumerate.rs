// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use crate::hedges::{Hedge, Label, Tree};
use crate::words::{Letter, NestedWord, StructuredAlphabet, Symbol};

/// Every hedge with at most `max_nodes` nodes, ordered by node count and
/// then by linearization.
pub fn enum_hedges(labels: &BTreeSet<Label>, max_nodes: usize) -> Vec<Hedge> {
    // by_size[n] = all hedges with exactly n nodes
    let mut by_size: Vec<Vec<Hedge>> = vec![vec![Hedge::empty()]];
    for n in 1..=max_nodes {
        let mut out = Vec::new();
        for below in 0..n {
            let rest = n - 1 - below;
            for f in labels {
                for children in &by_size[below] {
                    for tail in &by_size[rest] {
                        let mut trees = Vec::with_capacity(tail.0.len() + 1);
                        trees.push(Tree {
                            label: f.clone(),
                            children: children.clone(),
                        });
                        trees.extend(tail.0.iter().cloned());
                        out.push(Hedge(trees));
                    }
                }
            }
        }
        let mut keyed: Vec<(Vec<Symbol>, Hedge)> = out.into_iter().map(|h| (h.lin().to_word().0, h)).collect();
        keyed.sort();
        by_size.push(keyed.into_iter().map(|(_, h)| h).collect());
    }
    by_size.into_iter().flatten().collect()
}

/// Every well-nested word of length at most `max_len`, ordered by length and
/// then lexicographically on symbols.
pub fn enum_wn_words(sigma: &StructuredAlphabet, max_len: usize) -> Vec<NestedWord> {
    let calls: Vec<Letter> = sigma.calls().iter().map(|s| Letter::call(s.clone())).collect();
    let returns: Vec<Letter> = sigma.returns().iter().map(|s| Letter::ret(s.clone())).collect();
    let mut all = Vec::new();
    for len in (0..=max_len).step_by(2) {
        let mut level = Vec::new();
        let mut prefix = Vec::with_capacity(len);
        extend(&calls, &returns, len, 0, &mut prefix, &mut level);
        level.sort_by(|a: &NestedWord, b| symbols(a).cmp(&symbols(b)));
        all.extend(level);
    }
    all
}

fn symbols(w: &NestedWord) -> Vec<&Symbol> {
    w.0.iter().map(|l| &l.symbol).collect()
}

fn extend(
    calls: &[Letter],
    returns: &[Letter],
    len: usize,
    depth: usize,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<NestedWord>,
) {
    let left = len - prefix.len();
    if left == 0 {
        out.push(NestedWord(prefix.clone()));
        return;
    }
    if depth < left {
        for c in calls {
            prefix.push(c.clone());
            extend(calls, returns, len, depth + 1, prefix, out);
            prefix.pop();
        }
    }
    if depth > 0 {
        for r in returns {
            prefix.push(r.clone());
            extend(calls, returns, len, depth - 1, prefix, out);
            prefix.pop();
        }
    }
}

/// Words `c1 r1 c2 r2 …` of length at most `max_len`, i.e. the encodings of
/// hedges of height one.
pub fn enum_flat_words(sigma: &StructuredAlphabet, max_len: usize) -> Vec<NestedWord> {
    enum_wn_words(sigma, max_len)
        .into_iter()
        .filter(|w| w.height().is_ok_and(|h| h <= 1))
        .collect()
}
