// SPDX-License-Identifier: Apache-2.0

//! Seeded random models for the property corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::h2s::{H2s, NodeRule};
use crate::hedges::{product_labels, Label};
use crate::vpt::{CallTransition, ReturnTransition, Vpt};
use crate::words::{OutputAlphabet, StructuredAlphabet, Symbol, Word};

/// Generator settings. The defaults keep a corpus of 50 models checkable
/// at bound 8 in a few seconds.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub min_states: usize,
    pub max_states: usize,
    /// Probability of a transition (or rule) for each source choice.
    pub density: f64,
    pub max_output: usize,
    /// Restrict to well-nested VPTs or H2H transducers.
    pub well_nested: bool,
    /// H2S only: `w3 = ε` in every rule.
    pub tail_recursive: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            min_states: 2,
            max_states: 4,
            density: 0.5,
            max_output: 2,
            well_nested: false,
            tail_recursive: false,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two calls `c d`, two returns `r s`.
pub fn input_alphabet() -> StructuredAlphabet {
    StructuredAlphabet::from_names(&["c", "d"], &["r", "s"]).expect("disjoint")
}

/// `cx cy` / `rx ry`.
pub fn output_alphabet() -> StructuredAlphabet {
    StructuredAlphabet::from_names(&["cx", "cy"], &["rx", "ry"]).expect("disjoint")
}

fn state_names(n: usize) -> Vec<Symbol> {
    (0..n).map(|i| Symbol::new(format!("q{i}"))).collect()
}

fn any_word(rng: &mut impl Rng, max: usize) -> Word {
    let out = output_alphabet();
    let symbols: Vec<&Symbol> = out.calls().iter().chain(out.returns()).collect();
    let len = rng.gen_range(0..=max);
    Word((0..len).map(|_| (*symbols.choose(rng).unwrap()).clone()).collect())
}

/// A random well-nested word over the output alphabet of length at most `max`.
fn wn_word(rng: &mut impl Rng, max: usize) -> Word {
    let out = output_alphabet();
    let calls: Vec<&Symbol> = out.calls().iter().collect();
    let returns: Vec<&Symbol> = out.returns().iter().collect();
    let pairs = rng.gen_range(0..=max / 2);
    let mut w = Vec::new();
    let mut open = 0;
    let mut left = pairs;
    while left > 0 || open > 0 {
        if left > 0 && (open == 0 || rng.gen_bool(0.5)) {
            w.push((*calls.choose(rng).unwrap()).clone());
            open += 1;
            left -= 1;
        } else {
            w.push((*returns.choose(rng).unwrap()).clone());
            open -= 1;
        }
    }
    Word(w)
}

fn one_of(rng: &mut impl Rng, set: &BTreeSet<Symbol>) -> Symbol {
    let v: Vec<&Symbol> = set.iter().collect();
    (*v.choose(rng).unwrap()).clone()
}

/// A random VPT over `input` with output in [`output_alphabet`].
///
/// In well-nested mode each stack symbol either carries balanced outputs
/// on both sides, or a single call on the call side and a single return
/// on the return side.
pub fn random_vpt(rng: &mut impl Rng, input: &StructuredAlphabet, cfg: &GenConfig) -> Vpt {
    let n = rng.gen_range(cfg.min_states..=cfg.max_states);
    let states = state_names(n);
    let stack = [Symbol::new("g0"), Symbol::new("g1")];
    let out = output_alphabet();
    let opens: Vec<bool> = stack.iter().map(|_| rng.gen_bool(0.5)).collect();

    let mut b = Vpt::builder(input.clone(), OutputAlphabet::Structured(out.clone()));
    b.states = states.iter().cloned().collect();
    b.initial.insert(states[0].clone());
    for q in &states {
        if rng.gen_bool(0.5) {
            b.finals.insert(q.clone());
        }
    }
    if b.finals.is_empty() {
        b.finals.insert(states[rng.gen_range(0..n)].clone());
    }
    b.stack = stack.iter().cloned().collect();
    for q in &states {
        for (g_idx, g) in stack.iter().enumerate() {
            for c in input.calls() {
                if rng.gen_bool(cfg.density) {
                    let output = match (cfg.well_nested, opens[g_idx]) {
                        (false, _) => any_word(rng, cfg.max_output),
                        (true, false) => wn_word(rng, cfg.max_output),
                        (true, true) => Word(vec![one_of(rng, out.calls())]),
                    };
                    b.calls.push(CallTransition {
                        from: q.clone(),
                        input: c.clone(),
                        push: g.clone(),
                        output,
                        to: states[rng.gen_range(0..n)].clone(),
                    });
                }
            }
            for r in input.returns() {
                if rng.gen_bool(cfg.density) {
                    let output = match (cfg.well_nested, opens[g_idx]) {
                        (false, _) => any_word(rng, cfg.max_output),
                        (true, false) => wn_word(rng, cfg.max_output),
                        (true, true) => Word(vec![one_of(rng, out.returns())]),
                    };
                    b.returns.push(ReturnTransition {
                        from: q.clone(),
                        input: r.clone(),
                        pop: g.clone(),
                        output,
                        to: states[rng.gen_range(0..n)].clone(),
                    });
                }
            }
        }
    }
    b.build().expect("generated VPT is well-formed")
}

/// Cuts `w` into three consecutive pieces; the last is empty when
/// `tail` is set.
fn cut3(rng: &mut impl Rng, w: Word, tail: bool) -> [Word; 3] {
    let n = w.len();
    let i = rng.gen_range(0..=n);
    let j = if tail { n } else { rng.gen_range(i..=n) };
    [w.slice(0..i), w.slice(i..j), w.slice(j..n)]
}

/// A random H2S over `Σc × Σr` for [`input_alphabet`], with output in
/// [`output_alphabet`].
pub fn random_h2s(rng: &mut impl Rng, cfg: &GenConfig) -> H2s {
    random_h2s_over(rng, product_labels(&input_alphabet()), cfg)
}

pub fn random_h2s_over(rng: &mut impl Rng, labels: BTreeSet<Label>, cfg: &GenConfig) -> H2s {
    let n = rng.gen_range(cfg.min_states..=cfg.max_states);
    let states = state_names(n);
    let mut b = H2s::builder(labels.clone(), OutputAlphabet::Structured(output_alphabet()));
    b.states = states.iter().cloned().collect();
    b.initial.insert(states[0].clone());
    if n > 1 && rng.gen_bool(0.3) {
        b.initial.insert(states[1].clone());
    }
    for q in &states {
        if rng.gen_bool(0.5) {
            b.leaf(q.as_str());
        }
    }
    if b.leaves.is_empty() {
        b.leaf(states[rng.gen_range(0..n)].as_str());
    }
    for q in &states {
        for f in &labels {
            if !rng.gen_bool(cfg.density) {
                continue;
            }
            let [w1, w2, w3] = if cfg.well_nested {
                let w = wn_word(rng, 2 * cfg.max_output);
                cut3(rng, w, cfg.tail_recursive)
            } else {
                let w3 = if cfg.tail_recursive {
                    Word::empty()
                } else {
                    any_word(rng, cfg.max_output)
                };
                [any_word(rng, cfg.max_output), any_word(rng, cfg.max_output), w3]
            };
            b.rule(NodeRule {
                state: q.clone(),
                label: f.clone(),
                w1,
                child: states[rng.gen_range(0..n)].clone(),
                w2,
                sibling: states[rng.gen_range(0..n)].clone(),
                w3,
            });
        }
    }
    b.build().expect("generated transducer is well-formed")
}

/// A random binary tree over the output alphabet with at most `depth`
/// internal levels and exactly one hole; returns the word before and
/// after the hole.
fn binary_context(rng: &mut impl Rng, depth: usize) -> (Word, Word) {
    if depth == 0 || rng.gen_bool(0.5) {
        return (Word::empty(), Word::empty());
    }
    let out = output_alphabet();
    let c = one_of(rng, out.calls());
    let r = one_of(rng, out.returns());
    let (pre, post) = binary_context(rng, depth - 1);
    let other = closed_binary(rng, depth - 1);
    let mut before = vec![c];
    let mut after = Vec::new();
    if rng.gen_bool(0.5) {
        // hole in the first subtree
        before.extend(pre.0);
        after.extend(post.0);
        after.extend(other.0);
    } else {
        before.extend(other.0);
        before.extend(pre.0);
        after.extend(post.0);
    }
    after.push(r);
    (Word(before), Word(after))
}

fn closed_binary(rng: &mut impl Rng, depth: usize) -> Word {
    if depth == 0 || rng.gen_bool(0.6) {
        return Word(vec![Symbol::bot_call(), Symbol::bot_return()]);
    }
    let out = output_alphabet();
    let mut w = vec![one_of(rng, out.calls())];
    w.extend(closed_binary(rng, depth - 1).0);
    w.extend(closed_binary(rng, depth - 1).0);
    w.push(one_of(rng, out.returns()));
    Word(w)
}

/// A random H2B transducer over the labels `a b`. Each rule outputs a node
/// whose two subtrees are one-hole binary contexts around the two state
/// calls; leaves output `⊥c ⊥r`.
pub fn random_h2b(rng: &mut impl Rng, cfg: &GenConfig) -> H2s {
    let labels: BTreeSet<Label> = [Label::atom("a"), Label::atom("b")].into();
    let n = rng.gen_range(cfg.min_states..=cfg.max_states);
    let states = state_names(n);
    let out = output_alphabet().with_bottom();
    let mut b = H2s::builder(labels.clone(), OutputAlphabet::Structured(out));
    b.states = states.iter().cloned().collect();
    b.initial.insert(states[0].clone());
    for q in &states {
        if rng.gen_bool(0.6) {
            b.leaf_with(q.as_str(), &["⊥c", "⊥r"]);
        }
    }
    if b.leaves.is_empty() {
        b.leaf_with(states[0].as_str(), &["⊥c", "⊥r"]);
    }
    for q in &states {
        for f in &labels {
            if !rng.gen_bool(cfg.density) {
                continue;
            }
            let (l1, r1) = binary_context(rng, 2);
            let (l2, r2) = binary_context(rng, 2);
            let root = Word(vec![one_of(rng, output_alphabet().calls())]);
            let close = Word(vec![one_of(rng, output_alphabet().returns())]);
            b.rule(NodeRule {
                state: q.clone(),
                label: f.clone(),
                w1: Word::concat(&[&root, &l1]),
                child: states[rng.gen_range(0..n)].clone(),
                w2: Word::concat(&[&r1, &l2]),
                sibling: states[rng.gen_range(0..n)].clone(),
                w3: Word::concat(&[&r2, &close]),
            });
        }
    }
    b.build().expect("generated transducer is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let cfg = GenConfig::default();
        let a = random_vpt(&mut rng(7), &input_alphabet(), &cfg);
        let b = random_vpt(&mut rng(7), &input_alphabet(), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn modes_give_their_classes() {
        let mut r = rng(1);
        for _ in 0..30 {
            let wn = GenConfig {
                well_nested: true,
                ..GenConfig::default()
            };
            assert!(random_vpt(&mut r, &input_alphabet(), &wn).is_wn_vpt().unwrap());
            assert!(random_h2s(&mut r, &wn).is_h2h().unwrap());
            let tr = GenConfig {
                tail_recursive: true,
                ..wn.clone()
            };
            let t = random_h2s(&mut r, &tr);
            assert!(t.is_tail_recursive() && t.is_h2h().unwrap());
            assert!(random_h2b(&mut r, &GenConfig::default()).is_h2b().unwrap());
        }
    }
}
