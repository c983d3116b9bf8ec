// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use super::enumerate::enum_wn_words;
use crate::error::{Error, Result};
use crate::h2s::H2s;
use crate::hedges::{fcns_word, hedge_of, Hedge, Label};
use crate::vpt::Vpt;
use crate::words::{NestedWord, StructuredAlphabet, Word};

/// How the VPT side reads an input word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    /// `run_all(A, w)` against `eval(T, hedge(w))`.
    Hedge,
    /// `run_all(A, fcns(w))` against `eval(T, hedge(w))`.
    Fcns,
}

/// One compared input, as written by the record format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub input: NestedWord,
    pub left: usize,
    pub right: usize,
    /// The two output sets are equal (not just of equal size).
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: NestedWord,
    pub hedge: Hedge,
    pub vpt_outputs: BTreeSet<Word>,
    pub h2s_outputs: BTreeSet<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub encoding: Encoding,
    pub inputs_checked: usize,
    /// Inputs on which at least one side produced an output.
    pub nonempty: usize,
    pub counterexample: Option<Counterexample>,
    pub records: Vec<Record>,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Recomputes both sides on the counterexample and checks that they
    /// still give the reported, different sets.
    pub fn reverify(&self, a: &Vpt, t: &H2s) -> Result<bool> {
        let Some(cx) = &self.counterexample else {
            return Ok(false);
        };
        let (left, right) = sides(a, &t.with_pair_labels()?, &cx.input, self.encoding)?;
        Ok(left == cx.vpt_outputs && right == cx.h2s_outputs && left != right)
    }

    /// One line per input: word, VPT set size, H2S set size, match flag.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.input, r.left, r.right, r.matched));
        }
        s
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "equivalent up to bound ({} inputs, {} with output)",
                self.inputs_checked, self.nonempty
            ),
            Some(cx) => {
                writeln!(f, "counterexample after {} inputs", self.inputs_checked)?;
                writeln!(f, "input: {}", cx.input)?;
                writeln!(f, "hedge: {}", cx.hedge)?;
                writeln!(f, "vpt: {}", fmt_set(&cx.vpt_outputs))?;
                write!(f, "h2s: {}", fmt_set(&cx.h2s_outputs))
            }
        }
    }
}

fn fmt_set(s: &BTreeSet<Word>) -> String {
    let items: Vec<String> = s.iter().map(Word::bracketed).collect();
    format!("{{{}}}", items.join(", "))
}

/// `eval(T, h)`, with ∅ for hedges carrying labels outside `T`'s alphabet.
fn eval_total(t: &H2s, h: &Hedge) -> Result<BTreeSet<Word>> {
    match t.eval(h) {
        Err(Error::UnknownLabel(_)) => Ok(BTreeSet::new()),
        other => other,
    }
}

fn sides(a: &Vpt, t: &H2s, w: &NestedWord, encoding: Encoding) -> Result<(BTreeSet<Word>, BTreeSet<Word>)> {
    let h = hedge_of(w)?;
    let left = match encoding {
        Encoding::Hedge => a.run_all(w)?,
        Encoding::Fcns => a.run_all(&fcns_word(w)?)?,
    };
    Ok((left, eval_total(t, &h)?))
}

fn check_alphabets(sigma: &StructuredAlphabet, t: &H2s) -> Result<()> {
    for l in t.input() {
        match l {
            Label::Pair(c, r) if sigma.calls().contains(c) && sigma.returns().contains(r) => {}
            _ => {
                return Err(Error::Alphabet(format!(
                    "label `{l}` is not a pair over the VPT's input alphabet"
                )))
            }
        }
    }
    Ok(())
}

/// Compares `A` and `T ∘ hedge` on the given words, stopping at the first
/// mismatch. An atom label `a` of `T` stands for `<c_a,r_a>`.
pub fn equiv_on_words<'w>(
    a: &Vpt,
    t: &H2s,
    words: impl IntoIterator<Item = &'w NestedWord>,
    encoding: Encoding,
) -> Result<Verdict> {
    let sigma = match encoding {
        Encoding::Hedge => a.input().clone(),
        Encoding::Fcns => {
            if !a.input().has_bottom() {
                return Err(Error::Alphabet("VPT input alphabet lacks ⊥c and ⊥r".into()));
            }
            a.input().without_bottom()
        }
    };
    let t = &t.with_pair_labels()?;
    check_alphabets(&sigma, t)?;
    let mut v = Verdict {
        encoding,
        inputs_checked: 0,
        nonempty: 0,
        counterexample: None,
        records: Vec::new(),
    };
    for w in words {
        if encoding == Encoding::Fcns && w.is_empty() {
            continue;
        }
        if let Some(l) = w.letters().iter().find(|l| !sigma.contains_letter(l)) {
            return Err(Error::UnknownSymbol(l.symbol.to_string()));
        }
        let (left, right) = sides(a, t, w, encoding)?;
        v.inputs_checked += 1;
        if !left.is_empty() || !right.is_empty() {
            v.nonempty += 1;
        }
        let same = left == right;
        v.records.push(Record {
            input: w.clone(),
            left: left.len(),
            right: right.len(),
            matched: same,
        });
        if !same {
            v.counterexample = Some(Counterexample {
                input: w.clone(),
                hedge: hedge_of(w)?,
                vpt_outputs: left,
                h2s_outputs: right,
            });
            break;
        }
    }
    Ok(v)
}

/// `A = T ∘ hedge` on every well-nested word up to `max_len`.
pub fn equiv_on_bounded(a: &Vpt, t: &H2s, max_len: usize) -> Result<Verdict> {
    let words = enum_wn_words(a.input(), max_len);
    equiv_on_words(a, t, &words, Encoding::Hedge)
}

/// `A ∘ fcns = T ∘ hedge` on every non-empty well-nested word up to
/// `max_len`.
pub fn equiv_fcns_on_bounded(a: &Vpt, t: &H2s, max_len: usize) -> Result<Verdict> {
    let words = enum_wn_words(&a.input().without_bottom(), max_len);
    equiv_on_words(a, t, &words, Encoding::Fcns)
}
