// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::h2s::{H2s, LeafRule, NodeRule};
use crate::hedges::{invert_binary, Piece};
use crate::words::{OutputAlphabet, Word};

/// H2B to H2H: applies `fcns⁻¹` to every right-hand side, treating the two
/// state calls as whole subtrees. Leaf outputs `⊥c ⊥r` become ε.
pub fn h2b_to_h2h(t: &H2s) -> Result<H2s> {
    if let Some(v) = t.h2b_violation()? {
        return Err(Error::Precondition(format!("not a hedge-to-binary-tree transducer: {v}")));
    }
    let out = t.output().require_structured()?;
    let mut b = t.to_builder();
    b.output = OutputAlphabet::Structured(out.without_bottom());
    b.leaves = t
        .leaves()
        .iter()
        .map(|l| LeafRule {
            state: l.state.clone(),
            output: Word::empty(),
        })
        .collect();
    b.rules = Vec::with_capacity(t.rules().len());
    for r in t.rules() {
        let mut pieces = Vec::new();
        let letters = |w: &Word| -> Result<Vec<Piece>> {
            Ok(out.tag_word(w)?.0.into_iter().map(Piece::Letter).collect())
        };
        pieces.extend(letters(&r.w1)?);
        pieces.push(Piece::Slot(1));
        pieces.extend(letters(&r.w2)?);
        pieces.push(Piece::Slot(2));
        pieces.extend(letters(&r.w3)?);
        let inverted = invert_binary(&pieces)?;
        let mut words = [Word::empty(), Word::empty(), Word::empty()];
        let mut part = 0;
        for p in inverted {
            match p {
                Piece::Letter(l) => words[part].0.push(l.symbol),
                Piece::Slot(_) => part += 1,
            }
        }
        let [w1, w2, w3] = words;
        b.rules.push(NodeRule {
            w1,
            w2,
            w3,
            ..r.clone()
        });
    }
    b.build()
}
