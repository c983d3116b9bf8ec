// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use super::enumerate::enum_hedges;
use crate::error::{Error, Result};
use crate::h2s::H2s;
use crate::hedges::{fcns_word, lin_alphabet, Hedge, Label};

/// `h_1 = a·a`, `h_{k+1} = a(h_k)·a(h_k)`: height `n` and `2^{n+1} - 2`
/// nodes. Returns the hedge with its measured height and node count.
pub fn exp_hedge_family(n: usize) -> Result<(Hedge, usize, usize)> {
    if n == 0 {
        return Err(Error::Precondition("the family starts at n = 1".into()));
    }
    let a = Label::atom("a");
    let mut h = Hedge::leaf(a.clone()).concat(&Hedge::leaf(a.clone()));
    for _ in 1..n {
        let t = Hedge::node(a.clone(), h);
        h = t.concat(&t);
    }
    let (height, nodes) = (h.height(), h.node_count());
    Ok((h, height, nodes))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessRow {
    pub n: usize,
    pub nodes: usize,
    pub height_in: usize,
    /// Height of `fcns` of the flattened hedge.
    pub height_fcns_out: usize,
    pub ratio: f64,
}

/// For each `n ≤ max_n`: flatten `h_n`, encode the flat output with `fcns`,
/// and compare its height with the height of `h_n`.
pub fn separation_witness(max_n: usize) -> Result<Vec<WitnessRow>> {
    let labels: BTreeSet<Label> = [Label::atom("a")].into();
    let flatten = H2s::builtin("flatten", &labels)?;
    let out = lin_alphabet(&labels)?;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let (h, height_in, nodes) = exp_hedge_family(n)?;
        let outputs = flatten.eval(&h)?;
        let o = outputs.iter().next().expect("flatten is total");
        let height_fcns_out = fcns_word(&out.tag_word(o)?)?.height()?;
        rows.push(WitnessRow {
            n,
            nodes,
            height_in,
            height_fcns_out,
            ratio: height_fcns_out as f64 / height_in as f64,
        });
    }
    Ok(rows)
}

pub fn format_witness(rows: &[WitnessRow]) -> String {
    let mut s = String::from("n\tnodes\theight_in\theight_fcns_out\tratio\n");
    for r in rows {
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.3}\n",
            r.n, r.nodes, r.height_in, r.height_fcns_out, r.ratio
        ));
    }
    s
}

/// A hedge and output violating a height bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub hedge: Hedge,
    pub output_height: usize,
    pub bound: usize,
}

/// Output heights of an H2B transducer against `k_T` times an input
/// height, checked on every non-empty hedge up to a size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact2Report {
    pub k: usize,
    pub hedges_checked: usize,
    /// First violation of `height(o) ≤ k · height(h)`.
    pub literal: Option<BoundViolation>,
    /// First violation of `height(o) ≤ k · height(fcns(h))`.
    pub via_fcns: Option<BoundViolation>,
}

impl Fact2Report {
    pub fn literal_holds(&self) -> bool {
        self.literal.is_none()
    }

    pub fn via_fcns_holds(&self) -> bool {
        self.via_fcns.is_none()
    }
}

impl fmt::Display for Fact2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<BoundViolation>| match v {
            None => "holds".to_string(),
            Some(v) => format!(
                "fails on {} (output height {} > {})",
                v.hedge, v.output_height, v.bound
            ),
        };
        writeln!(f, "k_T = {} ({} hedges)", self.k, self.hedges_checked)?;
        writeln!(f, "height(T(h)) <= k_T * height(h): {}", show(&self.literal))?;
        write!(f, "height(T(h)) <= k_T * height(fcns(h)): {}", show(&self.via_fcns))
    }
}

/// `k_T`: one more than the largest height of a rule's output with both
/// state calls removed.
pub fn h2b_constant(t: &H2s) -> Result<usize> {
    let out = t.output().require_structured()?;
    let mut k = 0;
    for r in t.rules() {
        k = k.max(out.tag_word(&r.skeleton())?.height()?);
    }
    for l in t.leaves() {
        k = k.max(out.tag_word(&l.output)?.height()?);
    }
    Ok(k + 1)
}

pub fn fact2_bound_check(t: &H2s, max_nodes: usize) -> Result<Fact2Report> {
    if let Some(v) = t.h2b_violation()? {
        return Err(Error::Precondition(format!("not a hedge-to-binary-tree transducer: {v}")));
    }
    let k = h2b_constant(t)?;
    let out = t.output().require_structured()?;
    let lin = lin_alphabet(t.input())?;
    let mut report = Fact2Report {
        k,
        hedges_checked: 0,
        literal: None,
        via_fcns: None,
    };
    for h in enum_hedges(t.input(), max_nodes) {
        if h.is_empty() {
            continue;
        }
        report.hedges_checked += 1;
        let outputs = t.eval(&h)?;
        let Some(highest) = outputs
            .iter()
            .map(|o| out.tag_word(o).and_then(|w| w.height()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
        else {
            continue;
        };
        let fcns_height = fcns_word(&lin.tag_word(&h.lin().to_word())?)?.height()?;
        for (slot, base) in [(&mut report.literal, h.height()), (&mut report.via_fcns, fcns_height)] {
            if slot.is_none() && highest > k * base {
                *slot = Some(BoundViolation {
                    hedge: h.clone(),
                    output_height: highest,
                    bound: k * base,
                });
            }
        }
    }
    Ok(report)
}
