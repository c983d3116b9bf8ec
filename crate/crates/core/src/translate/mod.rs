// SPDX-License-Identifier: Apache-2.0

//! Effective translations between VPTs and hedge-to-string transducers.
//!
//! | function | from | to | equation |
//! |---|---|---|---|
//! | [`vpt_to_h2s_tr`] | VPT over Σ | tail-recursive H2S over Σc×Σr | `A = T ∘ hedge` |
//! | [`h2s_tr_to_vpt`] | tail-recursive H2S | VPT | `A = T ∘ hedge` |
//! | [`vpt_fcns_to_h2s`] | VPT over Σ⊥ | H2S | `A ∘ fcns = T ∘ hedge` on non-empty words |
//! | [`h2s_to_vpt_fcns`] | H2S | VPT over Σ⊥ | same |
//! | [`h2b_to_h2h`] | H2B | H2H | `T′ = fcns⁻¹ ∘ T` |

mod binary;
mod fcns;
mod tail;

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::h2s::H2s;
use crate::vpt::Vpt;
use crate::words::Symbol;

pub use binary::h2b_to_h2h;
pub use fcns::{h2s_to_vpt_fcns, vpt_fcns_to_h2s};
pub use tail::{h2s_tr_to_vpt, vpt_to_h2s_tr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    H2bToH2h,
    VptToH2s,
    H2sToVpt,
    VptFcnsToH2s,
    H2sToVptFcns,
}

impl Direction {
    pub const ALL: [Direction; 5] = [
        Direction::H2bToH2h,
        Direction::VptToH2s,
        Direction::H2sToVpt,
        Direction::VptFcnsToH2s,
        Direction::H2sToVptFcns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Direction::H2bToH2h => "h2b→h2h",
            Direction::VptToH2s => "vpt→h2s",
            Direction::H2sToVpt => "h2s→vpt",
            Direction::VptFcnsToH2s => "vpt⊥→h2s",
            Direction::H2sToVptFcns => "h2s→vpt⊥",
        }
    }

    /// Accepts the arrow spelling and an ASCII one (`vpt-fcns-h2s` etc).
    pub fn parse(text: &str) -> Option<Direction> {
        let ascii = text.replace("->", "-").replace('→', "-").replace('⊥', "-fcns");
        let d = match ascii.as_str() {
            "h2b-h2h" => Direction::H2bToH2h,
            "vpt-h2s" => Direction::VptToH2s,
            "h2s-vpt" => Direction::H2sToVpt,
            "vpt-fcns-h2s" => Direction::VptFcnsToH2s,
            "h2s-vpt-fcns" => Direction::H2sToVptFcns,
            _ => return None,
        };
        Some(d)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Summary of one translation. Class flags are computed from the result;
/// `None` means the flag does not apply (e.g. unstructured output).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub direction: Direction,
    pub source: &'static str,
    pub target: &'static str,
    pub states_before: usize,
    pub states_after: usize,
    pub tail_recursive: Option<bool>,
    pub h2h: Option<bool>,
    pub wn_vpt: Option<bool>,
}

impl TranslationReport {
    pub fn to_h2s(direction: Direction, source: &'static str, states_before: usize, t: &H2s) -> Self {
        TranslationReport {
            direction,
            source,
            target: "h2s",
            states_before,
            states_after: t.states().len(),
            tail_recursive: Some(t.is_tail_recursive()),
            h2h: t.is_h2h().ok(),
            wn_vpt: None,
        }
    }

    pub fn to_vpt(direction: Direction, source: &'static str, states_before: usize, a: &Vpt) -> Self {
        TranslationReport {
            direction,
            source,
            target: "vpt",
            states_before,
            states_after: a.states().len(),
            tail_recursive: None,
            h2h: None,
            wn_vpt: a.is_wn_vpt().ok(),
        }
    }
}

impl fmt::Display for TranslationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        writeln!(f, "translation: {}", self.direction)?;
        writeln!(f, "states: {} -> {}", self.states_before, self.states_after)?;
        if self.target == "h2s" {
            writeln!(f, "tail-recursive: {}", flag(self.tail_recursive))?;
            write!(f, "h2h: {}", flag(self.h2h))
        } else {
            write!(f, "wn-vpt: {}", flag(self.wn_vpt))
        }
    }
}

/// Hands out readable state names, keeping them distinct even when two
/// keys render the same way.
struct Namer<K> {
    names: HashMap<K, Symbol>,
    used: HashSet<Symbol>,
}

impl<K: std::hash::Hash + Eq + Clone> Namer<K> {
    fn new() -> Self {
        Namer {
            names: HashMap::new(),
            used: HashSet::new(),
        }
    }

    fn name(&mut self, key: &K, render: impl FnOnce() -> String) -> Symbol {
        if let Some(s) = self.names.get(key) {
            return s.clone();
        }
        let mut text = render();
        while self.used.contains(&Symbol::new(&text)) {
            text.push('\'');
        }
        let s = Symbol::new(&text);
        self.used.insert(s.clone());
        self.names.insert(key.clone(), s.clone());
        s
    }
}

fn pair_name(p: &Symbol, q: &Symbol) -> String {
    format!("({p},{q})")
}
