// SPDX-License-Identifier: Apache-2.0

//! Visibly pushdown transducers over nested words, hedge-to-string
//! transducers, and effective translations between the two models.

pub mod cli;
mod error;
pub mod h2s;
pub mod hedges;
pub mod oracle;
pub mod text;
pub mod translate;
pub mod vpt;
pub mod words;

pub use error::{Error, Result};
pub use h2s::{H2s, H2sBuilder, LeafRule, NodeRule};
pub use hedges::{BinaryTree, Hedge, Label, Tree};
pub use vpt::{Vpt, VptBuilder};
pub use words::{Letter, NestedWord, OutputAlphabet, StructuredAlphabet, Symbol, Word};
