// SPDX-License-Identifier: Apache-2.0

//! Bounded enumeration, brute-force equivalence checks and numerical
//! witnesses.

mod enumerate;
mod equiv;
pub mod mutate;
pub mod random;
mod witness;

pub use enumerate::{enum_flat_words, enum_hedges, enum_wn_words};
pub use equiv::{
    equiv_fcns_on_bounded, equiv_on_bounded, equiv_on_words, Counterexample, Encoding, Record, Verdict,
};
pub use witness::{
    exp_hedge_family, fact2_bound_check, format_witness, h2b_constant, separation_witness, BoundViolation,
    Fact2Report, WitnessRow,
};
