//! Exact alternate-base numeration systems.
//!
//! An alternate base `B = (β_{p-1}, ..., β_0)` of real numbers greater than
//! one, repeated periodically, gives every non-negative real a two-way greedy
//! expansion. This crate computes those expansions exactly in a real quadratic
//! field, enumerates the B-integers, builds the substitutions and automaton
//! that generate their gap sequence, and classifies that sequence as sturmian
//! or not.

pub mod base;
pub mod bintegers;
pub mod exactreal;
pub mod sturmian;
pub mod substitution;

pub use base::{
    parse_base, AlternateBase, BaseError, Digit, DigitWord, Expansion, InfiniteWord,
    ParryProfile, DEFAULT_STATE_BUDGET,
};
pub use bintegers::{BIntegerEntry, BIntegers};
pub use exactreal::{ArithError, QuadNum};
pub use sturmian::{CaseTag, ContinuedFraction, SturmianError, SturmianVerdict};
pub use substitution::{CountMatrix, ParryAutomaton, Substitution, SubstitutionError};
