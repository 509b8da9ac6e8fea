//! Minimal-length prefix-notation representations of natural numbers.
//!
//! A term is a prefix string over an alphabet such as `{1, S, *}`: the
//! constant one, the successor function and hyperoperations of order 1-3
//! (`+`, `*`, `^`). The crate computes, for every `n` up to a limit, the
//! complexity `c(n)` (the fewest symbols needed to write `n`) together
//! with a minimal witness term, the maximal value reachable with exactly
//! `k` symbols, and a battery of verifiable facts about those quantities
//! (bounds, ugly/efficient numbers, structural constraints on maximal
//! terms).
//!
//! The crate is `no_std` + `alloc`; all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod engine;
pub mod extremal;
pub mod ops;
pub mod term;

pub use analysis::{
    enumerate_values, histogram, ugly_numbers, AnalysisError, CheckId, TermCensus,
    VerificationReport,
};
pub use engine::{build_table, ComplexityTable, EngineConfig, EngineError, Provenance};
pub use extremal::{closed_form_max, max_table, ExtremalEntry, ExtremalRecord};
pub use ops::{HyperOp, OperatorSet, OpsError, Semantics};
pub use term::{Term, TermError};
