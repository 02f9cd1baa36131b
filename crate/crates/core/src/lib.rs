//! Normal forms and the word problem for the initial monoid adjunction.
//!
//! The monoid is presented by generators `η_k`, `ε_k` (`k ≥ 0`) subject to a
//! fixed, already-complete string rewriting system. Every element has a unique
//! canonical form `η_{i1}…η_{ik} ε_{j1}…ε_{jl}` with the η-indices
//! non-decreasing and the ε-indices non-increasing. In particular `ηε` is a
//! normal form different from `1`, so the unit of the universal adjunction is
//! not invertible.
//!
//! Modules, bottom-up:
//!
//! * [`words`]: the alphabet, free-monoid words, the text format and the
//!   degree measure.
//! * [`rewrite`]: the rewrite rules, single steps, leftmost normalization,
//!   traces and full reduction graphs.
//! * [`monoid`]: the monoid as an algebra with the shift endomorphism `f`,
//!   the axiom checks and the answer to the isomorphism question.
//! * [`confluence`]: a mechanical audit of termination and local confluence,
//!   and a normal-form-free equivalence oracle.
//! * [`cli`]: the command-line driver behind the `freeadj` binary.

pub mod cli;
pub mod confluence;
pub mod monoid;
pub mod rewrite;
pub mod words;

pub use monoid::Element;
pub use rewrite::{normalize, RuleCase, RuleInstance, Step, Trace};
pub use words::{Generator, Kind, ParseError, Word};
