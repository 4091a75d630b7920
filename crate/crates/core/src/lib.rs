//! Exact-arithmetic toolkit for multiwinner voting rules.
//!
//! The crate evaluates committee scoring rules and pairwise decision rules
//! over voting situations with exact rational multiplicities, mechanically
//! checks the classic axioms (anonymity, neutrality, consistency, continuity,
//! committee dominance) on desk-scale instances, and reconstructs a rule's
//! hidden committee scoring function from black-box comparisons.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to call from multiple threads.

pub mod axioms;
pub mod combinat;
pub mod decision;
pub mod error;
pub mod linalg;
pub mod model;
pub mod profile_fmt;
pub mod rational;
pub mod recovery;
pub mod sample;
pub mod scoring;

pub use error::{Error, Result};
pub use model::{Committee, CommitteePosition, Permutation, Profile, Vote, VotingSituation};
pub use rational::Rational;
