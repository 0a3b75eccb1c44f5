//! Exact-arithmetic analysis of multi-issue binary voting: issue-wise
//! majorities, the Anscombe and Ostrogorski paradoxes, Condorcet winners and
//! never-strictly-supported sets, single-switch and single-crossing structure
//! with forbidden-substructure witnesses, and majority-supported proposals
//! close to the issue-wise majority.
//!
//! All decision-relevant comparisons are made in exact rational arithmetic;
//! enumeration-heavy scans run on exactly rescaled integers so results agree
//! bit-for-bit with the rational definitions. With the default `parallel`
//! feature the scans are distributed across rayon workers and still return
//! the same lexicographic-first answers as the sequential fallback.

pub mod condorcet;
pub mod error;
pub mod exec;
pub mod majority;
pub mod model;
pub mod rational;
pub mod representation;
pub mod scale;
pub mod single_crossing;
pub mod structure;

pub use error::{Error, Result};
pub use model::{
    average_weight_vector, column_balance, topic_majority, weighted_hamming, weighted_inner,
    AverageWeights, Opinion, PreferenceProfile, Proposal, VotingInstance, WeightMode,
    WeightScheme,
};
pub use rational::{format_rational, parse_rational, Rational};
