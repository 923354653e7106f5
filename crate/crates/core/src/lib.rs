//! Exact-arithmetic toolkit for interactive KD45 belief.
//!
//! The crate models finite belief structures, both probabilistic (type
//! functions) and qualitative (partitions with possibility functions), and
//! answers questions about them exactly:
//!
//! * which states are deluded, and whether a structure is non-singular
//!   ([`structures`]);
//! * standard and delusional Bayesian revision ([`revision`]);
//! * common-belief sets, meet components and common belief in truth
//!   ([`reachability`]);
//! * existence of common standard and delusional priors ([`priors`]);
//! * construction and verification of agreeable bets ([`betting`]);
//! * randomized generators and brute-force oracles ([`harness`]);
//! * a public-announcement trading simulation ([`market`]).
//!
//! All numbers are arbitrary-precision rationals. Nothing is rounded and no
//! comparison uses a tolerance.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod error;
pub mod rational;
pub mod space;
pub mod structures;
pub mod revision;
pub mod reachability;
pub mod simplex;
pub mod priors;
pub mod betting;
pub mod harness;
pub mod market;

pub use error::Error;
pub use rational::Rational;
pub use space::{Distribution, PlayerId, RandomVariable, State, StateSet, StateSpace};
pub use structures::{
    BeliefStructure, DelusionReport, Partition, PossibilityFunction,
    ProbabilisticBeliefStructure, TypeFunction,
};

#[cfg(test)]
pub(crate) mod fixtures;
