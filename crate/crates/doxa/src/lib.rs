//! File formats and reports for `doxa-core`.
//!
//! Structure files are JSON documents listing `states`, `players` and either
//! sparse `types` (player, then state, then state to `p/q` mass) or
//! `partitions` with optional per-cell `beliefs`. Market files add a prior,
//! distortions, the event, the threshold, the true state and a round cap.

pub mod format;
pub mod report;

pub use doxa_core as core;
