use alloc::string::String;

use crate::Rational;

/// Everything that can go wrong while building or querying a structure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the state space is empty")]
    EmptySpace,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("the structure has no players")]
    NoPlayers,
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("negative mass {mass} at state `{state}`")]
    NegativeMass { state: String, mass: Rational },
    #[error("masses sum to {0}, not 1")]
    NotNormalized(Rational),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("type of player `{player}` at state `{state}` gives its own cell mass {mass}, not 1")]
    NotPartitional {
        player: String,
        state: String,
        mass: Rational,
    },
    #[error("belief of player `{player}` at state `{state}` violates {axiom}")]
    NotKd45 {
        player: String,
        state: String,
        axiom: &'static str,
    },
    #[error("payoffs do not sum to zero at state `{0}`")]
    NotZeroSum(String),
    #[error("the subset is empty")]
    EmptySubset,
    #[error("no weak common belief in truth at state `{0}`")]
    WeakCbtAbsent(String),
    #[error("bet extension stuck: no state of {0} can be added")]
    ExtensionStuck(String),
    #[error("the bet is not agreeable on {0}")]
    NotAgreeable(String),
    #[error("target set {0} is not closed under beliefs")]
    TargetNotClosed(String),
    #[error("restricted structure on {0} is not S5")]
    NotS5(String),
    #[error("restricted type of player `{player}` at state `{state}` is undefined")]
    UndefinedRestriction { player: String, state: String },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("solver returned a certificate that fails verification")]
    UnsoundCertificate,
    #[error("posterior undefined: conditioning set {0} has zero mass")]
    UndefinedPosterior(String),
    #[error("invalid market configuration: {0}")]
    InvalidMarket(String),
}
