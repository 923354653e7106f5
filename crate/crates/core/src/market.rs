//! Threshold traders who announce Buy or Sell in public rounds.
//!
//! A trader's private signal may be distorted: the cell it actually observes
//! is replaced by another cell of its own partition. Announcements are read
//! through the undistorted model, so trader `i` keeps exactly the states at
//! which a correctly informed trader `j` would have made `j`'s announcement.

use alloc::string::String;
use alloc::vec::Vec;

use crate::space::{Distribution, State, StateSet, StateSpace};
use crate::structures::Partition;
use crate::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Buy,
    Sell,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trader {
    pub name: String,
    pub partition: Partition,
    /// Observed cell index for each true cell index.
    pub distortion: Vec<usize>,
}

impl Trader {
    /// A trader who observes its true cell.
    pub fn honest(name: impl Into<String>, partition: Partition) -> Self {
        let distortion = (0..partition.cells().len()).collect();
        Self {
            name: name.into(),
            partition,
            distortion,
        }
    }

    pub fn observed(&self, state: State) -> &StateSet {
        &self.partition.cells()[self.distortion[self.partition.cell_index(state)]]
    }

    pub fn is_honest(&self) -> bool {
        self.distortion.iter().enumerate().all(|(k, d)| k == *d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarketConfig {
    space: StateSpace,
    prior: Distribution,
    traders: Vec<Trader>,
    event: StateSet,
    threshold: Rational,
    true_state: State,
    max_rounds: usize,
}

impl MarketConfig {
    pub fn new(
        space: StateSpace,
        prior: Distribution,
        traders: Vec<Trader>,
        event: StateSet,
        threshold: Rational,
        true_state: State,
        max_rounds: usize,
    ) -> Result<Self, Error> {
        let bad = |m: String| Err(Error::InvalidMarket(m));
        if traders.is_empty() {
            return bad("no traders".into());
        }
        if prior.len() != space.len() {
            return bad("prior does not match the state space".into());
        }
        for (k, t) in traders.iter().enumerate() {
            if traders[..k].iter().any(|u| u.name == t.name) {
                return Err(Error::DuplicatePlayer(t.name.clone()));
            }
            let covered: usize = t.partition.cells().iter().map(StateSet::len).sum();
            if covered != space.len() || t.partition.cells().iter().flatten().any(|s| s.0 >= space.len()) {
                return bad(alloc::format!("partition of `{}` does not cover the space", t.name));
            }
            if t.distortion.len() != t.partition.cells().len() {
                return bad(alloc::format!("distortion of `{}` must map every cell", t.name));
            }
            if t.distortion.iter().any(|d| *d >= t.partition.cells().len()) {
                return bad(alloc::format!("distortion of `{}` leaves its partition", t.name));
            }
        }
        if event.iter().any(|s| s.0 >= space.len()) || true_state.0 >= space.len() {
            return bad("state outside the space".into());
        }
        if threshold < crate::rational::zero() || threshold > crate::rational::one() {
            return bad("threshold outside [0, 1]".into());
        }
        if max_rounds == 0 {
            return bad("max_rounds must be positive".into());
        }
        Ok(Self {
            space,
            prior,
            traders,
            event,
            threshold,
            true_state,
            max_rounds,
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn traders(&self) -> &[Trader] {
        &self.traders
    }

    pub fn event(&self) -> &StateSet {
        &self.event
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn true_state(&self) -> State {
        self.true_state
    }

    pub fn max_rounds(&self) -> usize {
        self.max_rounds
    }

    /// The same market with every distortion replaced by the identity.
    pub fn undistorted(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.traders {
            *t = Trader::honest(t.name.clone(), t.partition.clone());
        }
        out
    }

    pub fn with_true_state(&self, state: State) -> Self {
        Self {
            true_state: state,
            ..self.clone()
        }
    }
}

/// `p(E | S)`, or `None` when `p(S) = 0`.
pub fn posterior(set: &StateSet, prior: &Distribution, event: &StateSet) -> Option<Rational> {
    let mass = prior.mass_of(set);
    if mass == crate::rational::zero() {
        return None;
    }
    let joint: StateSet = set.intersection(event).copied().collect();
    Some(prior.mass_of(&joint) / mass)
}

/// Buy iff `p(E | S) ≥ θ`.
pub fn decide(set: &StateSet, prior: &Distribution, event: &StateSet, threshold: &Rational) -> Result<Action, Error> {
    let p = posterior(set, prior, event).ok_or_else(|| Error::UndefinedPosterior(alloc::format!("{set:?}")))?;
    Ok(if p >= *threshold { Action::Buy } else { Action::Sell })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraderState {
    pub set: StateSet,
    pub actions: Vec<Action>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraderRound {
    pub set: StateSet,
    pub posterior: Rational,
    pub action: Action,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundLog {
    pub round: usize,
    pub traders: Vec<TraderRound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakdownCause {
    EmptySet,
    ZeroMass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Neither the traders' sets nor the model's action functions change.
    FixedPoint,
    /// Trader `trader` could not announce in round `round`.
    Breakdown {
        round: usize,
        trader: usize,
        cause: BreakdownCause,
    },
    RoundCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationResult {
    pub rounds: Vec<RoundLog>,
    pub termination: Termination,
    /// Rounds with complete announcements.
    pub rounds_elapsed: usize,
    pub traders: Vec<TraderState>,
}

impl SimulationResult {
    pub fn final_round(&self) -> Option<&RoundLog> {
        self.rounds.last()
    }
}

fn model_action(set: &StateSet, config: &MarketConfig) -> Option<Action> {
    decide(set, &config.prior, &config.event, &config.threshold).ok()
}

pub fn simulate(config: &MarketConfig) -> SimulationResult {
    let n = config.space.len();
    let mut sets: Vec<StateSet> = config
        .traders
        .iter()
        .map(|t| t.observed(config.true_state).clone())
        .collect();
    // model[j][ω]: what an undistorted trader j would hold at ω.
    let mut model: Vec<Vec<StateSet>> = config
        .traders
        .iter()
        .map(|t| config.space.states().map(|s| t.partition.cell_of(s).clone()).collect())
        .collect();
    let mut states: Vec<TraderState> = sets
        .iter()
        .map(|s| TraderState {
            set: s.clone(),
            actions: Vec::new(),
        })
        .collect();
    let mut rounds = Vec::new();
    for round in 1..=config.max_rounds {
        let mut log = Vec::with_capacity(sets.len());
        for (i, set) in sets.iter().enumerate() {
            let cause = if set.is_empty() {
                Some(BreakdownCause::EmptySet)
            } else if posterior(set, &config.prior, &config.event).is_none() {
                Some(BreakdownCause::ZeroMass)
            } else {
                None
            };
            if let Some(cause) = cause {
                return SimulationResult {
                    rounds_elapsed: round - 1,
                    rounds,
                    termination: Termination::Breakdown { round, trader: i, cause },
                    traders: states,
                };
            }
            let p = posterior(set, &config.prior, &config.event).expect("checked above");
            let action = if p >= config.threshold { Action::Buy } else { Action::Sell };
            log.push(TraderRound {
                set: set.clone(),
                posterior: p,
                action,
            });
        }
        for (st, entry) in states.iter_mut().zip(&log) {
            st.set = entry.set.clone();
            st.actions.push(entry.action);
        }
        rounds.push(RoundLog { round, traders: log });

        let actions: Vec<Vec<Option<Action>>> = model
            .iter()
            .map(|row| row.iter().map(|s| model_action(s, config)).collect())
            .collect();
        let announced: Vec<Action> = rounds.last().expect("just pushed").traders.iter().map(|t| t.action).collect();
        let consistent = |i: usize, w: usize, target: &dyn Fn(usize) -> Option<Action>| {
            (0..actions.len()).filter(|j| *j != i).all(|j| actions[j][w] == target(j))
        };
        let next_sets: Vec<StateSet> = sets
            .iter()
            .enumerate()
            .map(|(i, set)| {
                set.iter()
                    .copied()
                    .filter(|w| consistent(i, w.0, &|j| Some(announced[j])))
                    .collect()
            })
            .collect();
        let next_model: Vec<Vec<StateSet>> = model
            .iter()
            .enumerate()
            .map(|(i, row)| {
                (0..n)
                    .map(|w| {
                        row[w]
                            .iter()
                            .copied()
                            .filter(|v| consistent(i, v.0, &|j| actions[j][w]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if next_sets == sets && next_model == model {
            return SimulationResult {
                rounds,
                termination: Termination::FixedPoint,
                rounds_elapsed: round,
                traders: states,
            };
        }
        sets = next_sets;
        model = next_model;
    }
    SimulationResult {
        rounds_elapsed: config.max_rounds,
        rounds,
        termination: Termination::RoundCap,
        traders: states,
    }
}
