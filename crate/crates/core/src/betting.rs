//! Bets, agreeability, restricted structures and bet construction.
//!
//! A bet is agreeable at a state when every player's posterior expectation
//! of their own payoff is strictly positive there. Bets are searched for with
//! a max-min linear program over box-bounded payoffs, first on the largest
//! S5 part of a common belief set and then extended one state at a time to
//! the whole set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::priors::find_common_standard_prior;
use crate::rational::{integer, one, ratio};
use crate::reachability::{common_belief_set, meet, meet_component, s5_core, weak_cbt};
use crate::revision::posterior_expectation;
use crate::simplex::{LinearProgram, LpOutcome, Relation};
use crate::space::{Distribution, PlayerId, RandomVariable, State, StateSet, StateSpace};
use crate::structures::{BeliefStructure, ProbabilisticBeliefStructure};
use crate::{Error, Rational};

/// One payoff per player, summing to zero at every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bet {
    payoffs: Vec<RandomVariable>,
}

impl Bet {
    pub fn new(space: &StateSpace, payoffs: Vec<RandomVariable>) -> Result<Self, Error> {
        if payoffs.is_empty() {
            return Err(Error::NoPlayers);
        }
        if let Some(f) = payoffs.iter().find(|f| f.len() != space.len()) {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: f.len(),
            });
        }
        for s in space.states() {
            let total: Rational = payoffs.iter().map(|f| f.value(s)).sum();
            if !total.is_zero() {
                return Err(Error::NotZeroSum(space.name(s).to_string()));
            }
        }
        Ok(Self { payoffs })
    }

    /// The two-player bet `(f, -f)`.
    pub fn against(f: RandomVariable) -> Self {
        let g = -&f;
        Self {
            payoffs: vec![f, g],
        }
    }

    pub fn zero(space: &StateSpace, players: usize) -> Self {
        Self {
            payoffs: vec![RandomVariable::zero(space); players],
        }
    }

    pub fn payoff(&self, player: PlayerId) -> &RandomVariable {
        &self.payoffs[player.0]
    }

    pub fn payoffs(&self) -> &[RandomVariable] {
        &self.payoffs
    }

    pub fn num_players(&self) -> usize {
        self.payoffs.len()
    }
}

pub fn expectations_at(bet: &Bet, pbs: &ProbabilisticBeliefStructure, state: State) -> Vec<Rational> {
    pbs.players()
        .map(|i| posterior_expectation(bet.payoff(i), pbs.type_function(i), state))
        .collect()
}

pub fn is_agreeable_at(bet: &Bet, pbs: &ProbabilisticBeliefStructure, state: State) -> bool {
    pbs.players()
        .all(|i| posterior_expectation(bet.payoff(i), pbs.type_function(i), state).is_positive())
}

pub fn agreeable_states(bet: &Bet, pbs: &ProbabilisticBeliefStructure) -> StateSet {
    pbs.space()
        .states()
        .filter(|s| is_agreeable_at(bet, pbs, *s))
        .collect()
}

/// Agreeable at every state of the meet component of `state`.
pub fn is_common_knowledge_agreeable(bet: &Bet, pbs: &ProbabilisticBeliefStructure, state: State) -> bool {
    meet_component(pbs.space(), pbs.partitions(), state)
        .members
        .iter()
        .all(|s| is_agreeable_at(bet, pbs, *s))
}

/// Agreeable at every state of `b^Q(state)`.
pub fn is_common_belief_agreeable(
    bet: &Bet,
    pbs: &ProbabilisticBeliefStructure,
    bs: &BeliefStructure,
    state: State,
) -> bool {
    common_belief_set(bs, state)
        .members
        .iter()
        .all(|s| is_agreeable_at(bet, pbs, *s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreeabilityReport {
    pub state: State,
    /// `expectations[ω][i]`.
    pub expectations: Vec<Vec<Rational>>,
    pub agreeable: StateSet,
    pub common_knowledge: bool,
    pub common_belief: bool,
}

pub fn agreeability_report(
    bet: &Bet,
    pbs: &ProbabilisticBeliefStructure,
    bs: &BeliefStructure,
    state: State,
) -> AgreeabilityReport {
    let expectations: Vec<Vec<Rational>> = pbs
        .space()
        .states()
        .map(|s| expectations_at(bet, pbs, s))
        .collect();
    let agreeable: StateSet = pbs
        .space()
        .states()
        .filter(|s| expectations[s.0].iter().all(|e| e.is_positive()))
        .collect();
    let common_knowledge = meet_component(pbs.space(), pbs.partitions(), state)
        .members
        .is_subset(&agreeable);
    let common_belief = common_belief_set(bs, state).members.is_subset(&agreeable);
    AgreeabilityReport {
        state,
        expectations,
        agreeable,
        common_knowledge,
        common_belief,
    }
}

/// Types conditioned on a subset `X` within each partition cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedStructure {
    base: ProbabilisticBeliefStructure,
    subset: StateSet,
    /// `types[i][ω]`, `None` outside `X` or where `t_i(ω)` gives `X` no mass.
    types: Vec<Vec<Option<Distribution>>>,
}

pub fn restrict(pbs: &ProbabilisticBeliefStructure, subset: &StateSet) -> Result<RestrictedStructure, Error> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(s) = subset.iter().find(|s| s.0 >= pbs.space().len()) {
        return Err(Error::UnknownState(format!("#{}", s.0)));
    }
    let n = pbs.space().len();
    let types = pbs
        .players()
        .map(|i| {
            (0..n)
                .map(State)
                .map(|s| {
                    if !subset.contains(&s) {
                        return None;
                    }
                    let t = pbs.type_at(i, s);
                    let cell: StateSet = pbs.partition(i).cell_of(s).intersection(subset).copied().collect();
                    let mass = t.mass_of(&cell);
                    if mass.is_zero() {
                        return None;
                    }
                    let masses = (0..n)
                        .map(|k| {
                            if cell.contains(&State(k)) {
                                t.mass(State(k)) / &mass
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect();
                    Some(Distribution::from_raw(masses))
                })
                .collect()
        })
        .collect();
    Ok(RestrictedStructure {
        base: pbs.clone(),
        subset: subset.clone(),
        types,
    })
}

impl RestrictedStructure {
    pub fn base(&self) -> &ProbabilisticBeliefStructure {
        &self.base
    }

    pub fn subset(&self) -> &StateSet {
        &self.subset
    }

    /// `Π_i(ω) ∩ X`.
    pub fn cell(&self, player: PlayerId, state: State) -> StateSet {
        self.base
            .partition(player)
            .cell_of(state)
            .intersection(&self.subset)
            .copied()
            .collect()
    }

    pub fn restricted_type(&self, player: PlayerId, state: State) -> Option<&Distribution> {
        self.types[player.0][state.0].as_ref()
    }

    /// Pairs in `X` whose restricted type is undefined.
    pub fn undefined(&self) -> Vec<(PlayerId, State)> {
        self.base
            .players()
            .flat_map(|i| self.subset.iter().map(move |s| (i, *s)))
            .filter(|(i, s)| self.restricted_type(*i, *s).is_none())
            .collect()
    }

    /// `E_i^X(f | Π_i^X(ω))`, or `None` where the restricted type is undefined.
    pub fn expectation(&self, f: &RandomVariable, player: PlayerId, state: State) -> Option<Rational> {
        self.restricted_type(player, state)
            .map(|t| crate::revision::expectation(f, t))
    }

    /// Every restricted type is defined and has full support on its cell.
    pub fn is_s5(&self) -> bool {
        self.base.players().all(|i| {
            self.subset.iter().all(|s| match self.restricted_type(i, *s) {
                Some(t) => t.support() == self.cell(i, *s),
                None => false,
            })
        })
    }

    /// The restricted structure as a structure on `X` alone.
    pub fn to_pbs(&self) -> Result<ProbabilisticBeliefStructure, Error> {
        if let Some((i, s)) = self.undefined().into_iter().next() {
            return Err(Error::UndefinedRestriction {
                player: self.base.player_name(i).to_string(),
                state: self.base.space().name(s).to_string(),
            });
        }
        let space = self.base.space().subspace(&self.subset)?;
        let types = self
            .base
            .players()
            .map(|i| {
                self.subset
                    .iter()
                    .map(|s| {
                        let t = self.restricted_type(i, *s).expect("checked above");
                        Distribution::from_raw(self.subset.iter().map(|k| t.mass(*k).clone()).collect())
                    })
                    .collect()
            })
            .collect();
        ProbabilisticBeliefStructure::new(space, self.base.player_names().to_vec(), types)
    }
}

/// `E_i(f_i) ≥ δ` for one player over one weighted cell; weights sum to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ExpectationBound {
    pub player: PlayerId,
    pub weights: Vec<(State, Rational)>,
}

/// Maximizes the smallest bound over zero-sum payoffs in `[-1, 1]` on
/// `domain`, zero elsewhere. Returns the optimum and the maximizing bet.
pub(crate) fn max_min_bet(
    space: &StateSpace,
    players: usize,
    domain: &StateSet,
    bounds: &[ExpectationBound],
) -> (Rational, Bet) {
    // Variables h = 1 - f ∈ [0, 2] keep every right-hand side non-negative.
    let states: Vec<State> = domain.iter().copied().collect();
    let column = |i: PlayerId, s: State| -> usize {
        let k = states.binary_search(&s).expect("bound outside domain");
        k * players + i.0
    };
    let delta = states.len() * players;
    let mut lp = LinearProgram::new(delta + 1);
    for k in 0..states.len() {
        lp.constrain(
            (0..players).map(|i| (k * players + i, one())).collect(),
            Relation::Eq,
            integer(players as i64),
        );
    }
    for v in 0..delta {
        lp.constrain(vec![(v, one())], Relation::Le, integer(2));
    }
    for b in bounds {
        let mut terms: Vec<(usize, Rational)> = b
            .weights
            .iter()
            .map(|(s, w)| (column(b.player, *s), w.clone()))
            .collect();
        terms.push((delta, one()));
        lp.constrain(terms, Relation::Le, one());
    }
    lp.maximize(vec![(delta, one())]);
    let LpOutcome::Optimal { value, solution } = lp.solve() else {
        unreachable!("h = 1, δ = 0 is feasible and δ ≤ 1")
    };
    let payoffs = (0..players)
        .map(|i| {
            let mut f = RandomVariable::zero(space);
            for (k, s) in states.iter().enumerate() {
                f.set(*s, one() - &solution[k * players + i]);
            }
            f
        })
        .collect();
    (value, Bet { payoffs })
}

/// One bound per (player, partition cell) met by `domain`, using `weights`.
fn cell_bounds<'a, F>(pbs: &ProbabilisticBeliefStructure, domain: &StateSet, weights: F) -> Vec<ExpectationBound>
where
    F: Fn(PlayerId, State) -> Option<&'a Distribution>,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in pbs.players() {
        for &s in domain {
            if !seen.insert((i, pbs.partition(i).cell_index(s))) {
                continue;
            }
            if let Some(t) = weights(i, s) {
                out.push(ExpectationBound {
                    player: i,
                    weights: t
                        .support()
                        .into_iter()
                        .map(|k| (k, t.mass(k).clone()))
                        .collect(),
                });
            }
        }
    }
    out
}

/// Maximizes the smallest expected payoff over every player and every state
/// of `domain`, using the unrestricted types. The bet is agreeable on all of
/// `domain` iff the returned margin is positive.
///
/// The domain must contain the support of every type at its members.
pub fn joint_bet(pbs: &ProbabilisticBeliefStructure, domain: &StateSet) -> (Rational, Bet) {
    let bounds = cell_bounds(pbs, domain, |i, s| Some(pbs.type_at(i, s)));
    max_min_bet(pbs.space(), pbs.num_players(), domain, &bounds)
}

/// A bet agreeable at every state of an S5 restricted structure, if any.
///
/// `None` exactly when the optimal smallest expectation is not positive.
pub fn construct_ck_agreeable_bet(r: &RestrictedStructure) -> Result<Option<Bet>, Error> {
    if !r.is_s5() {
        return Err(Error::NotS5(r.base.space().format_set(&r.subset)));
    }
    let pbs = &r.base;
    let bounds = cell_bounds(pbs, &r.subset, |i, s| r.restricted_type(i, s));
    let (value, bet) = max_min_bet(pbs.space(), pbs.num_players(), &r.subset, &bounds);
    if !value.is_positive() {
        return Ok(None);
    }
    let sound = pbs.players().all(|i| {
        r.subset
            .iter()
            .all(|s| r.expectation(bet.payoff(i), i, *s).is_some_and(|e| e.is_positive()))
    });
    if !sound {
        return Err(Error::UnsoundCertificate);
    }
    Ok(Some(bet))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionCase {
    /// The new state lies in a belief cell that already meets the domain.
    Forward,
    /// The paying player is deluded at the new state.
    ZeroSelfMass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub state: State,
    pub case: ExtensionCase,
    pub payer: PlayerId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub bet: Bet,
    pub steps: Vec<ExtensionStep>,
}

/// First (player, state) in `domain` whose defined restricted expectation
/// is not positive.
fn restricted_failure(
    pbs: &ProbabilisticBeliefStructure,
    payoffs: &[RandomVariable],
    domain: &StateSet,
) -> Option<(PlayerId, State)> {
    for &s in domain {
        for i in pbs.players() {
            let t = pbs.type_at(i, s);
            let mass = t.mass_of(domain);
            if mass.is_zero() {
                continue;
            }
            let total: Rational = domain.iter().map(|k| t.mass(*k) * payoffs[i.0].value(*k)).sum();
            if !total.is_positive() {
                return Some((i, s));
            }
        }
    }
    None
}

fn choose_case(
    pbs: &ProbabilisticBeliefStructure,
    bs: &BeliefStructure,
    domain: &StateSet,
    candidate: State,
) -> Option<(ExtensionCase, PlayerId)> {
    let forward = pbs.players().find(|&i| {
        let t = pbs.type_at(i, candidate);
        domain.iter().any(|s| bs.belief(i, *s).contains(&candidate)) && t.mass_of(domain).is_positive()
    });
    if let Some(i) = forward {
        return Some((ExtensionCase::Forward, i));
    }
    pbs.players()
        .find(|&i| pbs.type_at(i, candidate).mass(candidate).is_zero())
        .map(|i| (ExtensionCase::ZeroSelfMass, i))
}

/// Extends a bet agreeable on `domain` (relative to types conditioned on
/// `domain`) to a bet agreeable on all of `target`, one state at a time.
///
/// `target` must contain `domain` and every possibility set of its members.
/// Payoffs on `domain` are kept; payoffs outside `target` are zero.
pub fn extend_bet(
    pbs: &ProbabilisticBeliefStructure,
    bs: &BeliefStructure,
    bet: &Bet,
    domain: &StateSet,
    target: &StateSet,
) -> Result<Extension, Error> {
    let space = pbs.space();
    if !domain.is_subset(target) {
        return Err(Error::TargetNotClosed(space.format_set(target)));
    }
    let closed = target
        .iter()
        .all(|s| pbs.players().all(|i| bs.belief(i, *s).is_subset(target)));
    if !closed {
        return Err(Error::TargetNotClosed(space.format_set(target)));
    }
    let n = pbs.num_players();
    let mut payoffs: Vec<RandomVariable> = bet
        .payoffs()
        .iter()
        .map(|f| {
            let mut g = RandomVariable::zero(space);
            for s in domain {
                g.set(*s, f.value(*s).clone());
            }
            g
        })
        .collect();
    if restricted_failure(pbs, &payoffs, domain).is_some() {
        return Err(Error::NotAgreeable(space.format_set(domain)));
    }
    let mut current = domain.clone();
    let mut steps = Vec::new();
    while current.len() < target.len() {
        let pick = target
            .difference(&current)
            .find_map(|&s| choose_case(pbs, bs, &current, s).map(|(case, i)| (s, case, i)));
        let Some((state, case, payer)) = pick else {
            let rest: StateSet = target.difference(&current).copied().collect();
            return Err(Error::ExtensionStuck(space.format_set(&rest)));
        };
        let paid = if n == 1 {
            Rational::zero()
        } else {
            match case {
                ExtensionCase::ZeroSelfMass => integer(1 - n as i64),
                ExtensionCase::Forward => {
                    let t = pbs.type_at(payer, state);
                    let m = t.mass_of(&current);
                    let q = t.mass(state);
                    let total: Rational = current
                        .iter()
                        .map(|k| t.mass(*k) * payoffs[payer.0].value(*k))
                        .sum();
                    let eps = total / &m;
                    -(ratio(1, 2) * (m / q) * eps)
                }
            }
        };
        let share = if n == 1 {
            Rational::zero()
        } else {
            -&paid / integer(n as i64 - 1)
        };
        for i in pbs.players() {
            let v = if i == payer { paid.clone() } else { share.clone() };
            payoffs[i.0].set(state, v);
        }
        current.insert(state);
        steps.push(ExtensionStep { state, case, payer });
        if restricted_failure(pbs, &payoffs, &current).is_some() {
            return Err(Error::NotAgreeable(space.format_set(&current)));
        }
    }
    Ok(Extension {
        bet: Bet { payoffs },
        steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetSearch {
    /// A bet agreeable at every state of `b^Q(ω)`.
    Bet {
        bet: Bet,
        core: StateSet,
        steps: Vec<ExtensionStep>,
    },
    /// An S5 component of the core with a common prior; no bet can be
    /// agreeable on it.
    NoBet { core: StateSet, core_prior: Distribution },
}

/// Looks for a bet that is common-belief agreeable at `state`.
///
/// Builds a common-knowledge agreeable bet on the largest S5 part of
/// `b^Q(state)` and extends it to the rest. When that part has a component
/// with a common prior, returns the component and the prior instead.
pub fn find_cb_agreeable_bet(pbs: &ProbabilisticBeliefStructure, state: State) -> Result<BetSearch, Error> {
    let bs = pbs.belief_structure();
    if weak_cbt(&bs, state).is_none() {
        return Err(Error::WeakCbtAbsent(pbs.space().name(state).to_string()));
    }
    let target = common_belief_set(&bs, state).members;
    let core = s5_core(&bs, &target);
    let restricted = restrict(pbs, &core)?;
    match construct_ck_agreeable_bet(&restricted)? {
        Some(bet) => {
            let Extension { bet, steps } = extend_bet(pbs, &bs, &bet, &core, &target)?;
            if !is_common_belief_agreeable(&bet, pbs, &bs, state) {
                return Err(Error::UnsoundCertificate);
            }
            Ok(BetSearch::Bet { bet, core, steps })
        }
        None => {
            let (component, prior) = core_prior(&restricted)?;
            Ok(BetSearch::NoBet {
                core: component,
                core_prior: prior,
            })
        }
    }
}

/// First meet component of an S5 restricted structure with a common prior,
/// lifted back to the base space.
pub fn core_prior(r: &RestrictedStructure) -> Result<(StateSet, Distribution), Error> {
    let sub = r.to_pbs()?;
    let members: Vec<State> = r.subset.iter().copied().collect();
    for cell in meet(sub.space(), sub.partitions()).cells() {
        let part = restrict(&sub, cell)?.to_pbs()?;
        if let Some(mu) = find_common_standard_prior(&part)?.prior() {
            let lifted: StateSet = cell.iter().map(|k| members[k.0]).collect();
            let mut masses = vec![Rational::zero(); r.base.space().len()];
            for (k, s) in lifted.iter().enumerate() {
                masses[s.0] = mu.mass(State(k)).clone();
            }
            return Ok((lifted, Distribution::from_raw(masses)));
        }
    }
    Err(Error::UnsoundCertificate)
}
