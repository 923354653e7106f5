//! Bayesian revision of a prior on partition cells or on possibility sets.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::space::{Distribution, RandomVariable, State, StateSet};
use crate::structures::{induce_partition, Partition, PossibilityFunction, TypeFunction};
use crate::Rational;

/// Result of conditioning a prior. `Undefined` when the conditioning event
/// has zero mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevisionOutcome {
    Defined(Distribution),
    Undefined,
}

impl RevisionOutcome {
    pub fn distribution(&self) -> Option<&Distribution> {
        match self {
            Self::Defined(d) => Some(d),
            Self::Undefined => None,
        }
    }
}

/// `prior` conditioned on `cell`.
pub fn condition(prior: &Distribution, cell: &StateSet) -> RevisionOutcome {
    let total = prior.mass_of(cell);
    if total.is_zero() {
        return RevisionOutcome::Undefined;
    }
    let masses: Vec<Rational> = (0..prior.len())
        .map(|k| {
            if cell.contains(&State(k)) {
                prior.mass(State(k)) / &total
            } else {
                Rational::zero()
            }
        })
        .collect();
    RevisionOutcome::Defined(Distribution::from_raw(masses))
}

/// Standard revision at `state`: condition on `Π(state)`.
pub fn standard_revision(prior: &Distribution, partition: &Partition, state: State) -> RevisionOutcome {
    condition(prior, partition.cell_of(state))
}

/// Delusional revision at `state`: condition on `b(state)`.
pub fn delusional_revision(
    prior: &Distribution,
    belief: &PossibilityFunction,
    state: State,
) -> RevisionOutcome {
    condition(prior, belief.belief(state))
}

/// `E^μ(f | cell)`, or `None` if `μ(cell) = 0`.
///
/// Pass the partition cell for the standard conditional expectation and the
/// possibility set for the delusional one.
pub fn conditional_expectation(
    f: &RandomVariable,
    prior: &Distribution,
    cell: &StateSet,
) -> Option<Rational> {
    let total = prior.mass_of(cell);
    if total.is_zero() {
        return None;
    }
    let weighted: Rational = cell.iter().map(|s| f.value(*s) * prior.mass(*s)).sum();
    Some(weighted / total)
}

/// `Σ_{ω'} t(ω)(ω')·f(ω')`, the player's posterior expectation at `state`.
///
/// Types are partitional, so summing over the whole space is the same as
/// summing over the partition cell or the possibility set.
pub fn posterior_expectation(f: &RandomVariable, types: &TypeFunction, state: State) -> Rational {
    expectation(f, types.at(state))
}

pub(crate) fn expectation(f: &RandomVariable, dist: &Distribution) -> Rational {
    dist.masses()
        .iter()
        .zip(f.values())
        .filter(|(m, _)| !m.is_zero())
        .map(|(m, v)| m * v)
        .sum()
}

/// Whether standard revision of `prior` reproduces every type.
pub fn is_standard_prior(prior: &Distribution, types: &TypeFunction) -> bool {
    let partition = induce_partition(types);
    (0..types.len()).map(State).all(|s| {
        matches!(standard_revision(prior, &partition, s), RevisionOutcome::Defined(d) if d == *types.at(s))
    })
}

/// Whether delusional revision of `prior` reproduces every type.
///
/// The possibility set at `ω` is the support of `t(ω)`.
pub fn is_delusional_prior(prior: &Distribution, types: &TypeFunction) -> bool {
    (0..types.len()).map(State).all(|s| {
        let t = types.at(s);
        matches!(condition(prior, &t.support()), RevisionOutcome::Defined(d) if d == *t)
    })
}
