//! Common standard and common delusional priors.
//!
//! A common prior `μ` must reproduce every player's type by conditioning:
//! on partition cells for a standard prior, on possibility sets for a
//! delusional one. Each conditioning cell `B` with type `τ` contributes the
//! equalities `μ(ω) = τ(ω)·μ(B)` for `ω ∈ B` together with `μ(B) > 0`. The
//! strict inequalities are handled by maximizing the smallest cell mass and
//! comparing the optimum with zero.
//!
//! When no prior exists, [`separating_bet`] returns a certificate: payoffs
//! whose cell expectations are all non-negative, one of them positive, while
//! their pointwise sum is never positive. Weighting the pointwise sum by a
//! prior would give a quantity both `≤ 0` and `> 0`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::{integer, one, zero};
use crate::revision::{expectation, is_delusional_prior, is_standard_prior};
use crate::simplex::{LinearProgram, LpOutcome, Relation};
use crate::space::{Distribution, PlayerId, RandomVariable, State, StateSet};
use crate::structures::ProbabilisticBeliefStructure;
use crate::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PriorMode {
    /// Condition on partition cells.
    Standard,
    /// Condition on possibility sets.
    Delusional,
}

/// A conditioning cell of one player together with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditioningCell {
    pub player: PlayerId,
    pub members: StateSet,
    pub weights: Distribution,
}

/// One cell per partition cell of every player, in player then cell order.
pub fn conditioning_cells(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> Vec<ConditioningCell> {
    let mut out = Vec::new();
    for i in pbs.players() {
        for cell in pbs.partition(i).cells() {
            let rep = *cell.iter().next().expect("partition cells are non-empty");
            let weights = pbs.type_at(i, rep).clone();
            let members = match mode {
                PriorMode::Standard => cell.clone(),
                PriorMode::Delusional => weights.support(),
            };
            out.push(ConditioningCell {
                player: i,
                members,
                weights,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variable {
    Mass(State),
    Scale(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equality {
    pub terms: Vec<(Variable, Rational)>,
    pub rhs: Rational,
}

/// Masses `μ(ω) ≥ 0` and scales `c ≥ 0` tied by equalities, with `Σμ = 1`
/// implicit. Every scale listed in `targets` must be strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilitySystem {
    pub num_states: usize,
    pub num_scales: usize,
    pub equalities: Vec<Equality>,
    pub targets: Vec<usize>,
}

/// Scale `k` stands for `μ` of conditioning cell `k`.
pub fn prior_system(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> FeasibilitySystem {
    let cells = conditioning_cells(pbs, mode);
    let mut equalities = Vec::new();
    for (k, cell) in cells.iter().enumerate() {
        for &s in &cell.members {
            equalities.push(Equality {
                terms: alloc::vec![
                    (Variable::Mass(s), one()),
                    (Variable::Scale(k), -cell.weights.mass(s).clone()),
                ],
                rhs: zero(),
            });
        }
    }
    FeasibilitySystem {
        num_states: pbs.space().len(),
        num_scales: cells.len(),
        equalities,
        targets: (0..cells.len()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleAssignment {
    /// The largest achievable minimum over the targets, capped at 1.
    pub optimum: Rational,
    pub masses: Vec<Rational>,
    pub scales: Vec<Rational>,
}

/// `Ok(None)` when the equalities, bounds and normalization are
/// inconsistent.
pub fn solve_feasibility(sys: &FeasibilitySystem) -> Result<Option<FeasibleAssignment>, Error> {
    let n = sys.num_states;
    let delta = n + sys.num_scales;
    let column = |v: Variable| match v {
        Variable::Mass(s) => s.0,
        Variable::Scale(k) => n + k,
    };
    let mut lp = LinearProgram::new(delta + 1);
    for eq in &sys.equalities {
        let terms = eq.terms.iter().map(|(v, c)| (column(*v), c.clone())).collect();
        lp.constrain(terms, Relation::Eq, eq.rhs.clone());
    }
    lp.constrain((0..n).map(|k| (k, one())).collect(), Relation::Eq, one());
    for &k in &sys.targets {
        lp.constrain(
            alloc::vec![(n + k, one()), (delta, integer(-1))],
            Relation::Ge,
            zero(),
        );
    }
    lp.constrain(alloc::vec![(delta, one())], Relation::Le, one());
    lp.maximize(alloc::vec![(delta, one())]);
    match lp.solve() {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Unbounded),
        LpOutcome::Optimal { value, mut solution } => {
            solution.truncate(delta);
            let scales = solution.split_off(n);
            Ok(Some(FeasibleAssignment {
                optimum: value,
                masses: solution,
                scales,
            }))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PriorCertificate {
    Exists(Distribution),
    None,
}

impl PriorCertificate {
    pub fn prior(&self) -> Option<&Distribution> {
        match self {
            Self::Exists(mu) => Some(mu),
            Self::None => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, Self::Exists(_))
    }
}

/// Solves the prior system for `mode` and re-checks the answer by revision.
pub fn find_common_prior(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> Result<PriorCertificate, Error> {
    let Some(found) = solve_feasibility(&prior_system(pbs, mode))? else {
        return Ok(PriorCertificate::None);
    };
    if !found.optimum.is_positive() {
        return Ok(PriorCertificate::None);
    }
    let mu = Distribution::from_raw(found.masses);
    let sound = pbs.players().all(|i| match mode {
        PriorMode::Standard => is_standard_prior(&mu, pbs.type_function(i)),
        PriorMode::Delusional => is_delusional_prior(&mu, pbs.type_function(i)),
    });
    if !sound {
        return Err(Error::UnsoundCertificate);
    }
    Ok(PriorCertificate::Exists(mu))
}

pub fn find_common_delusional_prior(pbs: &ProbabilisticBeliefStructure) -> Result<PriorCertificate, Error> {
    find_common_prior(pbs, PriorMode::Delusional)
}

pub fn find_common_standard_prior(pbs: &ProbabilisticBeliefStructure) -> Result<PriorCertificate, Error> {
    find_common_prior(pbs, PriorMode::Standard)
}

/// Infimum and supremum of each state's mass over all common priors of the
/// given mode, or `None` when there is no common prior.
///
/// Priors with every conditioning cell at positive mass are dense in the
/// closed polytope where cells may vanish, so optimizing over the closed
/// polytope gives the exact range.
pub fn prior_mass_ranges(
    pbs: &ProbabilisticBeliefStructure,
    mode: PriorMode,
) -> Result<Option<Vec<(Rational, Rational)>>, Error> {
    if !find_common_prior(pbs, mode)?.exists() {
        return Ok(None);
    }
    let sys = prior_system(pbs, mode);
    let n = sys.num_states;
    let mut base = LinearProgram::new(n + sys.num_scales);
    for eq in &sys.equalities {
        let terms = eq
            .terms
            .iter()
            .map(|(v, c)| {
                let col = match v {
                    Variable::Mass(s) => s.0,
                    Variable::Scale(k) => n + k,
                };
                (col, c.clone())
            })
            .collect();
        base.constrain(terms, Relation::Eq, eq.rhs.clone());
    }
    base.constrain((0..n).map(|k| (k, one())).collect(), Relation::Eq, one());
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut bounds = [zero(), zero()];
        for (slot, sign) in [(0usize, integer(-1)), (1, one())] {
            let mut lp = base.clone();
            lp.maximize(alloc::vec![(s, sign.clone())]);
            match lp.solve() {
                LpOutcome::Optimal { value, .. } => bounds[slot] = value * sign,
                LpOutcome::Infeasible => return Err(Error::UnsoundCertificate),
                LpOutcome::Unbounded => return Err(Error::Unbounded),
            }
        }
        let [lo, hi] = bounds;
        out.push((lo, hi));
    }
    Ok(Some(out))
}

/// Whether exactly one common prior of the given mode exists.
pub fn has_unique_prior(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> Result<bool, Error> {
    Ok(prior_mass_ranges(pbs, mode)?.is_some_and(|r| r.iter().all(|(lo, hi)| lo == hi)))
}

/// Certificate that no common prior of the given mode exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingBet {
    pub mode: PriorMode,
    /// Zero wherever the player has no conditioning cell.
    pub payoffs: Vec<RandomVariable>,
}

impl SeparatingBet {
    /// Checks the certificate with exact expectations under the types.
    pub fn verify(&self, pbs: &ProbabilisticBeliefStructure) -> bool {
        if self.payoffs.len() != pbs.num_players() {
            return false;
        }
        let cells = conditioning_cells(pbs, self.mode);
        let n = pbs.space().len();
        let mut covered = alloc::vec![alloc::vec![false; n]; pbs.num_players()];
        for c in &cells {
            for s in &c.members {
                covered[c.player.0][s.0] = true;
            }
        }
        for (i, f) in self.payoffs.iter().enumerate() {
            if f.len() != n || (0..n).any(|k| !covered[i][k] && !f.value(State(k)).is_zero()) {
                return false;
            }
        }
        let pointwise_ok = pbs.space().states().all(|s| {
            let total: Rational = self.payoffs.iter().map(|f| f.value(s)).sum();
            !total.is_positive()
        });
        let mut strict = false;
        for c in &cells {
            let e = expectation(&self.payoffs[c.player.0], &c.weights);
            if e.is_negative() {
                return false;
            }
            strict |= e.is_positive();
        }
        pointwise_ok && strict
    }
}

/// `Ok(None)` exactly when a common prior of this mode exists.
pub fn separating_bet(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> Result<Option<SeparatingBet>, Error> {
    let cells = conditioning_cells(pbs, mode);
    let n = pbs.space().len();
    let players = pbs.num_players();
    // Variable h = 1 - f_i(ω) for every covered (i, ω).
    let mut index = alloc::vec![alloc::vec![None; n]; players];
    let mut lp = LinearProgram::new(0);
    for c in &cells {
        for s in &c.members {
            if index[c.player.0][s.0].is_none() {
                index[c.player.0][s.0] = Some(lp.add_var());
            }
        }
    }
    for s in 0..n {
        let vars: Vec<usize> = index.iter().filter_map(|row| row[s]).collect();
        if vars.is_empty() {
            continue;
        }
        let k = integer(vars.len() as i64);
        lp.constrain(vars.into_iter().map(|v| (v, one())).collect(), Relation::Ge, k);
    }
    let mut objective: Vec<(usize, Rational)> = Vec::new();
    for c in &cells {
        let terms: Vec<(usize, Rational)> = c
            .members
            .iter()
            .filter(|s| !c.weights.mass(**s).is_zero())
            .map(|s| (index[c.player.0][s.0].expect("covered"), c.weights.mass(*s).clone()))
            .collect();
        objective.extend(terms.iter().map(|(v, w)| (*v, -w.clone())));
        lp.constrain(terms, Relation::Le, one());
    }
    lp.maximize(objective);
    let LpOutcome::Optimal { value, solution } = lp.solve() else {
        return Err(Error::Unbounded);
    };
    // Σ_cells e = |cells| + value.
    if !(integer(cells.len() as i64) + value).is_positive() {
        return Ok(None);
    }
    let payoffs = (0..players)
        .map(|i| {
            RandomVariable::from_raw(
                (0..n)
                    .map(|s| match index[i][s] {
                        Some(v) => Rational::one() - &solution[v],
                        None => zero(),
                    })
                    .collect(),
            )
        })
        .collect();
    let bet = SeparatingBet { mode, payoffs };
    if !bet.verify(pbs) {
        return Err(Error::UnsoundCertificate);
    }
    Ok(Some(bet))
}
