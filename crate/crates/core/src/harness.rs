//! Random structures, brute-force oracles and claim checks.
//!
//! Every check returns a [`Verdict`]. A failing verdict carries a
//! counterexample that has been re-checked against the base predicates
//! (revision, expectations, belief sets) before it is reported. When that
//! re-check fails the verdict is [`Outcome::Inconsistent`] instead, which
//! points at a solver defect rather than at the claim.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::betting::{
    find_cb_agreeable_bet, is_agreeable_at, is_common_knowledge_agreeable, joint_bet, restrict, Bet, BetSearch,
};
use crate::priors::{
    find_common_delusional_prior, find_common_standard_prior, separating_bet, PriorCertificate, PriorMode,
    SeparatingBet,
};
use crate::rational::integer;
use crate::reachability::{check_prop1, common_belief_set, meet, weak_cbt};
use crate::revision::is_standard_prior;
use crate::space::{Distribution, PlayerId, State, StateSet, StateSpace};
use crate::structures::{classify, BeliefStructure, ProbabilisticBeliefStructure};
use crate::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_states: usize,
    pub num_players: usize,
    /// At every state either all players are deluded or none is.
    pub non_singular: bool,
    /// Nobody is ever deluded. Implies `non_singular`.
    pub s5: bool,
    /// Derive every type from one full-support distribution.
    pub common_prior: bool,
    /// Raw weights are drawn from `1..=max_weight` before normalizing.
    pub max_weight: u32,
}

impl GeneratorConfig {
    pub fn new(seed: u64, num_states: usize, num_players: usize) -> Self {
        Self {
            seed,
            num_states,
            num_players,
            non_singular: false,
            s5: false,
            common_prior: false,
            max_weight: 6,
        }
    }
}

fn weights(rng: &mut ChaCha8Rng, len: usize, max: u32) -> Vec<Rational> {
    (0..len).map(|_| integer(rng.gen_range(1..=max.max(1)).into())).collect()
}

/// A random partitional structure; the same configuration always gives the
/// same structure.
///
/// # Panics
///
/// Panics if `num_states` or `num_players` is zero.
pub fn generate(config: &GeneratorConfig) -> ProbabilisticBeliefStructure {
    assert!(config.num_states > 0 && config.num_players > 0, "bounds must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.num_states;
    let space = StateSpace::numbered(n).expect("positive size");
    let prior = weights(&mut rng, n, config.max_weight);

    let shared_deluded: Vec<bool> = if config.s5 {
        vec![false; n]
    } else if config.non_singular {
        let mut d: Vec<bool> = (0..n).map(|_| rng.gen_ratio(1, 3)).collect();
        if d.iter().all(|x| *x) {
            d[rng.gen_range(0..n)] = false;
        }
        d
    } else {
        Vec::new()
    };

    let mut types = Vec::with_capacity(config.num_players);
    for _ in 0..config.num_players {
        // (cell, support) pairs.
        let mut cells: Vec<(StateSet, StateSet)> = Vec::new();
        if shared_deluded.is_empty() {
            let k = rng.gen_range(1..=n);
            let mut raw = vec![StateSet::new(); k];
            for s in space.states() {
                raw[rng.gen_range(0..k)].insert(s);
            }
            for cell in raw.into_iter().filter(|c| !c.is_empty()) {
                let mut support: StateSet = cell.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if support.is_empty() {
                    let pick = rng.gen_range(0..cell.len());
                    support.insert(*cell.iter().nth(pick).expect("in range"));
                }
                cells.push((cell, support));
            }
        } else {
            let truthful: Vec<State> = space.states().filter(|s| !shared_deluded[s.0]).collect();
            let k = rng.gen_range(1..=truthful.len());
            let mut raw = vec![StateSet::new(); k];
            for s in &truthful {
                raw[rng.gen_range(0..k)].insert(*s);
            }
            raw.retain(|c| !c.is_empty());
            let supports = raw.clone();
            for s in space.states().filter(|s| shared_deluded[s.0]) {
                let k = rng.gen_range(0..raw.len());
                raw[k].insert(s);
            }
            cells = raw.into_iter().zip(supports).collect();
        }
        let mut rows = vec![Distribution::point(&space, State(0)); n];
        for (cell, support) in &cells {
            let w = if config.common_prior {
                support.iter().map(|s| prior[s.0].clone()).collect()
            } else {
                weights(&mut rng, support.len(), config.max_weight)
            };
            let mut masses = vec![integer(0); n];
            for (s, m) in support.iter().zip(w) {
                masses[s.0] = m;
            }
            let t = Distribution::from_weights(&space, masses).expect("positive weights");
            for s in cell {
                rows[s.0] = t.clone();
            }
        }
        types.push(rows);
    }
    let players = (1..=config.num_players).map(|k| format!("p{k}")).collect();
    ProbabilisticBeliefStructure::new(space, players, types).expect("generated types are partitional")
}

/// FNV-1a over names and masses.
pub fn digest(pbs: &ProbabilisticBeliefStructure) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for b in bytes {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for name in pbs.space().names() {
        eat(name.as_bytes());
    }
    for i in pbs.players() {
        eat(pbs.player_name(i).as_bytes());
        for s in pbs.space().states() {
            for m in pbs.type_at(i, s).masses() {
                eat(format!("{m}").as_bytes());
            }
        }
    }
    h
}

/// Whether one bet is agreeable at every state of `b^Q(state)`, decided by
/// a single max-min program over the whole set.
pub fn brute_cb_bet_exists(pbs: &ProbabilisticBeliefStructure, state: State) -> bool {
    let bs = pbs.belief_structure();
    joint_bet(pbs, &common_belief_set(&bs, state).members).0.is_positive()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Under weak common belief in truth: delusional prior XOR bet.
    Theorem1,
    /// Non-singular structures: delusional prior XOR bet somewhere.
    Theorem2,
    /// S5 structures: standard prior XOR common-knowledge bet somewhere.
    NoBettingS5,
    /// Strong common belief in truth everywhere iff non-singular.
    Prop1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    /// A certificate failed its own re-check.
    Inconsistent,
}

/// Evidence attached to a failing verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counterexample {
    pub state: Option<State>,
    /// A common prior of the mode the claim uses.
    pub prior: Option<Distribution>,
    /// A bet claimed agreeable on `b^Q(state)` or, for S5 checks, on the meet
    /// component of `state`.
    pub bet: Option<Bet>,
    /// Proof that no prior of the claim's mode exists.
    pub separating: Option<SeparatingBet>,
    /// Belief-closed S5 sets carrying a common prior; no bet is agreeable on
    /// all of such a set.
    pub cores: Vec<(StateSet, Distribution)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub digest: u64,
    pub claim: Claim,
    pub state: Option<State>,
    pub outcome: Outcome,
    pub note: Option<String>,
    pub counterexample: Option<Counterexample>,
}

fn is_closed_s5_core(pbs: &ProbabilisticBeliefStructure, bs: &BeliefStructure, core: &StateSet) -> bool {
    !core.is_empty()
        && core
            .iter()
            .all(|s| pbs.players().all(|i| bs.belief(i, *s).contains(s) && bs.belief(i, *s).is_subset(core)))
}

impl Counterexample {
    /// Re-checks every certificate with the base predicates.
    pub fn reverify(&self, pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> bool {
        let bs = pbs.belief_structure();
        if let Some(mu) = &self.prior {
            let ok = pbs.players().all(|i| match mode {
                PriorMode::Standard => is_standard_prior(mu, pbs.type_function(i)),
                PriorMode::Delusional => crate::revision::is_delusional_prior(mu, pbs.type_function(i)),
            });
            if !ok {
                return false;
            }
        }
        if let Some(bet) = &self.bet {
            let Some(state) = self.state else { return false };
            let ok = match mode {
                PriorMode::Standard => is_common_knowledge_agreeable(bet, pbs, state),
                PriorMode::Delusional => common_belief_set(&bs, state)
                    .members
                    .iter()
                    .all(|s| is_agreeable_at(bet, pbs, *s)),
            };
            if !ok {
                return false;
            }
        }
        if let Some(sep) = &self.separating {
            if sep.mode != mode || !sep.verify(pbs) {
                return false;
            }
        }
        self.cores.iter().all(|(core, mu)| {
            if !is_closed_s5_core(pbs, &bs, core) {
                return false;
            }
            if let Some(state) = self.state {
                if !core.is_subset(&common_belief_set(&bs, state).members) && mode == PriorMode::Delusional {
                    return false;
                }
            }
            let Ok(sub) = restrict(pbs, core).and_then(|r| r.to_pbs()) else {
                return false;
            };
            let members: Vec<State> = core.iter().copied().collect();
            let Ok(local) = Distribution::new(sub.space(), members.iter().map(|s| mu.mass(*s).clone()).collect())
            else {
                return false;
            };
            sub.players().all(|i| is_standard_prior(&local, sub.type_function(i)))
        })
    }
}

/// Settles a claimed counterexample: `Fail` when it re-verifies.
fn failing(
    pbs: &ProbabilisticBeliefStructure,
    claim: Claim,
    mode: PriorMode,
    state: Option<State>,
    note: String,
    cx: Counterexample,
) -> Verdict {
    let outcome = if cx.reverify(pbs, mode) {
        Outcome::Fail
    } else {
        Outcome::Inconsistent
    };
    Verdict {
        digest: digest(pbs),
        claim,
        state,
        outcome,
        note: Some(note),
        counterexample: Some(cx),
    }
}

fn verdict(pbs: &ProbabilisticBeliefStructure, claim: Claim, state: Option<State>, outcome: Outcome, note: Option<String>) -> Verdict {
    Verdict {
        digest: digest(pbs),
        claim,
        state,
        outcome,
        note,
        counterexample: None,
    }
}

/// Per-structure results reused across states with the same `b^Q`.
struct Context<'a> {
    pbs: &'a ProbabilisticBeliefStructure,
    bs: BeliefStructure,
    prior: PriorCertificate,
    joint: BTreeMap<StateSet, (bool, Bet)>,
    search: BTreeMap<StateSet, Result<BetSearch, Error>>,
}

impl<'a> Context<'a> {
    fn new(pbs: &'a ProbabilisticBeliefStructure) -> Result<Self, Error> {
        Ok(Self {
            pbs,
            bs: pbs.belief_structure(),
            prior: find_common_delusional_prior(pbs)?,
            joint: BTreeMap::new(),
            search: BTreeMap::new(),
        })
    }

    fn joint(&mut self, q: &StateSet) -> (bool, Bet) {
        if let Some(hit) = self.joint.get(q) {
            return hit.clone();
        }
        let (value, bet) = joint_bet(self.pbs, q);
        let out = (value.is_positive(), bet);
        self.joint.insert(q.clone(), out.clone());
        out
    }

    fn search(&mut self, q: &StateSet, state: State) -> Result<BetSearch, Error> {
        if let Some(hit) = self.search.get(q) {
            return hit.clone();
        }
        let out = find_cb_agreeable_bet(self.pbs, state);
        self.search.insert(q.clone(), out.clone());
        out
    }

    fn separating(&self) -> Option<SeparatingBet> {
        separating_bet(self.pbs, PriorMode::Delusional).ok().flatten()
    }

    fn theorem1(&mut self, state: State) -> Verdict {
        let pbs = self.pbs;
        let q = common_belief_set(&self.bs, state).members;
        let (bet_exists, joint) = self.joint(&q);
        if weak_cbt(&self.bs, state).is_none() {
            let note = (self.prior.exists() && bet_exists)
                .then(|| String::from("common delusional prior and common-belief agreeable bet coexist"));
            return verdict(pbs, Claim::Theorem1, Some(state), Outcome::NotApplicable, note);
        }
        let search = self.search(&q, state);
        let agrees = match &search {
            Ok(BetSearch::Bet { .. }) => bet_exists,
            Ok(BetSearch::NoBet { .. }) => !bet_exists,
            Err(Error::ExtensionStuck(rest)) => {
                let cx = Counterexample {
                    state: Some(state),
                    ..Counterexample::default()
                };
                let mut v = failing(pbs, Claim::Theorem1, PriorMode::Delusional, Some(state), format!("extension stuck on {rest}"), cx);
                v.outcome = Outcome::Fail;
                return v;
            }
            Err(e) => {
                return verdict(pbs, Claim::Theorem1, Some(state), Outcome::Inconsistent, Some(format!("{e}")));
            }
        };
        if !agrees {
            return verdict(
                pbs,
                Claim::Theorem1,
                Some(state),
                Outcome::Inconsistent,
                Some(String::from("constructive search and joint program disagree")),
            );
        }
        match (self.prior.prior().cloned(), bet_exists) {
            (Some(_), false) | (None, true) => verdict(pbs, Claim::Theorem1, Some(state), Outcome::Pass, None),
            (Some(mu), true) => failing(
                pbs,
                Claim::Theorem1,
                PriorMode::Delusional,
                Some(state),
                String::from("common delusional prior and common-belief agreeable bet coexist"),
                Counterexample {
                    state: Some(state),
                    prior: Some(mu),
                    bet: Some(joint),
                    ..Counterexample::default()
                },
            ),
            (None, false) => {
                let Ok(BetSearch::NoBet { core, core_prior }) = search else {
                    unreachable!("agreement checked above")
                };
                failing(
                    pbs,
                    Claim::Theorem1,
                    PriorMode::Delusional,
                    Some(state),
                    String::from("no common delusional prior, yet no common-belief agreeable bet"),
                    Counterexample {
                        state: Some(state),
                        separating: self.separating(),
                        cores: vec![(core, core_prior)],
                        ..Counterexample::default()
                    },
                )
            }
        }
    }
}

/// [`Claim::Theorem1`] at one state.
pub fn check_theorem1(pbs: &ProbabilisticBeliefStructure, state: State) -> Result<Verdict, Error> {
    Ok(Context::new(pbs)?.theorem1(state))
}

/// [`Claim::Theorem1`] at every state, sharing work between states.
pub fn check_theorem1_everywhere(pbs: &ProbabilisticBeliefStructure) -> Result<Vec<Verdict>, Error> {
    let mut ctx = Context::new(pbs)?;
    Ok(pbs.space().states().map(|s| ctx.theorem1(s)).collect())
}

pub fn check_theorem2(pbs: &ProbabilisticBeliefStructure) -> Result<Verdict, Error> {
    let mut ctx = Context::new(pbs)?;
    if !classify(&ctx.bs).non_singular {
        return Ok(verdict(pbs, Claim::Theorem2, None, Outcome::NotApplicable, None));
    }
    let mut witness = None;
    for s in pbs.space().states() {
        let q = common_belief_set(&ctx.bs, s).members;
        let (exists, bet) = ctx.joint(&q);
        if exists {
            witness = Some((s, bet));
            break;
        }
    }
    Ok(match (ctx.prior.prior().cloned(), witness) {
        (Some(_), None) | (None, Some(_)) => verdict(pbs, Claim::Theorem2, None, Outcome::Pass, None),
        (Some(mu), Some((s, bet))) => failing(
            pbs,
            Claim::Theorem2,
            PriorMode::Delusional,
            Some(s),
            String::from("common delusional prior and common-belief agreeable bet coexist"),
            Counterexample {
                state: Some(s),
                prior: Some(mu),
                bet: Some(bet),
                ..Counterexample::default()
            },
        ),
        (None, None) => {
            let mut cores = Vec::new();
            for s in pbs.space().states() {
                let q = common_belief_set(&ctx.bs, s).members;
                if let Ok(BetSearch::NoBet { core, core_prior }) = ctx.search(&q, s) {
                    if !cores.iter().any(|(c, _)| *c == core) {
                        cores.push((core, core_prior));
                    }
                }
            }
            failing(
                pbs,
                Claim::Theorem2,
                PriorMode::Delusional,
                None,
                String::from("no common delusional prior, yet no common-belief agreeable bet anywhere"),
                Counterexample {
                    separating: ctx.separating(),
                    cores,
                    ..Counterexample::default()
                },
            )
        }
    })
}

pub fn check_no_betting_s5(pbs: &ProbabilisticBeliefStructure) -> Result<Verdict, Error> {
    let bs = pbs.belief_structure();
    if !bs.is_s5() {
        return Ok(verdict(pbs, Claim::NoBettingS5, None, Outcome::NotApplicable, None));
    }
    let prior = find_common_standard_prior(pbs)?;
    let components = meet(pbs.space(), pbs.partitions());
    let mut bet = None;
    let mut quiet = Vec::new();
    for cell in components.cells() {
        let r = restrict(pbs, cell)?;
        match crate::betting::construct_ck_agreeable_bet(&r)? {
            Some(b) => {
                let s = *cell.iter().next().expect("non-empty cell");
                bet = Some((s, b));
                break;
            }
            None => quiet.push(r),
        }
    }
    Ok(match (prior.prior().cloned(), bet) {
        (Some(_), None) | (None, Some(_)) => verdict(pbs, Claim::NoBettingS5, None, Outcome::Pass, None),
        (Some(mu), Some((s, b))) => failing(
            pbs,
            Claim::NoBettingS5,
            PriorMode::Standard,
            Some(s),
            String::from("common prior and common-knowledge agreeable bet coexist"),
            Counterexample {
                state: Some(s),
                prior: Some(mu),
                bet: Some(b),
                ..Counterexample::default()
            },
        ),
        (None, None) => failing(
            pbs,
            Claim::NoBettingS5,
            PriorMode::Standard,
            None,
            String::from("no common prior, yet no common-knowledge agreeable bet"),
            Counterexample {
                separating: separating_bet(pbs, PriorMode::Standard)?,
                cores: quiet.iter().map(crate::betting::core_prior).collect::<Result<_, _>>()?,
                ..Counterexample::default()
            },
        ),
    })
}

pub fn check_prop1_verdict(pbs: &ProbabilisticBeliefStructure) -> Verdict {
    let check = check_prop1(&pbs.belief_structure());
    if check.holds() {
        verdict(pbs, Claim::Prop1, None, Outcome::Pass, None)
    } else {
        let note = if check.strong_everywhere {
            "strong common belief in truth everywhere, but singular"
        } else {
            "non-singular, but strong common belief in truth fails"
        };
        let mut v = verdict(pbs, Claim::Prop1, check.witness, Outcome::Fail, Some(String::from(note)));
        v.counterexample = Some(Counterexample {
            state: check.witness,
            ..Counterexample::default()
        });
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SweepConfig {
    pub claim: Claim,
    pub count: usize,
    pub seed: u64,
    pub max_states: usize,
    pub max_players: usize,
    pub max_weight: u32,
}

/// Generator settings for instance `index` of a sweep. Sizes are drawn
/// uniformly from `1..=max_states` and `2..=max_players`.
pub fn instance_config(sweep: &SweepConfig, index: usize) -> GeneratorConfig {
    let seed = sweep
        .seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let num_states = rng.gen_range(1..=sweep.max_states.max(1));
    let num_players = rng.gen_range(2.min(sweep.max_players.max(1))..=sweep.max_players.max(1));
    let mut config = GeneratorConfig::new(seed, num_states, num_players);
    config.max_weight = sweep.max_weight;
    match sweep.claim {
        Claim::Theorem1 | Claim::Prop1 => {
            config.non_singular = index % 2 == 1;
            config.common_prior = index % 4 >= 2;
        }
        Claim::Theorem2 => {
            config.non_singular = true;
            config.common_prior = index % 2 == 1;
        }
        Claim::NoBettingS5 => {
            config.s5 = true;
            config.common_prior = index % 2 == 1;
        }
    }
    config
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub index: usize,
    pub config: GeneratorConfig,
    pub digest: u64,
    pub verdicts: Vec<Verdict>,
}

impl InstanceReport {
    /// The worst outcome: inconsistent, then fail, then pass, then N/A.
    pub fn outcome(&self) -> Outcome {
        let has = |o| self.verdicts.iter().any(|v| v.outcome == o);
        if has(Outcome::Inconsistent) {
            Outcome::Inconsistent
        } else if has(Outcome::Fail) {
            Outcome::Fail
        } else if has(Outcome::Pass) {
            Outcome::Pass
        } else {
            Outcome::NotApplicable
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub inconsistent: usize,
    pub stuck: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub instances: Vec<InstanceReport>,
    pub tally: Tally,
}

pub fn check_instance(claim: Claim, pbs: &ProbabilisticBeliefStructure) -> Result<Vec<Verdict>, Error> {
    Ok(match claim {
        Claim::Theorem1 => check_theorem1_everywhere(pbs)?,
        Claim::Theorem2 => vec![check_theorem2(pbs)?],
        Claim::NoBettingS5 => vec![check_no_betting_s5(pbs)?],
        Claim::Prop1 => vec![check_prop1_verdict(pbs)],
    })
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport, Error> {
    let mut instances = Vec::with_capacity(config.count);
    let mut tally = Tally::default();
    for index in 0..config.count {
        let gen = instance_config(config, index);
        let pbs = generate(&gen);
        let verdicts = check_instance(config.claim, &pbs)?;
        tally.stuck += verdicts
            .iter()
            .filter(|v| v.note.as_deref().is_some_and(|n| n.starts_with("extension stuck")))
            .count();
        let report = InstanceReport {
            index,
            config: gen,
            digest: digest(&pbs),
            verdicts,
        };
        match report.outcome() {
            Outcome::Pass => tally.pass += 1,
            Outcome::Fail => tally.fail += 1,
            Outcome::NotApplicable => tally.not_applicable += 1,
            Outcome::Inconsistent => tally.inconsistent += 1,
        }
        instances.push(report);
    }
    Ok(SweepReport {
        config: *config,
        instances,
        tally,
    })
}

/// Direct evaluations of the definitions, used to cross-check the
/// reachability module.
pub mod oracles {
    use super::*;

    /// `∩_i B_i(E)`: states where every player's possibility set lies in `E`.
    pub fn everyone_believes(bs: &BeliefStructure, event: &StateSet) -> StateSet {
        bs.space()
            .states()
            .filter(|s| bs.players().all(|i| bs.belief(i, *s).is_subset(event)))
            .collect()
    }

    /// Common belief of `event` as `∩_{m≥1} B^m(E)`, iterated until it
    /// stabilizes.
    pub fn common_belief_fixed_point(bs: &BeliefStructure, event: &StateSet) -> StateSet {
        let first = everyone_believes(bs, event);
        let mut current = first.clone();
        loop {
            let next: StateSet = first
                .intersection(&everyone_believes(bs, &current))
                .copied()
                .collect();
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Strong common belief in truth by searching every `Ω₀ ⊆ Ω` for one whose
    /// possibility sets cover `b^Q(state)` exactly for every player.
    ///
    /// # Panics
    ///
    /// Panics above 20 states.
    pub fn strong_cbt_brute(bs: &BeliefStructure, state: State) -> bool {
        let n = bs.space().len();
        assert!(n <= 20, "subset search is limited to 20 states");
        let q = common_belief_set(bs, state).members;
        (0u32..1 << n).any(|mask| {
            bs.players().all(|i| {
                let union: StateSet = (0..n)
                    .filter(|k| mask & (1 << k) != 0)
                    .flat_map(|k| bs.belief(i, State(k)).iter().copied())
                    .collect();
                union == q
            })
        })
    }

    /// Every player's possibility sets as a list, for reporting.
    pub fn belief_sets(bs: &BeliefStructure, player: PlayerId) -> Vec<StateSet> {
        bs.space().states().map(|s| bs.belief(player, s).clone()).collect()
    }
}
