//! Type functions, partitions and KD45 possibility functions.
//!
//! A [`ProbabilisticBeliefStructure`] assigns every player a distribution at
//! every state. Grouping states with identical distributions yields each
//! player's partition; the positive-probability part of the distribution is
//! the player's possibility set. The resulting [`BeliefStructure`] is KD45:
//! possibility sets are non-empty, sit inside the partition cell, are
//! constant on cells, and trap every state they contain. The truth axiom is
//! not assumed, so a state may lie outside its own possibility set; such a
//! state is *deluded* for that player.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::space::{Distribution, PlayerId, State, StateSet, StateSpace};
use crate::Error;

/// One player's beliefs: a distribution at every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeFunction {
    player: PlayerId,
    types: Vec<Distribution>,
}

impl TypeFunction {
    pub fn new(space: &StateSpace, player: PlayerId, types: Vec<Distribution>) -> Result<Self, Error> {
        if types.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: types.len(),
            });
        }
        if let Some(bad) = types.iter().find(|t| t.len() != space.len()) {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: bad.len(),
            });
        }
        Ok(Self { player, types })
    }

    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn at(&self, state: State) -> &Distribution {
        &self.types[state.0]
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Disjoint non-empty cells covering the space.
///
/// Cells are kept in canonical order (by smallest member) so two partitions
/// with the same cells compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<StateSet>,
    cell_index: Vec<usize>,
}

impl Partition {
    pub fn from_cells(space: &StateSpace, cells: Vec<StateSet>) -> Result<Self, Error> {
        let mut cell_index = vec![usize::MAX; space.len()];
        let mut cells = cells;
        cells.sort_by_key(|c| c.iter().next().copied());
        for (k, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::NotAPartition("empty cell".into()));
            }
            for s in cell {
                if s.0 >= space.len() {
                    return Err(Error::NotAPartition("state outside the space".into()));
                }
                if cell_index[s.0] != usize::MAX {
                    return Err(Error::NotAPartition(alloc::format!(
                        "state `{}` lies in two cells",
                        space.name(*s)
                    )));
                }
                cell_index[s.0] = k;
            }
        }
        if let Some(missing) = cell_index.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAPartition(alloc::format!(
                "state `{}` is in no cell",
                space.name(State(missing))
            )));
        }
        Ok(Self { cells, cell_index })
    }

    /// Every state alone in its cell.
    pub fn discrete(space: &StateSpace) -> Self {
        Self {
            cells: space.states().map(|s| StateSet::from([s])).collect(),
            cell_index: (0..space.len()).collect(),
        }
    }

    pub fn trivial(space: &StateSpace) -> Self {
        Self {
            cells: vec![space.all()],
            cell_index: vec![0; space.len()],
        }
    }

    pub fn cells(&self) -> &[StateSet] {
        &self.cells
    }

    pub fn cell_of(&self, state: State) -> &StateSet {
        &self.cells[self.cell_index[state.0]]
    }

    pub fn cell_index(&self, state: State) -> usize {
        self.cell_index[state.0]
    }

    /// The cell partition restricted to `subset`, dropping empty cells.
    pub fn restricted(&self, subset: &StateSet) -> Vec<StateSet> {
        self.cells
            .iter()
            .map(|c| c.intersection(subset).copied().collect::<StateSet>())
            .filter(|c| !c.is_empty())
            .collect()
    }
}

/// The partition of states into equal types.
pub fn induce_partition(types: &TypeFunction) -> Partition {
    let mut cells: Vec<StateSet> = Vec::new();
    let mut representatives: Vec<&Distribution> = Vec::new();
    let mut cell_index = Vec::with_capacity(types.len());
    for k in 0..types.len() {
        let t = &types.types[k];
        match representatives.iter().position(|r| *r == t) {
            Some(c) => {
                cells[c].insert(State(k));
                cell_index.push(c);
            }
            None => {
                representatives.push(t);
                cells.push(StateSet::from([State(k)]));
                cell_index.push(cells.len() - 1);
            }
        }
    }
    Partition { cells, cell_index }
}

/// A KD45 possibility function together with its partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PossibilityFunction {
    player: PlayerId,
    partition: Partition,
    belief: Vec<StateSet>,
}

impl PossibilityFunction {
    /// Checks seriality, containment, measurability and trapping.
    pub fn new(
        space: &StateSpace,
        player: PlayerId,
        player_name: &str,
        partition: Partition,
        belief: Vec<StateSet>,
    ) -> Result<Self, Error> {
        if belief.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: belief.len(),
            });
        }
        let violation = |s: State, axiom| Error::NotKd45 {
            player: player_name.to_string(),
            state: space.name(s).to_string(),
            axiom,
        };
        for s in space.states() {
            let b = &belief[s.0];
            if b.is_empty() {
                return Err(violation(s, "seriality (empty belief)"));
            }
            if !b.is_subset(partition.cell_of(s)) {
                return Err(violation(s, "containment in the partition cell"));
            }
            if partition.cell_of(s).iter().any(|o| belief[o.0] != *b) {
                return Err(violation(s, "measurability"));
            }
            if b.iter().any(|o| belief[o.0] != *b) {
                return Err(violation(s, "trapping"));
            }
        }
        Ok(Self {
            player,
            partition,
            belief,
        })
    }

    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn belief(&self, state: State) -> &StateSet {
        &self.belief[state.0]
    }

    /// One possibility set per partition cell, in cell order.
    pub fn belief_cells(&self) -> impl Iterator<Item = &StateSet> {
        self.partition
            .cells()
            .iter()
            .map(move |c| &self.belief[c.iter().next().expect("cells are non-empty").0])
    }

    pub fn is_deluded(&self, state: State) -> bool {
        !self.belief[state.0].contains(&state)
    }
}

/// Partitional type functions, one per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilisticBeliefStructure {
    space: StateSpace,
    players: Vec<String>,
    types: Vec<TypeFunction>,
    partitions: Vec<Partition>,
}

impl ProbabilisticBeliefStructure {
    /// `types[i][ω]` is player `i`'s distribution at `ω`.
    pub fn new(
        space: StateSpace,
        players: Vec<String>,
        types: Vec<Vec<Distribution>>,
    ) -> Result<Self, Error> {
        check_players(&players)?;
        if types.len() != players.len() {
            return Err(Error::LengthMismatch {
                expected: players.len(),
                found: types.len(),
            });
        }
        let types = types
            .into_iter()
            .enumerate()
            .map(|(i, rows)| TypeFunction::new(&space, PlayerId(i), rows))
            .collect::<Result<Vec<_>, _>>()?;
        let partitions: Vec<Partition> = types.iter().map(induce_partition).collect();
        for (i, (t, p)) in types.iter().zip(&partitions).enumerate() {
            for s in space.states() {
                let mass = t.at(s).mass_of(p.cell_of(s));
                if !mass.is_one() {
                    return Err(Error::NotPartitional {
                        player: players[i].clone(),
                        state: space.name(s).to_string(),
                        mass,
                    });
                }
            }
        }
        Ok(Self {
            space,
            players,
            types,
            partitions,
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn player_names(&self) -> &[String] {
        &self.players
    }

    pub fn player_name(&self, player: PlayerId) -> &str {
        &self.players[player.0]
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> + Clone {
        (0..self.players.len()).map(PlayerId)
    }

    pub fn type_function(&self, player: PlayerId) -> &TypeFunction {
        &self.types[player.0]
    }

    pub fn type_at(&self, player: PlayerId, state: State) -> &Distribution {
        self.types[player.0].at(state)
    }

    pub fn partition(&self, player: PlayerId) -> &Partition {
        &self.partitions[player.0]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Shorthand for [`induce_belief_structure`].
    pub fn belief_structure(&self) -> BeliefStructure {
        induce_belief_structure(self)
    }
}

fn check_players(players: &[String]) -> Result<(), Error> {
    if players.is_empty() {
        return Err(Error::NoPlayers);
    }
    for (k, p) in players.iter().enumerate() {
        if players[..k].contains(p) {
            return Err(Error::DuplicatePlayer(p.clone()));
        }
    }
    Ok(())
}

/// Per-player partitions with KD45 possibility functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefStructure {
    space: StateSpace,
    players: Vec<String>,
    functions: Vec<PossibilityFunction>,
}

impl BeliefStructure {
    /// `agents[i] = (Π_i, b_i)` with `b_i` given state by state.
    pub fn new(
        space: StateSpace,
        players: Vec<String>,
        agents: Vec<(Partition, Vec<StateSet>)>,
    ) -> Result<Self, Error> {
        check_players(&players)?;
        if agents.len() != players.len() {
            return Err(Error::LengthMismatch {
                expected: players.len(),
                found: agents.len(),
            });
        }
        let functions = agents
            .into_iter()
            .enumerate()
            .map(|(i, (partition, belief))| {
                PossibilityFunction::new(&space, PlayerId(i), &players[i], partition, belief)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            space,
            players,
            functions,
        })
    }

    /// Builds `b_i` from one possibility set per partition cell.
    ///
    /// States of a cell outside its possibility set are deluded and believe
    /// the same set as the rest of the cell.
    pub fn from_belief_cells(
        space: StateSpace,
        players: Vec<String>,
        agents: Vec<(Partition, Vec<StateSet>)>,
    ) -> Result<Self, Error> {
        let mut expanded = Vec::with_capacity(agents.len());
        for (i, (partition, beliefs)) in agents.into_iter().enumerate() {
            let mut per_state = vec![StateSet::new(); space.len()];
            for cell in partition.cells() {
                let matching: Vec<&StateSet> =
                    beliefs.iter().filter(|b| b.is_subset(cell)).collect();
                let chosen = match matching.as_slice() {
                    [] => cell,
                    [one] => *one,
                    _ => {
                        return Err(Error::NotKd45 {
                            player: players.get(i).cloned().unwrap_or_default(),
                            state: space.name(*cell.iter().next().unwrap()).to_string(),
                            axiom: "one possibility set per partition cell",
                        })
                    }
                };
                for s in cell {
                    per_state[s.0] = chosen.clone();
                }
            }
            let covered: usize = beliefs
                .iter()
                .filter(|b| partition.cells().iter().any(|c| b.is_subset(c)))
                .count();
            if covered != beliefs.len() {
                return Err(Error::NotKd45 {
                    player: players.get(i).cloned().unwrap_or_default(),
                    state: String::new(),
                    axiom: "containment in the partition cell",
                });
            }
            expanded.push((partition, per_state));
        }
        Self::new(space, players, expanded)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn player_names(&self) -> &[String] {
        &self.players
    }

    pub fn player_name(&self, player: PlayerId) -> &str {
        &self.players[player.0]
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> + Clone {
        (0..self.players.len()).map(PlayerId)
    }

    pub fn function(&self, player: PlayerId) -> &PossibilityFunction {
        &self.functions[player.0]
    }

    pub fn belief(&self, player: PlayerId, state: State) -> &StateSet {
        self.functions[player.0].belief(state)
    }

    pub fn partition(&self, player: PlayerId) -> &Partition {
        self.functions[player.0].partition()
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.functions.iter().map(|f| f.partition().clone()).collect()
    }

    /// `b(ω)`: union of all players' possibility sets at `ω`.
    pub fn joint_belief(&self, state: State) -> StateSet {
        self.functions
            .iter()
            .flat_map(|f| f.belief(state).iter().copied())
            .collect()
    }

    /// True when possibility sets coincide with partition cells.
    pub fn is_s5(&self) -> bool {
        self.functions.iter().all(|f| {
            self.space
                .states()
                .all(|s| f.belief(s) == f.partition().cell_of(s))
        })
    }

    /// States at which every player's possibility set contains the state.
    pub fn non_deluded_states(&self) -> StateSet {
        self.space
            .states()
            .filter(|s| self.functions.iter().all(|f| !f.is_deluded(*s)))
            .collect()
    }
}

/// `b_i(ω) = {ω' ∈ Π_i(ω) : t_i(ω)(ω') > 0}`.
///
/// A [`ProbabilisticBeliefStructure`] is partitional by construction, so this
/// cannot fail.
pub fn induce_belief_structure(pbs: &ProbabilisticBeliefStructure) -> BeliefStructure {
    let functions = pbs
        .players()
        .map(|i| {
            let partition = pbs.partition(i).clone();
            let belief = pbs
                .space
                .states()
                .map(|s| {
                    let support = pbs.type_at(i, s).support();
                    support.intersection(partition.cell_of(s)).copied().collect()
                })
                .collect();
            PossibilityFunction {
                player: i,
                partition,
                belief,
            }
        })
        .collect();
    BeliefStructure {
        space: pbs.space.clone(),
        players: pbs.players.clone(),
        functions,
    }
}

/// A probabilistic structure inducing `bs`: uniform on every possibility set.
pub fn realize_probabilistic(bs: &BeliefStructure) -> ProbabilisticBeliefStructure {
    let types = bs
        .players()
        .map(|i| {
            bs.space
                .states()
                .map(|s| {
                    Distribution::uniform_on(&bs.space, bs.belief(i, s))
                        .expect("possibility sets are non-empty")
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let pbs = ProbabilisticBeliefStructure::new(bs.space.clone(), bs.players.clone(), types)
        .expect("uniform types on KD45 possibility sets are partitional");
    debug_assert_eq!(pbs.partitions(), bs.partitions().as_slice());
    pbs
}

/// Delusion diagnostics for a belief structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelusionReport {
    /// `deluded[i] = {ω : ω ∉ b_i(ω)}`.
    pub deluded: Vec<StateSet>,
    pub delusional: Vec<bool>,
    pub non_singular: bool,
    pub interpersonal_credibility: bool,
    /// States deluded for every player.
    pub all_deluded: StateSet,
    /// States deluded for no player.
    pub all_non_deluded: StateSet,
    /// States deluded for some players but not others.
    pub mixed: StateSet,
}

pub fn classify(bs: &BeliefStructure) -> DelusionReport {
    let deluded: Vec<StateSet> = bs
        .functions
        .iter()
        .map(|f| bs.space.states().filter(|s| f.is_deluded(*s)).collect())
        .collect();
    let delusional = deluded.iter().map(|d| !d.is_empty()).collect();
    let mut all_deluded = StateSet::new();
    let mut all_non_deluded = StateSet::new();
    let mut mixed = StateSet::new();
    for s in bs.space.states() {
        let count = deluded.iter().filter(|d| d.contains(&s)).count();
        if count == deluded.len() {
            all_deluded.insert(s);
        } else if count == 0 {
            all_non_deluded.insert(s);
        } else {
            mixed.insert(s);
        }
    }
    let interpersonal_credibility = bs.space.states().all(|s| {
        let mut common = bs.belief(PlayerId(0), s).clone();
        for f in &bs.functions[1..] {
            common.retain(|o| f.belief(s).contains(o));
        }
        !common.is_empty()
    });
    DelusionReport {
        deluded,
        delusional,
        non_singular: mixed.is_empty(),
        interpersonal_credibility,
        all_deluded,
        all_non_deluded,
        mixed,
    }
}

/// The belief operator `B_i E = {ω : b_i(ω) ⊆ E}`.
pub fn believes(bs: &BeliefStructure, player: PlayerId, event: &StateSet) -> StateSet {
    bs.space
        .states()
        .filter(|s| bs.belief(player, *s).is_subset(event))
        .collect()
}
