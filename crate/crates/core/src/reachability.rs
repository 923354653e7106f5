//! Common belief, common knowledge and common belief in truth.

use alloc::vec::Vec;

use crate::space::{State, StateSet};
use crate::structures::{classify, BeliefStructure, Partition};
use crate::StateSpace;

/// `b^Q(ω)`: every state reachable from `origin` in one or more steps along
/// some player's possibility sets. The origin itself may be missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonBeliefSet {
    pub origin: State,
    pub members: StateSet,
}

/// The meet cell containing `origin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetComponent {
    pub origin: State,
    pub members: StateSet,
}

pub fn common_belief_set(bs: &BeliefStructure, origin: State) -> CommonBeliefSet {
    let mut members = StateSet::new();
    let mut frontier: Vec<State> = bs.joint_belief(origin).into_iter().collect();
    while let Some(s) = frontier.pop() {
        if !members.insert(s) {
            continue;
        }
        for next in bs.joint_belief(s) {
            if !members.contains(&next) {
                frontier.push(next);
            }
        }
    }
    CommonBeliefSet { origin, members }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        // Keep the smaller index as root so component order is stable.
        if a < b {
            self.parent[b] = a;
        } else if b < a {
            self.parent[a] = b;
        }
    }
}

/// The finest common coarsening of `partitions`.
pub fn meet(space: &StateSpace, partitions: &[Partition]) -> Partition {
    let mut sets = DisjointSet::new(space.len());
    for p in partitions {
        for cell in p.cells() {
            let mut it = cell.iter();
            if let Some(first) = it.next() {
                for s in it {
                    sets.union(first.0, s.0);
                }
            }
        }
    }
    let mut cells: Vec<StateSet> = Vec::new();
    let mut root_cell = alloc::collections::BTreeMap::new();
    for s in space.states() {
        let root = sets.find(s.0);
        let k = *root_cell.entry(root).or_insert_with(|| {
            cells.push(StateSet::new());
            cells.len() - 1
        });
        cells[k].insert(s);
    }
    Partition::from_cells(space, cells).expect("union-find classes partition the space")
}

pub fn meet_component(space: &StateSpace, partitions: &[Partition], origin: State) -> MeetComponent {
    MeetComponent {
        origin,
        members: meet(space, partitions).cell_of(origin).clone(),
    }
}

/// `b^Q(ω) ⊆ event`.
pub fn common_belief_holds(bs: &BeliefStructure, event: &StateSet, state: State) -> bool {
    common_belief_set(bs, state).members.is_subset(event)
}

/// `C(ω) ⊆ event`.
pub fn common_knowledge_holds(
    space: &StateSpace,
    partitions: &[Partition],
    event: &StateSet,
    state: State,
) -> bool {
    meet_component(space, partitions, state).members.is_subset(event)
}

/// Whether `set` equals the union of each player's possibility sets over it.
pub fn is_union_of_belief_cells(bs: &BeliefStructure, set: &StateSet) -> bool {
    bs.players().all(|i| {
        let covered: StateSet = set
            .iter()
            .flat_map(|s| bs.belief(i, *s).iter().copied())
            .collect();
        covered == *set
    })
}

/// Strong common belief in truth at `state`.
///
/// Uses `b^Q(state)` itself as the index set: any covering cell lying inside
/// `b^Q(state)` is the possibility set of each of its own members.
pub fn strong_cbt(bs: &BeliefStructure, state: State) -> bool {
    is_union_of_belief_cells(bs, &common_belief_set(bs, state).members)
}

/// Weak common belief in truth at `state`, with the first witness in space
/// order.
pub fn weak_cbt(bs: &BeliefStructure, state: State) -> Option<State> {
    common_belief_set(bs, state)
        .members
        .into_iter()
        .find(|w| strong_cbt(bs, *w))
}

/// The largest subset of `within` on which the structure is S5: every member
/// is non-deluded for everyone and every member's possibility sets stay in
/// the subset.
///
/// For a belief-closed `within`, this is the union of `b^Q(ω')` over all
/// strong-common-belief-in-truth states `ω'` it contains, and it is empty
/// exactly when there is no such state.
pub fn s5_core(bs: &BeliefStructure, within: &StateSet) -> StateSet {
    let mut core: StateSet = within
        .intersection(&bs.non_deluded_states())
        .copied()
        .collect();
    loop {
        let before = core.len();
        let snapshot = core.clone();
        core.retain(|s| bs.players().all(|i| bs.belief(i, *s).is_subset(&snapshot)));
        if core.len() == before {
            return core;
        }
    }
}

/// Outcome of comparing "strong CBT everywhere" with non-singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Check {
    pub strong_everywhere: bool,
    pub non_singular: bool,
    /// A state where strong CBT fails, or where delusion is mixed.
    pub witness: Option<State>,
}

impl Prop1Check {
    pub fn holds(&self) -> bool {
        self.strong_everywhere == self.non_singular
    }
}

pub fn check_prop1(bs: &BeliefStructure) -> Prop1Check {
    let failing = bs.space().states().find(|s| !strong_cbt(bs, *s));
    let report = classify(bs);
    Prop1Check {
        strong_everywhere: failing.is_none(),
        non_singular: report.non_singular,
        witness: failing.or_else(|| report.mixed.iter().next().copied()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example2, example3, set, split_cores};
    use crate::structures::believes;

    #[test]
    fn example2_common_belief_is_everything() {
        let bs = example2().belief_structure();
        for s in bs.space().states() {
            assert_eq!(common_belief_set(&bs, s).members, bs.space().all());
        }
    }

    #[test]
    fn example3_common_belief_excludes_deluded_origin() {
        let bs = example3().belief_structure();
        let sp = bs.space();
        let q = common_belief_set(&bs, sp.lookup("3").unwrap());
        assert_eq!(q.members, set(sp, &["1", "2", "5", "6", "7"]));
        assert!(!q.members.contains(&q.origin));
        assert_eq!(
            common_belief_set(&bs, sp.lookup("1").unwrap()).members,
            set(sp, &["1", "2"])
        );
    }

    #[test]
    fn single_player_s5_cell() {
        let space = StateSpace::numbered(3).unwrap();
        let p = Partition::trivial(&space);
        let bs = BeliefStructure::new(
            space.clone(),
            alloc::vec!["a".into()],
            alloc::vec![(p, alloc::vec![space.all(); 3])],
        )
        .unwrap();
        assert_eq!(common_belief_set(&bs, State(2)).members, space.all());
    }

    fn trading_partitions() -> (StateSpace, Vec<Partition>) {
        let sp = StateSpace::numbered(9).unwrap();
        let a = Partition::from_cells(
            &sp,
            alloc::vec![
                set(&sp, &["1", "2", "3", "4"]),
                set(&sp, &["5", "6", "7", "8"]),
                set(&sp, &["9"]),
            ],
        )
        .unwrap();
        let b = Partition::from_cells(
            &sp,
            alloc::vec![
                set(&sp, &["1", "2", "3"]),
                set(&sp, &["4", "5", "6"]),
                set(&sp, &["7", "8", "9"]),
            ],
        )
        .unwrap();
        (sp, alloc::vec![a, b])
    }

    #[test]
    fn meet_chains_overlapping_cells() {
        let (sp, parts) = trading_partitions();
        assert_eq!(meet_component(&sp, &parts, State(1)).members, sp.all());
        assert!(common_knowledge_holds(&sp, &parts, &sp.all(), State(4)));
        assert!(!common_knowledge_holds(
            &sp,
            &parts,
            &set(&sp, &["1", "2", "3", "4"]),
            State(0)
        ));
    }

    #[test]
    fn meet_of_identical_partitions() {
        let (sp, parts) = trading_partitions();
        let same = alloc::vec![parts[0].clone(), parts[0].clone()];
        assert_eq!(meet(&sp, &same), parts[0]);
    }

    #[test]
    fn example3_meet_is_everything() {
        let bs = example3().belief_structure();
        assert_eq!(
            meet_component(bs.space(), &bs.partitions(), State(0)).members,
            bs.space().all()
        );
    }

    #[test]
    fn common_belief_event_checks() {
        let bs = example3().belief_structure();
        let sp = bs.space();
        let e = set(sp, &["1", "2", "5", "6", "7"]);
        assert!(common_belief_holds(&bs, &e, sp.lookup("3").unwrap()));
        assert!(common_belief_holds(&bs, &e, sp.lookup("1").unwrap()));
        assert!(!common_belief_holds(&bs, &set(sp, &["5", "6", "7"]), State(2)));
        let bs2 = example2().belief_structure();
        for s in bs2.space().states() {
            assert!(common_belief_holds(&bs2, &bs2.space().all(), s));
        }
    }

    #[test]
    fn strong_and_weak_cbt_examples() {
        let bs = example2().belief_structure();
        for s in bs.space().states() {
            assert!(!strong_cbt(&bs, s));
            assert_eq!(weak_cbt(&bs, s), None);
        }
        let bs = example3().belief_structure();
        let three = bs.space().lookup("3").unwrap();
        assert!(strong_cbt(&bs, three));
        assert_eq!(weak_cbt(&bs, three), Some(State(0)));
        assert_eq!(
            common_belief_set(&bs, State(0)).members,
            set(bs.space(), &["1", "2"])
        );
    }

    #[test]
    fn prop1_on_examples() {
        let c = check_prop1(&example3().belief_structure());
        assert!(c.strong_everywhere && c.non_singular && c.holds());
        let c = check_prop1(&example2().belief_structure());
        assert!(!c.strong_everywhere && !c.non_singular && c.holds());
        assert!(c.witness.is_some());
    }

    #[test]
    fn s5_core_matches_witness_cores() {
        let bs = example3().belief_structure();
        let q = common_belief_set(&bs, State(2)).members;
        assert_eq!(s5_core(&bs, &q), q);
        let bs = example2().belief_structure();
        assert!(s5_core(&bs, &bs.space().all()).is_empty());
        let bs = split_cores().belief_structure();
        let sp = bs.space();
        let q = common_belief_set(&bs, sp.lookup("w").unwrap()).members;
        assert_eq!(q, set(sp, &["x", "y", "z"]));
        assert_eq!(s5_core(&bs, &q), q);
    }

    #[test]
    fn belief_operator_respects_common_belief() {
        let bs = example3().belief_structure();
        let e = set(bs.space(), &["1", "2"]);
        for s in bs.space().states() {
            if common_belief_holds(&bs, &e, s) {
                for i in bs.players() {
                    assert!(believes(&bs, i, &e).contains(&s));
                }
            }
        }
    }
}
