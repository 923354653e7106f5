//! Hand-built structures shared by unit tests.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rational::ratio;
use crate::{Distribution, ProbabilisticBeliefStructure, Rational, StateSet, StateSpace};

pub fn set(space: &StateSpace, names: &[&str]) -> StateSet {
    space.set_of(names.iter().copied()).unwrap()
}

fn row(space: &StateSpace, masses: &[(i64, i64)]) -> Distribution {
    Distribution::new(space, masses.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Builds a structure from one row per (player, state).
pub fn from_rows(states: &[&str], players: &[&str], rows: &[&[&[(i64, i64)]]]) -> ProbabilisticBeliefStructure {
    let space = StateSpace::new(states.iter().copied()).unwrap();
    let types = rows
        .iter()
        .map(|per_state| per_state.iter().map(|r| row(&space, r)).collect())
        .collect();
    ProbabilisticBeliefStructure::new(space, names(players), types).unwrap()
}

/// One player, every type (0, 1/2, 1/2).
pub fn example1() -> ProbabilisticBeliefStructure {
    let t: &[(i64, i64)] = &[(0, 1), (1, 2), (1, 2)];
    from_rows(&["w1", "w2", "w3"], &["1"], &[&[t, t, t]])
}

/// Player 1 uniform everywhere, player 2 (0, 1/2, 1/2) everywhere.
pub fn example2() -> ProbabilisticBeliefStructure {
    let t1: &[(i64, i64)] = &[(1, 3), (1, 3), (1, 3)];
    let t2: &[(i64, i64)] = &[(0, 1), (1, 2), (1, 2)];
    from_rows(&["w1", "w2", "w3"], &["1", "2"], &[&[t1, t1, t1], &[t2, t2, t2]])
}

const SEVEN: [&str; 7] = ["1", "2", "3", "4", "5", "6", "7"];

/// Two players `i`, `j` on states 1..7, both deluded at 3 and 4.
pub fn example3() -> ProbabilisticBeliefStructure {
    let p1: &[(i64, i64)] = &[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)];
    let p2: &[(i64, i64)] = &[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)];
    let p5: &[(i64, i64)] = &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1)];
    let p67: &[(i64, i64)] = &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2)];
    let j14: &[(i64, i64)] = &[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)];
    let j57: &[(i64, i64)] = &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 3), (1, 3), (1, 3)];
    from_rows(
        &SEVEN,
        &["i", "j"],
        &[
            &[p1, p2, p5, p5, p5, p67, p67],
            &[j14, j14, j14, j14, j57, j57, j57],
        ],
    )
}

/// The S5 structure with the displayed closing posteriors.
pub fn example3_closing() -> ProbabilisticBeliefStructure {
    let p1: &[(i64, i64)] = &[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)];
    let p2: &[(i64, i64)] = &[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)];
    let i35: &[(i64, i64)] = &[(0, 1), (0, 1), (1, 8), (3, 8), (1, 2), (0, 1), (0, 1)];
    let i67: &[(i64, i64)] = &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2)];
    let j14: &[(i64, i64)] = &[(1, 3), (1, 3), (1, 6), (1, 6), (0, 1), (0, 1), (0, 1)];
    let j57: &[(i64, i64)] = &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 3), (1, 3), (1, 3)];
    from_rows(
        &SEVEN,
        &["i", "j"],
        &[
            &[p1, p2, i35, i35, i35, i67, i67],
            &[j14, j14, j14, j14, j57, j57, j57],
        ],
    )
}

/// One shared full-support cell, ratios (1/2, 1/2) against (1/3, 2/3).
pub fn conflicting() -> ProbabilisticBeliefStructure {
    let a: &[(i64, i64)] = &[(1, 2), (1, 2)];
    let b: &[(i64, i64)] = &[(1, 3), (2, 3)];
    from_rows(&["a", "b"], &["1", "2"], &[&[a, a], &[b, b]])
}

/// State `w` is deluded for both players; player 1 believes the singleton
/// core `{x}`, player 2 believes the conflicting pair `{y, z}`.
///
/// Weak common belief in truth holds at `w` and no common-belief agreeable
/// bet exists there, yet there is no common delusional prior.
pub fn split_cores() -> ProbabilisticBeliefStructure {
    let x: &[(i64, i64)] = &[(0, 1), (1, 1), (0, 1), (0, 1)];
    let yz_1: &[(i64, i64)] = &[(0, 1), (0, 1), (1, 3), (2, 3)];
    let yz_2: &[(i64, i64)] = &[(0, 1), (0, 1), (1, 2), (1, 2)];
    from_rows(
        &["w", "x", "y", "z"],
        &["1", "2"],
        &[&[x, x, yz_1, yz_1], &[yz_2, x, yz_2, yz_2]],
    )
}

pub fn masses(list: &[(i64, i64)]) -> Vec<Rational> {
    list.iter().map(|&(n, d)| ratio(n, d)).collect()
}

/// The conflicting pair `{a, b}` seen from a state `d` deluded for both.
pub fn embedded_conflict() -> ProbabilisticBeliefStructure {
    let one: &[(i64, i64)] = &[(0, 1), (1, 2), (1, 2)];
    let two: &[(i64, i64)] = &[(0, 1), (1, 3), (2, 3)];
    from_rows(&["d", "a", "b"], &["1", "2"], &[&[one, one, one], &[two, two, two]])
}

/// Player 1 spreads `{a, b, c}`, player 2 separates `{a, b}` from `{c}`.
pub fn forward_chain() -> ProbabilisticBeliefStructure {
    let one: &[(i64, i64)] = &[(1, 4), (1, 4), (1, 2)];
    let two: &[(i64, i64)] = &[(1, 3), (2, 3), (0, 1)];
    let c: &[(i64, i64)] = &[(0, 1), (0, 1), (1, 1)];
    from_rows(&["a", "b", "c"], &["1", "2"], &[&[one, one, one], &[two, two, c]])
}
