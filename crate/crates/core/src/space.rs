//! Finite state spaces and exact maps over them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::{Error, Rational};

/// Index of a state in its [`StateSpace`]. Ordering follows the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub usize);

/// Index of a player in a structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

/// An event. Iteration order is the order of the state space.
pub type StateSet = BTreeSet<State>;

/// Ordered list of distinct state names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut index = BTreeMap::new();
        let mut ordered = Vec::new();
        for name in names {
            let name = name.into();
            if index.insert(name.clone(), ordered.len()).is_some() {
                return Err(Error::DuplicateState(name));
            }
            ordered.push(name);
        }
        if ordered.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(Self {
            names: ordered,
            index,
        })
    }

    /// States named `1..=n`.
    pub fn numbered(n: usize) -> Result<Self, Error> {
        Self::new((1..=n).map(|k| k.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn states(&self) -> impl DoubleEndedIterator<Item = State> + ExactSizeIterator {
        (0..self.names.len()).map(State)
    }

    pub fn all(&self) -> StateSet {
        self.states().collect()
    }

    pub fn name(&self, state: State) -> &str {
        &self.names[state.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Result<State, Error> {
        self.index
            .get(name)
            .map(|&i| State(i))
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn set_of<'a, I>(&self, names: I) -> Result<StateSet, Error>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.lookup(n)).collect()
    }

    /// Renders a set as `{a,b,c}` in space order.
    pub fn format_set(&self, set: &StateSet) -> String {
        let mut out = String::from("{");
        for (k, s) in set.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.name(*s));
        }
        out.push('}');
        out
    }

    /// Restriction to a subset, keeping the original order.
    pub fn subspace(&self, subset: &StateSet) -> Result<Self, Error> {
        Self::new(subset.iter().map(|s| self.names[s.0].clone()))
    }
}

/// A probability distribution over a state space, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution(Vec<Rational>);

impl Distribution {
    pub fn new(space: &StateSpace, masses: Vec<Rational>) -> Result<Self, Error> {
        if masses.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: masses.len(),
            });
        }
        for (k, m) in masses.iter().enumerate() {
            if *m < Rational::zero() {
                return Err(Error::NegativeMass {
                    state: space.name(State(k)).to_string(),
                    mass: m.clone(),
                });
            }
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self(masses))
    }

    /// Normalizes non-negative weights with a positive total.
    pub fn from_weights(space: &StateSpace, weights: Vec<Rational>) -> Result<Self, Error> {
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            return Err(Error::NotNormalized(total));
        }
        Self::new(space, weights.into_iter().map(|w| w / &total).collect())
    }

    pub fn point(space: &StateSpace, state: State) -> Self {
        let mut masses = vec![Rational::zero(); space.len()];
        masses[state.0] = Rational::one();
        Self(masses)
    }

    /// Uniform on a non-empty set.
    pub fn uniform_on(space: &StateSpace, set: &StateSet) -> Result<Self, Error> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        let share = Rational::new(1.into(), set.len().into());
        let mut masses = vec![Rational::zero(); space.len()];
        for s in set {
            masses[s.0] = share.clone();
        }
        Ok(Self(masses))
    }

    pub fn uniform(space: &StateSpace) -> Self {
        Self::uniform_on(space, &space.all()).expect("spaces are non-empty")
    }

    pub fn mass(&self, state: State) -> &Rational {
        &self.0[state.0]
    }

    pub fn mass_of(&self, set: &StateSet) -> Rational {
        set.iter().map(|s| &self.0[s.0]).sum()
    }

    pub fn support(&self) -> StateSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, _)| State(k))
            .collect()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn from_raw(masses: Vec<Rational>) -> Self {
        Self(masses)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.0)
    }
}

/// A real-valued (here: rational-valued) function on states.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RandomVariable(Vec<Rational>);

impl RandomVariable {
    pub fn new(space: &StateSpace, values: Vec<Rational>) -> Result<Self, Error> {
        if values.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: values.len(),
            });
        }
        Ok(Self(values))
    }

    pub fn constant(space: &StateSpace, value: Rational) -> Self {
        Self(vec![value; space.len()])
    }

    pub fn zero(space: &StateSpace) -> Self {
        Self::constant(space, Rational::zero())
    }

    /// The characteristic function of `event`.
    pub fn indicator(space: &StateSpace, event: &StateSet) -> Self {
        Self(
            space
                .states()
                .map(|s| {
                    if event.contains(&s) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn value(&self, state: State) -> &Rational {
        &self.0[state.0]
    }

    pub fn set(&mut self, state: State, value: Rational) {
        self.0[state.0] = value;
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        Self(self.0.iter().map(|v| v + by).collect())
    }

    pub(crate) fn from_raw(values: Vec<Rational>) -> Self {
        Self(values)
    }
}

impl Neg for &RandomVariable {
    type Output = RandomVariable;

    fn neg(self) -> RandomVariable {
        RandomVariable(self.0.iter().map(|v| -v).collect())
    }
}

impl Add for &RandomVariable {
    type Output = RandomVariable;

    fn add(self, rhs: &RandomVariable) -> RandomVariable {
        RandomVariable(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RandomVariable {
    type Output = RandomVariable;

    fn sub(self, rhs: &RandomVariable) -> RandomVariable {
        RandomVariable(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RandomVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.0)
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[Rational]) -> fmt::Result {
    for (k, v) in row.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}
