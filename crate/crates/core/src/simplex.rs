//! Dense two-phase simplex over exact rationals.
//!
//! Problems are `maximize c·x` subject to linear rows and `x ≥ 0`. Pivoting
//! uses Bland's rule (lowest eligible index enters, ties in the ratio test
//! go to the lowest basic index), so the method terminates and the vertex it
//! reaches depends only on the input order.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to `constraints`, `x ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            ..Self::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn constrain(&mut self, terms: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(terms.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn maximize(&mut self, objective: Vec<(usize, Rational)>) {
        self.objective = objective;
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs, with `-value` in the last slot.
    objective: Vec<Rational>,
    columns: usize,
    first_artificial: usize,
}

enum Pivoting {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let mut slack_count = 0;
        let mut artificial_count = 0;
        for c in &lp.constraints {
            let flipped = c.rhs.is_negative();
            match (c.relation, flipped) {
                (Relation::Eq, _) => artificial_count += 1,
                (Relation::Le, false) | (Relation::Ge, true) => slack_count += 1,
                _ => {
                    slack_count += 1;
                    artificial_count += 1;
                }
            }
        }
        let first_slack = lp.num_vars;
        let first_artificial = first_slack + slack_count;
        let columns = first_artificial + artificial_count;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_artificial) = (first_slack, first_artificial);
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); columns + 1];
            let sign = if c.rhs.is_negative() { -1 } else { 1 };
            for (v, coef) in &c.terms {
                row[*v] += coef * Rational::from_integer(sign.into());
            }
            row[columns] = c.rhs.abs();
            let relation = match (c.relation, sign) {
                (Relation::Le, -1) => Relation::Ge,
                (Relation::Ge, -1) => Relation::Le,
                (r, _) => r,
            };
            match relation {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                    row[next_artificial] = Rational::from_integer(1.into());
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
                Relation::Eq => {
                    row[next_artificial] = Rational::from_integer(1.into());
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
            }
            rows.push(row);
        }
        // Phase one maximizes minus the sum of artificials; the last slot
        // holds the negated objective value.
        let mut objective = vec![Rational::zero(); columns + 1];
        for (row, &b) in rows.iter().zip(&basis) {
            if b >= first_artificial {
                for (j, a) in row.iter().enumerate() {
                    if j < first_artificial || j == columns {
                        objective[j] += a;
                    }
                }
            }
        }
        Self {
            rows,
            basis,
            objective,
            columns,
            first_artificial,
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let phase_one_limit = self.columns;
        if let Pivoting::Unbounded = self.iterate(phase_one_limit) {
            unreachable!("phase one is bounded by zero");
        }
        if self.objective[self.columns].is_positive() {
            // -value > 0 means some artificial stays positive.
            return LpOutcome::Infeasible;
        }
        self.evict_artificials();

        let mut costs = vec![Rational::zero(); self.columns];
        for (v, c) in &lp.objective {
            costs[*v] += c;
        }
        let mut objective = vec![Rational::zero(); self.columns + 1];
        objective[..self.columns].clone_from_slice(&costs);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    objective[j] -= cb * a;
                }
            }
        }
        self.objective = objective;
        match self.iterate(self.first_artificial) {
            Pivoting::Unbounded => LpOutcome::Unbounded,
            Pivoting::Optimal => {
                let mut solution = vec![Rational::zero(); lp.num_vars];
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if b < lp.num_vars {
                        solution[b] = row[self.columns].clone();
                    }
                }
                LpOutcome::Optimal {
                    value: -self.objective[self.columns].clone(),
                    solution,
                }
            }
        }
    }

    /// Pivots until no column below `limit` has positive reduced cost.
    fn iterate(&mut self, limit: usize) -> Pivoting {
        loop {
            let Some(entering) = (0..limit).find(|&j| self.objective[j].is_positive()) else {
                return Pivoting::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.columns] / a;
                let better = match &leaving {
                    None => true,
                    Some((best, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*best]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return Pivoting::Unbounded;
            };
            self.pivot(row, entering);
        }
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let pivot = self.rows[p][q].clone();
        let nonzero: Vec<usize> = (0..=self.columns)
            .filter(|&j| !self.rows[p][j].is_zero())
            .collect();
        for &j in &nonzero {
            self.rows[p][j] /= &pivot;
        }
        let pivot_row = self.rows[p].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let factor = row[q].clone();
            for &j in &nonzero {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !self.objective[q].is_zero() {
            let factor = self.objective[q].clone();
            for &j in &nonzero {
                self.objective[j] -= &factor * &pivot_row[j];
            }
        }
        self.basis[p] = q;
    }

    /// Moves zero-level artificials out of the basis, dropping redundant rows.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
