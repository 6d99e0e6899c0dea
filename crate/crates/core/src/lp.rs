//! Exact two-phase simplex over the rationals.
//!
//! Dense tableau, Bland's rule for both the entering and the leaving
//! variable, so every run terminates. Problems here are tiny (tens of rows),
//! which is what makes a dense exact tableau the right tool.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// `minimize objective · x` subject to `constraints`, with each variable
/// either free or non-negative.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub free: Vec<bool>,
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<Q>, Q)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, free: bool) -> Self {
        LinearProgram {
            free: vec![free; num_vars],
            objective: vec![Q::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn add(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) {
        debug_assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint::new(coeffs, rel, rhs));
    }

    pub fn minimize(mut self, objective: Vec<Q>) -> Self {
        self.objective = objective;
        self
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }

    /// Feasibility only.
    pub fn feasible_point(&self) -> Option<Vec<Q>> {
        let mut p = self.clone();
        p.objective = vec![Q::zero(); p.num_vars()];
        p.solve().optimal().map(|(x, _)| x)
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Column of each original variable's positive part, and negative part for free ones.
    columns: Vec<(usize, Option<usize>)>,
    artificial_start: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut columns = Vec::with_capacity(lp.num_vars());
        let mut width = 0;
        for &f in &lp.free {
            let pos = width;
            width += 1;
            let neg = if f {
                width += 1;
                Some(width - 1)
            } else {
                None
            };
            columns.push((pos, neg));
        }
        let m = lp.constraints.len();
        // Normalize so every rhs is non-negative.
        let normalized: Vec<(Vec<Q>, Relation, Q)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.rel, c.rhs.clone())
                }
            })
            .collect();
        let slack_start = width;
        let num_slack = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificial_start = slack_start + num_slack;
        let num_art = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let total = artificial_start + num_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_slack = slack_start;
        let mut next_art = artificial_start;
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Q::zero(); total + 1];
            for (j, a) in coeffs.iter().enumerate() {
                let (p, n) = columns[j];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a;
                }
            }
            row[total] = rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = Q::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Q::one();
                    next_slack += 1;
                    row[next_art] = Q::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Q::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, columns, artificial_start, width: total }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations for `cost` over columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], limit: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        d -= &cost[self.basis[i]] * &row[j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.width] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let total = self.width;
        if self.artificial_start < total {
            let cost: Vec<Q> = (0..total)
                .map(|j| if j >= self.artificial_start { Q::one() } else { Q::zero() })
                .collect();
            self.optimize(&cost, total);
            let infeas: Q = self
                .basis
                .iter()
                .zip(&self.rows)
                .filter(|(b, _)| **b >= self.artificial_start)
                .map(|(_, r)| r[total].clone())
                .sum();
            if infeas.is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.artificial_start {
                    match (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => {
                            self.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        let mut cost = vec![Q::zero(); total];
        for (j, c) in lp.objective.iter().enumerate() {
            let (p, n) = self.columns[j];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c;
            }
        }
        if !self.optimize(&cost, self.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut vals = vec![Q::zero(); total];
        for (i, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rows[i][total].clone();
        }
        let x: Vec<Q> = self
            .columns
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &vals[p] - &vals[n],
                None => vals[p].clone(),
            })
            .collect();
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}
