//! Dense two-phase simplex over exact rationals, with Bland's rule.
//!
//! Only meant for the small systems built by the price-system search and
//! the test oracles: every variable is non-negative and the objective is
//! maximized.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constrain(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Sets the objective to maximize.
    pub fn maximize(&mut self, objective: Vec<(usize, Rational)>) {
        self.objective = objective;
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Column count excluding the right-hand side.
    cols: usize,
    artificial_from: usize,
}

fn pivot(rows: &mut [Vec<Rational>], z: &mut [Rational], r: usize, c: usize) {
    let inv = rows[r][c].recip();
    for v in rows[r].iter_mut() {
        if !v.is_zero() {
            *v = &*v * &inv;
        }
    }
    let pivot_row = rows[r].clone();
    let eliminate = |row: &mut [Rational]| {
        let factor = row[c].clone();
        if factor.is_zero() {
            return;
        }
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v = &*v - &(&factor * p);
            }
        }
    };
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(z);
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let artificial_count = lp.constraints.iter().filter(|c| normalized(c) != Relation::Le).count();
        let artificial_from = lp.num_vars + slack_count;
        let cols = artificial_from + artificial_count;
        let mut rows = vec![vec![Rational::zero(); cols + 1]; m];
        let mut basis = vec![0; m];
        let mut slack = lp.num_vars;
        let mut artificial = artificial_from;
        for (i, c) in lp.constraints.iter().enumerate() {
            let flip = c.rhs.is_negative();
            let sign = |v: &Rational| if flip { -v.clone() } else { v.clone() };
            for (j, v) in &c.coeffs {
                rows[i][*j] += sign(v);
            }
            rows[i][cols] = sign(&c.rhs);
            let relation = normalized(c);
            match relation {
                Relation::Le => {
                    rows[i][slack] = Rational::one();
                    basis[i] = slack;
                    slack += 1;
                }
                Relation::Ge => {
                    rows[i][slack] = -Rational::one();
                    slack += 1;
                    rows[i][artificial] = Rational::one();
                    basis[i] = artificial;
                    artificial += 1;
                }
                Relation::Eq => {
                    rows[i][artificial] = Rational::one();
                    basis[i] = artificial;
                    artificial += 1;
                }
            }
        }
        Tableau { rows, basis, cols, artificial_from }
    }

    /// Maximizes the objective encoded by `z` (reduced costs, negative means
    /// improving) over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, z: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            pivot(&mut self.rows, z, r, c);
            self.basis[r] = c;
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let cols = self.cols;
        // Phase one: maximize minus the sum of artificials.
        let mut z = vec![Rational::zero(); cols + 1];
        for zj in &mut z[self.artificial_from..cols] {
            *zj = Rational::one();
        }
        for (i, row) in self.rows.iter().enumerate() {
            if self.basis[i] >= self.artificial_from {
                for (zj, v) in z.iter_mut().zip(row) {
                    *zj -= v;
                }
            }
        }
        self.optimize(&mut z, cols);
        if z[cols].is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.artificial_from {
                i += 1;
                continue;
            }
            match (0..self.artificial_from).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    pivot(&mut self.rows, &mut z, i, j);
                    self.basis[i] = j;
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
        // Phase two.
        let mut z = vec![Rational::zero(); cols + 1];
        for (j, v) in &lp.objective {
            z[*j] -= v;
        }
        for (i, row) in self.rows.iter().enumerate() {
            let factor = z[self.basis[i]].clone();
            if !factor.is_zero() {
                for (zj, v) in z.iter_mut().zip(row) {
                    *zj -= &(&factor * v);
                }
            }
        }
        if !self.optimize(&mut z, self.artificial_from) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < lp.num_vars {
                x[b] = self.rows[i][cols].clone();
            }
        }
        LpOutcome::Optimal { x, value: z[cols].clone() }
    }
}

/// The relation after flipping a row to make its right-hand side non-negative.
fn normalized(c: &Constraint) -> Relation {
    match (c.relation, c.rhs.is_negative()) {
        (Relation::Le, true) => Relation::Ge,
        (Relation::Ge, true) => Relation::Le,
        (r, _) => r,
    }
}
