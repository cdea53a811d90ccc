//! Exact rational linear programming: a dense two-phase simplex with
//! Bland's rule, so every pivot is exact and termination is guaranteed.
//!
//! Problem form: minimize c·x subject to A·x = b, x ≥ 0.

use crate::scalar::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct LinearProgram {
    /// Objective coefficients, one per variable.
    pub objective: Vec<Rational>,
    /// Equality rows (coefficients, right-hand side).
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// m rows × (n+1) columns, rhs last.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row, length n+1; last entry is -(current objective).
    cost: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..=self.ncols {
                let delta = &self.rows[r][j] * &f;
                self.rows[i][j] -= delta;
            }
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for j in 0..=self.ncols {
                let delta = &self.rows[r][j] * &f;
                self.cost[j] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: entering = least column with negative reduced cost,
    /// leaving = least ratio with ties broken by least basis variable.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if a.is_positive() {
                    let ratio = &self.rows[r][self.ncols] / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter);
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();
    for (coeffs, _) in &lp.rows {
        assert_eq!(coeffs.len(), n, "row length mismatch");
    }
    // Phase 1 tableau with artificial variables and b >= 0.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (coeffs, b)) in lp.rows.iter().enumerate() {
        let neg = b.is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(ncols + 1);
        for c in coeffs {
            row.push(if neg { -c.clone() } else { c.clone() });
        }
        for j in 0..m {
            row.push(if j == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if neg { -b.clone() } else { b.clone() });
        rows.push(row);
    }
    let mut cost = vec![Rational::zero(); ncols + 1];
    for j in n..ncols {
        cost[j] = Rational::one();
    }
    // Zero out the reduced costs of the basic artificial variables.
    for r in 0..m {
        for j in 0..=ncols {
            let delta = rows[r][j].clone();
            cost[j] -= delta;
        }
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (n..ncols).collect(),
        ncols,
    };
    if !t.run(ncols) {
        unreachable!("phase 1 of the simplex is always bounded");
    }
    if !t.cost[ncols].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificial variables out of the basis.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, c);
            } else {
                // Redundant constraint.
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    // Phase 2: original objective over the original columns.
    let mut cost = vec![Rational::zero(); ncols + 1];
    cost[..n].clone_from_slice(&lp.objective);
    for (r, &b) in t.basis.iter().enumerate() {
        let f = cost[b].clone();
        if !f.is_zero() {
            for j in 0..=ncols {
                let delta = &t.rows[r][j] * &f;
                cost[j] -= delta;
            }
        }
    }
    t.cost = cost;
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            solution[b] = t.rows[r][t.ncols].clone();
        }
    }
    LpOutcome::Optimal {
        value: -t.cost[ncols].clone(),
        solution,
    }
}
