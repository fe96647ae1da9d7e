//! Dense two-phase simplex over exact rationals.
//!
//! Small problems only: redundancy tests, feasibility of weight systems,
//! inscribed-cube centers, and integer-programming relaxations. The pivot
//! rule is steepest-coefficient with a switch to Bland's rule after an
//! iteration budget, which guarantees termination on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;
use crate::{Error, Result};

/// Constraint relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x REL rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Le, rhs }
    }
    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Ge, rhs }
    }
}

/// A linear program over `n` decision variables.
#[derive(Clone, Debug)]
pub struct Lp {
    pub maximize: bool,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    /// Per-variable sign freedom; `false` means `x_i >= 0`.
    pub free: Vec<bool>,
}

/// Outcome of an exact solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Row-major coefficient matrix, `rows x cols`.
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            *x *= &inv;
        }
        self.b[row] *= &inv;
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut self.a[r][col], Rat::zero());
            for c in 0..self.cols {
                if c != col && !self.a[row][c].is_zero() {
                    let delta = &factor * &self.a[row][c];
                    self.a[r][c] -= delta;
                }
            }
            let delta = &factor * &self.b[row];
            self.b[r] -= delta;
        }
        self.basis[row] = col;
    }

    /// Reduced costs for `cost`, given the current basis.
    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut z = cost.to_vec();
        for (r, &bv) in self.basis.iter().enumerate() {
            if cost[bv].is_zero() {
                continue;
            }
            let cb = cost[bv].clone();
            for c in 0..self.cols {
                if !self.a[r][c].is_zero() {
                    let delta = &cb * &self.a[r][c];
                    z[c] -= delta;
                }
            }
        }
        z
    }

    /// Minimizes `cost`; returns false on unbounded. `allowed` masks the
    /// columns that may enter the basis.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        let mut z = self.reduced_costs(cost);
        let budget = 4 * (self.a.len() + self.cols) + 64;
        let mut iterations = 0usize;
        loop {
            let bland = iterations > budget;
            let entering = if bland {
                (0..self.cols).find(|&c| allowed[c] && z[c].is_negative())
            } else {
                (0..self.cols)
                    .filter(|&c| allowed[c] && z[c].is_negative())
                    .min_by(|&a, &b| z[a].cmp(&z[b]))
            };
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for r in 0..self.a.len() {
                if !self.a[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][col];
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur
                            || (ratio == *cur
                                && leave.is_some_and(|l| self.basis[r] < self.basis[l]))
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
            let Some(row) = leave else {
                return false;
            };
            self.pivot(row, col);
            // Refresh reduced costs incrementally via the pivot row.
            let factor = std::mem::replace(&mut z[col], Rat::zero());
            if !factor.is_zero() {
                for c in 0..self.cols {
                    if c != col && !self.a[row][c].is_zero() {
                        let delta = &factor * &self.a[row][c];
                        z[c] -= delta;
                    }
                }
            }
            iterations += 1;
        }
    }
}

/// Solves the program exactly.
pub fn solve(lp: &Lp) -> Result<LpOutcome> {
    let n = lp.objective.len();
    if lp.free.len() != n {
        return Err(Error::Invalid("free flags must match variable count".into()));
    }
    for c in &lp.constraints {
        if c.coeffs.len() != n {
            return Err(Error::Invalid("constraint arity mismatch".into()));
        }
    }

    // Column layout: for each variable a positive part, plus a negative part
    // when free; then one slack/surplus column per inequality; artificials
    // appended last.
    let mut col_of_var = Vec::with_capacity(n);
    let mut neg_col_of_var = vec![None; n];
    let mut cols = 0usize;
    for (i, &f) in lp.free.iter().enumerate() {
        col_of_var.push(cols);
        cols += 1;
        if f {
            neg_col_of_var[i] = Some(cols);
            cols += 1;
        }
    }
    let m = lp.constraints.len();
    let slack_base = cols;
    let n_slacks = lp
        .constraints
        .iter()
        .filter(|c| c.rel != Rel::Eq)
        .count();
    cols += n_slacks;
    let art_base = cols;

    // Expand rows with rhs normalized non-negative.
    let mut rows: Vec<(Vec<Rat>, Rat, Rel)> = Vec::with_capacity(m);
    for c in &lp.constraints {
        let mut coeffs = c.coeffs.clone();
        let mut rhs = c.rhs.clone();
        let mut rel = c.rel;
        if rhs.is_negative() {
            for x in coeffs.iter_mut() {
                *x = -std::mem::take(x);
            }
            rhs = -rhs;
            rel = match rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
        }
        rows.push((coeffs, rhs, rel));
    }

    let mut a = vec![vec![Rat::zero(); cols]; m];
    let mut b = vec![Rat::zero(); m];
    let mut basis = vec![usize::MAX; m];
    let mut artificials: Vec<usize> = Vec::new();
    let mut slack_idx = slack_base;
    for (r, (coeffs, rhs, rel)) in rows.into_iter().enumerate() {
        for (i, x) in coeffs.into_iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            a[r][col_of_var[i]] = x.clone();
            if let Some(ncol) = neg_col_of_var[i] {
                a[r][ncol] = -x;
            }
        }
        b[r] = rhs;
        match rel {
            Rel::Le => {
                a[r][slack_idx] = Rat::one();
                basis[r] = slack_idx;
                slack_idx += 1;
            }
            Rel::Ge => {
                a[r][slack_idx] = -Rat::one();
                slack_idx += 1;
            }
            Rel::Eq => {}
        }
        if basis[r] == usize::MAX {
            artificials.push(r);
        }
    }
    let cols = cols + artificials.len();
    for (k, &r) in artificials.iter().enumerate() {
        for row in a.iter_mut() {
            row.push(Rat::zero());
        }
        a[r][art_base + k] = Rat::one();
        basis[r] = art_base + k;
    }

    let mut t = Tableau { a, b, basis, cols };
    let allowed_all = vec![true; cols];

    // Phase 1: drive artificial variables to zero.
    if !artificials.is_empty() {
        let mut phase1 = vec![Rat::zero(); cols];
        for k in 0..artificials.len() {
            phase1[art_base + k] = Rat::one();
        }
        if !t.run(&phase1, &allowed_all) {
            return Err(Error::Internal("phase 1 reported unbounded".into()));
        }
        let value: Rat = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &bv)| bv >= art_base)
            .map(|(r, _)| t.b[r].clone())
            .sum();
        if !value.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot leftover zero-value artificials out of the basis.
        for r in 0..t.basis.len() {
            if t.basis[r] < art_base {
                continue;
            }
            if let Some(c) = (0..art_base).find(|&c| !t.a[r][c].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    // Phase 2 forbids artificial columns from re-entering.
    let mut allowed = vec![true; cols];
    allowed[art_base..].fill(false);
    let mut cost = vec![Rat::zero(); cols];
    for i in 0..n {
        let c = if lp.maximize {
            -lp.objective[i].clone()
        } else {
            lp.objective[i].clone()
        };
        cost[col_of_var[i]] = c.clone();
        if let Some(ncol) = neg_col_of_var[i] {
            cost[ncol] = -c;
        }
    }
    if !t.run(&cost, &allowed) {
        return Ok(LpOutcome::Unbounded);
    }
    // A leftover artificial basic at zero is harmless for the point.
    let mut point = vec![Rat::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv >= art_base {
            debug_assert!(t.b[r].is_zero());
            continue;
        }
        for i in 0..n {
            if bv == col_of_var[i] {
                point[i] += &t.b[r];
            } else if Some(bv) == neg_col_of_var[i] {
                point[i] -= &t.b[r];
            }
        }
    }
    let value = lp
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .sum();
    Ok(LpOutcome::Optimal { value, point })
}

/// Maximizes `objective` over `a . x <= b` rows with all variables free.
pub fn maximize_free(
    objective: &[Rat],
    rows: &[(Vec<Rat>, Rat)],
) -> Result<LpOutcome> {
    let lp = Lp {
        maximize: true,
        objective: objective.to_vec(),
        constraints: rows
            .iter()
            .map(|(a, b)| Constraint::le(a.clone(), b.clone()))
            .collect(),
        free: vec![true; objective.len()],
    };
    solve(&lp)
}

/// Center and radius of the largest axis-aligned cube inscribed in
/// `a . x <= b`; the scaling uses the L1 norm of each row, so the radius is
/// exact. A positive radius certifies a strictly interior point.
pub fn cube_center(rows: &[(Vec<Rat>, Rat)], dim: usize) -> Result<(Vec<Rat>, Rat)> {
    let mut constraints = Vec::with_capacity(rows.len());
    for (a, b) in rows {
        let norm: Rat = a.iter().map(|x| x.abs()).sum();
        let mut coeffs = a.clone();
        coeffs.push(norm);
        constraints.push(Constraint::le(coeffs, b.clone()));
    }
    let mut objective = vec![Rat::zero(); dim + 1];
    objective[dim] = Rat::one();
    let mut free = vec![true; dim + 1];
    free[dim] = false;
    let lp = Lp {
        maximize: true,
        objective,
        constraints,
        free,
    };
    match solve(&lp)? {
        LpOutcome::Optimal { mut point, .. } => {
            let radius = point.pop().expect("radius variable present");
            Ok((point, radius))
        }
        LpOutcome::Infeasible => Err(Error::Internal("empty polytope".into())),
        LpOutcome::Unbounded => Err(Error::Invalid("unbounded constraint system".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn maximize_over_box() {
        let out = maximize_free(
            &[rat(1), rat(1)],
            &[
                (vec![rat(1), rat(0)], rat(2)),
                (vec![rat(0), rat(1)], rat(3)),
                (vec![rat(-1), rat(0)], rat(0)),
                (vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(5),
                point: vec![rat(2), rat(3)],
            }
        );
    }

    #[test]
    fn equality_with_nonneg_vars() {
        let lp = Lp {
            maximize: false,
            objective: vec![rat(1), rat(2)],
            constraints: vec![Constraint::eq(vec![rat(1), rat(1)], rat(3))],
            free: vec![false, false],
        };
        let out = solve(&lp).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(3),
                point: vec![rat(3), rat(0)],
            }
        );
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let lp = Lp {
            maximize: true,
            objective: vec![rat(1)],
            constraints: vec![Constraint::le(vec![rat(1)], rat(-1))],
            free: vec![false],
        };
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Infeasible);

        let lp = Lp {
            maximize: true,
            objective: vec![rat(1)],
            constraints: vec![Constraint::ge(vec![rat(1)], rat(1))],
            free: vec![false],
        };
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max x + y s.t. 3x + y <= 2, x + 3y <= 2 -> x = y = 1/2.
        let out = maximize_free(
            &[rat(1), rat(1)],
            &[
                (vec![rat(3), rat(1)], rat(2)),
                (vec![rat(1), rat(3)], rat(2)),
                (vec![rat(-1), rat(0)], rat(0)),
                (vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1),
                point: vec![ratio(1, 2), ratio(1, 2)],
            }
        );
    }

    #[test]
    fn cube_center_of_interval_and_square() {
        let (center, radius) = cube_center(
            &[
                (vec![rat(1)], rat(1)),
                (vec![rat(-1)], rat(0)),
            ],
            1,
        )
        .unwrap();
        assert_eq!(center, vec![ratio(1, 2)]);
        assert_eq!(radius, ratio(1, 2));

        let (center, radius) = cube_center(
            &[
                (vec![rat(1), rat(0)], rat(1)),
                (vec![rat(-1), rat(0)], rat(0)),
                (vec![rat(0), rat(1)], rat(1)),
                (vec![rat(0), rat(-1)], rat(0)),
            ],
            2,
        )
        .unwrap();
        assert_eq!(center, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(radius, ratio(1, 2));
    }

    #[test]
    fn degenerate_point_polytope_has_zero_radius() {
        let (center, radius) = cube_center(
            &[
                (vec![rat(1)], rat(1)),
                (vec![rat(-1)], rat(-1)),
            ],
            1,
        )
        .unwrap();
        assert_eq!(center, vec![rat(1)]);
        assert_eq!(radius, rat(0));
    }
}
