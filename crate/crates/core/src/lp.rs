//! Dense two-phase simplex over exact rationals.
//!
//! Solves `maximize c·x subject to A x <= b` with every `x` free. Free
//! variables are split into positive and negative parts; Bland's rule
//! guarantees termination on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `coeffs · x <= bound`.
    pub fn le(&mut self, coeffs: Vec<Rational>, bound: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.objective.len(), "constraint width");
        self.rows.push((coeffs, bound));
        self
    }

    /// Adds `coeffs · x >= bound`.
    pub fn ge(&mut self, coeffs: Vec<Rational>, bound: Rational) -> &mut Self {
        let neg = coeffs.into_iter().map(|c| -c).collect();
        self.le(neg, -bound)
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    /// m rows, each `cols + 1` wide (last entry is the right-hand side).
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.rows.len();
        let needs_art: Vec<bool> = lp.rows.iter().map(|(_, b)| b.is_negative()).collect();
        let n_art = needs_art.iter().filter(|&&a| a).count();
        let first_artificial = 2 * n + m;
        let cols = first_artificial + n_art;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art = first_artificial;
        for (i, (coeffs, b)) in lp.rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols + 1];
            let flip = needs_art[i];
            let s = if flip { -Rational::one() } else { Rational::one() };
            for (k, c) in coeffs.iter().enumerate() {
                row[k] = c * &s;
                row[n + k] = -(c * &s);
            }
            row[2 * n + i] = s.clone();
            row[cols] = b * &s;
            if flip {
                row[art] = Rational::one();
                basis.push(art);
                art += 1;
            } else {
                basis.push(2 * n + i);
            }
            t.push(row);
        }
        Tableau {
            t,
            basis,
            cols,
            first_artificial,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= pv * &f;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost` over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.t[i][j].is_zero() && !cost[b].is_zero() {
                        r -= &cost[b] * &self.t[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.t[i][rhs] / &self.t[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.t[i][self.cols])
            .sum()
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let n = lp.num_vars();
        if self.cols > self.first_artificial {
            let mut cost = vec![Rational::zero(); self.cols];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = -Rational::one();
            }
            self.optimize(&cost, self.cols);
            if self.objective_value(&cost).is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis.
            let mut i = 0;
            while i < self.t.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.t[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.t.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.cols];
        for (k, c) in lp.objective.iter().enumerate() {
            cost[k] = c.clone();
            cost[n + k] = -c.clone();
        }
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut values = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            values[b] = self.t[i][self.cols].clone();
        }
        let x: Vec<Rational> = (0..n).map(|k| &values[k] - &values[n + k]).collect();
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { value, x }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::maximize(v(&[3, 5]));
        lp.le(v(&[1, 0]), int(4)).le(v(&[0, 2]), int(12)).le(v(&[3, 2]), int(18));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                value: int(36),
                x: v(&[2, 6])
            }
        );
    }

    #[test]
    fn free_variables_and_negative_bounds() {
        // max -x s.t. x >= 5/2 (and x free) -> x = 5/2
        let mut lp = LinearProgram::maximize(v(&[-1]));
        lp.ge(v(&[1]), rat(5, 2));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(-5, 2));
                assert_eq!(x, vec![rat(5, 2)]);
            }
            other => panic!("{other:?}"),
        }
        // max y s.t. y <= x - 3, x <= -1 -> y = -4
        let mut lp = LinearProgram::maximize(v(&[0, 1]));
        lp.le(v(&[-1, 1]), int(-3)).le(v(&[1, 0]), int(-1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(-4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::maximize(v(&[1]));
        lp.le(v(&[1]), int(1)).ge(v(&[1]), int(2));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::maximize(v(&[1, 1]));
        lp.le(v(&[1, -1]), int(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Many constraints through the same optimal vertex (1, 1).
        let mut lp = LinearProgram::maximize(v(&[1, 1]));
        lp.le(v(&[1, 0]), int(1))
            .le(v(&[0, 1]), int(1))
            .le(v(&[1, 1]), int(2))
            .le(v(&[2, 1]), int(3))
            .le(v(&[1, 2]), int(3))
            .ge(v(&[1, 0]), int(-5));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(2));
                assert_eq!(x, v(&[1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 2 written twice as pairs of inequalities, max x with y >= 0.5
        let mut lp = LinearProgram::maximize(v(&[1, 0]));
        lp.le(v(&[1, 1]), int(2))
            .ge(v(&[1, 1]), int(2))
            .le(v(&[2, 2]), int(4))
            .ge(v(&[2, 2]), int(4))
            .ge(v(&[0, 1]), rat(1, 2));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(3, 2)),
            other => panic!("{other:?}"),
        }
    }
}
