//! Dense two-phase simplex for `min c·x  s.t.  A x = b, x >= 0`, with
//! Bland's rule. Phase 1 is run once per polytope; any number of objectives
//! can then be optimized from the resulting feasible basis.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct LpTolerances<T> {
    pub pivot: T,
    pub feasibility: T,
}

impl<T: Scalar> Default for LpTolerances<T> {
    fn default() -> Self {
        let eps = T::epsilon() * T::lit(100.0);
        LpTolerances {
            pivot: T::lit(1e-10).max(eps),
            feasibility: T::lit(1e-9).max(eps * T::lit(10.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpFailure {
    IterationLimit,
}

#[derive(Debug, Clone)]
pub enum Phase1<T> {
    Feasible(FeasibleBasis<T>),
    Infeasible { residual: T },
}

/// Tableau restricted to the original columns with a primal feasible basis.
#[derive(Debug, Clone)]
pub struct FeasibleBasis<T> {
    nvars: usize,
    rows: Vec<Vec<T>>, // each row: nvars coefficients followed by rhs
    basis: Vec<usize>,
    tol: LpTolerances<T>,
}

struct Tableau<T> {
    ncols: usize,
    rows: Vec<Vec<T>>,
    cost: Vec<T>, // reduced costs, ncols entries + objective (negated) at the end
    basis: Vec<usize>,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != T::zero() {
                    for (v, pv) in row.iter_mut().zip(&prow) {
                        *v -= f * *pv;
                    }
                    row[c] = T::zero();
                }
            }
        }
        let f = self.cost[c];
        if f != T::zero() {
            for (v, pv) in self.cost.iter_mut().zip(&prow) {
                *v -= f * *pv;
            }
            self.cost[c] = T::zero();
        }
        self.basis[r] = c;
    }

    /// Bland's rule iterations over columns `< allowed`.
    fn run(&mut self, allowed: usize, tol: &LpTolerances<T>) -> Result<bool, LpFailure> {
        let limit = 50 * (self.rows.len() + self.ncols) + 1000;
        for _ in 0..limit {
            let Some(enter) = (0..allowed).find(|&j| self.cost[j] < -tol.pivot) else {
                return Ok(true);
            };
            let rhs = self.ncols;
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > tol.pivot {
                    let ratio = row[rhs].max(T::zero()) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Ok(false),
            }
        }
        Err(LpFailure::IterationLimit)
    }
}

/// Finds a feasible basis for `A x = b, x >= 0`.
pub fn phase_one<T: Scalar>(a: &[Vec<T>], b: &[T], nvars: usize, tol: LpTolerances<T>) -> Result<Phase1<T>, LpFailure> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let ncols = nvars + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ar, &bi)) in a.iter().zip(b).enumerate() {
        let sign = if bi < T::zero() { -T::one() } else { T::one() };
        let mut row = vec![T::zero(); ncols + 1];
        for j in 0..nvars {
            row[j] = ar[j] * sign;
        }
        row[nvars + i] = T::one();
        row[ncols] = bi * sign;
        rows.push(row);
    }
    let mut cost = vec![T::zero(); ncols + 1];
    for row in &rows {
        for j in 0..nvars {
            cost[j] -= row[j];
        }
        cost[ncols] -= row[ncols];
    }
    let mut t = Tableau {
        ncols,
        rows,
        cost,
        basis: (nvars..ncols).collect(),
    };
    t.run(ncols, &tol)?;
    let residual: T = t
        .basis
        .iter()
        .zip(&t.rows)
        .filter(|(bv, _)| **bv >= nvars)
        .map(|(_, row)| row[ncols].abs())
        .sum();
    if residual > tol.feasibility {
        return Ok(Phase1::Infeasible { residual });
    }
    // Drive artificials out of the basis; rows that cannot pivot are redundant.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= nvars {
            let best = (0..nvars)
                .map(|j| (j, t.rows[r][j].abs()))
                .fold((usize::MAX, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if best.0 != usize::MAX && best.1 > tol.pivot {
                t.pivot(r, best.0);
            } else {
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    let rows = t
        .rows
        .into_iter()
        .map(|row| {
            let mut out = row[..nvars].to_vec();
            out.push(row[ncols].max(T::zero()));
            out
        })
        .collect();
    Ok(Phase1::Feasible(FeasibleBasis {
        nvars,
        rows,
        basis: t.basis,
        tol,
    }))
}

impl<T: Scalar> FeasibleBasis<T> {
    pub fn point(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.nvars];
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            x[bv] = row[self.nvars];
        }
        x
    }

    /// Minimizes `c·x` over the polytope.
    pub fn minimize(&self, c: &[T]) -> Result<LpOutcome<T>, LpFailure> {
        assert_eq!(c.len(), self.nvars);
        let n = self.nvars;
        let mut cost = c.to_vec();
        cost.push(T::zero());
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let cb = c[bv];
            if cb != T::zero() {
                for (v, rv) in cost.iter_mut().zip(row) {
                    *v -= cb * *rv;
                }
            }
        }
        let mut t = Tableau {
            ncols: n,
            rows: self.rows.clone(),
            cost,
            basis: self.basis.clone(),
        };
        if !t.run(n, &self.tol)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![T::zero(); n];
        for (row, &bv) in t.rows.iter().zip(&t.basis) {
            x[bv] = row[n].max(T::zero());
        }
        let value = x.iter().zip(c).map(|(a, b)| *a * *b).sum();
        Ok(LpOutcome::Optimal { x, value })
    }

    pub fn maximize(&self, c: &[T]) -> Result<LpOutcome<T>, LpFailure> {
        let neg: Vec<T> = c.iter().map(|v| -*v).collect();
        Ok(match self.minimize(&neg)? {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feasible(a: &[Vec<f64>], b: &[f64], n: usize) -> FeasibleBasis<f64> {
        match phase_one(a, b, n, LpTolerances::default()).unwrap() {
            Phase1::Feasible(f) => f,
            Phase1::Infeasible { .. } => panic!("expected feasible"),
        }
    }

    fn brute_force_vertices_simplex(c: &[f64]) -> (f64, f64) {
        // Over the probability simplex the optima sit at coordinate vertices.
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    #[test]
    fn optimizes_over_probability_simplex() {
        let a = vec![vec![1.0; 4]];
        let f = feasible(&a, &[1.0], 4);
        let c = [3.0, -1.0, 2.0, 0.5];
        let (lo, hi) = brute_force_vertices_simplex(&c);
        match f.minimize(&c).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((value - lo).abs() < 1e-12);
                assert!((x[1] - 1.0).abs() < 1e-12);
            }
            _ => panic!(),
        }
        match f.maximize(&c).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value - hi).abs() < 1e-12),
            _ => panic!(),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x0 + x1 = 1, x0 + x1 = 0 has no nonnegative solution
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(matches!(
            phase_one(&a, &[1.0, 0.0], 2, LpTolerances::default()).unwrap(),
            Phase1::Infeasible { .. }
        ));
        // x0 - x1 = -1 with sum 0 forces x1 = -... infeasible with x >= 0
        let a = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        assert!(matches!(
            phase_one(&a, &[0.5, 1.0], 2, LpTolerances::default()).unwrap(),
            Phase1::Infeasible { .. }
        ));
    }

    #[test]
    fn handles_redundant_rows() {
        let a = vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0], vec![1.0, -1.0, 0.0]];
        let f = feasible(&a, &[1.0, 2.0, 0.0], 3);
        let p = f.point();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12 && (p[0] - p[1]).abs() < 1e-12);
        match f.maximize(&[0.0, 0.0, 1.0]).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-12),
            _ => panic!(),
        }
        match f.maximize(&[1.0, 0.0, 0.0]).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value - 0.5).abs() < 1e-12),
            _ => panic!(),
        }
    }

    #[test]
    fn reports_unbounded() {
        let a = vec![vec![1.0, -1.0]];
        let f = feasible(&a, &[0.0], 2);
        assert_eq!(f.maximize(&[1.0, 0.0]).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Many tied ratios: Bland's rule must not cycle.
        let n = 8;
        let mut a = vec![vec![1.0; n]];
        for k in 1..n {
            let mut row = vec![0.0; n];
            row[k] = 1.0;
            row[k - 1] = -1.0;
            a.push(row);
        }
        let mut b = vec![0.0; n];
        b[0] = 1.0;
        let f = feasible(&a, &b, n);
        assert!(f.point().iter().all(|v| (v - 1.0 / n as f64).abs() < 1e-12));
    }
}
