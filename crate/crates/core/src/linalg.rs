//! Small dense real elimination routines.

use crate::scalar::Scalar;

/// Basis of `{ y : A y = 0 }` for a row-major `A` with `ncols` columns.
///
/// Columns are eliminated in the order given by `order` (a permutation of
/// `0..ncols`); free columns therefore appear in that order too, and the
/// `k`-th basis vector has a `1` in the `k`-th free column.
pub fn nullspace_ordered<T: Scalar>(a: &[Vec<T>], ncols: usize, order: &[usize], tol: T) -> Vec<Vec<T>> {
    debug_assert_eq!(order.len(), ncols);
    let mut m: Vec<Vec<T>> = a.to_vec();
    let rows = m.len();
    let scale = m
        .iter()
        .flatten()
        .map(|v| v.abs())
        .fold(T::zero(), T::max)
        .max(T::one());
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            free.push(c);
            continue;
        }
        let (best, val) = (r..rows)
            .map(|i| (i, m[i][c].abs()))
            .fold((r, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if val <= tol * scale {
            free.push(c);
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for v in m[r].iter_mut() {
            *v /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = m[i][c];
                if f != T::zero() {
                    for k in 0..ncols {
                        let d = f * m[r][k];
                        m[i][k] -= d;
                    }
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    free.iter()
        .map(|&fc| {
            let mut y = vec![T::zero(); ncols];
            y[fc] = T::one();
            for &(pr, pc) in &pivots {
                y[pc] = -m[pr][fc];
            }
            y
        })
        .collect()
}

pub fn nullspace<T: Scalar>(a: &[Vec<T>], ncols: usize, tol: T) -> Vec<Vec<T>> {
    let order: Vec<usize> = (0..ncols).collect();
    nullspace_ordered(a, ncols, &order, tol)
}
