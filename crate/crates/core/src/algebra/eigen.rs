//! Hermitian eigenvalues through the real symmetric embedding
//! `[[Re H, -Im H], [Im H, Re H]]` and cyclic Jacobi rotations.

use crate::scalar::Scalar;

use super::DenseHermitian;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix (row-major, `n × n`), ascending.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n);
    let total: T = a.iter().map(|v| *v * *v).sum();
    let floor = T::epsilon() * T::epsilon() * total;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off <= floor {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Scalar>(m: &DenseHermitian<T>) -> Vec<T> {
    let n = m.n();
    let n2 = 2 * n;
    let mut a = vec![T::zero(); n2 * n2];
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            a[i * n2 + j] = z.re;
            a[(i + n) * n2 + j + n] = z.re;
            a[i * n2 + j + n] = -z.im;
            a[(i + n) * n2 + j] = z.im;
        }
    }
    // Each eigenvalue appears twice in the embedding.
    symmetric_eigenvalues(a, n2).into_iter().step_by(2).collect()
}
