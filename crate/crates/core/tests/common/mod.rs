//! Reference computations written directly from the definitions, sharing no
//! code with the library's numerics.
#![allow(dead_code)]

pub mod suites;

use num_complex::Complex64;
use std::f64::consts::TAU;

pub fn omega(n: usize, m: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (m % n) as f64 / n as f64)
}

/// `Σ_k row[k] ω^{jk}` for every `j`.
pub fn dft(row: &[Complex64]) -> Vec<Complex64> {
    let n = row.len();
    (0..n).map(|j| (0..n).map(|k| row[k] * omega(n, j * k)).sum()).collect()
}

pub fn dft_real(row: &[f64]) -> Vec<Complex64> {
    dft(&row.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())
}

/// `Σ_i c_i ω^{ij}`.
pub fn poly_at(c: &[f64], j: usize) -> Complex64 {
    let n = c.len();
    c.iter().enumerate().map(|(i, &a)| omega(n, i * j) * a).sum()
}

/// Gram matrix of `i ↦ U^i x`, entry by entry from the definition.
pub fn u_orbit_gram(x: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = x.len();
    let v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|k| x[k] * omega(n, i * k)).collect())
        .collect();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| v[i][k] * v[j][k].conj()).sum()).collect())
        .collect()
}

/// Gram matrix of `i ↦ A^i x` with the rotation blocks written out.
pub fn a_orbit_gram(x: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let apply = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        out[0] = v[0];
        for j in 1..n {
            if 2 * j < n {
                let (c, s) = ((TAU * j as f64 / n as f64).cos(), (TAU * j as f64 / n as f64).sin());
                out[j] = c * v[j] - s * v[n - j];
                out[n - j] = s * v[j] + c * v[n - j];
            } else if 2 * j == n {
                out[j] = -v[j];
            }
        }
        out
    };
    let mut vs = vec![x.to_vec()];
    for _ in 1..n {
        let next = apply(vs.last().unwrap());
        vs.push(next);
    }
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| vs[i][k] * vs[j][k]).sum()).collect())
        .collect()
}

/// Number of nonzero eigenvalues of a Hermitian circulant, read off its DFT.
pub fn circulant_rank(first_row: &[Complex64], rel: f64) -> usize {
    let eig = dft(first_row);
    let top = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    eig.iter().filter(|z| z.norm() > rel * top).count()
}

pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| (2..p).all(|d| p % d != 0)).collect()
}
