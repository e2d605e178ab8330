//! Property suites shared by the focused tests and the acceptance run.
//! Each returns the worst residual seen, or a description of the first
//! failure.

use circrank::algebra::{a_matrix, complexify, fourier_matrix, gram, orbit, u_matrix, Matrix};
use circrank::construct::caratheodory_polynomial_shuffled;
use circrank::{caratheodory_polynomial, diagonalize_circulant, rank_with_tol, CirculantMatrix, RootSet, Tol};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{a_orbit_gram, dft, poly_at, u_orbit_gram};

pub type Outcome = Result<f64, String>;

pub const VECTORS_PER_N: usize = 200;

fn max_dev(m: &Matrix<f64>, want: impl Fn(usize, usize) -> Complex64) -> f64 {
    let n = m.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m.get(i, j) - want(i, j)).norm());
        }
    }
    worst
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `F*F = I` and `F* C F` diagonal with the DFT of the first row, `n <= 64`.
pub fn fourier(limit: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for n in 1..=64 {
        let f = fourier_matrix::<f64>(n);
        let dev = max_dev(&f.adjoint().mul(&f), |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        ensure(dev < limit, || format!("n = {n}: F*F deviates by {dev:e}"))?;
        worst = worst.max(dev);

        let mut row = vec![Complex64::new(0.0, 0.0); n];
        row[0] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for k in 1..n {
            if k < n - k {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                row[k] = z;
                row[n - k] = z.conj();
            } else if k == n - k {
                row[k] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            }
        }
        let d = diagonalize_circulant(&CirculantMatrix::new(row.clone()).unwrap());
        ensure(d.off_diagonal_residue < limit, || {
            format!("n = {n}: off-diagonal residue {:e}", d.off_diagonal_residue)
        })?;
        worst = worst.max(d.off_diagonal_residue);
        for (got, want) in d.eigenvalues.iter().zip(dft(&row)) {
            let e = (got - want).norm();
            ensure(e < limit, || format!("n = {n}: eigenvalue off by {e:e}"))?;
            worst = worst.max(e);
        }
    }
    Ok(worst)
}

/// `F* gram(U-orbit of x) F = diag(n |x_j|²)` on random complex vectors.
pub fn u_spectral(limit: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for n in 3..=16 {
        let f = fourier_matrix::<f64>(n);
        for _ in 0..VECTORS_PER_N {
            let x: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let g = gram(&orbit(&u_matrix(n), &x)).unwrap().into_matrix();
            let oracle = u_orbit_gram(&x);
            let e1 = max_dev(&g, |i, j| oracle[i][j]);
            let conj = f.adjoint().mul(&g).mul(&f);
            let e2 = max_dev(&conj, |i, j| {
                Complex64::new(if i == j { n as f64 * x[i].norm_sqr() } else { 0.0 }, 0.0)
            });
            ensure(e1.max(e2) < limit, || format!("n = {n}: residual {:e}", e1.max(e2)))?;
            worst = worst.max(e1).max(e2);
        }
    }
    Ok(worst)
}

/// `F* gram(A-orbit of x) F = diag(n x_0², n/2 (x_j² + x_{n-j}²))`.
pub fn a_spectral(limit: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for n in 3..=16 {
        let f = fourier_matrix::<f64>(n);
        for _ in 0..VECTORS_PER_N {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g = gram(&orbit(&a_matrix(n), &complexify(&x))).unwrap().into_matrix();
            let oracle = a_orbit_gram(&x);
            let e1 = max_dev(&g, |i, j| Complex64::new(oracle[i][j], 0.0));
            let conj = f.adjoint().mul(&g).mul(&f);
            let e2 = max_dev(&conj, |i, j| {
                let v = if i != j {
                    0.0
                } else if i == 0 {
                    n as f64 * x[0] * x[0]
                } else {
                    n as f64 / 2.0 * (x[i] * x[i] + x[n - i] * x[n - i])
                };
                Complex64::new(v, 0.0)
            });
            ensure(e1.max(e2) < limit, || format!("n = {n}: residual {:e}", e1.max(e2)))?;
            worst = worst.max(e1).max(e2);
        }
    }
    Ok(worst)
}

/// Rank of the U-orbit Gram matrix is the support size, of the A-orbit
/// Gram matrix the weight. Returns the number of vectors checked.
pub fn rank_support_weight() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let tol = Tol::default();
    let mut count = 0;
    for n in 3..=16 {
        for _ in 0..VECTORS_PER_N {
            let density = rng.gen_range(0.1..0.9);
            let x: Vec<f64> = (0..n)
                .map(|_| if rng.gen_bool(density) { rng.gen_range(0.1..1.0) } else { 0.0 })
                .collect();
            let support = x.iter().filter(|v| **v != 0.0).count();
            let weight = (0..n).filter(|&i| x[i] != 0.0 || x[(n - i) % n] != 0.0).count();
            let ru = rank_with_tol(&gram(&orbit(&u_matrix(n), &complexify(&x))).unwrap(), &tol);
            let ra = rank_with_tol(&gram(&orbit(&a_matrix(n), &complexify(&x))).unwrap(), &tol);
            ensure(ru == support, || format!("n = {n}: rank {ru} but support {support} for {x:?}"))?;
            ensure(ra == weight, || format!("n = {n}: rank {ra} but weight {weight} for {x:?}"))?;
            count += 1;
        }
    }
    Ok(count as f64)
}

/// `gram(A-orbit) = Re gram(U-orbit)`, with equality for balanced vectors.
pub fn real_part_and_balanced(limit: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst: f64 = 0.0;
    for n in 3..=16 {
        for trial in 0..VECTORS_PER_N {
            let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let balanced = trial % 2 == 1;
            if balanced {
                for i in 1..n {
                    x[i] = x[n - i];
                }
            }
            let xc = complexify(&x);
            let gu = gram(&orbit(&u_matrix(n), &xc)).unwrap().into_matrix();
            let ga = gram(&orbit(&a_matrix(n), &xc)).unwrap().into_matrix();
            let e = max_dev(&ga, |i, j| Complex64::new(gu.get(i, j).re, 0.0));
            ensure(e < limit, || format!("n = {n}: real part identity off by {e:e}"))?;
            worst = worst.max(e);
            if balanced {
                let e = max_dev(&ga, |i, j| gu.get(i, j));
                ensure(e < limit, || format!("n = {n}: balanced identity off by {e:e}"))?;
                worst = worst.max(e);
            }
        }
    }
    Ok(worst)
}

/// 100 random root sets with `n <= 20`: at most `|W| + 1` terms and
/// relative residual below `limit` on `W`.
pub fn caratheodory(limit: f64) -> Outcome {
    let tol = Tol::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let n = rng.gen_range(2..=20);
        let mut w = Vec::new();
        for j in 1..=n / 2 {
            if rng.gen_bool(0.5) {
                w.push(j);
                w.push(n - j);
            }
        }
        let w = RootSet::new(n, w).unwrap();
        let out = if trial % 2 == 0 {
            caratheodory_polynomial::<f64>(&w, &tol)
        } else {
            caratheodory_polynomial_shuffled::<f64>(&w, &tol, &mut rng)
        }
        .map_err(|e| format!("{w:?}: {e}"))?;
        let p = &out.polynomial;
        ensure(p.term_count() <= w.len() + 1, || format!("{w:?}: {} terms", p.term_count()))?;
        for &j in w.exponents() {
            let r = poly_at(p.coeffs(), j).norm() / p.total();
            ensure(r < limit, || format!("{w:?}: residual {r:e} at j = {j}"))?;
            worst = worst.max(r);
        }
        for &j in &out.extra_zeros {
            ensure(!w.exponents().contains(&j), || format!("{w:?}: extra zero {j} lies in W"))?;
        }
    }
    Ok(worst)
}
