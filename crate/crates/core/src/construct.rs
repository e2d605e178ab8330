//! Explicit certificate constructions: products over consecutive roots,
//! their balanced shift for odd order, Carathéodory reduction for prime
//! order, and the `(z + 2)` rank ladder.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CirculantMatrix, Tolerance};
use crate::certificate::{realize, CertificateBundle, Construction, Mode};
use crate::error::{Error, Result};
use crate::graph::{is_prime, CirculantGraph};
use crate::linalg::nullspace_ordered;
use crate::polycert::{check_condition_c, eval_at_root, reduce_mod, NonnegPolynomial};
use crate::scalar::{root_of_unity, Scalar};

const PRIME_RETRIES: usize = 8;

/// Self-conjugate set of exponents `j ∈ 1..n` naming roots `ω^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    n: usize,
    exponents: BTreeSet<usize>,
}

impl RootSet {
    pub fn new(n: usize, exponents: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder);
        }
        let exponents: BTreeSet<usize> = exponents.into_iter().collect();
        for &j in &exponents {
            if j == 0 || j >= n {
                return Err(Error::OutOfRange(format!("exponent {j} not in 1..{n}")));
            }
            if !exponents.contains(&(n - j)) {
                return Err(Error::OutOfRange(format!("exponent set is not closed: {j} without {}", n - j)));
            }
        }
        Ok(RootSet { n, exponents })
    }

    /// Exponents of the roots where a certificate for `g` must vanish.
    pub fn non_edges(g: &CirculantGraph) -> Self {
        RootSet {
            n: g.n(),
            exponents: g.non_residues().into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &BTreeSet<usize> {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

fn check_consecutive_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k >= n / 2 {
        return Err(Error::OutOfRange(format!(
            "consecutive polynomial needs 1 <= k < floor(n/2), got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// `∏_{j=k+1}^{n-k-1} (z - ω^j)` reduced mod `z^n - 1`.
pub fn consecutive_polynomial<T: Scalar>(n: usize, k: usize) -> Result<NonnegPolynomial<T>> {
    check_consecutive_range(n, k)?;
    let two = T::lit(2.0);
    let mut acc = vec![T::one()];
    for j in k + 1..=n - k - 1 {
        if 2 * j < n {
            // conjugate pair (z - ω^j)(z - ω^{n-j})
            let c = root_of_unity::<T>(n, j as i64).re;
            acc = convolve(&acc, &[T::one(), -two * c, T::one()]);
        } else if 2 * j == n {
            acc = convolve(&acc, &[T::one(), T::one()]);
        }
    }
    reduce_mod(&acc, n)
}

fn convolve<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `z^{k+(n+1)/2} p(z)` for odd `n`, whose coefficient vector is balanced.
pub fn shifted_real_polynomial<T: Scalar>(n: usize, k: usize) -> Result<NonnegPolynomial<T>> {
    if n.is_multiple_of(2) {
        return Err(Error::ParityUnsupported(n));
    }
    let p = consecutive_polynomial::<T>(n, k)?;
    Ok(p.shift(k + n.div_ceil(2)))
}

#[derive(Debug, Clone)]
pub struct CaratheodoryOutcome<T> {
    pub polynomial: NonnegPolynomial<T>,
    /// Roots `ω^j`, `j ∉ W`, where the result vanishes anyway.
    pub extra_zeros: Vec<usize>,
    /// `max_{j ∈ W} |p(ω^j)| / p(1)`.
    pub residual: T,
}

/// Polynomial with at most `|W| + 1` nonnegative terms vanishing on every
/// `ω^j`, `j ∈ W`. Deterministic: smallest-index tie-breaking.
pub fn caratheodory_polynomial<T: Scalar>(w: &RootSet, tol: &Tolerance<T>) -> Result<CaratheodoryOutcome<T>> {
    caratheodory_reduce(w, tol, None)
}

/// Same reduction with the elimination order shuffled by `rng`.
pub fn caratheodory_polynomial_shuffled<T: Scalar>(
    w: &RootSet,
    tol: &Tolerance<T>,
    rng: &mut ChaCha8Rng,
) -> Result<CaratheodoryOutcome<T>> {
    caratheodory_reduce(w, tol, Some(rng))
}

/// Real coordinates of `ω^{ij}` for the roots of `W`: one `(-1)^i` entry
/// for `n/2`, and `(Re, Im)` per conjugate pair.
fn caratheodory_points<T: Scalar>(w: &RootSet) -> Vec<Vec<T>> {
    let n = w.n;
    (0..n)
        .map(|i| {
            let mut v = Vec::with_capacity(w.len());
            for &j in &w.exponents {
                if 2 * j == n {
                    v.push(if i % 2 == 0 { T::one() } else { -T::one() });
                } else if 2 * j < n {
                    let z = root_of_unity::<T>(n, (i * j % n) as i64);
                    v.push(z.re);
                    v.push(z.im);
                }
            }
            v
        })
        .collect()
}

fn caratheodory_reduce<T: Scalar>(
    w: &RootSet,
    tol: &Tolerance<T>,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<CaratheodoryOutcome<T>> {
    let n = w.n;
    if w.is_empty() {
        return Ok(CaratheodoryOutcome {
            polynomial: NonnegPolynomial::one(n),
            extra_zeros: Vec::new(),
            residual: T::zero(),
        });
    }
    let points = caratheodory_points::<T>(w);
    let d = w.len();
    let mut lambda = vec![T::one(); n];
    let kernel_tol = T::epsilon().sqrt();
    let drop_tol = T::epsilon() * T::lit(64.0);
    loop {
        let mut active: Vec<usize> = (0..n).filter(|&i| lambda[i] > T::zero()).collect();
        if active.len() <= d + 1 {
            break;
        }
        if let Some(r) = rng.as_deref_mut() {
            active.shuffle(r);
        }
        let m = active.len();
        let mut rows: Vec<Vec<T>> = (0..d).map(|c| active.iter().map(|&i| points[i][c]).collect()).collect();
        rows.push(vec![T::one(); m]);
        let order: Vec<usize> = (0..m).collect();
        let kernel = nullspace_ordered(&rows, m, &order, kernel_tol);
        let Some(mut mu) = kernel.into_iter().next() else {
            return Err(Error::ConstructionFailed(format!(
                "no affine dependence among {m} points in dimension {d}"
            )));
        };
        if !mu.iter().any(|v| *v > T::zero()) {
            mu.iter_mut().for_each(|v| *v = -*v);
        }
        // Largest step keeping every weight nonnegative; ties go to the smallest vertex index.
        let mut best: Option<(usize, T)> = None;
        for (pos, &i) in active.iter().enumerate() {
            if mu[pos] > T::zero() {
                let ratio = lambda[i] / mu[pos];
                best = match best {
                    Some((bp, br)) if br < ratio || (br == ratio && active[bp] < i) => Some((bp, br)),
                    _ => Some((pos, ratio)),
                };
            }
        }
        let (hit, step) = best.ok_or_else(|| Error::ConstructionFailed("degenerate kernel vector".into()))?;
        let top = active.iter().map(|&i| lambda[i]).fold(T::zero(), T::max);
        for (pos, &i) in active.iter().enumerate() {
            lambda[i] -= step * mu[pos];
            if lambda[i] <= drop_tol * top {
                lambda[i] = T::zero();
            }
        }
        lambda[active[hit]] = T::zero();
    }
    let polynomial = NonnegPolynomial::new(lambda)?;
    let total = polynomial.total();
    let residual = w
        .exponents
        .iter()
        .map(|&j| eval_at_root(&polynomial, j as i64).norm() / total)
        .fold(T::zero(), T::max);
    if !(residual < T::lit(1e-8).max(tol.zero_eps)) {
        return Err(Error::ConstructionFailed(format!(
            "reduced polynomial misses a prescribed root (residual {})",
            residual.to_decimal()
        )));
    }
    let extra_zeros = (1..n)
        .filter(|j| !w.exponents.contains(j))
        .filter(|&j| eval_at_root(&polynomial, j as i64).norm() <= tol.zero_eps * total)
        .collect();
    Ok(CaratheodoryOutcome {
        polynomial,
        extra_zeros,
        residual,
    })
}

fn bundle<T: Scalar>(
    g: &CirculantGraph,
    mode: Mode,
    p: NonnegPolynomial<T>,
    claimed_rank: usize,
    construction: Construction,
    seed: Option<u64>,
    lower_bound: Option<usize>,
) -> Result<CertificateBundle<T>> {
    let gram = realize(&p, mode)?;
    Ok(CertificateBundle {
        graph: g.clone(),
        mode,
        polynomial: p.to_raw(),
        claimed_rank,
        construction,
        seed,
        lower_bound,
        matrix: Some(CirculantMatrix::from_matrix(gram.matrix())),
    })
}

/// Rank `n - |S|` certificate for `C(p, S)` with `p` prime.
pub fn prime_certificate<T: Scalar>(g: &CirculantGraph, seed: u64, tol: &Tolerance<T>) -> Result<CertificateBundle<T>> {
    let n = g.n();
    if !is_prime(n) {
        return Err(Error::UnsupportedFamily(format!("{g}: order {n} is not prime")));
    }
    let target = n - g.degree();
    reduced_certificate(g, seed, tol, Some(target), "prime")
}

/// Carathéodory certificate for any circulant. Outside the prime case
/// the reduction may vanish at extra roots, in which case every retry
/// fails and an error is returned.
pub fn caratheodory_certificate<T: Scalar>(
    g: &CirculantGraph,
    seed: u64,
    tol: &Tolerance<T>,
) -> Result<CertificateBundle<T>> {
    reduced_certificate(g, seed, tol, None, "caratheodory")
}

fn reduced_certificate<T: Scalar>(
    g: &CirculantGraph,
    seed: u64,
    tol: &Tolerance<T>,
    target: Option<usize>,
    name: &str,
) -> Result<CertificateBundle<T>> {
    let n = g.n();
    let w = RootSet::non_edges(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 0..PRIME_RETRIES {
        let outcome = if attempt == 0 {
            caratheodory_polynomial(&w, tol)
        } else {
            caratheodory_polynomial_shuffled(&w, tol, &mut rng)
        };
        let outcome = match outcome {
            Ok(o) => o,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        let p = outcome.polynomial;
        let terms = p.term_count();
        if target.is_some_and(|t| t != terms) {
            last = format!("{terms} terms, expected {}", target.unwrap_or_default());
            continue;
        }
        if !outcome.extra_zeros.is_empty() || !check_condition_c(&p, g, tol)?.pass {
            last = format!("vanishes at extra roots {:?}", outcome.extra_zeros);
            continue;
        }
        let construction = Construction::new(name).with("n", n).with("attempt", attempt);
        return bundle(g, Mode::Complex, p, terms, construction, Some(seed), target);
    }
    Err(Error::ConstructionFailed(format!(
        "{g}: no certificate after {PRIME_RETRIES} attempts ({last})"
    )))
}

fn consecutive_k(g: &CirculantGraph) -> Result<usize> {
    g.is_consecutive()
        .ok_or_else(|| Error::UnsupportedFamily(format!("{g} is not a consecutive circulant")))
}

/// Rank `n - 2k` certificate for `C(n, {±1, …, ±k})`; the all-ones matrix
/// for complete graphs.
pub fn consecutive_certificate<T: Scalar>(g: &CirculantGraph) -> Result<CertificateBundle<T>> {
    let k = consecutive_k(g)?;
    let n = g.n();
    let lower = g.mr_lower_bound()?;
    if g.is_complete() {
        let c = Construction::new("complete").with("n", n);
        return bundle(g, Mode::Complex, NonnegPolynomial::one(n), 1, c, None, Some(lower));
    }
    let p = consecutive_polynomial::<T>(n, k)?;
    let c = Construction::new("consecutive").with("n", n).with("k", k);
    bundle(g, Mode::Complex, p, n - 2 * k, c, None, Some(lower))
}

/// Real rank `n - 2k` certificate for odd `n` from the balanced shift.
pub fn real_consecutive_certificate<T: Scalar>(g: &CirculantGraph) -> Result<CertificateBundle<T>> {
    let k = consecutive_k(g)?;
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(Error::ParityUnsupported(n));
    }
    let lower = g.mr_lower_bound()?;
    if g.is_complete() {
        let c = Construction::new("complete").with("n", n);
        return bundle(g, Mode::RealBalanced, NonnegPolynomial::one(n), 1, c, None, Some(lower));
    }
    let q = shifted_real_polynomial::<T>(n, k)?;
    let c = Construction::new("real-consecutive").with("n", n).with("k", k);
    bundle(g, Mode::RealBalanced, q, n - 2 * k, c, None, Some(lower))
}

/// Certificates of every rank from `n - 2k` to `n`, multiplying the
/// consecutive polynomial by successive powers of `z + 2`.
pub fn rank_spectrum_consecutive<T: Scalar>(g: &CirculantGraph) -> Result<Vec<CertificateBundle<T>>> {
    let k = consecutive_k(g)?;
    if g.is_complete() {
        return Err(Error::UnsupportedFamily(format!("{g} is complete")));
    }
    let n = g.n();
    let factor = [T::lit(2.0), T::one()];
    let mut p = consecutive_polynomial::<T>(n, k)?;
    let mut out = Vec::with_capacity(2 * k + 1);
    for m in 0..=2 * k {
        if m > 0 {
            p = p.mul_reduce(&factor)?;
        }
        let c = Construction::new("rank-spectrum").with("n", n).with("k", k).with("power", m);
        out.push(bundle(g, Mode::Complex, p.clone(), n - 2 * k + m, c, None, None)?);
    }
    Ok(out)
}
