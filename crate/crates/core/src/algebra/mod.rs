//! Circulant linear algebra: the Fourier matrix, the cyclic generators `U_n`
//! and `A_n`, orbit Gram matrices, diagonalization, tolerant rank and the
//! zero/nonzero pattern of a Hermitian matrix.
//!
//! Inner products are conjugate-linear in the **second** argument:
//! `⟨u, v⟩ = Σ u_k conj(v_k)`. With this convention
//! `⟨U^i x, U^j x⟩ = Σ |x_k|² ω^{k(i-j)}`, so the Gram matrix of a `U_n`
//! orbit has first row `p(ω^{-k})` where `p` is the polynomial whose
//! coefficients are `|x_k|²`.

mod eigen;

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::scalar::{root_of_unity, Scalar};

pub use eigen::{hermitian_eigenvalues, symmetric_eigenvalues};

/// Numerical thresholds. `zero_eps` decides whether a (normalized) scalar is
/// zero; `rank_eps` is the eigenvalue cutoff relative to the largest one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T> {
    pub zero_eps: T,
    pub rank_eps: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(zero_eps: T, rank_eps: T) -> Result<Self> {
        if !(zero_eps >= T::zero() && rank_eps >= T::zero()) {
            return Err(Error::OutOfRange("tolerances must be nonnegative".into()));
        }
        Ok(Tolerance { zero_eps, rank_eps })
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            zero_eps: T::lit(1e-9),
            rank_eps: T::lit(1e-9),
        }
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Complex::new(v, T::zero())).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.n, x.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn real_part(&self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|z| Complex::new(z.re, T::zero())).collect(),
        }
    }

    pub fn max_imag(&self) -> T {
        self.data.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    pub fn hermitian_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Largest deviation of any entry from the first entry of its wrapped
    /// diagonal `(j - i) mod n`.
    pub fn circulant_deviation(&self) -> T {
        let n = self.n;
        let mut worst = T::zero();
        for i in 1..n {
            for j in 0..n {
                let d = (j + n - i) % n;
                worst = worst.max((self.get(i, j) - self.get(0, d)).norm());
            }
        }
        worst
    }
}

/// Circulant matrix given by its first row; entry `(i, j)` is
/// `first_row[(j - i) mod n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix<T> {
    first_row: Vec<Complex<T>>,
}

impl<T: Scalar> CirculantMatrix<T> {
    pub fn new(first_row: Vec<Complex<T>>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::InvalidOrder);
        }
        Ok(CirculantMatrix { first_row })
    }

    pub fn from_real(first_row: &[T]) -> Result<Self> {
        Self::new(first_row.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex<T>] {
        &self.first_row
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        let n = self.n();
        self.first_row[(j % n + n - i % n) % n]
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        let n = self.n();
        (0..n).all(|k| (self.first_row[k] - self.first_row[(n - k) % n].conj()).norm() <= tol)
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.n(), |i, j| self.entry(i, j))
    }

    /// Reads the first row of a matrix; does not check circulance.
    pub fn from_matrix(m: &Matrix<T>) -> Self {
        CirculantMatrix {
            first_row: (0..m.n()).map(|j| m.get(0, j)).collect(),
        }
    }
}

/// Square matrix that is Hermitian within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian<T>(Matrix<T>);

impl<T: Scalar> DenseHermitian<T> {
    /// Accepts `m` if `|m_ij - conj(m_ji)| <= tol · max(1, max|m|)`.
    pub fn new(m: Matrix<T>, tol: T) -> Result<Self> {
        let r = m.hermitian_residual();
        if r > tol * m.max_abs().max(T::one()) {
            return Err(Error::NotHermitian(r.to_decimal()));
        }
        Ok(DenseHermitian(m))
    }

    pub fn from_circulant(c: &CirculantMatrix<T>, tol: T) -> Result<Self> {
        Self::new(c.to_matrix(), tol)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(self)
    }
}

/// An ordered list of vectors, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    pub vectors: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> Representation<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.vectors.first().map(Vec::len)
    }
}

/// `(F_n)_{ij} = ω^{ij} / √n`.
pub fn fourier_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    let scale = T::one() / T::of(n).sqrt();
    Matrix::from_fn(n, |i, j| root_of_unity::<T>(n, (i * j % n) as i64) * scale)
}

/// `U_n = diag(1, ω, …, ω^{n-1})`.
pub fn u_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, |i, j| {
        if i == j {
            root_of_unity(n, i as i64)
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// Real orthogonal `A_n`: `1` at `(0,0)`, the rotation `R_{2jπ/n}` on the
/// index pair `{j, n-j}` for `1 <= j < n/2`, and `-1` at `(n/2, n/2)` for even `n`.
pub fn a_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(n);
    let real = |v: T| Complex::new(v, T::zero());
    m.set(0, 0, real(T::one()));
    for j in 1..n {
        if 2 * j < n {
            let w = root_of_unity::<T>(n, j as i64);
            let (c, s) = (w.re, w.im);
            m.set(j, j, real(c));
            m.set(j, n - j, real(-s));
            m.set(n - j, j, real(s));
            m.set(n - j, n - j, real(c));
        } else if 2 * j == n {
            m.set(j, j, real(-T::one()));
        }
    }
    m
}

/// `(x, g x, g² x, …, g^{n-1} x)` where `n` is the size of `g`.
pub fn orbit<T: Scalar>(gen: &Matrix<T>, x: &[Complex<T>]) -> Representation<T> {
    let mut vectors = Vec::with_capacity(gen.n());
    let mut cur = x.to_vec();
    for _ in 0..gen.n() {
        let next = gen.mul_vec(&cur);
        vectors.push(std::mem::replace(&mut cur, next));
    }
    Representation { vectors }
}

/// Lifts a real vector into the complex vector space.
pub fn complexify<T: Scalar>(x: &[T]) -> Vec<Complex<T>> {
    x.iter().map(|&v| Complex::new(v, T::zero())).collect()
}

/// Gram matrix `G_ij = ⟨v_i, v_j⟩ = Σ_k v_i[k] conj(v_j[k])`.
pub fn gram<T: Scalar>(rep: &Representation<T>) -> Result<DenseHermitian<T>> {
    let dim = rep.dimension().unwrap_or(0);
    if let Some(bad) = rep.vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let m = rep.len();
    let mut g = Matrix::zeros(m);
    for i in 0..m {
        for j in i..m {
            let ip: Complex<T> = rep.vectors[i]
                .iter()
                .zip(&rep.vectors[j])
                .map(|(a, b)| *a * b.conj())
                .sum();
            g.set(i, j, ip);
            g.set(j, i, ip.conj());
        }
    }
    Ok(DenseHermitian(g))
}

/// Result of conjugating a circulant by the Fourier matrix.
#[derive(Debug, Clone)]
pub struct Diagonalization<T> {
    /// Diagonal of `F* C F`: `λ_j = Σ_k first_row[k] ω^{jk}`.
    pub eigenvalues: Vec<Complex<T>>,
    /// Largest off-diagonal magnitude of `F* C F`, relative to `max|C|`.
    pub off_diagonal_residue: T,
}

pub fn diagonalize_circulant<T: Scalar>(c: &CirculantMatrix<T>) -> Diagonalization<T> {
    let n = c.n();
    let eigenvalues = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| c.first_row[k] * root_of_unity::<T>(n, (j * k % n) as i64))
                .sum()
        })
        .collect();
    let f = fourier_matrix::<T>(n);
    let dense = c.to_matrix();
    let conj = f.adjoint().mul(&dense).mul(&f);
    let mut off = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off = off.max(conj.get(i, j).norm());
            }
        }
    }
    let scale = dense.max_abs();
    Diagonalization {
        eigenvalues,
        off_diagonal_residue: if scale > T::zero() { off / scale } else { off },
    }
}

/// Number of eigenvalues with `|λ| > rank_eps · max|λ|`.
pub fn rank_with_tol<T: Scalar>(m: &DenseHermitian<T>, tol: &Tolerance<T>) -> usize {
    rank_of_spectrum(&m.eigenvalues(), tol)
}

pub fn rank_of_spectrum<T: Scalar>(eig: &[T], tol: &Tolerance<T>) -> usize {
    let top = eig.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    if top == T::zero() {
        return 0;
    }
    eig.iter().filter(|v| v.abs() > tol.rank_eps * top).count()
}

/// `min λ >= -rank_eps · max|λ|`.
pub fn is_psd<T: Scalar>(m: &DenseHermitian<T>, tol: &Tolerance<T>) -> bool {
    psd_spectrum(&m.eigenvalues(), tol)
}

pub fn psd_spectrum<T: Scalar>(eig: &[T], tol: &Tolerance<T>) -> bool {
    let top = eig.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    eig.iter().all(|&v| v >= -tol.rank_eps * top)
}

/// Off-diagonal zero/nonzero pattern that is not circulant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub n: usize,
    /// Edges `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixGraph {
    Circulant(CirculantGraph),
    Pattern(PatternReport),
}

impl MatrixGraph {
    pub fn as_circulant(&self) -> Option<&CirculantGraph> {
        match self {
            MatrixGraph::Circulant(g) => Some(g),
            MatrixGraph::Pattern(_) => None,
        }
    }
}

/// Graph of a Hermitian matrix: `{i, j}` is an edge iff `|m_ij| > zero_eps`
/// after scaling so that `max|m| = 1`.
pub fn graph_of_matrix<T: Scalar>(m: &DenseHermitian<T>, tol: &Tolerance<T>) -> MatrixGraph {
    let n = m.n();
    let scale = m.matrix().max_abs();
    let nonzero = |i: usize, j: usize| scale > T::zero() && m.get(i, j).norm() / scale > tol.zero_eps;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if nonzero(i, j) || nonzero(j, i) {
                edges.push((i, j));
            }
        }
    }
    let residues: Vec<i64> = (1..n).filter(|&d| nonzero(0, d) || nonzero(d, 0)).map(|d| d as i64).collect();
    let circulant = n >= 1
        && residues.iter().all(|&d| residues.contains(&(n as i64 - d)))
        && edges.len() == n * residues.len() / 2
        && edges
            .iter()
            .all(|&(i, j)| residues.contains(&(((j + n - i) % n) as i64)));
    if circulant {
        MatrixGraph::Circulant(CirculantGraph::new(n, &residues).expect("residues in 1..n"))
    } else {
        MatrixGraph::Pattern(PatternReport { n, edges })
    }
}

fn pair_to_wire<T: Scalar>(z: &Complex<T>) -> [String; 2] {
    [z.re.to_decimal(), z.im.to_decimal()]
}

fn pair_from_wire<T: Scalar>(p: &[String; 2]) -> Result<Complex<T>> {
    let parse = |s: &String| {
        s.trim()
            .parse::<T>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    };
    Ok(Complex::new(parse(&p[0])?, parse(&p[1])?))
}

#[derive(Serialize, Deserialize)]
struct CirculantWire {
    n: usize,
    first_row: Vec<[String; 2]>,
}

impl<T: Scalar> Serialize for CirculantMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CirculantWire {
            n: self.n(),
            first_row: self.first_row.iter().map(pair_to_wire).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for CirculantMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = CirculantWire::deserialize(d)?;
        if w.first_row.len() != w.n {
            return Err(D::Error::custom(format!(
                "first_row has {} entries, expected {}",
                w.first_row.len(),
                w.n
            )));
        }
        let row = w
            .first_row
            .iter()
            .map(pair_from_wire)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CirculantMatrix::new(row).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct DenseWire {
    n: usize,
    rows: Vec<Vec<[String; 2]>>,
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DenseWire {
            n: self.n,
            rows: self
                .rows()
                .iter()
                .map(|r| r.iter().map(pair_to_wire).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = DenseWire::deserialize(d)?;
        let rows = w
            .rows
            .iter()
            .map(|r| r.iter().map(pair_from_wire).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let m = Matrix::from_rows(rows).map_err(D::Error::custom)?;
        if m.n() != w.n {
            return Err(D::Error::custom(format!("expected {} rows, found {}", w.n, m.n())));
        }
        Ok(m)
    }
}
