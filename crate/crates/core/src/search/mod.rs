//! Exhaustive minimum-term search over coefficient supports.
//!
//! A support `t` is decided by linear programming over the polytope of
//! nonnegative coefficients on `t` summing to one and vanishing at the
//! required roots. Witnesses are random interior points of that polytope.

pub mod lp;
mod oracle;
mod report;

pub use oracle::sampling_oracle;
pub use report::{parameter_report, KnownBounds, ParameterReport, ReportOptions};

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{CirculantMatrix, Tolerance};
use crate::certificate::{realize, CertificateBundle, Construction, Mode};
use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::polycert::{
    check_condition_c, check_condition_r_weight, is_balanced, ncv, weight_set_of_support, NonnegPolynomial,
};
use crate::scalar::{root_of_unity, Scalar};

use lp::{phase_one, FeasibleBasis, LpOutcome, LpTolerances, Phase1};

/// Coefficients below this (after normalizing `p(1) = 1`) do not count as
/// part of a support.
pub const SUPPORT_EPS: f64 = 1e-6;

const WITNESS_RETRIES: usize = 16;
const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub enum SupportStatus {
    Achieves,
    Infeasible,
    /// Every feasible polynomial vanishes at `ω^j` although `j ∈ S`.
    ForcedVanishing { j: usize },
    /// The LP machinery could not decide; never treated as a negative answer.
    Undetermined(String),
}

/// LP ranges of `p(ω^j)` over the feasibility polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRange<T> {
    pub j: usize,
    pub re: (T, T),
    pub im: Option<(T, T)>,
}

#[derive(Debug, Clone)]
pub struct SupportVerdict<T> {
    pub support: Vec<usize>,
    pub status: SupportStatus,
    pub witness: Option<NonnegPolynomial<T>>,
    pub diagnostics: Vec<RootRange<T>>,
}

impl<T> SupportVerdict<T> {
    fn new(support: &[usize], status: SupportStatus) -> Self {
        SupportVerdict {
            support: support.to_vec(),
            status,
            witness: None,
            diagnostics: Vec::new(),
        }
    }
}

/// LP variables: one per index (complex, weight) or per orbit `{i, n-i}`
/// (balanced).
pub(crate) fn variables(n: usize, t: &[usize], mode: Mode) -> Vec<Vec<usize>> {
    match mode {
        Mode::RealBalanced => {
            let mut out: Vec<Vec<usize>> = Vec::new();
            for &i in t {
                let m = (n - i) % n;
                if i <= m {
                    out.push(if i == m { vec![i] } else { vec![i, m] });
                }
            }
            out
        }
        _ => t.iter().map(|&i| vec![i]).collect(),
    }
}

pub(crate) fn validate_support(n: usize, t: &[usize], mode: Mode) -> Result<Vec<usize>> {
    let mut s = t.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&i| i >= n) {
        return Err(Error::OutOfRange(format!("support index {bad} not below n = {n}")));
    }
    if mode == Mode::RealBalanced && s.iter().any(|&i| s.binary_search(&((n - i) % n)).is_err()) {
        return Err(Error::OutOfRange(format!("support {s:?} is not closed under i -> n - i")));
    }
    Ok(s)
}

/// `(Re, Im)` of `Σ_{i ∈ var} ω^{ij}` for every variable.
fn root_row<T: Scalar>(n: usize, vars: &[Vec<usize>], j: usize) -> (Vec<T>, Vec<T>) {
    vars.iter()
        .map(|var| {
            var.iter()
                .map(|&i| root_of_unity::<T>(n, (i * j % n) as i64))
                .fold((T::zero(), T::zero()), |(re, im), z| (re + z.re, im + z.im))
        })
        .unzip()
}

fn is_zero_row<T: Scalar>(row: &[T]) -> bool {
    row.iter().all(|v| v.abs() <= T::epsilon() * T::lit(16.0))
}

/// Homogeneous vanishing equalities on the variables.
pub(crate) fn vanishing_rows<T: Scalar>(g: &CirculantGraph, vars: &[Vec<usize>], mode: Mode) -> Vec<Vec<T>> {
    let n = g.n();
    let mut rows = Vec::new();
    for j in 1..=n / 2 {
        if g.connection().contains(j) {
            continue;
        }
        let (re, im) = root_row::<T>(n, vars, j);
        if !is_zero_row(&re) {
            rows.push(re);
        }
        if mode == Mode::Complex && !is_zero_row(&im) {
            rows.push(im);
        }
    }
    rows
}

/// Expands variable values into reduced coefficients.
pub(crate) fn coefficients<T: Scalar>(n: usize, vars: &[Vec<usize>], y: &[T]) -> Vec<T> {
    let mut c = vec![T::zero(); n];
    for (var, &v) in vars.iter().zip(y) {
        for &i in var {
            c[i] = v;
        }
    }
    c
}

/// Whether `p` satisfies the condition of `mode` for `g`.
pub fn mode_condition<T: Scalar>(p: &NonnegPolynomial<T>, g: &CirculantGraph, mode: Mode, tol: &Tolerance<T>) -> Result<bool> {
    Ok(match mode {
        Mode::Complex => check_condition_c(p, g, tol)?.pass,
        Mode::RealBalanced => is_balanced(&ncv(p), tol) && check_condition_c(p, g, tol)?.pass,
        Mode::RealWeight => check_condition_r_weight(p, g, tol)?.pass,
    })
}

/// Deterministic per-support seed.
pub(crate) fn support_seed(seed: u64, t: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &i in t {
        for b in (i as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    let mut z = seed ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Decides whether some polynomial supported exactly on `t` certifies `g`
/// in the given mode.
pub fn support_feasibility<T: Scalar>(
    g: &CirculantGraph,
    t: &[usize],
    mode: Mode,
    seed: u64,
    tol: &Tolerance<T>,
) -> Result<SupportVerdict<T>> {
    let n = g.n();
    let t = validate_support(n, t, mode)?;
    if t.is_empty() {
        return Ok(SupportVerdict::new(&t, SupportStatus::Infeasible));
    }
    let vars = variables(n, &t, mode);
    let nv = vars.len();
    let mut a = vanishing_rows::<T>(g, &vars, mode);
    let mut b = vec![T::zero(); a.len()];
    a.push(vars.iter().map(|v| T::of(v.len())).collect());
    b.push(T::one());
    let undetermined = |msg: &str| Ok(SupportVerdict::new(&t, SupportStatus::Undetermined(msg.to_string())));

    let basis = match phase_one(&a, &b, nv, LpTolerances::default()) {
        Ok(Phase1::Feasible(f)) => f,
        Ok(Phase1::Infeasible { .. }) => return Ok(SupportVerdict::new(&t, SupportStatus::Infeasible)),
        Err(_) => return undetermined("phase one did not converge"),
    };
    let mut points = vec![basis.point()];

    // Every coordinate must be able to be positive, otherwise the support is smaller than t.
    let support_eps = T::lit(SUPPORT_EPS);
    for v in 0..nv {
        let mut c = vec![T::zero(); nv];
        c[v] = T::one();
        match maximize(&basis, &c) {
            Some((value, x)) => {
                if value < support_eps {
                    return Ok(SupportVerdict::new(&t, SupportStatus::Infeasible));
                }
                points.push(x);
            }
            None => return undetermined("support LP failed"),
        }
    }

    let half = tol.zero_eps / T::lit(2.0);
    let mut diagnostics = Vec::new();
    for j in 1..=n / 2 {
        if !g.connection().contains(j) {
            continue;
        }
        let (re, im) = root_row::<T>(n, &vars, j);
        let mut range = |row: &[T]| -> Option<(T, T)> {
            let (hi, xh) = maximize(&basis, row)?;
            let neg: Vec<T> = row.iter().map(|v| -*v).collect();
            let (lo, xl) = maximize(&basis, &neg)?;
            points.push(xh);
            points.push(xl);
            Some((-lo, hi))
        };
        let Some(re_range) = range(&re) else {
            return undetermined("root LP failed");
        };
        let im_range = if mode == Mode::Complex {
            let Some(r) = range(&im) else {
                return undetermined("root LP failed");
            };
            Some(r)
        } else {
            None
        };
        let small = |(lo, hi): (T, T)| lo.abs() < half && hi.abs() < half;
        let forced = small(re_range) && im_range.is_none_or(small);
        diagnostics.push(RootRange {
            j,
            re: re_range,
            im: im_range,
        });
        if forced {
            let mut v = SupportVerdict::new(&t, SupportStatus::ForcedVanishing { j });
            v.diagnostics = diagnostics;
            return Ok(v);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(support_seed(seed, &t));
    for _ in 0..WITNESS_RETRIES {
        let mut y = vec![T::zero(); nv];
        let mut total = T::zero();
        for p in &points {
            let w = T::lit(rng.gen_range(1.0..2.0));
            total += w;
            for (acc, v) in y.iter_mut().zip(p) {
                *acc += w * *v;
            }
        }
        y.iter_mut().for_each(|v| *v /= total);
        let c = coefficients(n, &vars, &y);
        let top = c.iter().copied().fold(T::zero(), T::max);
        if t.iter().any(|&i| !(c[i] > T::lit(10.0) * tol.rank_eps * top)) {
            continue;
        }
        let s: T = c.iter().copied().sum();
        let p = NonnegPolynomial::new(c.into_iter().map(|v| v / s).collect())?;
        if mode_condition(&p, g, mode, tol)? {
            return Ok(SupportVerdict {
                support: t,
                status: SupportStatus::Achieves,
                witness: Some(p),
                diagnostics,
            });
        }
    }
    let mut v = SupportVerdict::new(&t, SupportStatus::Undetermined("no witness passed the condition check".into()));
    v.diagnostics = diagnostics;
    Ok(v)
}

fn maximize<T: Scalar>(basis: &FeasibleBasis<T>, c: &[T]) -> Option<(T, Vec<T>)> {
    match basis.maximize(c) {
        Ok(LpOutcome::Optimal { x, value }) => Some((value, x)),
        _ => None,
    }
}

/// k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for m in i + 1..k {
            cur[m] = cur[m - 1] + 1;
        }
    }
}

fn orbits(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .filter(|&i| i <= (n - i) % n)
        .map(|i| if i == (n - i) % n { vec![i] } else { vec![i, n - i] })
        .collect()
}

/// Supports closed under `i ↦ n - i` with exactly `k` elements, sorted.
pub fn symmetric_supports(n: usize, k: usize) -> Vec<Vec<usize>> {
    let orbits = orbits(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << orbits.len()) {
        let size: usize = (0..orbits.len()).filter(|b| mask >> b & 1 == 1).map(|b| orbits[b].len()).sum();
        if size == k {
            let mut s: Vec<usize> = (0..orbits.len())
                .filter(|b| mask >> b & 1 == 1)
                .flat_map(|b| orbits[b].iter().copied())
                .collect();
            s.sort_unstable();
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Supports whose closure under `i ↦ n - i` has exactly `k` elements, sorted.
pub fn weight_supports(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for closure in symmetric_supports(n, k) {
        let groups: Vec<Vec<Vec<usize>>> = orbits(n)
            .into_iter()
            .filter(|o| closure.contains(&o[0]))
            .map(|o| {
                if o.len() == 1 {
                    vec![o]
                } else {
                    vec![vec![o[0]], vec![o[1]], o]
                }
            })
            .collect();
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for choices in &groups {
            acc = acc
                .into_iter()
                .flat_map(|base| {
                    choices.iter().map(move |c| {
                        let mut s = base.clone();
                        s.extend(c);
                        s
                    })
                })
                .collect();
        }
        for mut s in acc {
            s.sort_unstable();
            debug_assert_eq!(weight_set_of_support(n, &s).len(), k);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Candidate supports at one level. In complex mode only supports
/// containing `0` are listed: multiplying by `z^s` preserves every
/// condition, and the lexicographically first achieving support always
/// contains `0`.
fn level_supports(n: usize, k: usize, mode: Mode) -> Vec<Vec<usize>> {
    match mode {
        Mode::Complex => subsets(n, k).into_iter().filter(|s| s.first() == Some(&0)).collect(),
        Mode::RealBalanced => symmetric_supports(n, k),
        Mode::RealWeight => weight_supports(n, k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progress {
    pub level: usize,
    pub examined: usize,
    pub level_size: usize,
}

pub struct SearchOptions<'a, T> {
    pub cap: usize,
    pub seed: u64,
    pub tol: Tolerance<T>,
    pub progress: Option<&'a (dyn Fn(Progress) + Sync)>,
}

impl<T: Scalar> Default for SearchOptions<'_, T> {
    fn default() -> Self {
        SearchOptions {
            cap: 20,
            seed: 0,
            tol: Tolerance::default(),
            progress: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SearchResult<T> {
    pub graph: CirculantGraph,
    pub mode: Mode,
    pub k: usize,
    pub certificate: CertificateBundle<T>,
    pub certified_optimal: bool,
    pub supports_examined: usize,
    /// Supports below level `k` the LP could not decide.
    pub undetermined: Vec<Vec<usize>>,
}

/// Smallest `k` (terms, or weight in weight mode) admitting a certificate.
pub fn min_terms_search<T: Scalar>(g: &CirculantGraph, mode: Mode, opts: &SearchOptions<'_, T>) -> Result<SearchResult<T>> {
    let n = g.n();
    if n > opts.cap {
        return Err(Error::CapExceeded { n, cap: opts.cap });
    }
    let examined = AtomicUsize::new(0);
    let mut undetermined = Vec::new();
    for k in 1..=n {
        let supports = level_supports(n, k, mode);
        let level_size = supports.len();
        let mut done = 0;
        for chunk in supports.chunks(CHUNK) {
            let verdicts: Vec<Result<SupportVerdict<T>>> = chunk
                .par_iter()
                .map(|t| {
                    examined.fetch_add(1, Ordering::Relaxed);
                    support_feasibility(g, t, mode, opts.seed, &opts.tol)
                })
                .collect();
            done += chunk.len();
            if let Some(cb) = opts.progress {
                cb(Progress {
                    level: k,
                    examined: done,
                    level_size,
                });
            }
            for v in verdicts {
                let v = v?;
                match v.status {
                    SupportStatus::Achieves => {
                        let p = v.witness.expect("achieving verdict carries a witness");
                        let certificate = search_bundle(g, mode, &v.support, k, p, opts.seed)?;
                        return Ok(SearchResult {
                            graph: g.clone(),
                            mode,
                            k,
                            certificate,
                            certified_optimal: undetermined.is_empty(),
                            supports_examined: examined.load(Ordering::Relaxed),
                            undetermined,
                        });
                    }
                    SupportStatus::Undetermined(_) => undetermined.push(v.support),
                    _ => {}
                }
            }
        }
    }
    Err(Error::Inconsistent(format!("{g}: no {} certificate of any size", mode.label())))
}

fn search_bundle<T: Scalar>(
    g: &CirculantGraph,
    mode: Mode,
    support: &[usize],
    k: usize,
    p: NonnegPolynomial<T>,
    seed: u64,
) -> Result<CertificateBundle<T>> {
    let gram = realize(&p, mode)?;
    let construction = Construction::new("search")
        .with("mode", mode.label())
        .with("support", support.to_vec());
    Ok(CertificateBundle {
        graph: g.clone(),
        mode,
        polynomial: p.to_raw(),
        claimed_rank: k,
        construction,
        seed: Some(seed),
        lower_bound: None,
        matrix: Some(CirculantMatrix::from_matrix(gram.matrix())),
    })
}
