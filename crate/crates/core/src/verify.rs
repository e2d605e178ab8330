//! Independent re-validation of certificates and hand-entered matrices.
//! A bundle is judged on `(graph, mode, polynomial, claimed_rank)`; a stored
//! matrix, if present, must agree with the rebuilt one.

use serde::Serialize;

use crate::algebra::{
    graph_of_matrix, psd_spectrum, rank_of_spectrum, CirculantMatrix, DenseHermitian, MatrixGraph, Tolerance,
};
use crate::certificate::{realize, CertificateBundle, Mode};
use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::polycert::{check_condition_c, check_condition_r_weight, is_balanced, ncv, NonnegPolynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: String,
    pub threshold: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub verdict: bool,
}

impl VerificationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let verdict = !checks.is_empty() && checks.iter().all(|c| c.pass);
        VerificationReport { checks, verdict }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check<T: Scalar>(name: &str, pass: bool, residual: T, threshold: T, detail: Option<String>) -> Check {
    Check {
        name: name.to_string(),
        pass,
        residual: residual.to_decimal(),
        threshold: threshold.to_decimal(),
        detail,
    }
}

fn count_check(name: &str, found: usize, expected: usize) -> Check {
    Check {
        name: name.to_string(),
        pass: found == expected,
        residual: found.to_string(),
        threshold: expected.to_string(),
        detail: None,
    }
}

fn relative<T: Scalar>(v: T, scale: T) -> T {
    if scale > T::zero() {
        v / scale
    } else {
        v
    }
}

fn coefficient_check<T: Scalar>(b: &CertificateBundle<T>) -> (Check, Option<NonnegPolynomial<T>>) {
    let raw = &b.polynomial;
    let worst = raw.coeffs.iter().map(|c| -*c).fold(T::zero(), T::max);
    let detail = if b.graph.n() != raw.n {
        Some(format!("polynomial has n = {}, graph has n = {}", raw.n, b.graph.n()))
    } else {
        None
    };
    match (detail, raw.to_nonneg()) {
        (None, Ok(p)) => (check("nonnegative", true, worst, T::zero(), None), Some(p)),
        (Some(d), _) => (check("nonnegative", false, worst, T::zero(), Some(d)), None),
        (None, Err(e)) => (check("nonnegative", false, worst, T::zero(), Some(e.to_string())), None),
    }
}

fn condition_check<T: Scalar>(p: &NonnegPolynomial<T>, g: &CirculantGraph, mode: Mode, tol: &Tolerance<T>) -> Result<Check> {
    let report = match mode {
        Mode::RealWeight => check_condition_r_weight(p, g, tol)?,
        _ => check_condition_c(p, g, tol)?,
    };
    let total = p.total();
    let worst = report
        .records
        .iter()
        .filter(|r| r.must_vanish)
        .filter_map(|r| r.measured.parse::<T>().ok())
        .fold(T::zero(), T::max);
    let mut pass = report.pass;
    let mut detail = report.first_failure().map(|j| {
        let r = &report.records[j - 1];
        if r.must_vanish {
            format!("root j={j} should vanish but |value| = {}", r.measured)
        } else {
            format!("root j={j} vanishes but {j} is in S")
        }
    });
    if total == T::zero() {
        detail = Some("zero polynomial".into());
    }
    if mode == Mode::RealBalanced && !is_balanced(&ncv(p), tol) {
        pass = false;
        detail.get_or_insert_with(|| "coefficient vector is not balanced".into());
    }
    Ok(check("condition", pass, relative(worst, total), tol.zero_eps, detail))
}

/// Runs the matrix checks shared by bundles and hand-entered matrices.
fn matrix_checks<T: Scalar>(
    m: &DenseHermitian<T>,
    eig: &[T],
    tol: &Tolerance<T>,
    out: &mut Vec<Check>,
    circulant: bool,
    psd: bool,
) {
    let scale = m.matrix().max_abs();
    if circulant {
        let dev = relative(m.matrix().circulant_deviation(), scale);
        out.push(check("circulant", dev <= tol.zero_eps, dev, tol.zero_eps, None));
    }
    if psd {
        let top = eig.iter().map(|v| v.abs()).fold(T::zero(), T::max);
        let neg = relative(eig.iter().map(|v| -*v).fold(T::zero(), T::max), top);
        out.push(check("psd", psd_spectrum(eig, tol), neg, tol.rank_eps, None));
    }
}

fn graph_check<T: Scalar>(m: &DenseHermitian<T>, g: &CirculantGraph, tol: &Tolerance<T>) -> Check {
    let scale = m.matrix().max_abs();
    let n = m.n();
    // largest entry that must be zero
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.is_edge(i, j) {
                worst = worst.max(relative(m.get(i, j).norm(), scale));
            }
        }
    }
    let found = graph_of_matrix(m, tol);
    let pass = found.as_circulant() == Some(g);
    let detail = (!pass).then(|| match found {
        MatrixGraph::Circulant(h) => format!("matrix graph is {h}"),
        MatrixGraph::Pattern(p) => format!("matrix graph is not circulant ({} edges)", p.edges.len()),
    });
    check("graph", pass, worst, tol.zero_eps, detail)
}

fn stored_check<T: Scalar>(stored: &CirculantMatrix<T>, m: &DenseHermitian<T>, tol: &Tolerance<T>) -> Check {
    let n = m.n();
    if stored.n() != n {
        let detail = format!("stored matrix has n = {}, rebuilt has n = {n}", stored.n());
        return check("stored-matrix", false, T::infinity(), tol.zero_eps, Some(detail));
    }
    let dev = (0..n).map(|j| (stored.first_row()[j] - m.get(0, j)).norm()).fold(T::zero(), T::max);
    let dev = relative(dev, m.matrix().max_abs());
    check("stored-matrix", dev <= tol.zero_eps, dev, tol.zero_eps, None)
}

/// Rebuilds the matrix from the polynomial and checks, in order:
/// nonnegativity, the root condition of the mode, the rebuild itself (and
/// any stored matrix), circulant structure, PSD, realness (real modes), graph and rank.
pub fn verify_certificate<T: Scalar>(b: &CertificateBundle<T>, tol: &Tolerance<T>) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let (c, p) = coefficient_check(b);
    checks.push(c);
    let Some(p) = p else {
        return Ok(VerificationReport::from_checks(checks));
    };
    checks.push(condition_check(&p, &b.graph, b.mode, tol)?);
    let m = match realize(&p, b.mode) {
        Ok(m) => m,
        Err(e) => {
            checks.push(Check {
                name: "rebuild".into(),
                pass: false,
                residual: "nan".into(),
                threshold: "0".into(),
                detail: Some(e.to_string()),
            });
            return Ok(VerificationReport::from_checks(checks));
        }
    };
    let herm = relative(m.matrix().hermitian_residual(), m.matrix().max_abs());
    checks.push(check("rebuild", herm <= tol.zero_eps, herm, tol.zero_eps, None));
    if let Some(stored) = &b.matrix {
        checks.push(stored_check(stored, &m, tol));
    }
    let eig = m.eigenvalues();
    matrix_checks(&m, &eig, tol, &mut checks, true, true);
    if b.mode.is_real() {
        let im = relative(m.matrix().max_imag(), m.matrix().max_abs());
        checks.push(check("real", im <= tol.zero_eps, im, tol.zero_eps, None));
    }
    checks.push(graph_check(&m, &b.graph, tol));
    checks.push(count_check("rank", rank_of_spectrum(&eig, tol), b.claimed_rank));
    Ok(VerificationReport::from_checks(checks))
}

/// Which properties [`verify_matrix_claim`] should test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatrixClaims {
    pub psd: bool,
    pub circulant: bool,
    pub graph: bool,
    pub rank: Option<usize>,
}

/// Checks each requested claim about `m` independently.
pub fn verify_matrix_claim<T: Scalar>(
    m: &DenseHermitian<T>,
    g: &CirculantGraph,
    claims: MatrixClaims,
    tol: &Tolerance<T>,
) -> Result<VerificationReport> {
    if m.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: m.n(),
        });
    }
    let eig = m.eigenvalues();
    let mut checks = Vec::new();
    matrix_checks(m, &eig, tol, &mut checks, claims.circulant, claims.psd);
    if claims.graph {
        checks.push(graph_check(m, g, tol));
    }
    if let Some(r) = claims.rank {
        checks.push(count_check("rank", rank_of_spectrum(&eig, tol), r));
    }
    Ok(VerificationReport::from_checks(checks))
}
