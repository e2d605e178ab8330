//! Nonnegative polynomials modulo `z^n - 1`, their normalized coefficient
//! vectors, and the root conditions that tie them to circulant graphs.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Tolerance;
use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::scalar::{root_of_unity, Scalar};

/// Coefficient list exactly as read from or written to JSON. No invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct RawPolynomial<T> {
    pub n: usize,
    pub coeffs: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    n: usize,
    coeffs: Vec<String>,
}

impl<T: Scalar> Serialize for RawPolynomial<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialWire {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.to_decimal()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for RawPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = PolynomialWire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<T>().map_err(|e| D::Error::custom(format!("{s:?}: {e}"))))
            .collect::<std::result::Result<Vec<T>, _>>()?;
        Ok(RawPolynomial { n: w.n, coeffs })
    }
}

impl<T: Scalar> RawPolynomial<T> {
    /// Validates length and sign.
    pub fn to_nonneg(&self) -> Result<NonnegPolynomial<T>> {
        if self.coeffs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.coeffs.len(),
            });
        }
        NonnegPolynomial::new(self.coeffs.clone())
    }
}

/// Polynomial with nonnegative real coefficients, stored reduced mod
/// `z^n - 1`: `coeffs[i]` multiplies `z^i`, `i < n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> NonnegPolynomial<T> {
    /// Takes already-reduced coefficients (length `n`).
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidOrder);
        }
        if let Some((index, v)) = coeffs.iter().enumerate().find(|(_, v)| !(**v >= T::zero())) {
            return Err(Error::NotNonnegative {
                index,
                value: v.to_decimal(),
            });
        }
        Ok(NonnegPolynomial { coeffs })
    }

    /// The constant polynomial `1` on `n` roots.
    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n.max(1)];
        coeffs[0] = T::one();
        NonnegPolynomial { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.coeffs[i] > T::zero()).collect()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| **c > T::zero()).count()
    }

    /// `p(1)`.
    pub fn total(&self) -> T {
        self.coeffs.iter().copied().sum()
    }

    /// Multiplies by `z^s` mod `z^n - 1`.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.n();
        let mut out = vec![T::zero(); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(i + s) % n] += c;
        }
        NonnegPolynomial { coeffs: out }
    }

    /// Multiplies by another nonnegative polynomial given by its ascending
    /// coefficients and reduces mod `z^n - 1`.
    pub fn mul_reduce(&self, factor: &[T]) -> Result<Self> {
        let mut raw = vec![T::zero(); self.n() + factor.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        reduce_mod(&raw, self.n())
    }

    pub fn to_raw(&self) -> RawPolynomial<T> {
        RawPolynomial {
            n: self.n(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<T: Scalar> Serialize for NonnegPolynomial<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for NonnegPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawPolynomial::<T>::deserialize(d)?
            .to_nonneg()
            .map_err(serde::de::Error::custom)
    }
}

/// Coordinatewise square roots of a polynomial's reduced coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    x: Vec<T>,
}

impl<T: Scalar> CoefficientVector<T> {
    pub fn new(x: Vec<T>) -> Result<Self> {
        if let Some((index, v)) = x.iter().enumerate().find(|(_, v)| !(**v >= T::zero())) {
            return Err(Error::NotNonnegative {
                index,
                value: v.to_decimal(),
            });
        }
        Ok(CoefficientVector { x })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn values(&self) -> &[T] {
        &self.x
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.x[i] > T::zero()).collect()
    }
}

/// Folds raw coefficients of any degree: `coeffs[i] = Σ_k raw[i + kn]`.
pub fn reduce_mod<T: Scalar>(raw: &[T], n: usize) -> Result<NonnegPolynomial<T>> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let mut coeffs = vec![T::zero(); n];
    for (i, &a) in raw.iter().enumerate() {
        coeffs[i % n] += a;
    }
    NonnegPolynomial::new(coeffs)
}

/// Normalized coefficient vector.
pub fn ncv<T: Scalar>(p: &NonnegPolynomial<T>) -> CoefficientVector<T> {
    CoefficientVector {
        x: p.coeffs.iter().map(|c| c.sqrt()).collect(),
    }
}

/// Polynomial corresponding to a nonnegative vector: `Σ v_i² z^i`.
pub fn poly_of_vector<T: Scalar>(v: &CoefficientVector<T>) -> NonnegPolynomial<T> {
    NonnegPolynomial {
        coeffs: v.x.iter().map(|c| *c * *c).collect(),
    }
}

/// `p(ω^j) = Σ_k coeffs[k] ω^{jk}`.
pub fn eval_at_root<T: Scalar>(p: &NonnegPolynomial<T>, j: i64) -> Complex<T> {
    eval_coeffs_at_root(&p.coeffs, j)
}

pub(crate) fn eval_coeffs_at_root<T: Scalar>(coeffs: &[T], j: i64) -> Complex<T> {
    let n = coeffs.len();
    let j = j.rem_euclid(n as i64) as usize;
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != T::zero())
        .map(|(k, &c)| root_of_unity::<T>(n, (j * k % n) as i64) * c)
        .sum()
}

/// One root of unity's entry in a condition check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCheck {
    pub j: usize,
    pub value: [String; 2],
    /// `|p(ω^j)|` or `|Re p(ω^j)|`, depending on the condition.
    pub measured: String,
    pub threshold: String,
    pub must_vanish: bool,
    pub vanishes: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub records: Vec<RootCheck>,
}

impl ConditionReport {
    pub fn failures(&self) -> impl Iterator<Item = &RootCheck> {
        self.records.iter().filter(|r| !r.ok)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.failures().next().map(|r| r.j)
    }
}

#[derive(Clone, Copy)]
enum Measure {
    Modulus,
    RealPart,
}

fn check_condition<T: Scalar>(
    p: &NonnegPolynomial<T>,
    g: &CirculantGraph,
    tol: &Tolerance<T>,
    measure: Measure,
) -> Result<ConditionReport> {
    let n = p.n();
    if g.n() != n {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: n,
        });
    }
    let threshold = tol.zero_eps * p.total();
    let mut records = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let value = eval_at_root(p, j as i64);
        let measured = match measure {
            Measure::Modulus => value.norm(),
            Measure::RealPart => value.re.abs(),
        };
        let vanishes = measured <= threshold;
        let must_vanish = !g.connection().contains(j);
        records.push(RootCheck {
            j,
            value: [value.re.to_decimal(), value.im.to_decimal()],
            measured: measured.to_decimal(),
            threshold: threshold.to_decimal(),
            must_vanish,
            vanishes,
            ok: vanishes == must_vanish,
        });
    }
    // The zero polynomial is never a certificate.
    let pass = p.total() > T::zero() && records.iter().all(|r| r.ok);
    Ok(ConditionReport { pass, records })
}

/// `p(ω^j) = 0 ⟺ j ∉ S` for `j = 1..n-1`, with vanishing measured as
/// `|p(ω^j)| <= zero_eps · p(1)`.
pub fn check_condition_c<T: Scalar>(
    p: &NonnegPolynomial<T>,
    g: &CirculantGraph,
    tol: &Tolerance<T>,
) -> Result<ConditionReport> {
    check_condition(p, g, tol, Measure::Modulus)
}

/// `Re p(ω^j) = 0 ⟺ j ∉ S` for `j = 1..n-1`.
pub fn check_condition_r_weight<T: Scalar>(
    p: &NonnegPolynomial<T>,
    g: &CirculantGraph,
    tol: &Tolerance<T>,
) -> Result<ConditionReport> {
    check_condition(p, g, tol, Measure::RealPart)
}

/// `W(x) = { i : i ∈ supp(x) or n - i ∈ supp(x) }`, as a sorted list.
pub fn weight_set<T: Scalar>(v: &CoefficientVector<T>) -> Vec<usize> {
    weight_set_of_support(v.n(), &v.support())
}

pub fn weight_set_of_support(n: usize, support: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = support.iter().flat_map(|&i| [i, (n - i) % n]).collect();
    w.sort_unstable();
    w.dedup();
    w
}

pub fn weight<T: Scalar>(v: &CoefficientVector<T>) -> usize {
    weight_set(v).len()
}

/// `|x_i - x_{n-i}| < zero_eps` for every `i = 1..n-1`.
pub fn is_balanced<T: Scalar>(v: &CoefficientVector<T>, tol: &Tolerance<T>) -> bool {
    let n = v.n();
    (1..n).all(|i| (v.x[i] - v.x[n - i]).abs() < tol.zero_eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn poly(c: &[f64]) -> NonnegPolynomial<f64> {
        NonnegPolynomial::new(c.to_vec()).unwrap()
    }

    fn graph(n: usize, s: &[i64]) -> CirculantGraph {
        CirculantGraph::new(n, s).unwrap()
    }

    fn c2(x: f64) -> f64 {
        2.0 * (std::f64::consts::PI / 5.0).cos() * x
    }

    #[test]
    fn folds_high_degree_terms() {
        // z^6 + 2cos(π/5) z^5 + z^4 with n = 5
        let p = reduce_mod(&[0.0, 0.0, 0.0, 0.0, 1.0, c2(1.0), 1.0], 5).unwrap();
        assert_eq!(p.coeffs(), &[c2(1.0), 1.0, 0.0, 0.0, 1.0]);
        assert_eq!(reduce_mod(&[1.0, 1.0], 4).unwrap().coeffs(), &[1.0, 1.0, 0.0, 0.0]);
        let mut zn = vec![0.0; 8];
        zn[7] = 1.0;
        assert_eq!(reduce_mod(&zn, 7).unwrap().coeffs()[0], 1.0);
        assert!(matches!(reduce_mod(&[1.0, -2.0], 3), Err(Error::NotNonnegative { index: 1, .. })));
        // Negative raw terms are fine when the folded sum is not.
        assert_eq!(reduce_mod(&[1.0, 0.0, -0.5], 2).unwrap().coeffs(), &[0.5, 0.0]);
    }

    #[test]
    fn coefficient_vector_correspondence() {
        assert_eq!(ncv(&poly(&[1.0, 1.0, 0.0, 0.0])).values(), &[1.0, 1.0, 0.0, 0.0]);
        let h = 0.5f64;
        let x = ncv(&poly(&[1.0, 0.0, h, h, h, 0.0]));
        assert_eq!(x.values(), &[1.0, 0.0, h.sqrt(), h.sqrt(), h.sqrt(), 0.0]);
        assert!(ncv(&poly(&[0.0; 3])).values().iter().all(|v| *v == 0.0));

        let v = CoefficientVector::new(vec![2f64.sqrt(), 0.0, 3.0]).unwrap();
        let p = poly_of_vector(&v);
        assert!((p.coeffs()[0] - 2.0).abs() < 1e-15 && p.coeffs()[2] == 9.0);
        assert!(CoefficientVector::new(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn evaluation_at_roots() {
        let p = poly(&[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(eval_at_root(&p, 2), Complex::new(0.0, 0.0));
        let q = poly(&[1.0, 0.0, 0.5, 0.5, 0.5, 0.0]);
        assert!(eval_at_root(&q, 1).norm() < 1e-15);
        assert!(eval_at_root(&q, -1).norm() < 1e-15);
        let r = poly(&[0.25, 1.5, 0.0, 2.0]);
        assert_eq!(eval_at_root(&r, 0), Complex::new(3.75, 0.0));
    }

    #[test]
    fn complex_condition() {
        let c4 = graph(4, &[1]);
        let h = graph(6, &[2, 3]);
        assert!(check_condition_c(&poly(&[1.0, 1.0, 0.0, 0.0]), &c4, &tol()).unwrap().pass);
        assert!(check_condition_c(&poly(&[1.0, 0.0, 0.5, 0.5, 0.5, 0.0]), &h, &tol()).unwrap().pass);
        let bad = check_condition_c(&poly(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]), &h, &tol()).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.first_failure(), Some(2));
        assert!(check_condition_c(&poly(&[1.0, 1.0, 0.0]), &c4, &tol()).is_err());
        let zero = check_condition_c(&poly(&[0.0; 3]), &graph(3, &[]), &tol()).unwrap();
        assert!(!zero.pass);
    }

    #[test]
    fn real_weight_condition() {
        let p = poly(&[1.0, 1.0, 0.0, 0.0]);
        assert!(check_condition_r_weight(&p, &graph(4, &[1]), &tol()).unwrap().pass);
        assert!(!check_condition_r_weight(&p, &graph(4, &[2]), &tol()).unwrap().pass);
        assert!(!check_condition_r_weight(&poly(&[1.0, 0.0, 0.0]), &graph(3, &[]), &tol()).unwrap().pass);
    }

    #[test]
    fn weight_and_balance() {
        let x = CoefficientVector::new(vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(weight(&x), 3);
        assert!(!is_balanced(&x, &tol()));
        let y = CoefficientVector::new(vec![c2(1.0).sqrt(), 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(is_balanced(&y, &tol()));
        assert_eq!(weight(&y), y.support().len());
        assert_eq!(weight(&CoefficientVector::new(vec![0.0; 4]).unwrap()), 0);
        assert!(is_balanced(&CoefficientVector::new(vec![0.3, 2.0, 2.0]).unwrap(), &tol()));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let p = poly(&[c2(1.0), 1.0, 0.0, 0.0, 1.0]);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["coeffs"][1], "1.0000000000000000e0");
        let back: NonnegPolynomial<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let neg = serde_json::json!({"n": 2, "coeffs": ["1", "-1"]});
        assert!(serde_json::from_value::<NonnegPolynomial<f64>>(neg.clone()).is_err());
        let raw: RawPolynomial<f64> = serde_json::from_value(neg).unwrap();
        assert!(raw.to_nonneg().is_err());
    }
}
