//! The unit of construction, search output and verification.

use serde::{Deserialize, Serialize};

use crate::algebra::{a_matrix, complexify, gram, orbit, u_matrix, CirculantMatrix, DenseHermitian};
use crate::error::Result;
use crate::graph::CirculantGraph;
use crate::polycert::{ncv, NonnegPolynomial, RawPolynomial};
use crate::scalar::Scalar;

/// Which matrix family a certificate realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Hermitian PSD circulant from the `U_n` orbit; `p(ω^j) = 0 ⟺ j ∉ S`.
    #[serde(rename = "C")]
    Complex,
    /// Real PSD circulant from the `A_n` orbit of a balanced vector.
    #[serde(rename = "R-balanced")]
    RealBalanced,
    /// Real PSD circulant from the `A_n` orbit; `Re p(ω^j) = 0 ⟺ j ∉ S`.
    #[serde(rename = "R-weight")]
    RealWeight,
}

impl Mode {
    pub fn is_real(self) -> bool {
        !matches!(self, Mode::Complex)
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Complex => "C",
            Mode::RealBalanced => "R-balanced",
            Mode::RealWeight => "R-weight",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub name: String,
    #[serde(default)]
    pub parameters: serde_json::Map<String, serde_json::Value>,
}

impl Construction {
    pub fn new(name: &str) -> Self {
        Construction {
            name: name.to_string(),
            parameters: serde_json::Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CertificateBundle<T> {
    pub graph: CirculantGraph,
    pub mode: Mode,
    pub polynomial: RawPolynomial<T>,
    pub claimed_rank: usize,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Matching lower bound when one is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    /// Copy of the realized matrix; verification checks it against the rebuild.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<CirculantMatrix<T>>,
}

impl<T: Scalar> CertificateBundle<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Gram matrix of the orbit of `ncv(p)` under `U_n` (complex mode) or
/// `A_n` (real modes).
pub fn realize<T: Scalar>(p: &NonnegPolynomial<T>, mode: Mode) -> Result<DenseHermitian<T>> {
    let n = p.n();
    let x = complexify(ncv(p).values());
    let gen = if mode.is_real() { a_matrix(n) } else { u_matrix(n) };
    gram(&orbit(&gen, &x))
}
