//! Minimum semidefinite rank of circulant graphs through nonnegative
//! polynomial certificates on roots of unity.

// `!(x >= y)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod algebra;
pub mod certificate;
pub mod construct;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod polycert;
pub mod scalar;
pub mod search;
pub mod verify;

pub use algebra::{
    a_matrix, diagonalize_circulant, fourier_matrix, gram, graph_of_matrix, is_psd, orbit, rank_with_tol,
    u_matrix, CirculantMatrix, DenseHermitian, Diagonalization, Matrix, MatrixGraph, Representation, Tolerance,
};
pub use certificate::{realize, CertificateBundle, Construction, Mode};
pub use construct::{
    caratheodory_certificate, caratheodory_polynomial, consecutive_certificate, consecutive_polynomial, prime_certificate,
    rank_spectrum_consecutive, real_consecutive_certificate, shifted_real_polynomial, CaratheodoryOutcome, RootSet,
};
pub use error::{Error, Result};
pub use graph::{CirculantGraph, ConnectionSet};
pub use polycert::{
    check_condition_c, check_condition_r_weight, eval_at_root, is_balanced, ncv, poly_of_vector, reduce_mod, weight,
    CoefficientVector, ConditionReport, NonnegPolynomial, RawPolynomial,
};
pub use scalar::Scalar;
pub use search::{
    min_terms_search, parameter_report, sampling_oracle, support_feasibility, ParameterReport, ReportOptions,
    SearchOptions, SearchResult, SupportStatus, SupportVerdict,
};
pub use verify::{verify_certificate, verify_matrix_claim, MatrixClaims, VerificationReport};

/// Double-precision aliases for the generic types.
pub type Poly = NonnegPolynomial<f64>;
pub type Bundle = CertificateBundle<f64>;
pub type Circulant = CirculantMatrix<f64>;
pub type Hermitian = DenseHermitian<f64>;
pub type Tol = Tolerance<f64>;
pub type Coefficients = CoefficientVector<f64>;
