//! Independent cross-check for the LP decision: random points of the
//! solution space of the vanishing equations, filtered for positivity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Tolerance;
use crate::certificate::Mode;
use crate::error::Result;
use crate::graph::CirculantGraph;
use crate::linalg::nullspace;
use crate::polycert::NonnegPolynomial;
use crate::scalar::Scalar;

use super::{coefficients, mode_condition, validate_support, vanishing_rows, variables, SUPPORT_EPS};

/// Draws `samples` random elements of the kernel of the vanishing equations
/// on `t` and returns the first one that is a certificate with support
/// exactly `t`. Finding nothing proves nothing.
pub fn sampling_oracle<T: Scalar>(
    g: &CirculantGraph,
    t: &[usize],
    mode: Mode,
    samples: usize,
    seed: u64,
    tol: &Tolerance<T>,
) -> Result<Option<NonnegPolynomial<T>>> {
    let n = g.n();
    let t = validate_support(n, t, mode)?;
    if t.is_empty() {
        return Ok(None);
    }
    let vars = variables(n, &t, mode);
    let rows = vanishing_rows::<T>(g, &vars, mode);
    let basis = nullspace(&rows, vars.len(), T::lit(1e-10));
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = T::lit(SUPPORT_EPS);
    for _ in 0..samples {
        let mut y = vec![T::zero(); vars.len()];
        for b in &basis {
            let r = T::lit(rng.gen_range(-1.0..=1.0));
            for (acc, v) in y.iter_mut().zip(b) {
                *acc += r * *v;
            }
        }
        let mut c = coefficients(n, &vars, &y);
        let mut s: T = c.iter().copied().sum();
        if s < T::zero() {
            c.iter_mut().for_each(|v| *v = -*v);
            s = -s;
        }
        if !(s > T::epsilon()) {
            continue;
        }
        c.iter_mut().for_each(|v| *v /= s);
        if t.iter().any(|&i| !(c[i] >= eps)) {
            continue;
        }
        let p = NonnegPolynomial::new(c)?;
        if mode_condition(&p, g, mode, tol)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
