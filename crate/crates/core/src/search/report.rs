//! Parameter report: both searches plus every closed formula that applies,
//! cross-checked against each other.

use serde::Serialize;

use crate::certificate::Mode;
use crate::error::{Error, Result};
use crate::graph::{is_prime, CirculantGraph};
use crate::scalar::Scalar;

use super::{min_terms_search, SearchOptions, SearchResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KnownBounds {
    /// `p - |S|` for prime order.
    pub prime_formula: Option<usize>,
    /// `n - |S|` for consecutive circulants.
    pub consecutive_formula: Option<usize>,
    /// `n - Z(G)`, a lower bound on every minimum rank parameter.
    pub zero_forcing_lower_bound: Option<usize>,
    /// `n - |S|` over the reals, consecutive circulants of odd order.
    pub real_consecutive_formula: Option<usize>,
}

impl KnownBounds {
    pub fn of(g: &CirculantGraph) -> Self {
        let n = g.n();
        let formula = n - g.degree();
        let consecutive = g.is_consecutive().is_some();
        KnownBounds {
            prime_formula: is_prime(n).then_some(formula),
            consecutive_formula: consecutive.then_some(formula),
            zero_forcing_lower_bound: g.mr_lower_bound().ok(),
            real_consecutive_formula: (consecutive && n % 2 == 1).then_some(formula),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ParameterReport<T> {
    pub graph: CirculantGraph,
    pub mscr: usize,
    pub mscr_real: usize,
    /// Minimum weight, when the weight-mode cross-check ran.
    pub min_weight: Option<usize>,
    pub bounds: KnownBounds,
    pub certified_optimal: bool,
    pub complex: SearchResult<T>,
    pub balanced: SearchResult<T>,
}

pub struct ReportOptions<'a, T> {
    pub search: SearchOptions<'a, T>,
    /// Run the weight-mode search when `n` is at most this.
    pub weight_check_max_n: usize,
}

impl<T: Scalar> Default for ReportOptions<'_, T> {
    fn default() -> Self {
        ReportOptions {
            search: SearchOptions::default(),
            weight_check_max_n: 10,
        }
    }
}

/// Computes `mscr` and `mscrREAL` by search and checks them against every
/// applicable formula. Any disagreement is an [`Error::Inconsistent`].
pub fn parameter_report<T: Scalar>(g: &CirculantGraph, opts: &ReportOptions<'_, T>) -> Result<ParameterReport<T>> {
    let complex = min_terms_search(g, Mode::Complex, &opts.search)?;
    let balanced = min_terms_search(g, Mode::RealBalanced, &opts.search)?;
    let weight = if g.n() <= opts.weight_check_max_n {
        Some(min_terms_search(g, Mode::RealWeight, &opts.search)?)
    } else {
        None
    };
    let bounds = KnownBounds::of(g);
    let (mscr, mscr_real) = (complex.k, balanced.k);
    let fail = |what: String| Err(Error::Inconsistent(format!("{g}: {what}")));

    if mscr > mscr_real {
        return fail(format!("mscr = {mscr} exceeds mscrREAL = {mscr_real}"));
    }
    if let Some(w) = &weight {
        if w.k != mscr_real {
            return fail(format!("minimum weight {} differs from mscrREAL = {mscr_real}", w.k));
        }
    }
    for (name, formula, value) in [
        ("prime formula", bounds.prime_formula, mscr),
        ("consecutive formula", bounds.consecutive_formula, mscr),
        ("odd consecutive formula", bounds.real_consecutive_formula, mscr_real),
    ] {
        if let Some(f) = formula {
            if f != value {
                return fail(format!("{name} gives {f}, search gives {value}"));
            }
        }
    }
    if let Some(lb) = bounds.zero_forcing_lower_bound {
        if mscr < lb {
            return fail(format!("mscr = {mscr} is below the zero forcing bound {lb}"));
        }
    }
    let certified_optimal =
        complex.certified_optimal && balanced.certified_optimal && weight.as_ref().is_none_or(|w| w.certified_optimal);
    Ok(ParameterReport {
        graph: g.clone(),
        mscr,
        mscr_real,
        min_weight: weight.map(|w| w.k),
        bounds,
        certified_optimal,
        complex,
        balanced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reports() {
        let opts = ReportOptions::<f64>::default();
        let r = parameter_report(&"C(4,{1})".parse().unwrap(), &opts).unwrap();
        assert_eq!((r.mscr, r.mscr_real, r.min_weight), (2, 3, Some(3)));
        let r = parameter_report(&"C(5,{1})".parse().unwrap(), &opts).unwrap();
        assert_eq!((r.mscr, r.mscr_real, r.bounds.prime_formula), (3, 3, Some(3)));
        let r = parameter_report(&"C(6,{2,3})".parse().unwrap(), &opts).unwrap();
        assert_eq!((r.mscr, r.mscr_real), (4, 4));
        assert_eq!(r.bounds, KnownBounds::default());
    }
}
