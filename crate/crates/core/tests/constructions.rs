mod common;

use circrank::graph::all_circulants;
use circrank::polycert::{is_balanced, ncv};
use circrank::{
    caratheodory_polynomial, check_condition_c, consecutive_certificate, consecutive_polynomial, prime_certificate,
    rank_spectrum_consecutive, real_consecutive_certificate, shifted_real_polynomial, verify_certificate,
    CirculantGraph, RootSet, Tol,
};
use common::{convolve, poly_at, primes_up_to};

/// `∏_{j=k+1}^{n-k-1} (z - ω^j)` multiplied out over the complex numbers.
fn complex_product(n: usize, k: usize) -> Vec<f64> {
    let mut acc = vec![num_complex::Complex64::new(1.0, 0.0)];
    for j in k + 1..n - k {
        let root = common::omega(n, j);
        let mut next = vec![num_complex::Complex64::new(0.0, 0.0); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * root;
        }
        acc = next;
    }
    acc.iter().map(|z| z.re).collect()
}

#[test]
fn consecutive_products_are_positive_and_palindromic() {
    for n in 3..=40 {
        for k in 1..n / 2 {
            let p = consecutive_polynomial::<f64>(n, k).unwrap();
            let deg = n - 2 * k - 1;
            let c = p.coeffs();
            assert_eq!(p.term_count(), n - 2 * k, "n = {n}, k = {k}");
            assert!(c[..=deg].iter().all(|&v| v > 1e-10), "n = {n}, k = {k}");
            for i in 0..=deg {
                assert!((c[i] - c[deg - i]).abs() <= 1e-9 * c[i].max(1.0));
            }
            if n <= 16 {
                for (got, want) in c.iter().zip(complex_product(n, k)) {
                    assert!((got - want).abs() < 1e-9 * want.abs().max(1.0));
                }
            }
        }
    }
}

#[test]
fn shifted_products_are_balanced() {
    let tol = Tol::default();
    for n in (3..=39).step_by(2) {
        for k in 1..n / 2 {
            let q = shifted_real_polynomial::<f64>(n, k).unwrap();
            assert!(is_balanced(&ncv(&q), &tol), "n = {n}, k = {k}");
            assert_eq!(q.term_count(), n - 2 * k);
            let g = CirculantGraph::consecutive(n, k).unwrap();
            assert!(check_condition_c(&q, &g, &tol).unwrap().pass, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn seven_two_shift_vanishes_only_at_three() {
    let q = shifted_real_polynomial::<f64>(7, 2).unwrap();
    assert_eq!(q.term_count(), 3);
    let zeros: Vec<usize> = (1..7).filter(|&j| poly_at(q.coeffs(), j).norm() < 1e-9 * q.total()).collect();
    assert_eq!(zeros, vec![3, 4]);
}

#[test]
fn hexagon_reduction_reports_extra_zeros_honestly() {
    let tol = Tol::default();
    let w = RootSet::new(6, [1, 5]).unwrap();
    let out = caratheodory_polynomial::<f64>(&w, &tol).unwrap();
    assert!(out.polynomial.term_count() <= 3);
    let zeros: Vec<usize> = (1..6)
        .filter(|j| ![1, 5].contains(j))
        .filter(|&j| poly_at(out.polynomial.coeffs(), j).norm() <= 1e-9 * out.polynomial.total())
        .collect();
    assert_eq!(out.extra_zeros, zeros);
}

#[test]
fn prime_certificates_have_rank_p_minus_degree() {
    let tol = Tol::default();
    // every connection set; p = 31 alone has 2^15 of them
    for p in primes_up_to(31) {
        for g in all_circulants(p) {
            let b = prime_certificate::<f64>(&g, 0, &tol).unwrap();
            assert_eq!(b.claimed_rank, p - g.degree(), "{g}");
            let r = verify_certificate(&b, &tol).unwrap();
            assert!(r.verdict, "{g}: {:?}", r.first_failure());
        }
    }
}

#[test]
fn rank_ladders_gain_one_term_per_factor() {
    let tol = Tol::default();
    for n in 3..=14 {
        for k in 1..n / 2 {
            let g = CirculantGraph::consecutive(n, k).unwrap();
            let ladder = rank_spectrum_consecutive::<f64>(&g).unwrap();
            assert_eq!(ladder.len(), 2 * k + 1);
            let mut oracle = consecutive_polynomial::<f64>(n, k).unwrap().coeffs()[..n - 2 * k].to_vec();
            for (m, b) in ladder.iter().enumerate() {
                if m > 0 {
                    oracle = convolve(&oracle, &[2.0, 1.0]);
                }
                assert_eq!(b.claimed_rank, n - 2 * k + m);
                assert_eq!(oracle.len(), b.claimed_rank);
                for (got, want) in b.polynomial.coeffs.iter().zip(&oracle) {
                    assert!((got - want).abs() < 1e-9 * want.max(1.0));
                }
                assert!(verify_certificate(b, &tol).unwrap().verdict, "{g} power {m}");
            }
        }
    }
}

#[test]
fn consecutive_certificates_verify() {
    let tol = Tol::default();
    for n in 3..=20 {
        for k in 1..=n / 2 {
            let g = CirculantGraph::consecutive(n, k).unwrap();
            let b = consecutive_certificate::<f64>(&g).unwrap();
            assert_eq!(b.claimed_rank, n - g.degree());
            assert!(verify_certificate(&b, &tol).unwrap().verdict, "{g}");
            if n % 2 == 1 {
                let r = real_consecutive_certificate::<f64>(&g).unwrap();
                assert_eq!(r.claimed_rank, n - g.degree());
                assert!(verify_certificate(&r, &tol).unwrap().verdict, "{g} real");
            }
        }
    }
}
