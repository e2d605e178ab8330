mod common;

use common::suites;

#[test]
fn fourier_is_unitary_and_diagonalizes_circulants() {
    suites::fourier(1e-9).unwrap();
}

#[test]
fn u_orbit_gram_spectral_identity() {
    suites::u_spectral(1e-8).unwrap();
}

#[test]
fn a_orbit_gram_spectral_identity() {
    suites::a_spectral(1e-8).unwrap();
}

#[test]
fn rank_equals_support_and_weight() {
    suites::rank_support_weight().unwrap();
}

#[test]
fn real_part_and_balanced_identities() {
    suites::real_part_and_balanced(1e-8).unwrap();
}

#[test]
fn caratheodory_on_random_root_sets() {
    suites::caratheodory(1e-8).unwrap();
}
