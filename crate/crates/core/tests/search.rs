mod common;

use circrank::graph::all_circulants;
use circrank::search::mode_condition;
use circrank::{
    min_terms_search, sampling_oracle, support_feasibility, verify_certificate, CirculantGraph, Mode, SearchOptions,
    SupportStatus, Tol,
};

fn opts(seed: u64) -> SearchOptions<'static, f64> {
    SearchOptions {
        seed,
        ..Default::default()
    }
}

#[test]
fn real_modes_never_beat_complex() {
    for n in 2..=9 {
        for g in all_circulants(n) {
            let c = min_terms_search(&g, Mode::Complex, &opts(0)).unwrap();
            let b = min_terms_search(&g, Mode::RealBalanced, &opts(0)).unwrap();
            let w = min_terms_search(&g, Mode::RealWeight, &opts(0)).unwrap();
            assert!(c.k <= b.k && c.k <= w.k, "{g}: {} {} {}", c.k, b.k, w.k);
        }
    }
}

#[test]
fn witnesses_verify_at_reported_rank() {
    let tol = Tol::default();
    for n in 3..=8 {
        for g in all_circulants(n) {
            for mode in [Mode::Complex, Mode::RealBalanced, Mode::RealWeight] {
                let r = min_terms_search(&g, mode, &opts(0)).unwrap();
                assert!(r.certified_optimal, "{g} {mode:?}");
                assert_eq!(r.certificate.claimed_rank, r.k);
                let v = verify_certificate(&r.certificate, &tol).unwrap();
                assert!(v.verdict, "{g} {mode:?}: {:?}", v.first_failure());
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_threads() {
    let g: CirculantGraph = "C(11,{1,3,4})".parse().unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| min_terms_search(&g, Mode::Complex, &opts(7)).unwrap());
    let b = min_terms_search(&g, Mode::Complex, &opts(7)).unwrap();
    assert_eq!(a.k, b.k);
    assert_eq!(a.certificate.polynomial.coeffs, b.certificate.polynomial.coeffs);
    assert_eq!(a.supports_examined, b.supports_examined);
}

#[test]
fn rank_does_not_depend_on_seed() {
    let g: CirculantGraph = "C(9,{2,3})".parse().unwrap();
    let base = min_terms_search(&g, Mode::Complex, &opts(0)).unwrap();
    for seed in 1..4 {
        assert_eq!(min_terms_search(&g, Mode::Complex, &opts(seed)).unwrap().k, base.k);
    }
}

#[test]
fn small_examples() {
    let k = |s: &str, mode| min_terms_search(&s.parse().unwrap(), mode, &opts(0)).unwrap().k;
    assert_eq!(k("C(4,{1})", Mode::Complex), 2);
    assert_eq!(k("C(4,{1})", Mode::RealBalanced), 3);
    assert_eq!(k("C(5,{1})", Mode::Complex), 3);
    assert_eq!(k("C(6,{2,3})", Mode::Complex), 4);
    assert_eq!(k("C(6,{2,3})", Mode::RealBalanced), 4);
    // edgeless graph: only the identity works
    assert_eq!(k("C(5,{})", Mode::Complex), 5);
}

#[test]
fn cap_is_enforced() {
    let g = CirculantGraph::consecutive(25, 2).unwrap();
    assert!(min_terms_search(&g, Mode::Complex, &opts(0)).is_err());
}

#[test]
fn feasibility_classifies_supports() {
    let tol = Tol::default();
    let g: CirculantGraph = "C(4,{1})".parse().unwrap();
    // 1 + z vanishes at z = -1 only, which is the non-edge 2
    let v = support_feasibility(&g, &[0, 1], Mode::Complex, 0, &tol).unwrap();
    assert_eq!(v.status, SupportStatus::Achieves);
    let w = v.witness.unwrap();
    assert!(mode_condition(&w, &g, Mode::Complex, &tol).unwrap());
    // a single term never vanishes anywhere
    let v = support_feasibility(&g, &[0], Mode::Complex, 0, &tol).unwrap();
    assert_eq!(v.status, SupportStatus::Infeasible);
    // 1 + z^2 vanishes at edges 1 and 3 as well
    let v = support_feasibility(&g, &[0, 2], Mode::Complex, 0, &tol).unwrap();
    assert!(matches!(v.status, SupportStatus::Infeasible | SupportStatus::ForcedVanishing { .. }));
}

#[test]
fn sampling_agrees_on_small_graphs() {
    let tol = Tol::default();
    let g: CirculantGraph = "C(6,{2,3})".parse().unwrap();
    for t in [vec![0, 1, 2, 3], vec![0, 1, 3, 4], vec![0, 2, 4]] {
        let sampled = sampling_oracle(&g, &t, Mode::Complex, 200, 1, &tol).unwrap();
        let lp = support_feasibility(&g, &t, Mode::Complex, 0, &tol).unwrap();
        if let Some(p) = sampled {
            assert!(mode_condition(&p, &g, Mode::Complex, &tol).unwrap());
            assert_eq!(lp.status, SupportStatus::Achieves, "{t:?}");
        }
    }
}
