//! Worked examples with known answers, runnable as a smoke test.

use circrank::verify::MatrixClaims;
use circrank::{
    consecutive_certificate, min_terms_search, prime_certificate, real_consecutive_certificate, verify_certificate,
    verify_matrix_claim, Bundle, Circulant, CirculantGraph, Construction, Error, Hermitian, Mode, RawPolynomial,
    SearchOptions, Tol,
};

pub struct Outcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = fn(u64) -> circrank::Result<(bool, String)>;

fn graph(s: &str) -> circrank::Result<CirculantGraph> {
    s.parse()
}

fn search(g: &CirculantGraph, mode: Mode, seed: u64) -> circrank::Result<usize> {
    let opts = SearchOptions::<f64> {
        seed,
        ..Default::default()
    };
    Ok(min_terms_search(g, mode, &opts)?.k)
}

fn verified_rank(b: &Bundle) -> circrank::Result<Option<usize>> {
    let r = verify_certificate(b, &Tol::default())?;
    Ok(r.verdict.then_some(b.claimed_rank))
}

fn square(seed: u64) -> circrank::Result<(bool, String)> {
    let g = graph("C(4,{1})")?;
    let (c, r) = (search(&g, Mode::Complex, seed)?, search(&g, Mode::RealBalanced, seed)?);
    let built = verified_rank(&consecutive_certificate(&g)?)?;
    let real_refused = matches!(real_consecutive_certificate::<f64>(&g), Err(Error::ParityUnsupported(4)));
    Ok((
        c == 2 && r == 3 && built == Some(2) && real_refused,
        format!("mscr {c}, mscrREAL {r}, construction {built:?}"),
    ))
}

fn pentagon(seed: u64) -> circrank::Result<(bool, String)> {
    let g = graph("C(5,{1})")?;
    let (c, r) = (search(&g, Mode::Complex, seed)?, search(&g, Mode::RealBalanced, seed)?);
    let real = real_consecutive_certificate::<f64>(&g)?;
    let want = [2.0 * (std::f64::consts::PI / 5.0).cos(), 1.0, 0.0, 0.0, 1.0];
    let coeffs_ok = real.polynomial.coeffs.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12);
    let prime = verified_rank(&prime_certificate(&g, seed, &Tol::default())?)?;
    Ok((
        c == 3 && r == 3 && coeffs_ok && verified_rank(&real)? == Some(3) && prime == Some(3),
        format!("mscr {c}, mscrREAL {r}, prime construction {prime:?}"),
    ))
}

fn hexagon_complement(seed: u64) -> circrank::Result<(bool, String)> {
    let g = graph("C(6,{2,3})")?;
    let (c, r) = (search(&g, Mode::Complex, seed)?, search(&g, Mode::RealBalanced, seed)?);
    let tol = Tol::default();
    let m = Hermitian::from_circulant(&Circulant::from_real(&[1.0, 0.0, -2.0, 3.0, -2.0, 0.0])?, 1e-12)?;
    let shape = MatrixClaims {
        circulant: true,
        graph: true,
        rank: Some(3),
        psd: false,
    };
    let psd = MatrixClaims {
        psd: true,
        ..Default::default()
    };
    let shape_ok = verify_matrix_claim(&m, &g, shape, &tol)?.verdict;
    let not_psd = !verify_matrix_claim(&m, &g, psd, &tol)?.verdict;
    let bogus = Bundle {
        graph: g.clone(),
        mode: Mode::Complex,
        polynomial: RawPolynomial {
            n: 6,
            coeffs: vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
        },
        claimed_rank: 3,
        construction: Construction::new("hand"),
        seed: None,
        lower_bound: None,
        matrix: None,
    };
    let rejected = verify_certificate(&bogus, &tol)?
        .first_failure()
        .is_some_and(|f| f.name == "condition");
    Ok((
        c == 4 && r == 4 && shape_ok && not_psd && rejected,
        format!("mscr {c}, mscrREAL {r}, rank-3 matrix circulant {shape_ok} and indefinite {not_psd}"),
    ))
}

fn decagon(_seed: u64) -> circrank::Result<(bool, String)> {
    let g = graph("C(10,{1,2,3})")?;
    let b = consecutive_certificate(&g)?;
    let rank = verified_rank(&b)?;
    Ok((
        rank == Some(4) && b.lower_bound == Some(4),
        format!("construction {rank:?}, lower bound {:?}", b.lower_bound),
    ))
}

pub fn run(seed: u64) -> Vec<Outcome> {
    let suite: [(&'static str, Check); 4] = [
        ("C(4,{1,3})", square),
        ("C(5,{1,4})", pentagon),
        ("C(6,{2,3,4})", hexagon_complement),
        ("C(10,{1,2,3,7,8,9})", decagon),
    ];
    suite
        .into_iter()
        .map(|(name, f)| match f(seed) {
            Ok((pass, detail)) => Outcome { name, pass, detail },
            Err(e) => Outcome {
                name,
                pass: false,
                detail: e.to_string(),
            },
        })
        .collect()
}
