use anyhow::Result;
use circrank::graph::{all_circulants, is_prime};
use circrank::{
    consecutive_certificate, parameter_report, prime_certificate, real_consecutive_certificate, verify_certificate,
    Bundle, CirculantGraph, Error, ReportOptions, Tol,
};
use serde::Serialize;

use crate::Family;

#[derive(Debug, Serialize)]
pub struct Row {
    graph: CirculantGraph,
    n: usize,
    degree: usize,
    formula: usize,
    mscr: usize,
    mscr_real: usize,
    min_weight: Option<usize>,
    constructed_rank: Option<usize>,
    real_constructed_rank: Option<usize>,
    certified_optimal: bool,
}

fn checked(b: Bundle, tol: &Tol) -> Result<usize> {
    let report = verify_certificate(&b, tol)?;
    if !report.verdict {
        let why = report.first_failure().map(|c| c.name.clone()).unwrap_or_default();
        return Err(Error::Inconsistent(format!("constructed certificate for {} fails {why}", b.graph)).into());
    }
    Ok(b.claimed_rank)
}

fn row(g: CirculantGraph, family: Family, seed: u64) -> Result<Row> {
    let tol = Tol::default();
    let mut opts = ReportOptions::<f64>::default();
    opts.search.seed = seed;
    let report = parameter_report(&g, &opts)?;
    let (constructed, real) = match family {
        Family::Consecutive => {
            let c = checked(consecutive_certificate(&g)?, &tol)?;
            let r = if g.n() % 2 == 1 {
                Some(checked(real_consecutive_certificate(&g)?, &tol)?)
            } else {
                None
            };
            (c, r)
        }
        Family::Prime => (checked(prime_certificate(&g, seed, &tol)?, &tol)?, None),
    };
    if constructed != report.mscr {
        return Err(Error::Inconsistent(format!("{g}: construction gives {constructed}, search gives {}", report.mscr)).into());
    }
    if let Some(r) = real.filter(|&r| r != report.mscr_real) {
        return Err(Error::Inconsistent(format!("{g}: real construction gives {r}, search gives {}", report.mscr_real)).into());
    }
    Ok(Row {
        n: g.n(),
        degree: g.degree(),
        formula: g.n() - g.degree(),
        mscr: report.mscr,
        mscr_real: report.mscr_real,
        min_weight: report.min_weight,
        constructed_rank: Some(constructed),
        real_constructed_rank: real,
        certified_optimal: report.certified_optimal,
        graph: g,
    })
}

pub fn rows(family: Family, limit: usize, seed: u64) -> Result<Vec<Row>> {
    let graphs: Vec<CirculantGraph> = match family {
        Family::Consecutive => (3..=limit)
            .flat_map(|n| (1..=n / 2).map(move |k| CirculantGraph::consecutive(n, k)))
            .collect::<circrank::Result<_>>()?,
        Family::Prime => (3..=limit).filter(|&p| is_prime(p)).flat_map(all_circulants).collect(),
    };
    graphs.into_iter().map(|g| row(g, family, seed)).collect()
}

pub fn render(rows: &[Row]) -> Result<String> {
    let header = ["graph", "n-|S|", "mscr", "mscrREAL", "weight", "built", "built(R)", "certified"];
    let cell = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let body: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.graph.to_string(),
                r.formula.to_string(),
                r.mscr.to_string(),
                r.mscr_real.to_string(),
                cell(r.min_weight),
                cell(r.constructed_rank),
                cell(r.real_constructed_rank),
                r.certified_optimal.to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for line in &body {
        for (w, c) in widths.iter_mut().zip(line) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut push = |cells: Vec<&str>| {
        let line: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    push(header.to_vec());
    for line in &body {
        push(line.iter().map(String::as_str).collect());
    }
    Ok(out)
}
