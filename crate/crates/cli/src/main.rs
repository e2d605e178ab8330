//! circrank: construct, search and verify minimum semidefinite circulant
//! rank certificates for circulant graphs.

mod fixtures;
mod table;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use circrank::graph::is_prime;
use circrank::search::{KnownBounds, Progress};
use circrank::{
    caratheodory_certificate, consecutive_certificate, min_terms_search, prime_certificate, rank_spectrum_consecutive,
    real_consecutive_certificate, verify_certificate, Bundle, CirculantGraph, Error, Mode, SearchOptions, Tol,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "circrank",
    version,
    about = "Minimum semidefinite circulant rank: certificates, search and verification",
    after_help = "EXAMPLES:\n\
                  \n  circrank info \"C(6,{2,3})\"\
                  \n  circrank construct --method real-consecutive \"C(5,{1,4})\"\
                  \n  circrank search --mode balanced \"C(4,{1,3})\"\
                  \n  circrank verify cert.json\
                  \n  circrank table --family prime --p-max 13 --format text"
)]
struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, family membership and known bounds of a circulant graph
    Info { graph: String },
    /// Build an explicit certificate
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        graph: String,
        /// Write the JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the minimum number of terms (or weight) by exhaustive search
    Search {
        #[arg(long, value_enum, default_value_t = SearchMode::Complex)]
        mode: SearchMode,
        graph: String,
        /// Largest order searched
        #[arg(long, default_value_t = 20)]
        cap: usize,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Report progress on stderr
        #[arg(long)]
        progress: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file (a bundle or a list of bundles; `-` for stdin)
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol_zero: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol_rank: f64,
    },
    /// Parameter tables with formula and search cross-checks
    Table {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        p_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the built-in worked examples and print a summary
    Fixtures,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Consecutive,
    RealConsecutive,
    Caratheodory,
    Prime,
    Spectrum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Complex,
    Balanced,
    Weight,
}

impl From<SearchMode> for Mode {
    fn from(m: SearchMode) -> Mode {
        match m {
            SearchMode::Complex => Mode::Complex,
            SearchMode::Balanced => Mode::RealBalanced,
            SearchMode::Weight => Mode::RealWeight,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Family {
    Consecutive,
    Prime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Json,
    Text,
}

/// Error that already knows its exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => EXIT_CAP,
        Some(Error::Inconsistent(_) | Error::ConstructionFailed(_)) => EXIT_INCONSISTENT,
        Some(_) => EXIT_USAGE,
        None => EXIT_USAGE,
    }
}

fn parse_graph(s: &str) -> Result<CirculantGraph> {
    s.parse::<CirculantGraph>()
        .map_err(|e| anyhow::Error::new(Exit(EXIT_USAGE, format!("bad graph {s:?}: {e}"))))
}

fn emit<S: Serialize>(value: &S, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => print_out(&(text + "\n"))?,
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn print_out(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn set_jobs(jobs: Option<usize>) -> Result<()> {
    if let Some(j) = jobs {
        if j == 0 {
            bail!(Exit(EXIT_USAGE, "--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Info {
    graph: CirculantGraph,
    n: usize,
    degree: usize,
    residues: Vec<usize>,
    completed_residues: Vec<usize>,
    consecutive: Option<usize>,
    prime: bool,
    complete: bool,
    bounds: KnownBounds,
}

fn info(g: CirculantGraph) -> Info {
    Info {
        n: g.n(),
        degree: g.degree(),
        residues: g.residues().iter().copied().collect(),
        completed_residues: g.completed_residues().to_vec(),
        consecutive: g.is_consecutive(),
        prime: is_prime(g.n()),
        complete: g.is_complete(),
        bounds: KnownBounds::of(&g),
        graph: g,
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| anyhow::Error::new(Exit(EXIT_USAGE, format!("{}: {e}", path.display()))))
}

fn verify(file: &Path, tol: Tol) -> Result<u8> {
    let text = read_input(file)?;
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("not a certificate: {e}");
            return Ok(EXIT_VERIFY);
        }
    };
    let items = match value {
        serde_json::Value::Array(items) => items,
        single => vec![single],
    };
    let mut reports = Vec::new();
    for item in items {
        match serde_json::from_value::<Bundle>(item) {
            Ok(b) => reports.push(serde_json::to_value(verify_certificate(&b, &tol)?)?),
            Err(e) => {
                eprintln!("not a certificate: {e}");
                return Ok(EXIT_VERIFY);
            }
        }
    }
    let pass = reports.iter().all(|r| r["verdict"] == serde_json::Value::Bool(true));
    if reports.len() == 1 {
        emit(&reports[0], None)?;
    } else {
        emit(&reports, None)?;
    }
    Ok(if pass { 0 } else { EXIT_VERIFY })
}

fn run(cli: Cli) -> Result<u8> {
    let tol = Tol::default();
    match cli.command {
        Command::Info { graph } => emit(&info(parse_graph(&graph)?), None)?,
        Command::Construct { method, graph, out } => {
            let g = parse_graph(&graph)?;
            let out = out.as_deref();
            match method {
                Method::Consecutive => emit(&consecutive_certificate::<f64>(&g)?, out)?,
                Method::RealConsecutive => emit(&real_consecutive_certificate::<f64>(&g)?, out)?,
                Method::Caratheodory => emit(&caratheodory_certificate::<f64>(&g, cli.seed, &tol)?, out)?,
                Method::Prime => emit(&prime_certificate::<f64>(&g, cli.seed, &tol)?, out)?,
                Method::Spectrum => emit(&rank_spectrum_consecutive::<f64>(&g)?, out)?,
            }
        }
        Command::Search {
            mode,
            graph,
            cap,
            jobs,
            progress,
            out,
        } => {
            let g = parse_graph(&graph)?;
            set_jobs(jobs)?;
            let report = |p: Progress| eprintln!("level {}: {}/{} supports", p.level, p.examined, p.level_size);
            let opts = SearchOptions {
                cap,
                seed: cli.seed,
                tol,
                progress: progress.then_some(&report as &(dyn Fn(Progress) + Sync)),
            };
            let result = min_terms_search(&g, mode.into(), &opts)?;
            emit(&result, out.as_deref())?;
        }
        Command::Verify {
            file,
            tol_zero,
            tol_rank,
        } => {
            let tol = Tol::new(tol_zero, tol_rank).map_err(|e| Exit(EXIT_USAGE, e.to_string()))?;
            return verify(&file, tol);
        }
        Command::Table {
            family,
            n_max,
            p_max,
            format,
            jobs,
        } => {
            set_jobs(jobs)?;
            let limit = match (family, n_max, p_max) {
                (Family::Consecutive, Some(n), None) | (Family::Prime, None, Some(n)) => n,
                (Family::Consecutive, _, _) => bail!(Exit(EXIT_USAGE, "--family consecutive takes --n-max".into())),
                (Family::Prime, _, _) => bail!(Exit(EXIT_USAGE, "--family prime takes --p-max".into())),
            };
            let rows = table::rows(family, limit, cli.seed)?;
            match format {
                Format::Json => emit(&rows, None)?,
                Format::Text => print_out(&table::render(&rows)?)?,
            }
        }
        Command::Fixtures => {
            let results = fixtures::run(cli.seed);
            let mut text = String::new();
            for r in &results {
                text += &format!("{} {}: {}\n", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            text += &format!("{} passed, {failed} failed\n", results.len() - failed);
            print_out(&text)?;
            return Ok(if failed == 0 { 0 } else { EXIT_VERIFY });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
