//! Circulant graphs `C(n, S)` and the combinatorial bounds available for
//! consecutive circulants.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Negation-closed set of nonzero residues mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: usize,
    residues: BTreeSet<usize>,
}

impl ConnectionSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn residues(&self) -> &BTreeSet<usize> {
        &self.residues
    }

    pub fn contains(&self, r: usize) -> bool {
        self.residues.contains(&(r % self.n))
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// The circulant graph on vertices `0..n` with `i ~ j` iff `(i - j) mod n ∈ S`.
/// Equality and hashing only look at `(n, S)`.
#[derive(Debug, Clone)]
pub struct CirculantGraph {
    connection: ConnectionSet,
    /// Residues that were added to complete negation closure.
    completed: Vec<usize>,
}

impl PartialEq for CirculantGraph {
    fn eq(&self, other: &Self) -> bool {
        self.connection == other.connection
    }
}

impl Eq for CirculantGraph {}

impl std::hash::Hash for CirculantGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.connection.hash(state)
    }
}

impl CirculantGraph {
    /// Builds `C(n, S)` from arbitrary integers, reducing mod `n` and
    /// completing the set under `r ↦ n - r`.
    pub fn new(n: usize, raw: &[i64]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder);
        }
        let n_i = n as i64;
        let mut given = BTreeSet::new();
        for &r in raw {
            let red = r.rem_euclid(n_i);
            if red == 0 {
                return Err(Error::InvalidLoop(r));
            }
            given.insert(red as usize);
        }
        let mut residues = given.clone();
        let mut completed = Vec::new();
        for &r in &given {
            let neg = n - r;
            if residues.insert(neg) {
                completed.push(neg);
            }
        }
        completed.sort_unstable();
        let g = CirculantGraph {
            connection: ConnectionSet { n, residues },
            completed,
        };
        debug_assert!(g.is_closed());
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let raw: Vec<i64> = (1..n as i64).collect();
        Self::new(n, &raw)
    }

    /// `C(n, {±1, …, ±k})`.
    pub fn consecutive(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k > n / 2 {
            return Err(Error::OutOfRange(format!(
                "consecutive circulant needs 1 <= k <= n/2, got n = {n}, k = {k}"
            )));
        }
        let raw: Vec<i64> = (1..=k as i64).collect();
        Self::new(n, &raw)
    }

    pub fn n(&self) -> usize {
        self.connection.n
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn residues(&self) -> &BTreeSet<usize> {
        &self.connection.residues
    }

    /// Residues added by negation closure during construction.
    pub fn completed_residues(&self) -> &[usize] {
        &self.completed
    }

    /// Regular degree, `|S|`.
    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        i % n != j % n && self.connection.contains((i + n - j % n) % n)
    }

    pub fn is_complete(&self) -> bool {
        self.degree() + 1 == self.n()
    }

    /// Nonzero residues outside `S`, i.e. the roots a certificate must vanish on.
    pub fn non_residues(&self) -> Vec<usize> {
        (1..self.n()).filter(|r| !self.connection.contains(*r)).collect()
    }

    fn is_closed(&self) -> bool {
        let n = self.n();
        self.residues()
            .iter()
            .all(|&r| r > 0 && r < n && self.residues().contains(&(n - r)))
    }

    /// Returns `k` when `S = {±1, …, ±k}`. The edgeless graph is not consecutive.
    pub fn is_consecutive(&self) -> Option<usize> {
        let n = self.n();
        if self.connection.is_empty() {
            return None;
        }
        let k = (1..n).take_while(|r| self.connection.contains(*r)).count();
        let k = k.min(n / 2);
        let expected: BTreeSet<usize> = (1..=k).flat_map(|r| [r, n - r]).collect();
        (expected == *self.residues()).then_some(k)
    }

    /// Zero forcing number of a consecutive circulant, which equals `|S|`.
    pub fn zero_forcing_consecutive(&self) -> Result<usize> {
        self.is_consecutive()
            .map(|_| self.degree())
            .ok_or_else(|| Error::UnsupportedFamily(format!("{self} is not a consecutive circulant")))
    }

    /// Lower bound `n - Z(G)` on the minimum rank, consecutive circulants only.
    pub fn mr_lower_bound(&self) -> Result<usize> {
        Ok(self.n() - self.zero_forcing_consecutive()?)
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// All negation-closed connection sets on `n` vertices, in a fixed order.
pub fn all_circulants(n: usize) -> Vec<CirculantGraph> {
    let reps: Vec<usize> = (1..=n / 2).collect();
    (0u64..1 << reps.len())
        .map(|mask| {
            let raw: Vec<i64> = reps
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &r)| r as i64)
                .collect();
            CirculantGraph::new(n, &raw).expect("residues in 1..n")
        })
        .collect()
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues().iter().map(|r| r.to_string()).collect();
        write!(f, "C({},{{{}}})", self.n(), parts.join(","))
    }
}

impl FromStr for CirculantGraph {
    type Err = Error;

    /// Parses `C(n,{r1,r2,...})`; residues may be negative or unreduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected C(n,{{r1,r2,...}}), got {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("C(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (n_str, set) = body.split_once(',').ok_or_else(bad)?;
        let n: usize = n_str.parse().map_err(|_| bad())?;
        let inner = set
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        let raw = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|r| r.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        CirculantGraph::new(n, &raw)
    }
}

impl Serialize for CirculantGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CirculantGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
