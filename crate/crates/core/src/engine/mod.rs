//! Mozhan `r`-partitions and the club-moving process.
//!
//! Given a vertex `v` and a `t`-coloring of `G - v` with `t = Σ r_i`, the engine either
//! extends to a `t`-coloring of `G` or exhibits a clique of size at least `t + 1 - max r_i`.
//! Every step that a proof would settle by contradiction is carried out as an explicit
//! recoloring and verified; when none applies the run stops with a diagnosed violation.

mod build;
mod clubgroups;
mod process;
mod state;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CliqueCertificate, Coloring, Graph};
use crate::list::ListError;
use crate::oracle::OracleError;

pub use build::{build_partition, Built};
pub use clubgroups::{clubgroups, Clubgroup};
pub use process::{replay, run_engine, run_engine_with, Choice, ClaimResult, EngineOptions, EngineRun, EngineStats, StepResult};
pub use state::{ClaimContext, Club, ClubId, Move, PartitionState, SendEvent, Snapshot, StateCheck};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    List(#[from] ListError),
}

/// Clubhouse sizes `r_1..r_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RVector {
    pub parts: Vec<usize>,
}

impl RVector {
    pub fn new(parts: Vec<usize>) -> Result<Self, EngineError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(EngineError::Contract(format!(
                "r-vector needs at least one part and positive entries, got {parts:?}"
            )));
        }
        Ok(RVector { parts })
    }

    /// Writes `Δ - 1` as 4s followed by 3s: all 3s when `Δ ≡ 1`, one 4 when `Δ ≡ 2`,
    /// two 4s when `Δ ≡ 0 (mod 3)`.
    pub fn mod3(delta: usize) -> Result<Self, EngineError> {
        if delta < 7 {
            return Err(EngineError::Contract(format!(
                "3/4 r-vectors need Δ >= 7, got {delta}"
            )));
        }
        let fours = match delta % 3 {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        let threes = (delta - 1 - 4 * fours) / 3;
        let mut parts = vec![4; fours];
        parts.extend(std::iter::repeat_n(3, threes));
        RVector::new(parts)
    }

    /// Parses `3,3,4` (commas or whitespace).
    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let parts: Result<Vec<usize>, _> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect();
        RVector::new(parts.map_err(|_| EngineError::Contract(format!("bad r-vector `{text}`")))?)
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// Entries in `{3, 4}` with at most two 4s.
    pub fn is_theorem_grade(&self) -> bool {
        self.parts.iter().all(|&r| r == 3 || r == 4) && self.parts.iter().filter(|&&r| r == 4).count() <= 2
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&r| {
                let o = acc;
                acc += r;
                o
            })
            .collect()
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem1,
    Theorem2,
}

impl std::str::FromStr for Mode {
    type Err = EngineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem1" => Ok(Mode::Theorem1),
            "theorem2" => Ok(Mode::Theorem2),
            _ => Err(EngineError::Contract(format!("unknown mode `{s}`"))),
        }
    }
}

/// A vertex and a proper coloring of the graph with that vertex removed.
/// `coloring[vertex]` is ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: usize,
    pub coloring: Vec<usize>,
}

impl Witness {
    /// `vertex` together with an exact `colors`-coloring of the rest, if one exists.
    pub fn from_oracle(g: &Graph, vertex: usize, colors: usize) -> Result<Option<Witness>, EngineError> {
        if vertex >= g.n() {
            return Err(EngineError::Contract(format!("witness vertex {vertex} out of range")));
        }
        let limit = crate::config::Limits::current().chromatic;
        if g.n() > limit + 1 {
            return Err(OracleError::TooLarge {
                what: "witness",
                n: g.n(),
                limit,
            }
            .into());
        }
        let rest = g.without(&[vertex]);
        Ok(crate::oracle::find_coloring(&rest.graph, colors).map(|cs| {
            let mut coloring = vec![0; g.n()];
            for (i, &p) in rest.parent.iter().enumerate() {
                coloring[p] = cs[i];
            }
            Witness { vertex, coloring }
        }))
    }

    pub fn validate(&self, g: &Graph, colors: usize) -> Result<(), EngineError> {
        let n = g.n();
        if self.vertex >= n {
            return Err(EngineError::Contract(format!("witness vertex {} out of range", self.vertex)));
        }
        if self.coloring.len() != n {
            return Err(EngineError::Contract(format!(
                "witness coloring has {} entries for {n} vertices",
                self.coloring.len()
            )));
        }
        for (v, &c) in self.coloring.iter().enumerate() {
            if v != self.vertex && c >= colors {
                return Err(EngineError::Contract(format!("witness color {c} on vertex {v} exceeds {colors}")));
            }
        }
        for (u, v) in g.edges() {
            if u != self.vertex && v != self.vertex && self.coloring[u] == self.coloring[v] {
                return Err(EngineError::Contract(format!("witness coloring is improper on edge {u}-{v}")));
            }
        }
        Ok(())
    }
}

/// Which step of the argument failed to produce its coloring or edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaimId {
    /// The pivot has more than `r_i` neighbors in every part.
    Partition,
    /// Repair of the active component stalled (odd cycles with `r = 2`, or a broken potential).
    Repair,
    /// A member with too few neighbors in some clubhouse could not be placed there.
    LowDegree,
    /// Property (4) failed and the member could not be recolored into the clubhouse.
    Property4,
    C1,
    C2,
    C3i,
    C3ii,
    /// A club became active a fourth time.
    Activation,
    /// No unmoved member was left in the terminal active club.
    C4,
    Join4,
    Join3,
    C4New,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub claim: ClaimId,
    pub detail: String,
    pub snapshot: Snapshot,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Coloring(Coloring),
    Clique(CliqueCertificate),
    AssumptionViolation(Box<Violation>),
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Coloring(_) => "coloring",
            Outcome::Clique(c) if c.high_only => "high_clique",
            Outcome::Clique(_) => "clique",
            Outcome::AssumptionViolation(_) => "violation",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod3_vectors() {
        assert_eq!(RVector::mod3(13).unwrap().parts, vec![3, 3, 3, 3]);
        assert_eq!(RVector::mod3(14).unwrap().parts, vec![4, 3, 3, 3]);
        assert_eq!(RVector::mod3(15).unwrap().parts, vec![4, 4, 3, 3]);
        assert_eq!(RVector::mod3(7).unwrap().parts, vec![3, 3]);
        assert_eq!(RVector::mod3(8).unwrap().parts, vec![4, 3]);
        assert_eq!(RVector::mod3(9).unwrap().parts, vec![4, 4]);
        for d in 7..40 {
            let r = RVector::mod3(d).unwrap();
            assert_eq!(r.total(), d - 1);
            assert!(r.is_theorem_grade());
        }
        assert!(RVector::mod3(6).is_err());
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(RVector::parse("2,1, 1").unwrap().parts, vec![2, 1, 1]);
        assert!(RVector::parse("2,0").is_err());
        assert!(RVector::parse("").is_err());
        assert!(RVector::parse("a").is_err());
        assert!(!RVector::parse("2,2").unwrap().is_theorem_grade());
        assert_eq!(RVector::parse("3,4,3").unwrap().offsets(), vec![0, 3, 7]);
    }
}
