//! Machine-checkable JSON certificates tied to the input graph by a content hash.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dimacs::to_dimacs;
use crate::engine::{replay, ClaimId, Mode, Outcome, Snapshot};
use crate::graph::{verify_clique, verify_coloring, CliqueCertificate, Coloring, Graph};
use crate::reduction::Route;

/// SHA-256 of the canonical DIMACS serialization, lowercase hex.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_dimacs(g).as_bytes()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r_vector: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub route: Option<Route>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pivot: Option<usize>,
    /// Clique size the run promised for this input.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    /// `colors[v]` is the color of vertex `v`.
    Coloring { palette: usize, colors: Vec<usize> },
    Clique { vertices: Vec<usize> },
    /// A clique of degree-`Δ` vertices.
    HighClique { vertices: Vec<usize> },
    Refusal { reason: String },
    Violation { claim: ClaimId, detail: String, snapshot: Box<Snapshot> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph_hash: String,
    pub engine_config: EngineConfig,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate is for graph {certified}, input hashes to {actual}")]
    HashMismatch { certified: String, actual: String },
    #[error("certificate does not verify: {0}")]
    Invalid(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

impl Certificate {
    pub fn new(g: &Graph, engine_config: EngineConfig, payload: Payload) -> Self {
        Certificate {
            graph_hash: graph_hash(g),
            engine_config,
            payload,
        }
    }

    /// Certificate for an outcome on `g`. Colorings must be complete.
    pub fn from_outcome(g: &Graph, outcome: &Outcome, config: EngineConfig) -> Self {
        let payload = match outcome {
            Outcome::Coloring(c) => Payload::Coloring {
                palette: c.palette_size,
                colors: c.colors.iter().map(|x| x.expect("complete coloring")).collect(),
            },
            Outcome::Clique(c) if c.high_only => Payload::HighClique {
                vertices: c.vertices.clone(),
            },
            Outcome::Clique(c) => Payload::Clique {
                vertices: c.vertices.clone(),
            },
            Outcome::AssumptionViolation(v) => Payload::Violation {
                claim: v.claim,
                detail: v.detail.clone(),
                snapshot: Box::new(v.snapshot.clone()),
            },
        };
        Certificate::new(g, config, payload)
    }

    pub fn refusal(g: &Graph, reason: String, config: EngineConfig) -> Self {
        Certificate::new(g, config, Payload::Refusal { reason })
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Coloring { .. } => "coloring",
            Payload::Clique { .. } => "clique",
            Payload::HighClique { .. } => "high_clique",
            Payload::Refusal { .. } => "refusal",
            Payload::Violation { .. } => "violation",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    /// Checks the hash, then the payload against `g`. A violation verifies when its
    /// snapshot replays to the same claim.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let actual = graph_hash(g);
        if actual != self.graph_hash {
            return Err(CertificateError::HashMismatch {
                certified: self.graph_hash.clone(),
                actual,
            });
        }
        let invalid = |m: String| Err(CertificateError::Invalid(m));
        match &self.payload {
            Payload::Coloring { palette, colors } => {
                if colors.len() != g.n() {
                    return invalid(format!("{} colors for {} vertices", colors.len(), g.n()));
                }
                let c = Coloring::from_complete(colors.clone(), *palette);
                match verify_coloring(g, &c, true) {
                    Ok(true) => Ok(()),
                    Ok(false) => invalid("coloring is improper or leaves the palette".into()),
                    Err(e) => invalid(e.to_string()),
                }
            }
            Payload::Clique { vertices } | Payload::HighClique { vertices } => {
                let high = matches!(self.payload, Payload::HighClique { .. });
                match verify_clique(g, &CliqueCertificate::new(vertices.clone(), high)) {
                    Ok(true) => Ok(()),
                    Ok(false) => invalid(format!("{vertices:?} is not a clique{}", if high { " of high vertices" } else { "" })),
                    Err(e) => invalid(e.to_string()),
                }
            }
            Payload::Refusal { .. } => Ok(()),
            Payload::Violation { claim, snapshot, .. } => match replay(snapshot) {
                Ok(run) => match run.outcome {
                    Outcome::AssumptionViolation(v) if v.claim == *claim => Ok(()),
                    other => invalid(format!("snapshot replays to {} instead of {claim:?}", other.kind())),
                },
                Err(e) => invalid(format!("snapshot does not replay: {e}")),
            },
        }
    }
}
