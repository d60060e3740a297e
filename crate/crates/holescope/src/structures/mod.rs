//! The combinatorial objects of the layered-scaffold machinery as explicit
//! certificates: levellings, showers and their jets, trellis embeddings,
//! covers and cables, w/u-bends, wands. Every object carries a full validity
//! checker that returns the specific broken axioms, so mutation fuzzing can
//! discriminate.

mod cable;
mod cover;
mod levelling;
mod shower;
mod solidity;
mod trellis;
mod wand;
mod wubend;

pub use cable::{classify_cable, Cable, CableReport, PairType};
pub use cover::{verify_cover, verify_multicover, CoverCert, MulticoverCert};
pub use levelling::{verify_levelling, Levelling};
pub use shower::{
    jet_metrics, jetset, verify_recirculator, verify_shower, verify_sprinkler, Jet, JetMetrics,
    Shower, ShowerCheck, StabilityCheck,
};
pub use solidity::{solidity, Solidity};
pub use trellis::{verify_trellis, TrellisEmbedding, TrellisExt};
pub use wand::{verify_wand, wand_shadow, Wand};
pub use wubend::{verify_wubend, BendKind, WUBend, WUBendReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// One broken axiom, named, with witness vertices when available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub vertices: Vec<usize>,
}

impl Violation {
    pub fn new(rule: &str, vertices: &[usize]) -> Violation {
        Violation { rule: rule.to_string(), vertices: vertices.to_vec() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("jet budget exhausted after {0} expansions")]
    BudgetExhausted(u64),
    #[error("recirculator endpoints must be the drain and the head")]
    WrongEndpoints,
    #[error("not a jet of the shower: {0}")]
    NotAJet(String),
    #[error("wand does not fit the shower levels: {0}")]
    WandOutsideShower(String),
    #[error("mat is not a subset of the floor")]
    MatOutsideFloor,
}

/// Serialized certificate with a `kind` tag, the on-disk schema for the
/// `verify` CLI subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Levelling(Levelling),
    Shower(Shower),
    Trellis(TrellisEmbedding),
    Cover(CoverCert),
    Multicover(MulticoverCert),
    Cable(Cable),
    Wubend(WUBend),
}

impl Certificate {
    pub fn verify(&self, g: &Graph) -> Vec<Violation> {
        match self {
            Certificate::Levelling(l) => verify_levelling(g, l),
            Certificate::Shower(s) => verify_shower(g, s, StabilityCheck::None).violations,
            Certificate::Trellis(t) => verify_trellis(g, t),
            Certificate::Cover(c) => verify_cover(g, c),
            Certificate::Multicover(m) => verify_multicover(g, m),
            Certificate::Cable(c) => classify_cable(g, c).violations,
            Certificate::Wubend(b) => verify_wubend(g, b).violations,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::Levelling(_) => "levelling",
            Certificate::Shower(_) => "shower",
            Certificate::Trellis(_) => "trellis",
            Certificate::Cover(_) => "cover",
            Certificate::Multicover(_) => "multicover",
            Certificate::Cable(_) => "cable",
            Certificate::Wubend(_) => "wubend",
        }
    }
}
