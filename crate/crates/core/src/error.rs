use thiserror::Error;

use crate::group::Elem;

/// The four conditions a homothetic datum must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DatumCondition {
    /// `σ(ab) = (σa)b`, `(ab)σ = a(bσ)`, `a(σb) = (aσ)b`.
    Bimultiplication,
    /// `(σa)σ = σ(aσ)`.
    SelfPermutable,
    /// `σs = sσ`.
    Normalizing,
    /// `σ² = σ + s̄`.
    QuasiIdempotent,
}

impl std::fmt::Display for DatumCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DatumCondition::Bimultiplication => "bimultiplication",
            DatumCondition::SelfPermutable => "self-permutable",
            DatumCondition::Normalizing => "normalizing (σs = sσ)",
            DatumCondition::QuasiIdempotent => "quasi-idempotent (σ² = σ + s̄)",
        };
        f.write_str(s)
    }
}

/// Axioms checked by table validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Associativity,
    LeftDistributivity,
    RightDistributivity,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Associativity => "associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cyclic order {0} (orders must be at least 2)")]
    InvalidOrder(u64),

    #[error("element {0:?} is not in the carrier")]
    InvalidElement(Vec<i64>),

    #[error("invalid additive map: {0}")]
    InvalidMap(String),

    #[error("multiplication is not well defined: generator product ({i},{j}) is not killed by the generator orders")]
    InvalidBilinear { i: usize, j: usize },

    #[error("{axiom} fails at witness {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: [Elem; 3] },

    #[error("homothetic datum fails the {condition} condition at witness {witness:?}")]
    Datum {
        condition: DatumCondition,
        witness: Vec<Elem>,
    },

    #[error("subset is not an ideal")]
    NotAnIdeal,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource threshold exceeded: {what} needs {needed} candidates, limit is {limit}")]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported carrier: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
