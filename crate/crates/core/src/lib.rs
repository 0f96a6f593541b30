//! Compilation of discrete-variable optimization problems into two-body
//! Ising models.
//!
//! The crate provides two encodings of a `ℤ_m` variable into qubits (a
//! domain-wall encoding over `m−1` ferromagnetically chained qubits and the
//! one-hot encoding over `m` qubits) together with:
//!
//! - exact evaluation and exhaustive ground-state enumeration of small Ising
//!   models ([`ising`]), used as the verification oracle everywhere else;
//! - arbitrary two-variable interactions, single-value penalties, ordering
//!   constraints and k-hot ensembles built from at most two-body terms
//!   ([`encoding`]);
//! - three synthetic problem families (unstructured, graph coloring,
//!   scheduling) with exhaustive classical oracles ([`problems`]);
//! - subspace-preserving mixer Hamiltonians and their dense-matrix
//!   conservation checks ([`mixers`]);
//! - Chimera and Pegasus hardware graph generators and graph metrics
//!   ([`hardware`]);
//! - a chain-growth minor-embedding heuristic and minimum-embeddable-size
//!   search ([`embedding`]);
//! - a deterministic experiment harness emitting CSV ([`experiment`]).
//!
//! All randomness flows through the seeded [`rng::SplitMix64`] stream, so
//! every artifact the crate produces is bit-reproducible across platforms.

pub mod embedding;
pub mod encoding;
pub mod experiment;
pub mod hardware;
pub mod ising;
pub mod mixers;
pub mod problems;
pub mod rng;
pub mod verify;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A spin assignment, mapping, or matrix does not match the expected size.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An exhaustive operation would exceed its configured cap.
    #[error("size cap exceeded: limit {limit}, required {required}")]
    SizeCap { limit: usize, required: usize },

    /// A qubit mapping maps two source qubits to the same target.
    #[error("qubit mapping is not injective")]
    NonInjectiveMapping,

    /// A parameter is outside its legal domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An interaction was requested between a variable and itself.
    #[error("interaction endpoints alias the same variable")]
    AliasedVariables,

    /// Variables passed to an operation have incompatible kind or size.
    #[error("variable kind/size mismatch: {0}")]
    KindMismatch(String),

    /// A constraint system has no satisfying assignment.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An embedding operation was given an empty graph.
    #[error("graph has no vertices")]
    EmptyGraph,

    /// An embedding failed validation; the list describes each violation.
    #[error("invalid embedding: {}", .0.join("; "))]
    InvalidEmbedding(Vec<String>),

    /// The minimum-size search hit the configured hardware ceiling.
    #[error("no embedding found up to hardware size ceiling L={ceiling}")]
    NoEmbedding { ceiling: usize },

    /// A CSV document contains rows that cannot be parsed.
    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: usize, message: String },

    /// A JSON document failed to parse or validate.
    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
