//! Exact-arithmetic workbench for volume rigidity of simplicial complexes.
//!
//! The crate builds the Jacobian matrices that control how the squared
//! k-volumes of a simplicial complex respond to motions of its vertices,
//! computes their ranks exactly over the rationals (with an optional
//! randomized prime-field fast path), and exposes named checkers for the
//! rank identities and matching-theoretic characterizations these matrices
//! satisfy.
//!
//! Organization:
//!
//! * [`complex`]: simplicial complexes and their combinatorial operations.
//! * [`linalg`]: dense rational matrices, fraction-free rank/determinant.
//! * [`modp`]: prime-field matrices for randomized rank trials.
//! * [`geometry`]: embeddings, Cayley–Menger volumes, altitude vectors.
//! * [`matrices`]: the rigidity-type Jacobians and their factorizations.
//! * [`rank`]: generic-rank estimation with explicit soundness reporting.
//! * [`inclusion`]: subset inclusion matrices and their ranks.
//! * [`matching`]: bipartite containment graphs, matroid intersection,
//!   Hall-type deficiency scans.
//! * [`verify`]: one named checker per claim, returning JSON verdicts.

pub mod complex;
pub mod geometry;
pub mod inclusion;
pub mod linalg;
pub mod matching;
pub mod matrices;
pub mod modp;
pub mod rank;
pub mod rng;
pub mod util;
pub mod verify;

pub use complex::{Face, Graph, SimplicialComplex};
pub use geometry::Embedding;
pub use linalg::RationalMatrix;
pub use rank::{RankCfg, RankMode, RankReport};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("facet list is empty")]
    EmptyFacets,
    #[error("dimension {k} must satisfy 0 <= k <= n-1 for n = {n}")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("vertex {0} is not a vertex of the complex")]
    MissingVertex(usize),
    #[error("{0:?} is not a face of the complex in the requested dimension")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure of dimension {0}")]
    NotPure(usize),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("embedding has no point for vertex {0}")]
    MissingPoint(usize),
    #[error("degenerate base simplex")]
    DegenerateBase,
    #[error("a denominator vanishes modulo {0}")]
    BadPrime(u64),
    #[error("parameter out of range: {0}")]
    ParamRange(String),
    #[error("rank oracle audit failed: {0}")]
    OracleAudit(String),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
