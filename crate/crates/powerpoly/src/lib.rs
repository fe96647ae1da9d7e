//! Voting power analysis for weighted majority games.
//!
//! The crate computes power indices that are themselves valid weight or
//! representation vectors of the game: the average weight index (AWI), the
//! average representation index (ARI), and their type-restricted variants
//! (AWTI, ARTI). The averages are exact centroids of convex polytopes cut out
//! by the game's coalition frontiers, computed with rational arithmetic end
//! to end. Classical indices (Banzhaf, Shapley-Shubik), minimum-sum integer
//! representations, a census of small weighted games, Monte Carlo estimation,
//! paradox audits, and seat apportionment round out the toolkit.
//!
//! With the default `parallel` feature the batch drivers (census scans, table
//! sweeps, distance studies) fan out over rayon; without it they run
//! sequentially with identical output.

// The matrix kernels (simplex pivots, elimination, mask-indexed fills) read
// better with explicit indices than with the iterator forms clippy suggests.
#![allow(clippy::needless_range_loop)]

pub mod apportion;
pub mod audits;
pub mod census;
pub mod game;
pub mod indices;
pub mod lp;
pub mod msr;
mod par;
pub mod polytope;
pub mod rational;
pub mod sampler;

pub use apportion::{dhondt, index_seats, inverse_design, InverseDesign, SeatAllocation};
pub use audits::{
    added_blocker_audit, bicameral_meet, bloc_audit, distance_study, donation_audit, AuditKind,
    DistanceTable, ParadoxReport,
};
pub use census::{
    enumerate_weighted_games, integer_representation_census, CensusResult, GameCatalog,
};
pub use game::{Coalition, CoalitionFrontiers, SimpleGame, TypePartition, WeightedGame};
pub use indices::{average_index, classical_index, power_index, IndexKind, PowerVector};
pub use msr::{msri, IntegerRepresentation, MSRSolution};
pub use polytope::{
    build_polytope, enumerate_vertices, integrate, IntegrationResult, LinearConstraint,
    PolytopeH, PolytopeKind, RecoveredPoint, Restrictions, VertexSet,
};
pub use rational::Rat;
pub use sampler::{chebyshev_center, hit_and_run_estimate, ChainConfig, Estimate};

/// Errors surfaced by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Game text or JSON that does not parse or violates validity rules.
    #[error("parse error: {0}")]
    Parse(String),
    /// A structurally valid request outside the supported size caps.
    #[error("capability exceeded: {0}")]
    CapExceeded(String),
    /// Input that is well-formed but unusable for the requested operation.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The game is not complete, so type-based operations are undefined.
    #[error("game is not complete: {0}")]
    NotComplete(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
