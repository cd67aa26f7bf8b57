//! Exact solvers for the geographic gerrymandering problem: choose `k` of `m`
//! candidate ballot-box locations so that a target candidate wins at least
//! `ell` districts, where every voter votes at the nearest opened box.
//!
//! The crate provides
//!
//! * exact rational geometry and Voronoi diagrams ([`geometry`]),
//! * district formation and win counting ([`election`]),
//! * the `m^k` enumeration baseline ([`brute`]),
//! * the subexponential noose-separator recursion ([`separator`]),
//! * the Grid Tiling reduction used for hardness ([`reduction`]),
//! * a single entry point choosing between the engines ([`solver`]),
//! * JSON file formats, random instance generation, SVG rendering and a
//!   small benchmark harness ([`format`], [`generate`], [`render`], [`bench`]).
//!
//! All arithmetic on coordinates is exact; floating point only appears in SVG
//! output and in timing reports.

pub mod bench;
pub mod brute;
pub mod election;
mod error;
pub mod format;
pub mod generate;
pub mod geometry;
pub mod model;
pub mod reduction;
pub mod render;
pub mod separator;
pub mod solver;

pub use error::{Error, Result};
pub use model::{Candidate, Instance, Point, Ranking, Rational, Voter};

/// Outcome of a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

/// Counters reported by the solvers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Subsets evaluated (brute force) or recursion states visited (separator).
    pub states_explored: u64,
    /// Deepest recursion level reached; zero for brute force.
    pub recursion_depth: usize,
    /// Whether a safe-mode brute-force confirmation decided the answer.
    pub fallback_used: bool,
    pub elapsed: std::time::Duration,
}

/// Answer of a solver: a status, and for `Yes` a certificate of box indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveAnswer {
    pub status: Status,
    pub certificate: Option<Vec<usize>>,
    pub stats: SolveStats,
}

impl SolveAnswer {
    pub fn yes(certificate: Vec<usize>, stats: SolveStats) -> Self {
        SolveAnswer { status: Status::Yes, certificate: Some(certificate), stats }
    }

    pub fn no(stats: SolveStats) -> Self {
        SolveAnswer { status: Status::No, certificate: None, stats }
    }

    pub fn unknown(stats: SolveStats) -> Self {
        SolveAnswer { status: Status::Unknown, certificate: None, stats }
    }
}
