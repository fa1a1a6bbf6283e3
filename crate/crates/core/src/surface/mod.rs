//! Monodromy tuples `π₁(Σ_g ∖ {m points}) → G`: enumeration, conjugation
//! canonicalization, mapping-class moves, orbits and elementary detection.

mod enumerate;
mod monodromy;
mod moves;
mod orbit;
pub mod words;

pub use enumerate::{commutator_fibers, count, enumerate, for_each_tuple, Constraints, EnumerationCounts};
pub use monodromy::{canonical_entries, ElementRef, MonodromyFile, SurfaceMonodromy};
pub use moves::{mcg_moves, move_set_fingerprint, moves_complete, MCGMove};
pub use orbit::{
    is_elementary, orbit, orbit_with_moves, partition_into_orbits, partition_into_orbits_by, thickness_upper, ElementaryVerdict,
    OrbitOptions, OrbitSummary, ThicknessBound, DEFAULT_BUDGET, PUNCTURE_CONVENTION,
};

use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("malformed monodromy: {0}")]
    Shape(String),
    #[error("tuple violates the surface relator or has a trivial peripheral image")]
    InvalidMonodromy,
    #[error("transitivity requested but the group has no permutation realization")]
    NoPermutationRealization,
    #[error("closed surface required, found {0} punctures")]
    NotClosed(usize),
    #[error("lifting invariant is nonzero over a shipped cover; thickness is undefined")]
    NonNullHomologous,
    #[error(transparent)]
    Group(#[from] PermError),
    #[error("{0}")]
    Homology(String),
}
