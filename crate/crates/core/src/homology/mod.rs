//! Lifting invariants over stem extensions, relative classes with peripheral
//! data, and a bounded search for the commutator length `ocl`.

mod extension;
mod invariant;
mod ocl;

pub use extension::{
    builtin_extensions, schur_multiplier_p_rank, schur_multiplier_trivial, shipped_cover, StemExtension,
    StemExtensionFile, SHIPPED_COVERS,
};
pub use invariant::{
    is_null_homologous, lifting_invariant, lifting_invariant_with_lifts, relative_class, PeripheralLifts, SchurClass,
};
pub use ocl::{ocl_bounded, verify_ocl_witness, OclBounds, OclResult, OclWitness, Presentation, MAX_COMMUTATORS};

use crate::perm::PermError;
use crate::surface::SurfaceError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("not a stem extension: {0}")]
    NotStem(String),
    #[error("no shipped cover for {0}")]
    NoCoverAvailable(String),
    #[error("peripheral lift for puncture {puncture} does not project to its class")]
    LiftMismatch { puncture: usize },
    #[error("monodromy targets {monodromy} but the cover is over {cover}")]
    GroupMismatch { monodromy: String, cover: String },
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] PermError),
}

impl From<HomologyError> for SurfaceError {
    fn from(e: HomologyError) -> Self {
        SurfaceError::Homology(e.to_string())
    }
}
