//! Permutations and finite groups given by multiplication tables.

mod builtin;
mod group;
mod permutation;

pub use builtin::{builtin, group_from_spec, GroupTableFile};
pub use group::{
    automorphisms, extend_homomorphism, find_epimorphism_with_kernel, find_isomorphism,
    homomorphisms, FiniteGroup, GroupHom,
};
pub use permutation::{is_transitive, Permutation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("inverse table inconsistent at element {0}")]
    InconsistentInverse(usize),
    #[error("group closure exceeded {0} elements")]
    TooLarge(usize),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unknown group descriptor {0:?}")]
    UnknownGroup(String),
    #[error("cannot read group table: {0}")]
    Io(String),
}
