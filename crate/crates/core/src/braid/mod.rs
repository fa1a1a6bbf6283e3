//! Braid words, the abelianized braid group `B_n^{(1)}`, Burau matrices and
//! completely-splittable checks.

mod abelian;
mod burau;
mod quotient;
pub mod ring;
mod splittable;
mod su2;
mod word;

pub use abelian::{
    ab_product, abelianize, act, kappa, pure_linking, AbelianizedBraidElement, MAX_AB_STRANDS,
};
pub use burau::{
    alexander_polynomial, determinant, identity as identity_matrix, reduced_burau, reduced_burau_complex,
    unreduced_burau, Mat,
};
pub use quotient::{quotient_probe, ProbeQuotient, QuotientSpec, PROBE_CAP};
pub use splittable::{
    builtin_certificate, closure_components, splittable_check, InvariantFailure, SplitCertificate,
    SplittableVerdict, WordMove,
};
pub use su2::{admissible_thetas, burau_su2, BurauSu2};
pub use word::{pair_index, pairs, BraidWord};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BraidError {
    #[error("letter {letter} is not a generator of B_{strands}")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("unsupported strand count {0}")]
    BadStrandCount(usize),
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("word is not a pure braid")]
    NotPure,
    #[error("Burau parameter is not invertible")]
    NonInvertibleParameter,
    #[error("Squier form is not definite at theta = {0}")]
    SquierFormNotPositive(f64),
    #[error("invalid quotient descriptor {0:?}")]
    InvalidQuotient(String),
    #[error("quotient has more than {0} elements")]
    QuotientTooLarge(usize),
    #[error("the identity braid has no branch point")]
    IdentityBraid,
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("internal error: {0}")]
    Internal(String),
}
