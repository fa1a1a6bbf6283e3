//! Numeric representation theory of finite groups, spherical functions on
//! double cosets, `SU(2)` tensor invariants and the Neretin determinant.

mod cosets;
mod irreps;
mod neretin;
mod su2;

use nalgebra::DVector;
use num_complex::Complex64;

pub use cosets::{
    invariant_vectors, same_double_coset, separate_cosets, spherical_value, wielandt_check, Separation,
    SeparationWitness, SphericalFamily, WielandtCounts, SEPARATION_TOL,
};
pub use irreps::{
    character_inner, frobenius_count, numeric_irreps, numeric_irreps_with, IrrepOptions, UnitaryRep,
    DEFAULT_IRREP_CAP, SPLIT_SEED,
};
pub use neretin::{neretin_phi2, neretin_phi2_with, neretin_series, phi2_burau, PairVars, PerpConvention};
pub use su2::{spin_matrix, su2_invariant_basis, twice_spins, SU2Element};

use crate::braid::BraidError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SphericalError {
    #[error("size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("regular representation did not split: {0}")]
    SplittingFailed(String),
    #[error("{what} {value} is not within 0.01 of an integer")]
    RoundingAmbiguity { what: String, value: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("spherical separation disagrees with brute force: {0}")]
    CrossValidation(String),
    #[error("matrix is not in SU(2) (unitarity defect {unitarity:.2e}, determinant defect {determinant:.2e})")]
    NotSpecialUnitary { unitarity: f64, determinant: f64 },
    #[error("{0} is not a half-integer spin")]
    InvalidSpin(f64),
    #[error("spectral radius {0} of A X A^perp Y is not below 1")]
    SpectralRadiusTooLarge(f64),
    #[error("conjugation invariance failed by {0:.2e} under the chosen A^perp convention")]
    ConventionViolation(f64),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Orthonormal vectors of a tensor product fixed by the diagonal action.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    /// Dimensions of the tensor factors, first factor most significant.
    pub factor_dims: Vec<usize>,
    pub vectors: Vec<DVector<Complex64>>,
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}
