pub mod perm;
pub mod braid;
pub mod surface;
pub mod homology;
pub mod lifting;
pub mod spherical;
pub mod cli;
