//! Exact computation in ultrametric (non-archimedean) spaces: distances
//! between sets, best proximity pairs, fixed points and minimal invariant
//! balls of self-maps, plus an executable harness that machine-checks the
//! corresponding existence theorems on finite models.

pub mod balls;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod ratio;
pub mod spaces;
pub mod verdict;

pub use error::Error;
pub use ratio::Ratio;
