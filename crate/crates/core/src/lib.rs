//! Commutator-based quantumness of pairs of quantum states.
//!
//! The crate computes `Q(rho_a, rho_b) = 2 ||[rho_a, rho_b]||^2`, simulates the
//! controlled-permutation interferometer that measures it through two fringe
//! visibilities, and uses it as a witness of non-classical bipartite
//! correlations by searching over pairs of local projective measurements.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the companion `quantumness` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod correlations;
pub mod error;
mod math;
pub mod interferometer;
pub mod qcore;
pub mod witness;

pub use error::{Error, Result};
pub use nalgebra;
