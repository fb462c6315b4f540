//! Torus-equivariant cohomology of the minimal and regular nilpotent orbits
//! of a complex simple Lie algebra.
//!
//! The minimal orbit is computed from the GKM graph of the partial flag
//! variety `G/P_Xi` (where `Xi` is the set of simple roots orthogonal to the
//! highest root): the GKM conditions are solved degree by degree over the
//! rationals and the result is divided by the ideal of the equivariant Euler
//! class `[w] -> w . alpha`.

pub mod error;
pub mod gkm;
pub mod lie;
pub mod moment;
pub mod orbit;
pub mod poly;
pub mod selftest;

pub use error::{Error, Result};

/// Exact rationals used throughout.
pub type Q = num_rational::BigRational;

/// Default bound on the size of any orbit or coset enumeration.
pub const DEFAULT_CAP: usize = 100_000;
