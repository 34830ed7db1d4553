//! Exact computations on even Δ-matroids, their regular subdivisions,
//! Wick vectors and the tropical spinor variety `TSp(5)`.

pub mod cli;
pub mod combinatorics;
pub mod delta_matroid;
pub mod error;
pub mod fan5;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod polyhedra;
pub mod strata;
pub mod wick;

pub use combinatorics::{enumerate_e, sign_count, ParityIndex, Rational, Subset};
pub use delta_matroid::{DeltaMatroid, DirectionVector, GroupElement};
pub use error::{Error, Result};
