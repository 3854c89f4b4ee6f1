//! Exact computer algebra for supergroup quotients.
//!
//! The crate evaluates everything on T-points: coordinates take values in
//! free supercommutative test rings over the Gaussian rationals, matrices
//! are even morphisms over such rings, and every identity is checked with
//! zero tolerance.

pub mod error;
pub mod flag_quotient;
pub mod grassmannian;
pub mod json;
pub mod sample;
pub mod scalar;
pub mod smoothness;
pub mod superalgebra;
pub mod supermatrix;

pub use error::{Error, Result};
pub use flag_quotient::{BlockProfile, NCoordinates};
pub use grassmannian::GrassmannianPoint;
pub use scalar::Scalar;
pub use superalgebra::{Parity, Ring, SuperElement, SuperHom, SuperRingSpec, Variable};
pub use supermatrix::{SuperMatrix, SuperShape};
