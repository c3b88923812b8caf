//! Exact classification of maximally symmetric surfaces in the 3-torus.
//!
//! The core types are generic over their scalar; the aliases below fix the
//! exact scalars used throughout.

pub mod classify;
pub mod error;
pub mod exactmath;
pub mod periodicgraph;
pub mod spacegroup;
pub mod sublattices;

pub use error::{Error, Result};
pub use exactmath::Rational;

use num_bigint::BigInt;

pub type Vec3Q = exactmath::Vec3<Rational>;
pub type Mat3Q = exactmath::Mat3<Rational>;
pub type IVec3 = exactmath::Vec3<BigInt>;
pub type Mat3I = exactmath::Mat3<i64>;
