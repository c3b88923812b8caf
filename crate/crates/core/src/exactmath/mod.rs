//! Exact scalar, vector and lattice arithmetic.

pub mod hnf;
pub mod linalg;
pub mod rational;
pub mod snf;
pub mod sqrt3;

pub use hnf::{coset_reps, hnf, index, join, Cell, IntScalar, SubgroupHNF};
pub use linalg::{solve_linear, FieldScalar, Mat3, Scalar, Vec3};
pub use rational::Rational;
pub use snf::{solve_mod_integers, CongruenceSolutions};
pub use sqrt3::QSqrt3;
