//! Exact-arithmetic machinery for Poisson homogeneous spaces in finite
//! dimensions: Lie algebras by structure constants, Lie bialgebras and their
//! Drinfeld doubles, the correspondence between homogeneous bivectors and
//! Lagrangian subalgebras, relative Lie algebra cohomology, and quasi-triple
//! twist data with pointwise nondegeneracy checks.
//!
//! All coefficients are arbitrary-precision rationals; every identity in the
//! library is checked with zero tolerance. Values are immutable after
//! construction and all operations are pure functions, so everything here is
//! safe to share across threads without synchronization.

#![allow(clippy::needless_range_loop)]

pub mod cohomology;
pub mod double;
pub mod drinfeld;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod twist;

pub use error::{Error, Result};
pub use scalar::Rational;
