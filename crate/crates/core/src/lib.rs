//! Khovanov homology (over ℤ and ℚ) and rational Lee homology of closed braids,
//! together with closed-form predictions for torus links `T(2k, 2kn)` and `T(3, q)`
//! and the arc ring `H^k` of crossingless matchings.

pub mod algebra;
pub mod archring;
pub mod cache;
pub mod checks;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod torusform;

pub use error::{Error, Result};

/// Stamp folded into every cache key; bump whenever gradings or sign conventions change.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+conv1");
