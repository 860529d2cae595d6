//! Exact linear algebra over ℤ and ℚ, and the rank-two Frobenius algebras.

pub(crate) mod elim;
pub mod frobenius;
pub mod matrix;
pub mod snf;

pub use frobenius::{frobenius_tables, FrobeniusKind, FrobeniusSpec};
pub use matrix::SparseIntMatrix;
pub use snf::{homology_of_pair, integer_kernel, rank_q, IntegerKernel, snf, AbelianGroupIso, SnfResult};
