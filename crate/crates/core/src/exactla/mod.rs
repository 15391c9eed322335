//! Exact linear algebra over GF(p).

pub mod coords;
pub mod dense;
pub mod field;
pub mod sparse;
pub mod subspace;

pub use coords::Coordinates;
pub use dense::{axpy, dot, is_zero_vec, nullspace, rref, solve, unit, vec_add, vec_scale, vec_sub, Mat, Rref};
pub use field::Fp;
pub use sparse::{sparse_nullspace, sparse_rank, to_sparse, SparseEchelon, SparseVec};
pub use subspace::Subspace;
