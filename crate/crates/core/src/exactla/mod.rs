//! Exact dense linear algebra over F_p, F_{p^e} and Q.

pub mod field;
pub mod mat;
pub(crate) mod polyfp;
pub mod sparse;
pub mod subspace;

pub use field::{Embedding, ExtField, Field, FieldSpec, FiniteField, PrimeField, Rationals};
pub use mat::{EchelonBasis, Mat};
pub use sparse::{sparse_pivot_columns, SparseRow};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspaces};
