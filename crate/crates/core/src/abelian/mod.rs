//! Exact integer linear algebra: Smith normal form, presented abelian
//! groups, homomorphisms and subquotients.

pub mod group;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use group::{
    ext1_and_hom_z, invariant_factors, subquotient, AbHom, Diagonalization, InvariantFactors, PresentedAbelianGroup, Subquotient,
};
pub use int::{int, Int};
pub use lattice::{congruence_kernel, ColumnEchelon, Congruence};
pub use matrix::{IntMatrix, SparseMatrix, SparseRow};
pub use snf::{hermite_normal_form, smith_normal_form, SmithDecomposition};
