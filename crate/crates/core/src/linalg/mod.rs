//! Dense linear algebra kernel: generic matrices over a scalar ring,
//! symmetric matrices with enforced symmetry, exact rational arithmetic,
//! Jacobi eigendecomposition and Schur-complement resolvent blocks.

mod eigen;
mod matrix;

pub use eigen::{eigendecompose, eigendecompose_with_budget, EigenSystem};
pub use eigen::{DEFAULT_SWEEP_BUDGET, EIGENVALUE_CLASS_TOL};
pub use matrix::{column_mix, complement, rat, rat_int, rat_to_f64, schur_block, validate_subset};
pub use matrix::{Matrix, Rat, RationalMatrix, Scalar, SymmetricMatrix};
