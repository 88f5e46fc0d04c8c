//! Exact integer linear algebra: Smith and Hermite normal forms, kernels,
//! images and integer solving.

mod hermite;
mod lattice;
mod matrix;
mod smith;

pub use hermite::{column_hermite, echelon_solve, ColumnHermite};
pub use lattice::{image_basis, kernel_basis, lattice_coordinates, solve_integer, IntegerSolver, LatticeBasis};
pub use matrix::{vecops, Int, IntMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};
