use super::hermite::{column_hermite, column_hermite_image, echelon_pivots, echelon_solve};
use super::matrix::{Int, IntMatrix};
use crate::error::{Error, Result};

/// A sublattice of `ℤ^ambient`, stored by a basis in column Hermite form.
///
/// Keeping the basis normalized makes membership a triangular solve and makes
/// two lattices equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(ambient={}, {:?})", self.ambient, self.basis)
    }
}

impl LatticeBasis {
    /// Lattice spanned by the columns of `gens` (any generating set).
    pub fn span(gens: &IntMatrix) -> Self {
        let basis = column_hermite_image(gens);
        let pivots = echelon_pivots(&basis);
        LatticeBasis {
            ambient: gens.rows(),
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            basis: IntMatrix::zeros(ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(&IntMatrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn vector(&self, k: usize) -> Vec<Int> {
        self.basis.column(k)
    }

    pub fn coordinates(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in lattice of ambient rank {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(echelon_solve(&self.basis, &self.pivots, v))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        matches!(self.coordinates(v), Ok(Some(_)))
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        (0..other.rank()).all(|k| self.contains(&other.vector(k)))
    }

    /// Sum of two lattices in the same ambient space.
    pub fn sum(&self, other: &LatticeBasis) -> LatticeBasis {
        LatticeBasis::span(&self.basis.hstack(&other.basis))
    }
}

pub fn lattice_coordinates(l: &LatticeBasis, v: &[Int]) -> Result<Option<Vec<Int>>> {
    l.coordinates(v)
}

/// Saturated basis of `{ v : A·v = 0 }`, normalized to Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> LatticeBasis {
    let ch = column_hermite(a);
    LatticeBasis::span(&ch.kernel_basis())
}

/// Hermite basis of the column span of `A`.
pub fn image_basis(a: &IntMatrix) -> LatticeBasis {
    LatticeBasis::span(a)
}

/// Some integer `x` with `A·x = b`, or `None` if no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    Ok(IntegerSolver::new(a).solve(b))
}

/// Precomputed Hermite data for repeated solves against one matrix.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    h: IntMatrix,
    t: IntMatrix,
    pivots: Vec<usize>,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let ch = column_hermite(a);
        let r = ch.rank();
        IntegerSolver {
            h: ch.h.block(0, 0, a.rows(), r),
            t: ch.t.block(0, 0, a.cols(), r),
            pivots: ch.pivots,
        }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        echelon_solve(&self.h, &self.pivots, b).map(|y| self.t.mul_vec(&y))
    }

    /// Solves column by column; `None` if any column has no solution.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<Int>>> = b.columns().iter().map(|c| self.solve(c)).collect();
        cols.map(|cs| IntMatrix::from_columns(self.t.rows(), &cs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vecops::from_i64;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[[2]])).rank(), 0);
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.rank(), 1);
        let v = k.vector(0);
        assert!(v == from_i64(&[1, -1]) || v == from_i64(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)).rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let two = IntMatrix::from_rows(&[[2]]);
        assert_eq!(solve_integer(&two, &from_i64(&[4])).unwrap(), Some(from_i64(&[2])));
        assert_eq!(solve_integer(&two, &from_i64(&[3])).unwrap(), None);
        let a = IntMatrix::from_rows(&[[1, 2], [0, 2]]);
        assert_eq!(solve_integer(&a, &from_i64(&[3, 2])).unwrap(), Some(from_i64(&[1, 1])));
        assert!(solve_integer(&a, &from_i64(&[3])).is_err());
    }

    #[test]
    fn coordinate_examples() {
        let l = LatticeBasis::span(&IntMatrix::from_rows(&[[2], [0]]));
        assert_eq!(l.coordinates(&from_i64(&[4, 0])).unwrap(), Some(from_i64(&[2])));
        assert_eq!(l.coordinates(&from_i64(&[1, 0])).unwrap(), None);
        let l = LatticeBasis::span(&IntMatrix::from_rows(&[[1, 0], [1, 2]]));
        let c = l.coordinates(&from_i64(&[1, 3])).unwrap().unwrap();
        assert_eq!(l.basis().mul_vec(&c), from_i64(&[1, 3]));
        // With the spanning set {(1,1),(0,2)} as basis the coordinates are (1,1).
        let raw = IntMatrix::from_rows(&[[1, 0], [1, 2]]);
        assert_eq!(
            solve_integer(&raw, &from_i64(&[1, 3])).unwrap(),
            Some(from_i64(&[1, 1]))
        );
    }
}
