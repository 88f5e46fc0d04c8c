use std::fmt;
use std::sync::OnceLock;

use crate::abelian::{FpAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Int, IntMatrix, IntegerSolver, LatticeBasis};

use super::complex::FpChainComplex;

/// Cycles, boundaries and homology of one degree.
///
/// `H_n` is presented on the basis of the cycle lattice `Z_n`, with relations
/// the boundary lattice written in that basis. In the finitely presented case
/// `Z_n` means `{x : ∂x = 0 in C_{n-1}}` and `B_n` includes the relations of
/// `C_n`.
pub struct HomologyData {
    pub degree: i64,
    pub cycles: LatticeBasis,
    pub boundaries: LatticeBasis,
    pub group: FpAbGroup,
    /// One cycle per canonical generator of `group`.
    pub generator_cycles: Vec<Vec<Int>>,
    lift: OnceLock<IntegerSolver>,
    boundary_with_relations: IntMatrix,
    boundary_cols: usize,
}

impl HomologyData {
    pub(crate) fn compute(c: &FpChainComplex, n: i64) -> Self {
        let g = c.gens(n);
        let d = c.boundary(n);
        let stacked = d.hstack(&c.relations(n - 1));
        let k = kernel_basis(&stacked);
        let cycles = LatticeBasis::span(&k.basis().block(0, 0, g, k.rank()));
        let bmat = c.boundary(n + 1).hstack(&c.relations(n));
        let boundaries = LatticeBasis::span(&bmat);
        let rel_cols: Vec<Vec<Int>> = boundaries
            .basis()
            .columns()
            .iter()
            .map(|b| {
                cycles
                    .coordinates(b)
                    .expect("dimension checked")
                    .expect("boundaries are cycles")
            })
            .collect();
        let group = FpAbGroup::new(cycles.rank(), IntMatrix::from_columns(cycles.rank(), &rel_cols))
            .expect("shape is consistent");
        let generator_cycles = (0..group.canonical_rank())
            .map(|k| cycles.basis().mul_vec(&group.canonical_generator(k)))
            .collect();
        HomologyData {
            degree: n,
            cycles,
            boundaries,
            group,
            generator_cycles,
            lift: OnceLock::new(),
            boundary_with_relations: bmat,
            boundary_cols: c.gens(n + 1),
        }
    }

    pub fn ambient(&self) -> usize {
        self.cycles.ambient()
    }

    pub fn is_cycle(&self, z: &[Int]) -> bool {
        self.cycles.contains(z)
    }

    /// `ζ(z)` in the presentation of `group`.
    pub fn class_of(&self, z: &[Int]) -> Result<Vec<Int>> {
        self.cycles
            .coordinates(z)?
            .ok_or(Error::NotACycle { degree: self.degree })
    }

    pub fn class_element(&self, z: &[Int]) -> Result<GroupElement> {
        Ok(self.group.element(self.class_of(z)?))
    }

    pub fn is_boundary(&self, z: &[Int]) -> Result<bool> {
        Ok(self.group.is_zero(&self.class_of(z)?))
    }

    /// A representing cycle for a class given in `group` coordinates.
    pub fn cycle_of(&self, h: &[Int]) -> Vec<Int> {
        self.cycles.basis().mul_vec(h)
    }

    /// Some `y ∈ C_{n+1}` with `∂y = x` in `C_n`, if `x` is a boundary.
    pub fn lift_boundary(&self, x: &[Int]) -> Option<Vec<Int>> {
        let solver = self
            .lift
            .get_or_init(|| IntegerSolver::new(&self.boundary_with_relations));
        solver.solve(x).map(|s| s[..self.boundary_cols].to_vec())
    }
}

impl fmt::Debug for HomologyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = {}", self.degree, self.group)
    }
}
