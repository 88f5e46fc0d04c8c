use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Int, IntMatrix, IntegerSolver, LatticeBasis};

use super::group::{FpAbGroup, GroupElement};

/// Homomorphism given by its matrix on generators (`target.gens × source.gens`).
#[derive(Clone)]
pub struct GroupMorphism {
    source: FpAbGroup,
    target: FpAbGroup,
    matrix: IntMatrix,
}

impl GroupMorphism {
    /// Rejects matrices that do not send source relations into target relations.
    pub fn new(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map with {} source and {} target generators",
                matrix.rows(),
                matrix.cols(),
                source.gens(),
                target.gens()
            )));
        }
        let images = matrix.mul(source.relations());
        for (k, col) in images.columns().iter().enumerate() {
            if !target.relation_lattice().contains(col) {
                return Err(Error::IllDefinedMorphism(format!(
                    "source relation {k} maps outside the target relation lattice"
                )));
            }
        }
        Ok(GroupMorphism {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.gens());
        debug_assert_eq!(matrix.cols(), source.gens());
        GroupMorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &FpAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.gens()))
    }

    pub fn zero(source: &FpAbGroup, target: &FpAbGroup) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.gens(), source.gens()),
        )
    }

    pub fn source(&self) -> &FpAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    pub fn apply_element(&self, x: &GroupElement) -> GroupElement {
        self.target.element(self.apply(&x.coords))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupMorphism) -> GroupMorphism {
        assert_eq!(self.target.gens(), other.source.gens(), "composition shape mismatch");
        Self::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn add(&self, other: &GroupMorphism) -> GroupMorphism {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, s: &Int) -> GroupMorphism {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    /// Equal as homomorphisms: agree on every generator modulo target relations.
    pub fn equals(&self, other: &GroupMorphism) -> bool {
        (0..self.source.gens()).all(|j| {
            self.target
                .eq_elements(&self.matrix.column(j), &other.matrix.column(j))
        })
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.gens()).all(|j| self.target.is_zero(&self.matrix.column(j)))
    }

    /// Lattice `{x ∈ ℤ^gens(A) : f(x) = 0 in B}`; contains the source relations.
    pub fn kernel_lattice(&self) -> LatticeBasis {
        let a = self.source.gens();
        let stacked = self.matrix.hstack(self.target.relations());
        let k = kernel_basis(&stacked);
        LatticeBasis::span(&k.basis().block(0, 0, a, k.rank()))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (FpAbGroup, GroupMorphism) {
        let lat = self.kernel_lattice();
        let rels = self.source.relations();
        let cols: Vec<Vec<Int>> = rels
            .columns()
            .iter()
            .map(|c| {
                lat.coordinates(c)
                    .expect("dimension checked")
                    .expect("relations lie in the kernel")
            })
            .collect();
        let k = FpAbGroup::new(lat.rank(), IntMatrix::from_columns(lat.rank(), &cols))
            .expect("shape is consistent");
        let incl = Self::new_unchecked(k.clone(), self.source.clone(), lat.basis().clone());
        (k, incl)
    }

    /// Image presented as `A / ker f`, with its inclusion into the target.
    pub fn image(&self) -> (FpAbGroup, GroupMorphism) {
        let lat = self.kernel_lattice();
        let im = FpAbGroup::new(self.source.gens(), lat.basis().clone())
            .expect("shape is consistent");
        let incl = Self::new_unchecked(im.clone(), self.target.clone(), self.matrix.clone());
        (im, incl)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (FpAbGroup, GroupMorphism) {
        let rels = self.target.relations().hstack(&self.matrix);
        let q = FpAbGroup::new(self.target.gens(), rels).expect("shape is consistent");
        let proj = Self::new_unchecked(
            self.target.clone(),
            q.clone(),
            IntMatrix::identity(self.target.gens()),
        );
        (q, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `f(x) = y` in the target, if `y` is in the image.
    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        let a = self.source.gens();
        let stacked = self.matrix.hstack(self.target.relations());
        IntegerSolver::new(&stacked)
            .solve(y)
            .map(|sol| sol[..a].to_vec())
    }

    /// Reusable solver for many preimage queries against one map.
    pub fn preimage_solver(&self) -> PreimageSolver {
        PreimageSolver {
            a: self.source.gens(),
            solver: IntegerSolver::new(&self.matrix.hstack(self.target.relations())),
        }
    }

    /// Kronecker product: the induced map on tensor presentations.
    pub fn tensor(&self, other: &GroupMorphism, source: FpAbGroup, target: FpAbGroup) -> Self {
        Self::new_unchecked(source, target, self.matrix.kron(&other.matrix))
    }
}

pub struct PreimageSolver {
    a: usize,
    solver: IntegerSolver,
}

impl PreimageSolver {
    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.solver.solve(y).map(|s| s[..self.a].to_vec())
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via {:?}", self.source, self.target, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_z4() {
        let z4 = FpAbGroup::cyclic(4);
        let id = GroupMorphism::identity(&z4);
        assert!(id.kernel().0.is_trivial());
        assert_eq!(id.image().0.describe(), "Z/4");
        assert!(id.cokernel().0.is_trivial());
    }

    #[test]
    fn doubling_on_z() {
        let z = FpAbGroup::free(1);
        let f = GroupMorphism::new(z.clone(), z, IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(f.kernel().0.is_trivial());
        assert_eq!(f.cokernel().0.describe(), "Z/2");
    }

    #[test]
    fn doubling_on_z4() {
        let z4 = FpAbGroup::cyclic(4);
        let f = GroupMorphism::new(z4.clone(), z4, IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(f.kernel().0.describe(), "Z/2");
        assert_eq!(f.image().0.describe(), "Z/2");
        assert_eq!(f.cokernel().0.describe(), "Z/2");
    }

    #[test]
    fn ill_defined_rejected() {
        let z2 = FpAbGroup::cyclic(2);
        let z3 = FpAbGroup::cyclic(3);
        assert!(matches!(
            GroupMorphism::new(z2, z3, IntMatrix::from_rows(&[[1]])),
            Err(Error::IllDefinedMorphism(_))
        ));
    }
}
