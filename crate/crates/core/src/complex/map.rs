use std::fmt;

use crate::abelian::GroupMorphism;
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};

use super::complex::FpChainComplex;

/// Degree-preserving chain map, one matrix per source degree.
#[derive(Clone)]
pub struct ChainMap {
    source: FpChainComplex,
    target: FpChainComplex,
    matrices: Vec<IntMatrix>,
}

impl ChainMap {
    /// `matrices[k]` acts in degree `source.lo() + k`.
    pub fn new(source: FpChainComplex, target: FpChainComplex, matrices: Vec<IntMatrix>) -> Result<Self> {
        let len = source.degrees().count();
        if matrices.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for a source with {len} degrees",
                matrices.len()
            )));
        }
        for (k, m) in matrices.iter().enumerate() {
            let n = source.lo() + k as i64;
            if m.rows() != target.gens(n) || m.cols() != source.gens(n) {
                return Err(Error::ShapeMismatch(format!(
                    "map in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.gens(n),
                    source.gens(n)
                )));
            }
        }
        let f = Self::new_unchecked(source, target, matrices);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: FpChainComplex, target: FpChainComplex, matrices: Vec<IntMatrix>) -> Self {
        ChainMap {
            source,
            target,
            matrices,
        }
    }

    /// Builds from a per-degree closure over the source range.
    pub fn from_fn<F>(source: &FpChainComplex, target: &FpChainComplex, f: F) -> Result<Self>
    where
        F: FnMut(i64) -> IntMatrix,
    {
        let mats = source.degrees().map(f).collect();
        Self::new(source.clone(), target.clone(), mats)
    }

    pub(crate) fn from_fn_unchecked<F>(source: &FpChainComplex, target: &FpChainComplex, f: F) -> Self
    where
        F: FnMut(i64) -> IntMatrix,
    {
        let mats = source.degrees().map(f).collect();
        Self::new_unchecked(source.clone(), target.clone(), mats)
    }

    /// Well-defined in every degree and commuting with the boundaries.
    pub fn check(&self) -> Result<()> {
        for n in self.source.degrees() {
            let m = self.matrix(n);
            let tgt = self.target.group(n);
            let images = m.mul(self.source.group(n).relations());
            if images.columns().iter().any(|c| !tgt.relation_lattice().contains(c)) {
                return Err(Error::IllDefinedMorphism(format!("chain map in degree {n}")));
            }
            let lhs = self.target.boundary(n).mul(&m);
            let rhs = self.matrix(n - 1).mul(&self.source.boundary(n));
            let diff = lhs.sub(&rhs);
            let below = self.target.group(n - 1);
            if diff.columns().iter().any(|c| !below.is_zero(c)) {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn identity(c: &FpChainComplex) -> Self {
        Self::from_fn_unchecked(c, c, |n| IntMatrix::identity(c.gens(n)))
    }

    pub fn zero(source: &FpChainComplex, target: &FpChainComplex) -> Self {
        Self::from_fn_unchecked(source, target, |n| IntMatrix::zeros(target.gens(n), source.gens(n)))
    }

    pub fn source(&self) -> &FpChainComplex {
        &self.source
    }

    pub fn target(&self) -> &FpChainComplex {
        &self.target
    }

    pub fn matrix(&self, n: i64) -> IntMatrix {
        if n < self.source.lo() || n > self.source.hi() {
            return IntMatrix::zeros(self.target.gens(n), self.source.gens(n));
        }
        self.matrices[(n - self.source.lo()) as usize].clone()
    }

    pub fn apply(&self, n: i64, x: &[Int]) -> Vec<Int> {
        self.matrix(n).mul_vec(x)
    }

    /// Morphism of groups in one degree.
    pub fn degree_morphism(&self, n: i64) -> GroupMorphism {
        GroupMorphism::new_unchecked(self.source.group(n), self.target.group(n), self.matrix(n))
    }

    /// `f_*: H_n(source) → H_n(target)` on the homology presentations.
    pub fn induced(&self, n: i64) -> GroupMorphism {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n);
        let m = self.matrix(n);
        let cols: Vec<Vec<Int>> = (0..hs.cycles.rank())
            .map(|k| {
                ht.class_of(&m.mul_vec(&hs.cycles.vector(k)))
                    .expect("chain maps send cycles to cycles")
            })
            .collect();
        GroupMorphism::new_unchecked(
            hs.group.clone(),
            ht.group.clone(),
            IntMatrix::from_columns(ht.group.gens(), &cols),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &other.target, |n| other.matrix(n).mul(&self.matrix(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |n| self.matrix(n).add(&other.matrix(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |n| self.matrix(n).sub(&other.matrix(n)))
    }

    pub fn scale(&self, s: &Int) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |n| self.matrix(n).scale(s))
    }

    /// `f ⊕ g: A ⊕ C → B ⊕ D`.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let s = self.source.direct_sum(&other.source);
        let t = self.target.direct_sum(&other.target);
        Self::from_fn_unchecked(&s, &t, |n| self.matrix(n).block_diag(&other.matrix(n)))
    }

    /// `[f | g]: A ⊕ B → T`.
    pub fn copair(&self, other: &ChainMap) -> ChainMap {
        let s = self.source.direct_sum(&other.source);
        Self::from_fn_unchecked(&s, &self.target, |n| self.matrix(n).hstack(&other.matrix(n)))
    }

    /// Inclusions `A → A ⊕ B` and `B → A ⊕ B`.
    pub fn sum_inclusions(a: &FpChainComplex, b: &FpChainComplex) -> (ChainMap, ChainMap) {
        let s = a.direct_sum(b);
        let ia = Self::from_fn_unchecked(a, &s, |n| {
            IntMatrix::identity(a.gens(n)).vstack(&IntMatrix::zeros(b.gens(n), a.gens(n)))
        });
        let ib = Self::from_fn_unchecked(b, &s, |n| {
            IntMatrix::zeros(a.gens(n), b.gens(n)).vstack(&IntMatrix::identity(b.gens(n)))
        });
        (ia, ib)
    }

    /// Projections `A ⊕ B → A` and `A ⊕ B → B`.
    pub fn sum_projections(a: &FpChainComplex, b: &FpChainComplex) -> (ChainMap, ChainMap) {
        let s = a.direct_sum(b);
        let pa = Self::from_fn_unchecked(&s, a, |n| {
            IntMatrix::identity(a.gens(n)).hstack(&IntMatrix::zeros(a.gens(n), b.gens(n)))
        });
        let pb = Self::from_fn_unchecked(&s, b, |n| {
            IntMatrix::zeros(b.gens(n), a.gens(n)).hstack(&IntMatrix::identity(b.gens(n)))
        });
        (pa, pb)
    }

    /// Equal as maps of groups in every degree.
    pub fn equals(&self, other: &ChainMap) -> bool {
        self.source.degrees().all(|n| self.degree_morphism(n).equals(&other.degree_morphism(n)))
    }

    /// First target degree where the map is not onto, if any.
    pub fn first_non_surjective(&self) -> Option<i64> {
        self.target
            .degrees()
            .find(|&n| !self.degree_morphism(n).is_surjective())
    }

    pub fn is_injective(&self) -> bool {
        self.source.degrees().all(|n| self.degree_morphism(n).is_injective())
    }

    /// Every induced map on homology is an isomorphism.
    pub fn is_quasi_iso(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| self.induced(n).is_iso())
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}
