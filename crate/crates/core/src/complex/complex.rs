use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::abelian::FpAbGroup;
use crate::error::{Error, Result};
use crate::linalg::{vecops, Int, IntMatrix};

use super::homology::HomologyData;

/// Bounded chain complex of finitely presented abelian groups.
///
/// Degrees outside `[lo, hi]` carry the zero group. `∂_n: C_n → C_{n-1}` is
/// stored as a `gens(n-1) × gens(n)` matrix. Cloning shares the data and the
/// homology cache.
#[derive(Clone)]
pub struct FpChainComplex(Arc<ComplexInner>);

struct ComplexInner {
    lo: i64,
    groups: Vec<FpAbGroup>,
    boundaries: Vec<IntMatrix>,
    homology: Vec<OnceLock<Arc<HomologyData>>>,
}

/// Validation outcome: the first failing degree, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid { degree: i64, reason: String },
}

impl FpChainComplex {
    /// `boundaries[k]` is `∂_{lo+k+1}`; there is one fewer boundary than group.
    pub fn new(lo: i64, groups: Vec<FpAbGroup>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        match check(lo, &groups, &boundaries) {
            Validity::Valid => Ok(Self::new_unchecked(lo, groups, boundaries)),
            Validity::Invalid { degree, reason } => Err(Error::InvalidComplex { degree, reason }),
        }
    }

    pub(crate) fn new_unchecked(lo: i64, groups: Vec<FpAbGroup>, boundaries: Vec<IntMatrix>) -> Self {
        let mut boundaries = boundaries;
        if groups.is_empty() {
            boundaries.clear();
        }
        let homology = (0..groups.len() + 2).map(|_| OnceLock::new()).collect();
        FpChainComplex(Arc::new(ComplexInner {
            lo,
            groups,
            boundaries,
            homology,
        }))
    }

    pub fn zero() -> Self {
        Self::new_unchecked(0, Vec::new(), Vec::new())
    }

    pub fn lo(&self) -> i64 {
        self.0.lo
    }

    /// Top degree; for an empty complex this is `lo - 1`.
    pub fn hi(&self) -> i64 {
        self.0.lo + self.0.groups.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.groups.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.lo() || n > self.hi() {
            None
        } else {
            Some((n - self.lo()) as usize)
        }
    }

    pub fn group(&self, n: i64) -> FpAbGroup {
        match self.index(n) {
            Some(k) => self.0.groups[k].clone(),
            None => FpAbGroup::trivial(),
        }
    }

    pub fn gens(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.0.groups[k].gens())
    }

    pub fn relations(&self, n: i64) -> IntMatrix {
        match self.index(n) {
            Some(k) => self.0.groups[k].relations().clone(),
            None => IntMatrix::zeros(0, 0),
        }
    }

    /// `∂_n`, zero-padded outside the stored range.
    pub fn boundary(&self, n: i64) -> IntMatrix {
        match (self.index(n), self.index(n - 1)) {
            (Some(k), Some(_)) => self.0.boundaries[k - 1].clone(),
            _ => IntMatrix::zeros(self.gens(n - 1), self.gens(n)),
        }
    }

    pub(crate) fn boundary_ref(&self, n: i64) -> Option<&IntMatrix> {
        match (self.index(n), self.index(n - 1)) {
            (Some(k), Some(_)) => Some(&self.0.boundaries[k - 1]),
            _ => None,
        }
    }

    pub fn apply_boundary(&self, n: i64, x: &[Int]) -> Vec<Int> {
        match self.boundary_ref(n) {
            Some(m) => m.mul_vec(x),
            None => vecops::zeros(self.gens(n - 1)),
        }
    }

    /// Every group presented without relations.
    pub fn is_free(&self) -> bool {
        self.0.groups.iter().all(FpAbGroup::is_free_presentation)
    }

    /// Every group torsion-free (free presentations always are).
    pub fn is_torsion_free(&self) -> bool {
        self.0.groups.iter().all(FpAbGroup::is_torsion_free)
    }

    pub fn validate(&self) -> Validity {
        check(self.0.lo, &self.0.groups, &self.0.boundaries)
    }

    pub fn homology(&self, n: i64) -> Arc<HomologyData> {
        match self.index(n) {
            Some(k) => self.0.homology[k]
                .get_or_init(|| Arc::new(HomologyData::compute(self, n)))
                .clone(),
            None => Arc::new(HomologyData::compute(self, n)),
        }
    }

    pub fn chain(&self, degree: i64, coords: Vec<Int>) -> Chain {
        assert_eq!(coords.len(), self.gens(degree), "chain length mismatch at degree {degree}");
        Chain { degree, coords }
    }

    pub fn zero_chain(&self, degree: i64) -> Chain {
        self.chain(degree, vecops::zeros(self.gens(degree)))
    }

    /// Equality of chains in the group `C_n` (modulo its relations).
    pub fn chains_equal(&self, n: i64, x: &[Int], y: &[Int]) -> bool {
        self.group(n).eq_elements(x, y)
    }

    pub fn is_cycle(&self, n: i64, x: &[Int]) -> bool {
        self.group(n - 1).is_zero(&self.apply_boundary(n, x))
    }

    /// Same underlying allocation.
    pub fn ptr_eq(&self, other: &FpChainComplex) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Same presentations and boundary matrices in every degree (zero groups outside the ranges).
    pub fn same_data(&self, other: &FpChainComplex) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        let (lo, hi) = match (self.is_empty(), other.is_empty()) {
            (true, true) => return true,
            (true, false) => (other.lo(), other.hi()),
            (false, true) => (self.lo(), self.hi()),
            (false, false) => (self.lo().min(other.lo()), self.hi().max(other.hi())),
        };
        (lo..=hi).all(|n| self.group(n).same_presentation(&other.group(n)) && self.boundary(n) == other.boundary(n))
    }

    pub fn groups(&self) -> &[FpAbGroup] {
        &self.0.groups
    }

    pub fn stored_boundaries(&self) -> &[IntMatrix] {
        &self.0.boundaries
    }

    /// `C ⊕ D`, generators of `C` first in every degree.
    pub fn direct_sum(&self, other: &FpChainComplex) -> FpChainComplex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        let groups = (lo..=hi).map(|n| self.group(n).direct_sum(&other.group(n))).collect();
        let boundaries = (lo + 1..=hi)
            .map(|n| self.boundary(n).block_diag(&other.boundary(n)))
            .collect();
        Self::new_unchecked(lo, groups, boundaries)
    }

    /// Same complex viewed on a wider degree range (padding with zero groups).
    pub fn widen(&self, lo: i64, hi: i64) -> FpChainComplex {
        let lo = if self.is_empty() { lo } else { lo.min(self.lo()) };
        let hi = if self.is_empty() { hi } else { hi.max(self.hi()) };
        if lo > hi {
            return Self::zero();
        }
        let groups = (lo..=hi).map(|n| self.group(n)).collect();
        let boundaries = (lo + 1..=hi).map(|n| self.boundary(n)).collect();
        Self::new_unchecked(lo, groups, boundaries)
    }
}

fn check(lo: i64, groups: &[FpAbGroup], boundaries: &[IntMatrix]) -> Validity {
    let bad = |degree: i64, reason: String| Validity::Invalid { degree, reason };
    if groups.is_empty() {
        if boundaries.is_empty() {
            return Validity::Valid;
        }
        return bad(lo, "boundaries given for an empty complex".into());
    }
    if boundaries.len() + 1 != groups.len() {
        return bad(
            lo,
            format!("{} groups need {} boundaries, got {}", groups.len(), groups.len() - 1, boundaries.len()),
        );
    }
    for (k, d) in boundaries.iter().enumerate() {
        let n = lo + k as i64 + 1;
        let (src, tgt) = (&groups[k + 1], &groups[k]);
        if d.rows() != tgt.gens() || d.cols() != src.gens() {
            return bad(
                n,
                format!(
                    "boundary is {}x{} but C_{} has {} and C_{} has {} generators",
                    d.rows(),
                    d.cols(),
                    n - 1,
                    tgt.gens(),
                    n,
                    src.gens()
                ),
            );
        }
        let images = d.mul(src.relations());
        if images.columns().iter().any(|c| !tgt.relation_lattice().contains(c)) {
            return bad(n, "boundary does not respect relations".into());
        }
        if k > 0 {
            let prev = &boundaries[k - 1];
            let dd = prev.mul(d);
            let lower = &groups[k - 1];
            if dd.columns().iter().any(|c| !lower.is_zero(c)) {
                return bad(n, format!("∂_{}∘∂_{} is nonzero", n - 1, n));
            }
        }
    }
    Validity::Valid
}

impl fmt::Debug for FpChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpChainComplex[{}..={}]", self.lo(), self.hi())?;
        for n in self.degrees() {
            write!(f, " C{}={}", n, self.group(n))?;
        }
        Ok(())
    }
}

/// A chain complex whose groups are all `ℤ^rank`.
#[derive(Clone)]
pub struct FreeChainComplex(FpChainComplex);

impl FreeChainComplex {
    /// `boundaries[k]` is `∂_{lo+k+1}`.
    pub fn new(lo: i64, ranks: &[usize], boundaries: Vec<IntMatrix>) -> Result<Self> {
        let groups = ranks.iter().map(|&r| FpAbGroup::free(r)).collect();
        FpChainComplex::new(lo, groups, boundaries).map(FreeChainComplex)
    }

    pub fn zero() -> Self {
        FreeChainComplex(FpChainComplex::zero())
    }

    /// Wraps a complex after checking that every group is relation-free.
    pub fn from_fp(c: FpChainComplex) -> Result<Self> {
        for n in c.degrees() {
            if !c.group(n).is_free_presentation() {
                return Err(Error::NotFree { degree: n });
            }
        }
        Ok(FreeChainComplex(c))
    }

    pub fn rank(&self, n: i64) -> usize {
        self.gens(n)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees().map(|n| self.rank(n)).collect()
    }

    pub fn as_fp(&self) -> &FpChainComplex {
        &self.0
    }

    pub fn into_fp(self) -> FpChainComplex {
        self.0
    }

    pub fn direct_sum(&self, other: &FreeChainComplex) -> FreeChainComplex {
        FreeChainComplex(self.0.direct_sum(&other.0))
    }
}

impl Deref for FreeChainComplex {
    type Target = FpChainComplex;
    fn deref(&self) -> &FpChainComplex {
        &self.0
    }
}

impl fmt::Debug for FreeChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Free{:?}", self.0)
    }
}

/// A homogeneous chain: degree plus coordinates on the generators there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: i64,
    pub coords: Vec<Int>,
}

impl Chain {
    pub fn new(degree: i64, coords: Vec<Int>) -> Self {
        Chain { degree, coords }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        Chain::new(self.degree, vecops::add(&self.coords, &other.coords))
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "subtracting chains of different degrees");
        Chain::new(self.degree, vecops::sub(&self.coords, &other.coords))
    }

    pub fn scale(&self, s: &Int) -> Chain {
        Chain::new(self.degree, vecops::scale(&self.coords, s))
    }

    pub fn is_zero(&self) -> bool {
        vecops::is_zero(&self.coords)
    }
}
