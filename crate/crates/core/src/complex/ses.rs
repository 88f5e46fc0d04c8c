use crate::abelian::FpAbGroup;
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};

use super::complex::FpChainComplex;
use super::map::ChainMap;

/// Degreewise kernel of a chain map, with its inclusion into the source.
pub fn kernel_complex(h: &ChainMap) -> (FpChainComplex, ChainMap) {
    let src = h.source();
    if src.is_empty() {
        return (FpChainComplex::zero(), ChainMap::zero(&FpChainComplex::zero(), src));
    }
    let lattices: Vec<_> = src.degrees().map(|n| h.degree_morphism(n).kernel_lattice()).collect();
    let at = |n: i64| &lattices[(n - src.lo()) as usize];
    let groups: Vec<FpAbGroup> = src
        .degrees()
        .map(|n| {
            let lat = at(n);
            let cols: Vec<Vec<Int>> = src
                .relations(n)
                .columns()
                .iter()
                .map(|c| {
                    lat.coordinates(c)
                        .expect("dimension checked")
                        .expect("relations lie in the kernel")
                })
                .collect();
            FpAbGroup::new(lat.rank(), IntMatrix::from_columns(lat.rank(), &cols)).expect("shape is consistent")
        })
        .collect();
    let boundaries: Vec<IntMatrix> = (src.lo() + 1..=src.hi())
        .map(|n| {
            let img = src.boundary(n).mul(at(n).basis());
            let below = at(n - 1);
            let cols: Vec<Vec<Int>> = img
                .columns()
                .iter()
                .map(|c| {
                    below
                        .coordinates(c)
                        .expect("dimension checked")
                        .expect("boundaries of kernel chains stay in the kernel")
                })
                .collect();
            IntMatrix::from_columns(below.rank(), &cols)
        })
        .collect();
    let k = FpChainComplex::new_unchecked(src.lo(), groups, boundaries);
    let incl = ChainMap::from_fn_unchecked(&k, src, |n| at(n).basis().clone());
    (k, incl)
}

/// `0 → A --f--> B --g--> C → 0`, exact in every degree.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub f: ChainMap,
    pub g: ChainMap,
}

impl ShortExactSeq {
    pub fn new(f: ChainMap, g: ChainMap) -> Result<Self> {
        let s = ShortExactSeq { f, g };
        s.check()?;
        Ok(s)
    }

    pub fn sub(&self) -> &FpChainComplex {
        self.f.source()
    }

    pub fn middle(&self) -> &FpChainComplex {
        self.f.target()
    }

    pub fn quotient(&self) -> &FpChainComplex {
        self.g.target()
    }

    fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        let cs = [self.sub(), self.middle(), self.quotient()];
        let lo = cs.iter().filter(|c| !c.is_empty()).map(|c| c.lo()).min().unwrap_or(0);
        let hi = cs.iter().filter(|c| !c.is_empty()).map(|c| c.hi()).max().unwrap_or(-1);
        lo..=hi
    }

    pub fn check(&self) -> Result<()> {
        if !self.f.target().same_data(self.g.source()) {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        for n in self.degree_range() {
            let fail = |reason: &str| Error::NotExact {
                degree: n,
                reason: reason.to_string(),
            };
            let fm = self.f.degree_morphism(n);
            let gm = self.g.degree_morphism(n);
            if !fm.then(&gm).is_zero() {
                return Err(fail("g∘f is not zero"));
            }
            if !fm.is_injective() {
                return Err(fail("f is not injective"));
            }
            if !gm.is_surjective() {
                return Err(fail("g is not surjective"));
            }
            let solver = fm.preimage_solver();
            let ker = gm.kernel_lattice();
            if (0..ker.rank()).any(|k| solver.solve(&ker.vector(k)).is_none()) {
                return Err(fail("kernel of g exceeds image of f"));
            }
        }
        self.f.check()?;
        self.g.check()
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(a: &FpChainComplex, c: &FpChainComplex) -> Self {
        let (ia, _) = ChainMap::sum_inclusions(a, c);
        let (_, pc) = ChainMap::sum_projections(a, c);
        ShortExactSeq { f: ia, g: pc }
    }
}
