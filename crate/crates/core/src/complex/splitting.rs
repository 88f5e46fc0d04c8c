use rand::Rng;

use crate::abelian::{FpAbGroup, GroupMorphism};
use crate::error::{Error, Result};
use crate::random::random_matrix;
use crate::linalg::{vecops, Int, IntMatrix, IntegerSolver, LatticeBasis};

use super::complex::{FpChainComplex, FreeChainComplex};

/// `σ_n: B_n → C_{n+1}` with `∂σ = id`, stored on the Hermite basis of `B_n`.
#[derive(Clone, Debug)]
pub struct SplitDegree {
    pub basis: LatticeBasis,
    pub preimages: IntMatrix,
}

#[derive(Clone, Debug)]
pub struct BoundarySplitting {
    complex: FreeChainComplex,
    degrees: Vec<SplitDegree>,
}

pub fn boundary_splitting(c: &FreeChainComplex) -> BoundarySplitting {
    BoundarySplitting::new(c)
}

impl BoundarySplitting {
    pub fn new(c: &FreeChainComplex) -> Self {
        let degrees = c
            .degrees()
            .map(|n| {
                let h = c.homology(n);
                let basis = h.boundaries.clone();
                let cols: Vec<Vec<Int>> = (0..basis.rank())
                    .map(|k| h.lift_boundary(&basis.vector(k)).expect("basis vectors are boundaries"))
                    .collect();
                SplitDegree {
                    preimages: IntMatrix::from_columns(c.gens(n + 1), &cols),
                    basis,
                }
            })
            .collect();
        BoundarySplitting {
            complex: c.clone(),
            degrees,
        }
    }

    /// Assembles from explicit data, checking `∂σ = id`.
    pub fn from_parts(c: &FreeChainComplex, degrees: Vec<SplitDegree>) -> Result<Self> {
        let s = BoundarySplitting {
            complex: c.clone(),
            degrees,
        };
        s.check()?;
        Ok(s)
    }

    pub fn complex(&self) -> &FreeChainComplex {
        &self.complex
    }

    pub fn degree(&self, n: i64) -> Option<&SplitDegree> {
        if self.complex.is_empty() || n < self.complex.lo() || n > self.complex.hi() {
            None
        } else {
            Some(&self.degrees[(n - self.complex.lo()) as usize])
        }
    }

    /// `σ_n(x)` for a boundary `x ∈ C_n`.
    pub fn apply(&self, n: i64, x: &[Int]) -> Result<Vec<Int>> {
        match self.degree(n) {
            None => {
                if vecops::is_zero(x) {
                    Ok(vecops::zeros(self.complex.gens(n + 1)))
                } else {
                    Err(Error::NotABoundary { degree: n })
                }
            }
            Some(d) => {
                let c = d.basis.coordinates(x)?.ok_or(Error::NotABoundary { degree: n })?;
                Ok(d.preimages.mul_vec(&c))
            }
        }
    }

    pub fn check(&self) -> Result<()> {
        for n in self.complex.degrees() {
            let d = self.degree(n).expect("in range");
            let img = self.complex.boundary(n + 1).mul(&d.preimages);
            if &img != d.basis.basis() {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: "boundary splitting does not invert ∂".into(),
                });
            }
        }
        Ok(())
    }

    /// Another splitting: each preimage moved by a random cycle.
    pub fn perturbed<R: Rng>(&self, rng: &mut R, bound: i64) -> Self {
        let degrees = self
            .complex
            .degrees()
            .map(|n| {
                let d = self.degree(n).expect("in range");
                let z = self.complex.homology(n + 1).cycles.clone();
                let noise = random_matrix(rng, z.rank(), d.basis.rank(), bound);
                SplitDegree {
                    basis: d.basis.clone(),
                    preimages: d.preimages.add(&z.basis().mul(&noise)),
                }
            })
            .collect();
        BoundarySplitting {
            complex: self.complex.clone(),
            degrees,
        }
    }
}

/// Weak splitting data in one degree: a free resolution
/// `0 → B̂ --ι--> Ẑ --π--> H_n → 0` with `φ: Ẑ → Z_n` and `ψ: B̂ → C_{n+1}`
/// such that `ζ∘φ = π` and `∂∘ψ = φ∘ι`.
#[derive(Clone, Debug)]
pub struct WeakDegree {
    pub iota: IntMatrix,
    pub pi: IntMatrix,
    pub phi: IntMatrix,
    pub psi: IntMatrix,
}

impl WeakDegree {
    pub fn zhat_rank(&self) -> usize {
        self.iota.rows()
    }

    pub fn bhat_rank(&self) -> usize {
        self.iota.cols()
    }
}

#[derive(Clone, Debug)]
pub struct WeakSplitting {
    complex: FpChainComplex,
    degrees: Vec<WeakDegree>,
}

/// Weak splitting from a boundary splitting when `C` is free, otherwise the
/// surjective construction.
pub fn weak_splitting(c: &FpChainComplex) -> WeakSplitting {
    match FreeChainComplex::from_fp(c.clone()) {
        Ok(free) => WeakSplitting::from_boundary_splitting(&BoundarySplitting::new(&free)),
        Err(_) => WeakSplitting::surjective(c),
    }
}

impl WeakSplitting {
    /// Minimal resolution on the canonical generators of each `H_n`:
    /// `φ` picks generator cycles and `ψ(e_k) = σ(d_k·φ(e_k))`.
    pub fn from_boundary_splitting(sigma: &BoundarySplitting) -> Self {
        let c = sigma.complex();
        let degrees = c
            .degrees()
            .map(|n| {
                let h = c.homology(n);
                let orders = h.group.canonical_orders();
                let t = h.group.torsion_count();
                let zr = orders.len();
                let mut iota = IntMatrix::zeros(zr, t);
                for k in 0..t {
                    iota[(k, k)] = orders[k].clone();
                }
                let pi = h.group.from_canonical_matrix().clone();
                let phi = IntMatrix::from_columns(c.gens(n), &h.generator_cycles);
                let psi_cols: Vec<Vec<Int>> = (0..t)
                    .map(|k| {
                        let b = vecops::scale(&h.generator_cycles[k], &orders[k]);
                        sigma.apply(n, &b).expect("d_k times a generator cycle is a boundary")
                    })
                    .collect();
                WeakDegree {
                    iota,
                    pi,
                    phi,
                    psi: IntMatrix::from_columns(c.gens(n + 1), &psi_cols),
                }
            })
            .collect();
        WeakSplitting {
            complex: c.as_fp().clone(),
            degrees,
        }
    }

    /// `Ẑ_n` free on a basis of the cycle lattice (so `φ` is onto the cycles),
    /// `B̂_n` free on a basis of the boundary lattice.
    pub fn surjective(c: &FpChainComplex) -> Self {
        let degrees = c
            .degrees()
            .map(|n| {
                let h = c.homology(n);
                let iota = h.group.relations().clone();
                let pi = IntMatrix::identity(h.group.gens());
                let phi = h.cycles.basis().clone();
                let psi_cols: Vec<Vec<Int>> = (0..h.boundaries.rank())
                    .map(|k| {
                        h.lift_boundary(&h.boundaries.vector(k))
                            .expect("basis vectors are boundaries")
                    })
                    .collect();
                WeakDegree {
                    iota,
                    pi,
                    phi,
                    psi: IntMatrix::from_columns(c.gens(n + 1), &psi_cols),
                }
            })
            .collect();
        WeakSplitting {
            complex: c.clone(),
            degrees,
        }
    }

    /// Assembles from explicit data and checks every axiom.
    pub fn from_parts(c: &FpChainComplex, degrees: Vec<WeakDegree>) -> Result<Self> {
        let ws = WeakSplitting {
            complex: c.clone(),
            degrees,
        };
        ws.check()?;
        Ok(ws)
    }

    pub fn complex(&self) -> &FpChainComplex {
        &self.complex
    }

    fn empty_degree(&self, n: i64) -> WeakDegree {
        WeakDegree {
            iota: IntMatrix::zeros(0, 0),
            pi: IntMatrix::zeros(self.complex.homology(n).group.gens(), 0),
            phi: IntMatrix::zeros(self.complex.gens(n), 0),
            psi: IntMatrix::zeros(self.complex.gens(n + 1), 0),
        }
    }

    /// Data in degree `n`; empty resolutions outside the complex.
    pub fn degree(&self, n: i64) -> WeakDegree {
        if self.complex.is_empty() || n < self.complex.lo() || n > self.complex.hi() {
            self.empty_degree(n)
        } else {
            self.degrees[(n - self.complex.lo()) as usize].clone()
        }
    }

    pub fn degree_ref(&self, n: i64) -> Option<&WeakDegree> {
        if self.complex.is_empty() || n < self.complex.lo() || n > self.complex.hi() {
            None
        } else {
            Some(&self.degrees[(n - self.complex.lo()) as usize])
        }
    }

    pub fn degrees_data(&self) -> &[WeakDegree] {
        &self.degrees
    }

    /// The surjection `Ẑ_n → H_n` as a group morphism.
    pub fn pi_morphism(&self, n: i64) -> GroupMorphism {
        let d = self.degree(n);
        GroupMorphism::new_unchecked(
            FpAbGroup::free(d.zhat_rank()),
            self.complex.homology(n).group.clone(),
            d.pi,
        )
    }

    /// Some `ẑ ∈ Ẑ_n` with `π(ẑ) = a`.
    pub fn lift(&self, n: i64, a: &[Int]) -> Vec<Int> {
        self.pi_morphism(n).preimage(a).expect("π is onto")
    }

    /// The unique `u ∈ B̂_n` with `ι(u) = w`, if any.
    pub fn iota_solve(&self, n: i64, w: &[Int]) -> Option<Vec<Int>> {
        let d = self.degree(n);
        IntegerSolver::new(&d.iota).solve(w)
    }

    /// Verifies the resolution is exact and both diagrams commute.
    pub fn check(&self) -> Result<()> {
        let c = &self.complex;
        for n in c.degrees() {
            let d = self.degree(n);
            let h = c.homology(n);
            let fail = |reason: &str| Error::InvalidComplex {
                degree: n,
                reason: reason.to_string(),
            };
            let pi = self.pi_morphism(n);
            if !pi.is_surjective() {
                return Err(fail("resolution map onto homology is not surjective"));
            }
            let iota = GroupMorphism::new_unchecked(
                FpAbGroup::free(d.bhat_rank()),
                FpAbGroup::free(d.zhat_rank()),
                d.iota.clone(),
            );
            if !iota.is_injective() {
                return Err(fail("ι is not injective"));
            }
            if LatticeBasis::span(&d.iota) != pi.kernel_lattice() {
                return Err(fail("image of ι differs from the kernel of π"));
            }
            for k in 0..d.zhat_rank() {
                let z = d.phi.column(k);
                let cls = h.class_of(&z).map_err(|_| fail("φ does not land in cycles"))?;
                if !h.group.eq_elements(&cls, &d.pi.column(k)) {
                    return Err(fail("ζ∘φ differs from π"));
                }
            }
            let lhs = c.boundary(n + 1).mul(&d.psi);
            let rhs = d.phi.mul(&d.iota);
            let g = c.group(n);
            if (0..d.bhat_rank()).any(|k| !g.eq_elements(&lhs.column(k), &rhs.column(k))) {
                return Err(fail("∂∘ψ differs from φ∘ι"));
            }
        }
        Ok(())
    }

    /// Block sum on `C ⊕ D`, with `π = ζ∘φ` recomputed on the sum.
    pub fn direct_sum(&self, other: &WeakSplitting) -> WeakSplitting {
        let c = self.complex.direct_sum(&other.complex);
        let degrees = c
            .degrees()
            .map(|n| {
                let a = self.degree(n);
                let b = other.degree(n);
                let phi = a.phi.block_diag(&b.phi);
                let h = c.homology(n);
                let cols: Vec<Vec<Int>> = phi
                    .columns()
                    .iter()
                    .map(|z| h.class_of(z).expect("φ lands in cycles"))
                    .collect();
                WeakDegree {
                    iota: a.iota.block_diag(&b.iota),
                    pi: IntMatrix::from_columns(h.group.gens(), &cols),
                    phi,
                    psi: a.psi.block_diag(&b.psi),
                }
            })
            .collect();
        WeakSplitting { complex: c, degrees }
    }

    /// Same complex and identical data in every degree.
    pub fn same_as(&self, other: &WeakSplitting) -> bool {
        if !self.complex.same_data(&other.complex) {
            return false;
        }
        let lo = self.complex.lo().min(other.complex.lo());
        let hi = self.complex.hi().max(other.complex.hi());
        (lo..=hi).all(|n| {
            let (a, b) = (self.degree(n), other.degree(n));
            a.iota == b.iota && a.pi == b.pi && a.phi == b.phi && a.psi == b.psi
        })
    }

    /// Another weak splitting over the same resolutions:
    /// `φ' = φ + ∂c`, `ψ' = ψ + c∘ι + (random cycles)`.
    pub fn perturbed<R: Rng>(&self, rng: &mut R, bound: i64) -> Self {
        let c = &self.complex;
        let degrees = c
            .degrees()
            .map(|n| {
                let d = self.degree(n);
                let g1 = c.gens(n + 1);
                let shift = random_matrix(rng, g1, d.zhat_rank(), bound);
                let z = c.homology(n + 1).cycles.clone();
                let noise = z.basis().mul(&random_matrix(rng, z.rank(), d.bhat_rank(), bound));
                WeakDegree {
                    phi: d.phi.add(&c.boundary(n + 1).mul(&shift)),
                    psi: d.psi.add(&shift.mul(&d.iota)).add(&noise),
                    iota: d.iota,
                    pi: d.pi,
                }
            })
            .collect();
        WeakSplitting {
            complex: c.clone(),
            degrees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin::{moore, rp};
    use crate::complex::tensor::mod_reduction;
    use crate::linalg::vecops::from_i64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn moore_sigma() {
        let c = moore(2, 1);
        let s = BoundarySplitting::new(&c);
        assert_eq!(s.apply(1, &from_i64(&[2])).unwrap(), from_i64(&[1]));
        assert!(s.apply(1, &from_i64(&[1])).is_err());
        let r = rp(3);
        let s = BoundarySplitting::new(&r);
        assert_eq!(s.apply(1, &from_i64(&[2])).unwrap(), from_i64(&[1]));
        assert_eq!(s.degree(0).unwrap().basis.rank(), 0);
    }

    #[test]
    fn moore_weak() {
        let c = moore(2, 1);
        let ws = WeakSplitting::from_boundary_splitting(&BoundarySplitting::new(&c));
        ws.check().unwrap();
        let d = ws.degree(1);
        assert_eq!(d.iota, IntMatrix::from_rows(&[[2]]));
        assert_eq!(d.phi, IntMatrix::from_rows(&[[1]]));
        assert_eq!(d.psi, IntMatrix::from_rows(&[[1]]));
    }

    #[test]
    fn surjective_and_perturbed_pass_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in [moore(4, 1).into_fp(), rp(4).into_fp()] {
            let ws = WeakSplitting::surjective(&c);
            ws.check().unwrap();
            ws.perturbed(&mut rng, 3).check().unwrap();
        }
        let m = mod_reduction(moore(2, 1).as_fp(), &Int::from(2)).unwrap();
        let ws = WeakSplitting::surjective(&m);
        ws.check().unwrap();
        ws.perturbed(&mut rng, 3).check().unwrap();
    }

    #[test]
    fn perturbed_boundary_splitting_still_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = rp(5);
        let s = BoundarySplitting::new(&c).perturbed(&mut rng, 4);
        s.check().unwrap();
    }
}
