use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix, IntegerSolver, LatticeBasis};

use super::complex::{FpChainComplex, FreeChainComplex};
use super::map::ChainMap;
use super::ses::{kernel_complex, ShortExactSeq};
use super::splitting::{BoundarySplitting, SplitDegree, WeakSplitting};
use super::tensor::{tensor_complex, tensor_fp, TensorComplex};

/// A free complex with a quasi-isomorphism `ν` onto the given complex.
#[derive(Clone, Debug)]
pub struct FreeApproximation {
    pub complex: FreeChainComplex,
    pub nu: ChainMap,
    pub splitting: BoundarySplitting,
}

/// Built from the surjective weak splitting, so `ν` is onto.
pub fn free_approximation(c: &FpChainComplex) -> FreeApproximation {
    FreeApproximation::from_weak(&WeakSplitting::surjective(c))
}

impl FreeApproximation {
    /// `F̂_n = B̂_{n-1} ⊕ Ẑ_n`, `∂(b, z) = (0, ι b)`, `ν = ψ + φ`, with the
    /// canonical splitting `(0, ι b) ↦ (b, 0)`.
    pub fn from_weak(ws: &WeakSplitting) -> Self {
        let c = ws.complex();
        if c.is_empty() {
            let z = FreeChainComplex::zero();
            return FreeApproximation {
                nu: ChainMap::zero(&z, c),
                splitting: BoundarySplitting::new(&z),
                complex: z,
            };
        }
        let lo = c.lo();
        let hi = c.hi() + 1;
        let bh = |n: i64| ws.degree(n).bhat_rank();
        let zh = |n: i64| ws.degree(n).zhat_rank();
        let ranks: Vec<usize> = (lo..=hi).map(|n| bh(n - 1) + zh(n)).collect();
        let boundaries: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|n| {
                let mut m = IntMatrix::zeros(bh(n - 2) + zh(n - 1), bh(n - 1) + zh(n));
                m.set_block(bh(n - 2), 0, &ws.degree(n - 1).iota);
                m
            })
            .collect();
        let f = FreeChainComplex::new(lo, &ranks, boundaries).expect("∂∂ = 0 since ι lands in cycles of F̂");
        let nu = ChainMap::from_fn_unchecked(&f, c, |n| ws.degree(n - 1).psi.hstack(&ws.degree(n).phi));
        let degrees = (lo..=hi)
            .map(|n| {
                let iota = ws.degree(n).iota;
                let mut img = IntMatrix::zeros(bh(n - 1) + zh(n), iota.cols());
                img.set_block(bh(n - 1), 0, &iota);
                let basis = LatticeBasis::span(&img);
                let solver = IntegerSolver::new(&iota);
                let cols: Vec<Vec<Int>> = (0..basis.rank())
                    .map(|k| {
                        let v = basis.vector(k);
                        let b = solver.solve(&v[bh(n - 1)..]).expect("basis lies in the image of ι");
                        let mut out = b;
                        out.resize(bh(n) + zh(n + 1), Int::from(0));
                        out
                    })
                    .collect();
                SplitDegree {
                    preimages: IntMatrix::from_columns(bh(n) + zh(n + 1), &cols),
                    basis,
                }
            })
            .collect();
        let splitting = BoundarySplitting::from_parts(&f, degrees).expect("canonical splitting inverts ∂");
        FreeApproximation {
            complex: f,
            nu,
            splitting,
        }
    }

    /// Any free complex with a chain map; checked to be a quasi-isomorphism.
    pub fn from_parts(complex: FreeChainComplex, nu: ChainMap) -> Result<Self> {
        let a = FreeApproximation {
            splitting: BoundarySplitting::new(&complex),
            complex,
            nu,
        };
        a.check()?;
        Ok(a)
    }

    pub fn target(&self) -> &FpChainComplex {
        self.nu.target()
    }

    pub fn check(&self) -> Result<()> {
        self.nu.check()?;
        if !self.nu.is_quasi_iso() {
            return Err(Error::InvalidComplex {
                degree: self.complex.lo(),
                reason: "approximation is not a quasi-isomorphism".into(),
            });
        }
        self.splitting.check()
    }
}

/// Pullback cover of a surjective `f: C → E` along `ν_E`: a free
/// approximation of `C` and a surjection onto `F_E` over `f`.
pub fn cover_surjective(f: &ChainMap, approx: &FreeApproximation) -> Result<(FreeApproximation, ChainMap)> {
    if let Some(n) = f.first_non_surjective() {
        return Err(Error::NotSurjective { degree: n });
    }
    let c = f.source();
    let fe = approx.complex.as_fp();
    let h = f.copair(&approx.nu.scale(&Int::from(-1)));
    let (p, incl) = kernel_complex(&h);
    let ap = free_approximation(&p);
    let (pc, pf) = ChainMap::sum_projections(c, fe);
    let nu = ap.nu.then(&incl).then(&pc);
    let lifted = ap.nu.then(&incl).then(&pf);
    let out = FreeApproximation {
        complex: ap.complex.clone(),
        nu,
        splitting: ap.splitting.clone(),
    };
    Ok((out, lifted))
}

/// Free approximations of a short exact sequence with a short exact top row.
#[derive(Clone, Debug)]
pub struct SesApproximation {
    pub sub: FreeApproximation,
    pub middle: FreeApproximation,
    pub quotient: FreeApproximation,
    pub f_hat: ChainMap,
    pub g_hat: ChainMap,
}

pub fn ses_free_approximation(ses: &ShortExactSeq) -> Result<SesApproximation> {
    ses.check()?;
    ses_free_approximation_from(ses, free_approximation(ses.quotient()))
}

/// As [`ses_free_approximation`] over a chosen approximation of the quotient.
pub fn ses_free_approximation_from(ses: &ShortExactSeq, quotient: FreeApproximation) -> Result<SesApproximation> {
    let (middle, g_hat) = cover_surjective(&ses.g, &quotient)?;
    let (k, incl) = kernel_complex(&g_hat);
    let k = FreeChainComplex::from_fp(k)?;
    let to_b = incl.then(&middle.nu);
    let a = ses.sub();
    let mats = k
        .degrees()
        .map(|n| {
            let solver = ses.f.degree_morphism(n).preimage_solver();
            let m = to_b.matrix(n);
            let cols: Vec<Vec<Int>> = m
                .columns()
                .iter()
                .map(|col| solver.solve(col).expect("lands in ker g = im f"))
                .collect();
            IntMatrix::from_columns(a.gens(n), &cols)
        })
        .collect();
    let nu_a = ChainMap::new_unchecked(k.as_fp().clone(), a.clone(), mats);
    let sub = FreeApproximation {
        splitting: BoundarySplitting::new(&k),
        complex: k,
        nu: nu_a,
    };
    Ok(SesApproximation {
        sub,
        middle,
        quotient,
        f_hat: incl,
        g_hat,
    })
}

impl SesApproximation {
    /// Both squares commute, the top row is short exact, and every `ν` is a
    /// quasi-isomorphism.
    pub fn check(&self, ses: &ShortExactSeq) -> Result<()> {
        self.check_maps(&ses.f, &ses.g)
    }

    /// As [`SesApproximation::check`] for any pair of maps along the bottom row.
    pub fn check_maps(&self, f: &ChainMap, g: &ChainMap) -> Result<()> {
        let left = self.f_hat.then(&self.middle.nu);
        let left2 = self.sub.nu.then(f);
        if !left.equals(&left2) {
            return Err(Error::NotExact {
                degree: self.sub.complex.lo(),
                reason: "left square does not commute".into(),
            });
        }
        let right = self.g_hat.then(&self.quotient.nu);
        let right2 = self.middle.nu.then(g);
        if !right.equals(&right2) {
            return Err(Error::NotExact {
                degree: self.middle.complex.lo(),
                reason: "right square does not commute".into(),
            });
        }
        ShortExactSeq::new(self.f_hat.clone(), self.g_hat.clone())?;
        for a in [&self.sub, &self.middle, &self.quotient] {
            a.check()?;
        }
        Ok(())
    }
}

/// `ν_C ⊗ ν_D: F_C ⊗ F_D → C ⊗ D` with both tensor complexes.
pub fn tensor_approximation(ac: &FreeApproximation, ad: &FreeApproximation) -> (TensorComplex, TensorComplex, ChainMap) {
    let free = tensor_complex(&ac.complex, &ad.complex).expect("approximations are free");
    let target = tensor_fp(ac.target(), ad.target());
    let map = free.tensor_map(&ac.nu, &ad.nu, &target);
    (free, target, map)
}

/// Whether `ν_C ⊗ ν_D` is a quasi-isomorphism.
pub fn dold_check(ac: &FreeApproximation, ad: &FreeApproximation) -> bool {
    tensor_approximation(ac, ad).2.is_quasi_iso()
}
