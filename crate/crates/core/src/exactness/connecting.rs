use crate::abelian::GroupMorphism;
use crate::complex::{
    free_approximation, mod_reduction, ses_free_approximation, tensor_approximation, tensor_fp, ChainMap,
    FpChainComplex, FreeApproximation, SesApproximation, ShortExactSeq,
};
use crate::error::{Error, Result};
use crate::kunneth::{check_tor_acyclic, Bockstein};
use crate::linalg::{vecops, Int, IntMatrix};

/// Zig-zag `H_n(C) → H_{n−1}(A)` for `A --f--> B --g--> C` exact in degrees
/// `n` and `n−1`: lift along `g`, take `∂`, pull back along `f`.
pub fn zigzag(f: &ChainMap, g: &ChainMap, n: i64) -> GroupMorphism {
    let (a, b, c) = (f.source(), f.target(), g.target());
    let hc = c.homology(n);
    let ha = a.homology(n - 1);
    let lift = g.degree_morphism(n).preimage_solver();
    let back = f.degree_morphism(n - 1).preimage_solver();
    let cols: Vec<Vec<Int>> = (0..hc.group.gens())
        .map(|k| {
            let z = hc.cycle_of(&vecops::unit(hc.group.gens(), k));
            let y = lift.solve(&z).expect("g is onto");
            let w = b.apply_boundary(n, &y);
            let x = back.solve(&w).expect("∂y lies in ker g = im f");
            ha.class_of(&x).expect("x is a cycle since f is injective")
        })
        .collect();
    GroupMorphism::new_unchecked(hc.group.clone(), ha.group.clone(), IntMatrix::from_columns(ha.group.gens(), &cols))
}

impl ShortExactSeq {
    /// The connecting map `H_n(C) → H_{n−1}(A)`.
    pub fn connecting(&self, n: i64) -> GroupMorphism {
        zigzag(&self.f, &self.g, n)
    }

    /// `im = ker` at each of `H_n(A), H_n(B), H_n(C)` for `n` in `degrees`.
    pub fn long_exact_check(&self, degrees: impl IntoIterator<Item = i64>) -> Result<()> {
        for n in degrees {
            let fs = self.f.induced(n);
            let gs = self.g.induced(n);
            let d = self.connecting(n);
            let fs1 = self.f.induced(n - 1);
            let dn1 = self.connecting(n + 1);
            let pairs = [("H(A)", &dn1, &fs), ("H(B)", &fs, &gs), ("H(C)", &gs, &d), ("H(A) below", &d, &fs1)];
            for (at, x, y) in pairs {
                if !exact_at(x, y) {
                    return Err(Error::NotExact {
                        degree: n,
                        reason: format!("long sequence is not exact at {at}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `y ∘ x = 0` and `ker y ⊆ im x`.
pub fn exact_at(x: &GroupMorphism, y: &GroupMorphism) -> bool {
    if !x.then(y).is_zero() {
        return false;
    }
    let solver = x.preimage_solver();
    let ker = y.kernel_lattice();
    (0..ker.rank()).all(|k| solver.solve(&ker.vector(k)).is_some())
}

/// `A --f--> B --g--> C` with a witness: free approximations of all three
/// whose top row is short exact and whose squares commute.
#[derive(Clone, Debug)]
pub struct WeakExactSeq {
    pub f: ChainMap,
    pub g: ChainMap,
    pub witness: SesApproximation,
}

impl WeakExactSeq {
    pub fn new(f: ChainMap, g: ChainMap, witness: SesApproximation) -> Result<Self> {
        let w = WeakExactSeq { f, g, witness };
        w.check()?;
        Ok(w)
    }

    /// An honest short exact sequence with its canonical witness.
    pub fn from_ses(ses: &ShortExactSeq) -> Result<Self> {
        Ok(WeakExactSeq {
            f: ses.f.clone(),
            g: ses.g.clone(),
            witness: ses_free_approximation(ses)?,
        })
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

    pub fn check(&self) -> Result<()> {
        if !self.f.target().same_data(self.g.source()) {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        self.witness.check_maps(&self.f, &self.g)
    }

    /// `∂ = ν_* ∘ ∂_free ∘ ν_*^{−1}`.
    pub fn connecting(&self, n: i64) -> GroupMorphism {
        let w = &self.witness;
        let hc = self.quotient().homology(n).group.clone();
        let ha = self.sub().homology(n - 1).group.clone();
        let up = w.quotient.nu.induced(n);
        let free = zigzag(&w.f_hat, &w.g_hat, n);
        let down = w.sub.nu.induced(n - 1);
        let cols: Vec<Vec<Int>> = (0..hc.gens())
            .map(|k| {
                let y = up.preimage(&vecops::unit(hc.gens(), k)).expect("ν is a quasi-isomorphism");
                down.apply(&free.apply(&y))
            })
            .collect();
        GroupMorphism::new_unchecked(hc, ha.clone(), IntMatrix::from_columns(ha.gens(), &cols))
    }
}

/// Which side the extra complex is tensored on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `X ⊗ E`.
    Left,
    /// `E ⊗ X`.
    Right,
}

fn tensor_with(x: &FreeApproximation, e: &FreeApproximation, side: Side) -> Result<FreeApproximation> {
    let (free, _, nu) = match side {
        Side::Left => tensor_approximation(x, e),
        Side::Right => tensor_approximation(e, x),
    };
    FreeApproximation::from_parts(free.free().expect("free factors"), nu)
}

fn tensor_maps(f: &ChainMap, e: &FpChainComplex, side: Side) -> ChainMap {
    let id = ChainMap::identity(e);
    match side {
        Side::Left => tensor_fp(f.source(), e).tensor_map(f, &id, &tensor_fp(f.target(), e)),
        Side::Right => tensor_fp(e, f.source()).tensor_map(&id, f, &tensor_fp(e, f.target())),
    }
}

/// `A⊗E → B⊗E → C⊗E` (or `E⊗−`), weak exact when `E` is Tor-acyclic against
/// each term. The witness tensors the given one with a free approximation of `E`.
pub fn tensor_weak_exact(w: &WeakExactSeq, e: &FpChainComplex, side: Side) -> Result<WeakExactSeq> {
    for x in [w.sub(), w.middle(), w.quotient()] {
        match side {
            Side::Left => check_tor_acyclic(x, e)?,
            Side::Right => check_tor_acyclic(e, x)?,
        }
    }
    let ae = free_approximation(e);
    let ws = &w.witness;
    let witness = SesApproximation {
        sub: tensor_with(&ws.sub, &ae, side)?,
        middle: tensor_with(&ws.middle, &ae, side)?,
        quotient: tensor_with(&ws.quotient, &ae, side)?,
        f_hat: tensor_maps(&ws.f_hat, ae.complex.as_fp(), side),
        g_hat: tensor_maps(&ws.g_hat, ae.complex.as_fp(), side),
    };
    WeakExactSeq::new(tensor_maps(&w.f, e, side), tensor_maps(&w.g, e, side), witness)
}

/// `0 → A --r--> A → A/r → 0` for a torsion-free complex.
pub fn reduction_sequence(a: &FpChainComplex, r: &Int) -> Result<ShortExactSeq> {
    let q = mod_reduction(a, r)?;
    let times = ChainMap::from_fn(a, a, |n| IntMatrix::scalar(a.gens(n), r))?;
    let proj = ChainMap::from_fn(a, &q, |n| IntMatrix::identity(a.gens(n)))?;
    ShortExactSeq::new(times, proj)
}

/// `∂ β^r = −β^r ∂` from `H_n(C/r)` to `H_{n−2}(A)`, for a sequence of free
/// complexes and its reduction mod `r`.
pub fn bockstein_anticommutes(ses: &ShortExactSeq, r: &Int, n: i64) -> Result<bool> {
    let (a, b, c) = (ses.sub(), ses.middle(), ses.quotient());
    let (ar, br, cr) = (mod_reduction(a, r)?, mod_reduction(b, r)?, mod_reduction(c, r)?);
    let fr = ChainMap::from_fn(&ar, &br, |k| ses.f.matrix(k))?;
    let gr = ChainMap::from_fn(&br, &cr, |k| ses.g.matrix(k))?;
    let reduced = ShortExactSeq::new(fr, gr)?;
    let beta_a = Bockstein::new(a, r)?.morphism(n - 1);
    let beta_c = Bockstein::new(c, r)?.morphism(n);
    let lhs = reduced.connecting(n).then(&beta_a);
    let rhs = beta_c.then(&ses.connecting(n - 1)).scale(&Int::from(-1));
    Ok(lhs.equals(&rhs))
}
