use crate::abelian::GroupMorphism;
use crate::complex::FpChainComplex;
use crate::error::Result;
use crate::kunneth::{KunnethPair, KunnethSplitting, TorCoset};
use crate::linalg::{vecops, Int};

use super::connecting::{tensor_weak_exact, Side, WeakExactSeq};

fn parity(k: i64) -> Int {
    if k.rem_euclid(2) == 0 {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

/// A weak exact `A → B → C` tensored with `E` on one side, with the Künneth
/// pairs of the outer terms.
#[derive(Debug)]
pub struct BoundaryKunneth {
    pub side: Side,
    pub base: WeakExactSeq,
    pub tensored: WeakExactSeq,
    /// `(C, E)` or `(E, C)`.
    pub quotient_pair: KunnethPair,
    /// `(A, E)` or `(E, A)`.
    pub sub_pair: KunnethPair,
    pub e: FpChainComplex,
}

impl BoundaryKunneth {
    pub fn new(base: &WeakExactSeq, e: &FpChainComplex, side: Side) -> Result<Self> {
        let tensored = tensor_weak_exact(base, e, side)?;
        let (quotient_pair, sub_pair) = match side {
            Side::Left => (KunnethPair::new(base.quotient(), e)?, KunnethPair::new(base.sub(), e)?),
            Side::Right => (KunnethPair::new(e, base.quotient())?, KunnethPair::new(e, base.sub())?),
        };
        Ok(BoundaryKunneth {
            side,
            base: base.clone(),
            tensored,
            quotient_pair,
            sub_pair,
            e: e.clone(),
        })
    }

    fn splitting(p: &KunnethPair) -> KunnethSplitting {
        KunnethSplitting::weak(p.left(), p.right())
    }

    /// Sign relating `∂` on Tor terms: `−1` for `X⊗E`, `(−1)^{j+1}` for `E⊗X`
    /// with `j` the degree in `E`.
    pub fn tor_sign(&self, j: i64) -> Int {
        match self.side {
            Side::Left => Int::from(-1),
            Side::Right => parity(j + 1),
        }
    }

    /// Sign relating `∂` on cross products: `+1` for `X⊗E`, `(−1)^j` for `E⊗X`.
    pub fn cross_sign(&self, j: i64) -> Int {
        match self.side {
            Side::Left => Int::from(1),
            Side::Right => parity(j),
        }
    }

    /// `∂⟨⟨c, r, x⟩⟩ ⊆ sign·⟨⟨∂c, r, x⟩⟩` for `c ∈ H_i(C)` and `x ∈ H_j(E)`
    /// (in that order for either side), checked on the representative and on
    /// each indeterminacy generator.
    pub fn tor_check(&self, i: i64, c: &[Int], r: &Int, j: i64, x: &[Int]) -> Result<bool> {
        let d = self.base.connecting(i);
        let dc = d.apply(c);
        let (src, tgt) = (&self.quotient_pair, &self.sub_pair);
        let (s_src, s_tgt) = (Self::splitting(src), Self::splitting(tgt));
        let (source, target, n) = match self.side {
            Side::Left => (
                src.lambda_coset(&s_src, i, c, r, j, x)?,
                tgt.lambda_coset(&s_tgt, i - 1, &dc, r, j, x)?,
                i + j + 1,
            ),
            Side::Right => (
                src.lambda_coset(&s_src, j, x, r, i, c)?,
                tgt.lambda_coset(&s_tgt, j, x, r, i - 1, &dc)?,
                i + j + 1,
            ),
        };
        let signed = TorCoset::new(
            target.group.clone(),
            vecops::scale(&target.representative, &self.tor_sign(j)),
            target.indeterminacy.clone(),
        );
        let bd = self.tensored.connecting(n);
        Ok(signed.contains(&bd.apply(&source.representative))
            && source.indeterminacy.iter().all(|g| signed.subgroup_contains(&bd.apply(g))))
    }

    /// Künneth sequences of the tensored quotient in degree `n` and of the
    /// tensored sub in degree `n−1`, joined by `∂⊗1` (signed), `∂`, and
    /// `sign·(∂ tor 1)`. Both squares are checked on generators.
    pub fn diagram(&self, n: i64) -> Result<bool> {
        let (src, tgt) = (&self.quotient_pair, &self.sub_pair);
        let bd = self.tensored.connecting(n);
        let hsub = tgt.product().homology(n - 1).group.clone();
        // (C-degree, E-degree) of a bidegree of the source pair
        let split = |p: i64, q: i64| match self.side {
            Side::Left => (p, q),
            Side::Right => (q, p),
        };
        for (p, q) in src.tensor_pairs(n) {
            let (i, j) = split(p, q);
            let hl = src.left().homology(p).group.clone();
            let hr = src.right().homology(q).group.clone();
            let d = self.base.connecting(i);
            for x in 0..hl.gens() {
                for y in 0..hr.gens() {
                    let (u, v) = (vecops::unit(hl.gens(), x), vecops::unit(hr.gens(), y));
                    let lhs = bd.apply(&src.cross(p, &u, q, &v));
                    let rhs = match self.side {
                        Side::Left => tgt.cross(p - 1, &d.apply(&u), q, &v),
                        Side::Right => tgt.cross(p, &u, q - 1, &d.apply(&v)),
                    };
                    if !hsub.eq_elements(&lhs, &vecops::scale(&rhs, &self.cross_sign(j))) {
                        return Ok(false);
                    }
                }
            }
        }
        let hq = src.product().homology(n).group.clone();
        for (p, q) in src.tor_pairs(n) {
            let (i, j) = split(p, q);
            let d = self.base.connecting(i);
            let (tp, tq) = match self.side {
                Side::Left => (p - 1, q),
                Side::Right => (p, q - 1),
            };
            let target = tgt.tor(tp, tq);
            let tor_d = match self.side {
                Side::Left => src.tor(p, q).map(&d, &GroupMorphism::identity(&src.right().homology(q).group), &target),
                Side::Right => src.tor(p, q).map(&GroupMorphism::identity(&src.left().homology(p).group), &d, &target),
            };
            let sign = self.tor_sign(j);
            for k in 0..hq.gens() {
                let x = vecops::unit(hq.gens(), k);
                let lhs = tgt.mu(tp, tq, &bd.apply(&x));
                let rhs = vecops::scale(&tor_d.apply(&src.mu(p, q, &x)), &sign);
                if !target.group().eq_elements(&lhs, &rhs) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
