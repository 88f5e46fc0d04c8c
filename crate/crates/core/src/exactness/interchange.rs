use crate::abelian::FpAbGroup;
use crate::complex::{ChainMap, FpChainComplex, TensorComplex};
use crate::error::{Error, Result};
use crate::kunneth::{KunnethPair, KunnethSplitting};
use crate::linalg::{vecops, Int, IntMatrix};

fn koszul(i: i64, j: i64) -> Int {
    if (i * j).rem_euclid(2) == 0 {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

/// `T(x⊗y) = (−1)^{|x||y|} y⊗x` from `C⊗D` to `D⊗C`.
pub fn interchange(s: &TensorComplex, t: &TensorComplex) -> Result<ChainMap> {
    if !s.left.same_data(&t.right) || !s.right.same_data(&t.left) {
        return Err(Error::ShapeMismatch("tensor factors are not exchanged".into()));
    }
    ChainMap::from_fn(&s.complex, &t.complex, |n| {
        let mut m = IntMatrix::zeros(t.complex.gens(n), s.complex.gens(n));
        for b in s.blocks(n) {
            let tb = t.block(b.j, b.i).expect("exchanged block exists");
            let sign = koszul(b.i, b.j);
            for p in 0..b.left_rank {
                for q in 0..b.right_rank {
                    m[(tb.index(q, p), b.index(p, q))] = sign.clone();
                }
            }
        }
        m
    })
}

/// `T_*λ^{σ,τ}⟨a, r, b⟩` against `λ^{τ,σ}⟨b, r, a⟩`, in `H_{i+j+1}(D⊗C)`.
#[derive(Clone, Debug)]
pub struct FlipReport {
    pub i: i64,
    pub j: i64,
    pub group: FpAbGroup,
    pub lhs: Vec<Int>,
    pub rhs: Vec<Int>,
}

impl FlipReport {
    /// `T_*λ = (−1)^{ij+1} λ'`.
    pub fn holds(&self) -> bool {
        let sign = -koszul(self.i, self.j);
        self.group.eq_elements(&self.lhs, &vecops::scale(&self.rhs, &sign))
    }
}

/// Both orderings of a pair together with the interchange map.
#[derive(Debug)]
pub struct FlipPair {
    pub forward: KunnethPair,
    pub backward: KunnethPair,
    pub t: ChainMap,
}

impl FlipPair {
    pub fn new(c: &FpChainComplex, d: &FpChainComplex) -> Result<Self> {
        let forward = KunnethPair::new(c, d)?;
        let backward = KunnethPair::new(d, c)?;
        let t = interchange(forward.tensor(), backward.tensor())?;
        Ok(FlipPair { forward, backward, t })
    }

    /// `T_*(a×b) = (−1)^{|a||b|} b×a`.
    pub fn cross_check(&self, i: i64, a: &[Int], j: i64, b: &[Int]) -> bool {
        let lhs = self.t.induced(i + j).apply(&self.forward.cross(i, a, j, b));
        let rhs = vecops::scale(&self.backward.cross(j, b, i, a), &koszul(i, j));
        self.backward.product().homology(i + j).group.eq_elements(&lhs, &rhs)
    }

    /// Compares `T_*λ⟨a, r, b⟩` under `s` with `λ⟨b, r, a⟩` under the swapped splitting.
    pub fn flip_check(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<FlipReport> {
        let n = i + j + 1;
        let lam = self.forward.lambda(s, i, a, r, j, b)?;
        let lhs = self.t.induced(n).apply(&lam);
        let rhs = self.backward.lambda(&s.swapped(), j, b, r, i, a)?;
        Ok(FlipReport {
            i,
            j,
            group: self.backward.product().homology(n).group.clone(),
            lhs,
            rhs,
        })
    }

    /// The Künneth sequences of `C⊗D` and `D⊗C` in degree `n` with vertical
    /// maps `(−1)^{ij}·swap`, `T_*`, `(−1)^{ij+1}·swap`, and `λ` under `s`
    /// and its swap. Every square is checked on generators.
    pub fn diagram(&self, s: &KunnethSplitting, n: i64) -> Result<bool> {
        let (p, q) = (&self.forward, &self.backward);
        let tn = self.t.induced(n);
        for (i, j) in p.tensor_pairs(n) {
            let (ha, hb) = (p.left().homology(i).group.clone(), p.right().homology(j).group.clone());
            for x in 0..ha.gens() {
                for y in 0..hb.gens() {
                    if !self.cross_check(i, &vecops::unit(ha.gens(), x), j, &vecops::unit(hb.gens(), y)) {
                        return Ok(false);
                    }
                }
            }
        }
        let hp = p.product().homology(n).group.clone();
        for (i, j) in p.tor_pairs(n) {
            let swap = p.tor(i, j).swap(&q.tor(j, i));
            let sign = -koszul(i, j);
            let tq = q.tor(j, i);
            for k in 0..hp.gens() {
                let x = vecops::unit(hp.gens(), k);
                let lhs = q.mu(j, i, &tn.apply(&x));
                let rhs = vecops::scale(&swap.apply(&p.mu(i, j, &x)), &sign);
                if !tq.group().eq_elements(&lhs, &rhs) {
                    return Ok(false);
                }
            }
            for t in p.tor(i, j).symbols() {
                if !self.flip_check(s, i, &t.a, &t.r, j, &t.b)?.holds() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
