use crate::abelian::{tensor_group, FpAbGroup};
use crate::error::{Error, Result};
use crate::linalg::{vecops, Int, IntMatrix};

use super::complex::{Chain, FpChainComplex, FreeChainComplex};
use super::map::ChainMap;

/// Position of the summand `C_i ⊗ D_j` inside `(C ⊗ D)_{i+j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub i: i64,
    pub j: i64,
    pub offset: usize,
    pub left_rank: usize,
    pub right_rank: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.left_rank * self.right_rank
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of `e_p ⊗ f_q` within the total degree.
    pub fn index(&self, p: usize, q: usize) -> usize {
        self.offset + p * self.right_rank + q
    }
}

/// `C ⊗ D` with `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`, summands in each total
/// degree ordered by increasing left degree.
#[derive(Clone)]
pub struct TensorComplex {
    pub left: FpChainComplex,
    pub right: FpChainComplex,
    pub complex: FpChainComplex,
    blocks: Vec<Vec<Block>>,
}

/// Tensor product of free complexes.
pub fn tensor_complex(c: &FpChainComplex, d: &FpChainComplex) -> Result<TensorComplex> {
    for x in [c, d] {
        if let Some(n) = x.degrees().find(|&n| !x.group(n).is_free_presentation()) {
            return Err(Error::NotFree { degree: n });
        }
    }
    Ok(TensorComplex::build(c, d))
}

/// Tensor product of arbitrary finitely presented complexes.
pub fn tensor_fp(c: &FpChainComplex, d: &FpChainComplex) -> TensorComplex {
    TensorComplex::build(c, d)
}

impl TensorComplex {
    fn build(c: &FpChainComplex, d: &FpChainComplex) -> Self {
        if c.is_empty() || d.is_empty() {
            return TensorComplex {
                left: c.clone(),
                right: d.clone(),
                complex: FpChainComplex::zero(),
                blocks: Vec::new(),
            };
        }
        let lo = c.lo() + d.lo();
        let hi = c.hi() + d.hi();
        let mut blocks = Vec::new();
        let mut groups = Vec::new();
        for n in lo..=hi {
            let mut bs = Vec::new();
            let mut offset = 0;
            let mut rels: Vec<IntMatrix> = Vec::new();
            for i in c.degrees() {
                let j = n - i;
                if j < d.lo() || j > d.hi() {
                    continue;
                }
                let b = Block {
                    i,
                    j,
                    offset,
                    left_rank: c.gens(i),
                    right_rank: d.gens(j),
                };
                offset += b.len();
                rels.push(tensor_group(&c.group(i), &d.group(j)).group.relations().clone());
                bs.push(b);
            }
            let mut rel = IntMatrix::zeros(0, 0);
            for r in &rels {
                rel = rel.block_diag(r);
            }
            groups.push(FpAbGroup::new(offset, rel).expect("shape is consistent"));
            blocks.push(bs);
        }
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let src = &blocks[(n - lo) as usize];
            let tgt = &blocks[(n - 1 - lo) as usize];
            let rows: usize = tgt.iter().map(Block::len).sum();
            let cols: usize = src.iter().map(Block::len).sum();
            let mut m = IntMatrix::zeros(rows, cols);
            for b in src {
                if b.is_empty() {
                    continue;
                }
                if let Some(t) = tgt.iter().find(|t| t.i == b.i - 1) {
                    let piece = c.boundary(b.i).kron(&IntMatrix::identity(b.right_rank));
                    m.set_block(t.offset, b.offset, &piece);
                }
                if let Some(t) = tgt.iter().find(|t| t.i == b.i) {
                    let mut piece = IntMatrix::identity(b.left_rank).kron(&d.boundary(b.j));
                    if b.i.rem_euclid(2) == 1 {
                        piece = piece.neg();
                    }
                    m.set_block(t.offset, b.offset, &piece);
                }
            }
            boundaries.push(m);
        }
        TensorComplex {
            left: c.clone(),
            right: d.clone(),
            complex: FpChainComplex::new_unchecked(lo, groups, boundaries),
            blocks,
        }
    }

    pub fn blocks(&self, n: i64) -> &[Block] {
        if self.complex.is_empty() || n < self.complex.lo() || n > self.complex.hi() {
            return &[];
        }
        &self.blocks[(n - self.complex.lo()) as usize]
    }

    pub fn block(&self, i: i64, j: i64) -> Option<Block> {
        self.blocks(i + j).iter().find(|b| b.i == i).copied()
    }

    /// `x ⊗ y` as a chain of degree `|x| + |y|`.
    pub fn pair(&self, x: &Chain, y: &Chain) -> Chain {
        self.pair_coords(x.degree, &x.coords, y.degree, &y.coords)
    }

    pub fn pair_coords(&self, i: i64, x: &[Int], j: i64, y: &[Int]) -> Chain {
        let n = i + j;
        let mut out = vecops::zeros(self.complex.gens(n));
        if let Some(b) = self.block(i, j) {
            for (k, v) in vecops::kron(x, y).into_iter().enumerate() {
                out[b.offset + k] = v;
            }
        } else {
            debug_assert!(vecops::is_zero(x) || vecops::is_zero(y) || x.is_empty() || y.is_empty());
        }
        Chain::new(n, out)
    }

    /// Component of `z` in the summand `C_i ⊗ D_{n-i}`, as a `rank(C_i) × rank(D_j)` matrix.
    pub fn component(&self, n: i64, i: i64, z: &[Int]) -> IntMatrix {
        match self.block(i, n - i) {
            Some(b) => {
                let data = z[b.offset..b.offset + b.len()].to_vec();
                IntMatrix::from_vec(b.left_rank, b.right_rank, data).expect("block shape")
            }
            None => IntMatrix::zeros(self.left.gens(i), self.right.gens(n - i)),
        }
    }

    /// Inverse of [`Self::component`]: place block matrices into a chain.
    pub fn assemble(&self, n: i64, parts: &[(i64, IntMatrix)]) -> Vec<Int> {
        let mut out = vecops::zeros(self.complex.gens(n));
        for (i, m) in parts {
            if let Some(b) = self.block(*i, n - i) {
                for (k, v) in m.entries().iter().enumerate() {
                    out[b.offset + k] += v;
                }
            }
        }
        out
    }

    pub fn free(&self) -> Option<FreeChainComplex> {
        FreeChainComplex::from_fp(self.complex.clone()).ok()
    }

    /// `f ⊗ g` as a chain map between tensor complexes.
    pub fn tensor_map(&self, f: &ChainMap, g: &ChainMap, target: &TensorComplex) -> ChainMap {
        let mats = self
            .complex
            .degrees()
            .map(|n| {
                let mut m = IntMatrix::zeros(target.complex.gens(n), self.complex.gens(n));
                for b in self.blocks(n) {
                    if let Some(t) = target.block(b.i, b.j) {
                        let piece = f.matrix(b.i).kron(&g.matrix(b.j));
                        m.set_block(t.offset, b.offset, &piece);
                    }
                }
                m
            })
            .collect();
        ChainMap::new_unchecked(self.complex.clone(), target.complex.clone(), mats)
    }
}

/// `C ⊗ ℤ/r`: every group gains the relations `r·e_k`.
pub fn mod_reduction(c: &FpChainComplex, r: &Int) -> Result<FpChainComplex> {
    use num_traits::Zero;
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let groups = c
        .degrees()
        .map(|n| {
            let g = c.group(n);
            let rel = g.relations().hstack(&IntMatrix::scalar(g.gens(), r));
            FpAbGroup::new(g.gens(), rel).expect("shape is consistent")
        })
        .collect();
    let boundaries = c.stored_boundaries().to_vec();
    Ok(FpChainComplex::new_unchecked(c.lo(), groups, boundaries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin::{moore, point};
    use crate::linalg::vecops::from_i64;

    #[test]
    fn moore_square_shape_and_signs() {
        let c = moore(2, 1);
        let t = tensor_complex(&c, &c).unwrap();
        assert_eq!(t.complex.lo(), 2);
        assert_eq!(t.complex.hi(), 4);
        assert_eq!(t.complex.gens(3), 2);
        // ∂(e₂⊗f₂) = 2e₁⊗f₂ + 2e₂⊗f₁
        let top = t.pair_coords(2, &from_i64(&[1]), 2, &from_i64(&[1]));
        let expect = t
            .pair_coords(1, &from_i64(&[2]), 2, &from_i64(&[1]))
            .add(&t.pair_coords(2, &from_i64(&[2]), 1, &from_i64(&[1])));
        assert_eq!(t.complex.apply_boundary(4, &top.coords), expect.coords);
        // ∂(e₁⊗f₂) = −2 e₁⊗f₁
        let x = t.pair_coords(1, &from_i64(&[1]), 2, &from_i64(&[1]));
        assert_eq!(t.complex.apply_boundary(3, &x.coords), from_i64(&[-2]));
        assert_eq!(t.complex.homology(2).group.describe(), "Z/2");
        assert_eq!(t.complex.homology(3).group.describe(), "Z/2");
        assert!(t.complex.homology(4).group.is_trivial());
    }

    #[test]
    fn point_is_unit() {
        let c = moore(3, 2);
        let t = tensor_complex(&c, &point()).unwrap();
        assert!(t.complex.same_data(&c));
    }

    #[test]
    fn fp_inputs_rejected() {
        let c = mod_reduction(&moore(2, 1), &Int::from(2)).unwrap();
        assert!(tensor_complex(&c, &c).is_err());
        for n in c.degrees() {
            assert_eq!(c.group(n).describe(), "Z/2");
        }
        assert!(mod_reduction(&c, &Int::from(0)).is_err());
    }
}
