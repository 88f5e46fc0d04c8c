//! Seeded generators for random complexes and chain maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{mod_reduction, ChainMap, FpChainComplex, FreeChainComplex};
use crate::linalg::{kernel_basis, Int, IntMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data).expect("shape is consistent")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexParams {
    /// Complexes live in degrees `0..=top` with `top ≤ max_degree`.
    pub max_degree: i64,
    pub max_rank: usize,
    pub max_entry: i64,
}

impl ComplexParams {
    pub const fn new(max_degree: i64, max_rank: usize, max_entry: i64) -> Self {
        ComplexParams {
            max_degree,
            max_rank,
            max_entry,
        }
    }
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams::new(4, 3, 6)
    }
}

/// A free complex in degrees `0..=top`. Each `∂_n` is a small combination of
/// a kernel basis of `∂_{n−1}`, so `∂∂ = 0` by construction.
pub fn random_free_complex<R: Rng>(rng: &mut R, p: &ComplexParams) -> FreeChainComplex {
    let top = rng.gen_range(0..=p.max_degree.max(0));
    let ranks: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=p.max_rank)).collect();
    let mut boundaries: Vec<IntMatrix> = Vec::new();
    for n in 1..=top as usize {
        let (rows, cols) = (ranks[n - 1], ranks[n]);
        let d = if n == 1 {
            random_matrix(rng, rows, cols, p.max_entry)
        } else {
            let k = kernel_basis(&boundaries[n - 2]);
            let mut out = IntMatrix::zeros(rows, cols);
            for _ in 0..8 {
                let coef = random_matrix(rng, k.rank(), cols, 2);
                let cand = k.basis().mul(&coef);
                if cand.max_abs_entry() <= Int::from(p.max_entry) {
                    out = cand;
                    break;
                }
            }
            out
        };
        boundaries.push(d);
    }
    FreeChainComplex::new(0, &ranks, boundaries).expect("∂∂ = 0 by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpParams {
    pub max_degree: i64,
    /// Generators per degree.
    pub max_gens: usize,
    /// Largest cyclic order introduced by a reduction.
    pub max_order: i64,
}

impl Default for FpParams {
    fn default() -> Self {
        FpParams {
            max_degree: 4,
            max_gens: 3,
            max_order: 24,
        }
    }
}

/// `F/r ⊕ F'` for random free `F`, `F'` and `2 ≤ r ≤ max_order`.
pub fn random_fp_complex<R: Rng>(rng: &mut R, p: &FpParams) -> FpChainComplex {
    let torsion_rank = (p.max_gens + 1) / 2;
    let free_rank = p.max_gens - torsion_rank;
    let f = random_free_complex(rng, &ComplexParams::new(p.max_degree, torsion_rank, 6));
    let r = Int::from(rng.gen_range(2..=p.max_order.max(2)));
    let reduced = mod_reduction(f.as_fp(), &r).expect("r is nonzero");
    if free_rank == 0 || rng.gen_bool(0.5) {
        return reduced;
    }
    let g = random_free_complex(rng, &ComplexParams::new(p.max_degree, free_rank, 6));
    reduced.direct_sum(g.as_fp())
}

/// `(ℤ/r)^k --1--> (ℤ/r)^k` in degrees `n+1 → n`: contractible, with torsion.
pub fn torsion_cone(r: i64, k: usize, n: i64) -> FpChainComplex {
    let g = crate::abelian::FpAbGroup::new(k, IntMatrix::scalar(k, &Int::from(r))).expect("valid group");
    FpChainComplex::new(n, vec![g.clone(), g], vec![IntMatrix::identity(k)]).expect("valid complex")
}

/// A pair `(C, D)` of complexes, neither free, whose Tor complex is acyclic:
/// `D` is a free complex plus a contractible torsion summand.
pub fn random_tor_acyclic_pair<R: Rng>(rng: &mut R, p: &FpParams) -> (FpChainComplex, FpChainComplex) {
    let c = random_fp_complex(rng, p);
    let free = random_free_complex(rng, &ComplexParams::new(p.max_degree, 2, 6));
    let r = rng.gen_range(2..=p.max_order.max(2));
    let n = rng.gen_range(0..=p.max_degree.max(0));
    (c, free.as_fp().direct_sum(&torsion_cone(r, 1, n)))
}

/// A uniformly small integer combination of a `ℤ`-basis of all chain maps
/// `C → D`, computed as the kernel of the linear conditions on the matrices.
pub fn random_chain_map<R: Rng>(rng: &mut R, c: &FpChainComplex, d: &FpChainComplex, bound: i64) -> ChainMap {
    let space = chain_map_space(c, d);
    let mut mats: Vec<IntMatrix> = c.degrees().map(|n| IntMatrix::zeros(d.gens(n), c.gens(n))).collect();
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.shuffle(rng);
    for &k in order.iter().take(6) {
        let s = Int::from(rng.gen_range(-bound..=bound));
        for (m, b) in mats.iter_mut().zip(&space[k]) {
            *m = m.add(&b.scale(&s));
        }
    }
    ChainMap::new(c.clone(), d.clone(), mats).expect("kernel vectors are chain maps")
}

/// A `ℤ`-spanning set for chain maps `C → D` (per-degree matrices over `C`'s range).
pub fn chain_map_space(c: &FpChainComplex, d: &FpChainComplex) -> Vec<Vec<IntMatrix>> {
    if c.is_empty() {
        return Vec::new();
    }
    let degs: Vec<i64> = c.degrees().collect();
    // unknown blocks per degree: f_n, Y_n (relations), W_n (boundary slack)
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for &n in &degs {
        let f = d.gens(n) * c.gens(n);
        let y = d.relations(n).cols() * c.relations(n).cols();
        let w = d.relations(n - 1).cols() * c.gens(n);
        offsets.push((total, total + f, total + f + y));
        total += f + y + w;
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let zero = || vec![Int::from(0); total];
    for (k, &n) in degs.iter().enumerate() {
        let (fo, yo, wo) = offsets[k];
        let gc = c.gens(n);
        let gd = d.gens(n);
        let rc = c.relations(n);
        let rd = d.relations(n);
        // f_n R^C_n − R^D_n Y_n = 0
        for a in 0..gd {
            for b in 0..rc.cols() {
                let mut row = zero();
                for t in 0..gc {
                    row[fo + a * gc + t] += &rc[(t, b)];
                }
                for t in 0..rd.cols() {
                    row[yo + t * rc.cols() + b] -= &rd[(a, t)];
                }
                rows.push(row);
            }
        }
        // ∂^D f_n − f_{n−1} ∂^C_n − R^D_{n−1} W_n = 0
        let dd = d.boundary(n);
        let dc = c.boundary(n);
        let gd1 = d.gens(n - 1);
        let gc1 = c.gens(n - 1);
        let rd1 = d.relations(n - 1);
        for a in 0..gd1 {
            for b in 0..gc {
                let mut row = zero();
                for t in 0..gd {
                    row[fo + t * gc + b] += &dd[(a, t)];
                }
                if k > 0 {
                    let fo1 = offsets[k - 1].0;
                    for t in 0..gc1 {
                        row[fo1 + a * gc1 + t] -= &dc[(t, b)];
                    }
                }
                for t in 0..rd1.cols() {
                    row[wo + t * gc + b] -= &rd1[(a, t)];
                }
                rows.push(row);
            }
        }
    }
    let eqs = if rows.is_empty() {
        IntMatrix::zeros(0, total)
    } else {
        IntMatrix::from_columns(total, &rows).transpose()
    };
    let ker = kernel_basis(&eqs);
    (0..ker.rank())
        .map(|k| {
            let v = ker.vector(k);
            degs.iter()
                .enumerate()
                .map(|(i, &n)| {
                    let fo = offsets[i].0;
                    let len = d.gens(n) * c.gens(n);
                    IntMatrix::from_vec(d.gens(n), c.gens(n), v[fo..fo + len].to_vec()).expect("block shape")
                })
                .collect()
        })
        .filter(|m: &Vec<IntMatrix>| m.iter().any(|b| !b.is_zero()))
        .collect()
}

/// Random `h_n: C_n → D_{n+1}` over `C`'s range (free `C`).
pub fn random_homotopy<R: Rng>(rng: &mut R, c: &FpChainComplex, d: &FpChainComplex, bound: i64) -> Vec<IntMatrix> {
    c.degrees()
        .map(|n| random_matrix(rng, d.gens(n + 1), c.gens(n), bound))
        .collect()
}

/// Cycles of degree `n` with small coefficients on a cycle basis.
pub fn random_cycle<R: Rng>(rng: &mut R, c: &FpChainComplex, n: i64, bound: i64) -> Vec<Int> {
    let h = c.homology(n);
    let coef: Vec<Int> = (0..h.cycles.rank()).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect();
    h.cycles.basis().mul_vec(&coef)
}

/// A random element of a group, small coefficients on the generators.
pub fn random_element<R: Rng>(rng: &mut R, g: &crate::abelian::FpAbGroup, bound: i64) -> Vec<Int> {
    (0..g.gens()).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()
}

/// `F ⊕ M(m, n) ⊕ ℤ[n+1]` with `F` random free: torsion in degree `n` with
/// free homology just above it, so deviation maps can be nonzero.
pub fn random_torsion_complex<R: Rng>(rng: &mut R, p: &ComplexParams) -> FpChainComplex {
    let f = random_free_complex(rng, p);
    let m = rng.gen_range(2..=p.max_entry.max(2));
    let n = rng.gen_range(0..p.max_degree.max(1));
    let moore = FreeChainComplex::new(n, &[1, 1], vec![IntMatrix::from_rows(&[[m]])]).expect("valid complex");
    let line = FreeChainComplex::new(n + 1, &[1], vec![]).expect("valid complex");
    f.as_fp().direct_sum(moore.as_fp()).direct_sum(line.as_fp())
}

/// `(1, h): A → A ⊕ L` with `L` a copy of `ℤ` in each degree `lo+1..=hi+1`
/// (zero differential) and `h` random. Keeps torsion classes alive while
/// letting the `L` part carry deviations.
pub fn random_graph_map<R: Rng>(rng: &mut R, a: &FpChainComplex, bound: i64) -> ChainMap {
    let lo = a.lo();
    let ranks = vec![1usize; a.degrees().count() + 1];
    let bds = (1..ranks.len()).map(|_| IntMatrix::zeros(1, 1)).collect();
    let line = FreeChainComplex::new(lo, &ranks, bds).expect("valid complex");
    let h = random_chain_map(rng, a, line.as_fp(), bound);
    let target = a.direct_sum(line.as_fp());
    ChainMap::from_fn(a, &target, |n| IntMatrix::identity(a.gens(n)).vstack(&h.matrix(n)))
        .expect("a graph of chain maps is a chain map")
}

/// `0 → A → B → C → 0` of free complexes with `B = A ⊕ C` twisted by a
/// random `h: C_n → A_{n−1}`, `∂_B(a, c) = (∂a + h c, ∂c)`.
pub fn random_free_ses<R: Rng>(rng: &mut R, a: &FpChainComplex, c: &FpChainComplex, bound: i64) -> crate::complex::ShortExactSeq {
    let lo = a.lo().min(c.lo());
    let hi = a.hi().max(c.hi());
    // A shifted up by one with negated boundary: chain maps C → S are the twists
    let s_ranks: Vec<usize> = (lo..=hi).map(|n| a.gens(n - 1)).collect();
    let s_bds = (lo + 1..=hi).map(|n| a.boundary(n - 1).neg()).collect();
    let s = FreeChainComplex::new(lo, &s_ranks, s_bds).expect("shift of a complex");
    let c_full = FreeChainComplex::new(lo, &(lo..=hi).map(|n| c.gens(n)).collect::<Vec<_>>(), (lo + 1..=hi).map(|n| c.boundary(n)).collect())
        .expect("same complex on a wider range");
    let h = random_chain_map(rng, c_full.as_fp(), s.as_fp(), bound);
    let ranks: Vec<usize> = (lo..=hi).map(|n| a.gens(n) + c.gens(n)).collect();
    let bds = (lo + 1..=hi)
        .map(|n| {
            let top = a.boundary(n).hstack(&h.matrix(n));
            let bottom = IntMatrix::zeros(c.gens(n - 1), a.gens(n)).hstack(&c.boundary(n));
            top.vstack(&bottom)
        })
        .collect();
    let b = FreeChainComplex::new(lo, &ranks, bds).expect("twisted boundary squares to zero");
    let f = ChainMap::from_fn(a, b.as_fp(), |n| IntMatrix::identity(a.gens(n)).vstack(&IntMatrix::zeros(c.gens(n), a.gens(n))))
        .expect("inclusion");
    let g = ChainMap::from_fn(b.as_fp(), c, |n| IntMatrix::zeros(c.gens(n), a.gens(n)).hstack(&IntMatrix::identity(c.gens(n))))
        .expect("projection");
    crate::complex::ShortExactSeq::new(f, g).expect("split in each degree")
}

/// Degrees and an `r` for which `H_i(C)` and `H_j(D)` both carry torsion, with
/// `r` a multiple of both exponents and `a`, `b` random `r`-torsion classes.
pub fn random_torsion_symbol<R: Rng>(
    rng: &mut R,
    c: &FpChainComplex,
    d: &FpChainComplex,
) -> Option<(i64, Vec<Int>, Int, i64, Vec<Int>)> {
    let exponent = |x: &FpChainComplex, n: i64| x.homology(n).group.torsion_orders().last().cloned();
    let ci: Vec<(i64, Int)> = c.degrees().filter_map(|n| exponent(c, n).map(|e| (n, e))).collect();
    let dj: Vec<(i64, Int)> = d.degrees().filter_map(|n| exponent(d, n).map(|e| (n, e))).collect();
    let (i, ei) = ci.choose(rng)?.clone();
    let (j, ej) = dj.choose(rng)?.clone();
    let r = num_integer::Integer::lcm(&ei, &ej) * Int::from(rng.gen_range(1..=2));
    let a = random_torsion_element(rng, &c.homology(i).group, &r);
    let b = random_torsion_element(rng, &d.homology(j).group, &r);
    Some((i, a, r, j, b))
}

/// A random combination of generators of the `r`-torsion subgroup.
pub fn random_torsion_element<R: Rng>(rng: &mut R, g: &crate::abelian::FpAbGroup, r: &Int) -> Vec<Int> {
    let gens = crate::kunneth::torsion_subgroup(g, r);
    let mut x = vec![Int::from(0); g.gens()];
    for t in gens {
        let s = Int::from(rng.gen_range(-2..=2));
        x = crate::linalg::vecops::add(&x, &crate::linalg::vecops::scale(&t, &s));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_complexes_validate() {
        let mut rng = seeded(3);
        for _ in 0..50 {
            let c = random_free_complex(&mut rng, &ComplexParams::new(5, 4, 6));
            assert_eq!(c.validate(), crate::complex::Validity::Valid);
        }
    }

    #[test]
    fn fp_complexes_and_maps() {
        let mut rng = seeded(5);
        for _ in 0..20 {
            let c = random_fp_complex(&mut rng, &FpParams::default());
            assert_eq!(c.validate(), crate::complex::Validity::Valid);
            let d = random_fp_complex(&mut rng, &FpParams::default());
            let f = random_chain_map(&mut rng, &c, &d, 2);
            f.check().unwrap();
        }
    }

    #[test]
    fn chain_maps_of_moore_spaces() {
        use crate::complex::builtin::moore;
        let c = moore(2, 1).into_fp();
        let d = moore(4, 1).into_fp();
        // (a, b) with 4b = 2a: a = 2b, one generator
        let space = chain_map_space(&c, &d);
        assert_eq!(space.len(), 1);
        let f = &space[0];
        assert_eq!(f[0][(0, 0)], Int::from(2) * &f[1][(0, 0)]);
    }
}
