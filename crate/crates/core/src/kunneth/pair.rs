use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;

use crate::abelian::{tensor_group, FpAbGroup, GroupMorphism, TorProduct};
use crate::complex::{
    free_approximation, tensor_fp, ChainMap, FpChainComplex, FreeApproximation, TensorComplex,
};
use crate::error::{Error, Result};
use crate::linalg::{vecops, Int, IntMatrix};

use super::bockstein::Bockstein;

/// `(−1)^{i+1}`, the sign carried by Mac Lane cycles on elements of degree `i`.
pub fn epsilon(i: i64) -> Int {
    if i.rem_euclid(2) == 1 {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

struct Cover {
    approx: FreeApproximation,
    pair: Box<KunnethPair>,
    map: ChainMap,
}

/// A pair of complexes together with `C ⊗ D` and the maps of the Künneth
/// sequence `0 → ⊕ H_i(C)⊗H_j(D) --×--> H_n(C⊗D) --μ--> ⊕ Tor(H_i(C), H_j(D)) → 0`.
pub struct KunnethPair {
    left: FpChainComplex,
    right: FpChainComplex,
    tensor: TensorComplex,
    cover: Option<Cover>,
    tors: Mutex<HashMap<(i64, i64), Arc<TorProduct>>>,
    bocksteins: Mutex<HashMap<(u8, Int), Arc<Bockstein>>>,
}

impl KunnethPair {
    /// Fails if neither factor is free and `C tor D` is not acyclic.
    pub fn new(c: &FpChainComplex, d: &FpChainComplex) -> Result<Self> {
        let cover = if c.is_free() || d.is_free() {
            None
        } else {
            check_tor_acyclic(c, d)?;
            let approx = free_approximation(c);
            let pair = KunnethPair::new(approx.complex.as_fp(), d)?;
            let target = tensor_fp(c, d);
            let map = pair.tensor.tensor_map(&approx.nu, &ChainMap::identity(d), &target);
            Some(Cover {
                approx,
                pair: Box::new(pair),
                map,
            })
        };
        Ok(KunnethPair {
            left: c.clone(),
            right: d.clone(),
            tensor: tensor_fp(c, d),
            cover,
            tors: Mutex::new(HashMap::new()),
            bocksteins: Mutex::new(HashMap::new()),
        })
    }

    pub fn left(&self) -> &FpChainComplex {
        &self.left
    }

    pub fn right(&self) -> &FpChainComplex {
        &self.right
    }

    pub fn tensor(&self) -> &TensorComplex {
        &self.tensor
    }

    /// `C ⊗ D` as a plain complex.
    pub fn product(&self) -> &FpChainComplex {
        &self.tensor.complex
    }

    /// The free approximation of the left factor used for `μ`, when neither factor is free.
    pub fn left_cover(&self) -> Option<&FreeApproximation> {
        self.cover.as_ref().map(|c| &c.approx)
    }

    /// `Tor(H_i(C), H_j(D))`.
    pub fn tor(&self, i: i64, j: i64) -> Arc<TorProduct> {
        let mut cache = self.tors.lock().expect("tor cache poisoned");
        cache
            .entry((i, j))
            .or_insert_with(|| {
                Arc::new(TorProduct::new(
                    &self.left.homology(i).group,
                    &self.right.homology(j).group,
                ))
            })
            .clone()
    }

    /// Bockstein data for `C` (side 0), `D` (side 1) or `C ⊗ D` (side 2).
    pub(crate) fn bockstein_on(&self, side: u8, r: &Int) -> Result<Arc<Bockstein>> {
        let key = (side, r.clone());
        if let Some(b) = self.bocksteins.lock().expect("cache poisoned").get(&key) {
            return Ok(b.clone());
        }
        let c = match side {
            0 => &self.left,
            1 => &self.right,
            _ => &self.tensor.complex,
        };
        let b = Arc::new(Bockstein::new(c, r)?);
        self.bocksteins
            .lock()
            .expect("cache poisoned")
            .insert(key, b.clone());
        Ok(b)
    }

    fn in_range(c: &FpChainComplex, n: i64) -> bool {
        !c.is_empty() && n >= c.lo() && n <= c.hi()
    }

    /// Bidegrees `(i, j)` with `i + j = n` and both groups present.
    pub fn tensor_pairs(&self, n: i64) -> Vec<(i64, i64)> {
        self.left
            .degrees()
            .filter(|&i| Self::in_range(&self.right, n - i))
            .map(|i| (i, n - i))
            .collect()
    }

    /// Bidegrees of the Tor summands of `H_n(C⊗D)`: `i + j = n − 1`.
    pub fn tor_pairs(&self, n: i64) -> Vec<(i64, i64)> {
        self.tensor_pairs(n - 1)
    }

    /// `a × b` from homology classes.
    pub fn cross(&self, i: i64, a: &[Int], j: i64, b: &[Int]) -> Vec<Int> {
        let z = self.left.homology(i).cycle_of(a);
        let w = self.right.homology(j).cycle_of(b);
        self.cross_cycles(i, &z, j, &w).expect("generator cycles are cycles")
    }

    /// Class of `z ⊗ w` for cycles `z`, `w`.
    pub fn cross_cycles(&self, i: i64, z: &[Int], j: i64, w: &[Int]) -> Result<Vec<Int>> {
        if !self.left.is_cycle(i, z) {
            return Err(Error::NotACycle { degree: i });
        }
        if !self.right.is_cycle(j, w) {
            return Err(Error::NotACycle { degree: j });
        }
        let x = self.tensor.pair_coords(i, z, j, w);
        self.product().homology(i + j).class_of(&x.coords)
    }

    /// `×: H_i(C) ⊗ H_j(D) → H_{i+j}(C⊗D)`.
    pub fn cross_map(&self, i: i64, j: i64) -> GroupMorphism {
        let ha = self.left.homology(i).group.clone();
        let hb = self.right.homology(j).group.clone();
        let t = tensor_group(&ha, &hb);
        let n = i + j;
        let hn = self.product().homology(n).group.clone();
        let cols: Vec<Vec<Int>> = (0..ha.gens())
            .flat_map(|p| (0..hb.gens()).map(move |q| (p, q)))
            .map(|(p, q)| self.cross(i, &vecops::unit(ha.gens(), p), j, &vecops::unit(hb.gens(), q)))
            .collect();
        GroupMorphism::new_unchecked(t.group, hn.clone(), IntMatrix::from_columns(hn.gens(), &cols))
    }

    /// `μ_{i,j}` of a class in `H_{i+j+1}(C⊗D)`.
    pub fn mu(&self, i: i64, j: i64, x: &[Int]) -> Vec<Int> {
        let n = i + j + 1;
        if self.left.is_free() {
            let z = self.product().homology(n).cycle_of(x);
            return self.mu_via_left(i, j, &z).expect("cycle representative");
        }
        if self.right.is_free() {
            let z = self.product().homology(n).cycle_of(x);
            return self.mu_via_right(i, j, &z).expect("cycle representative");
        }
        let cover = self.cover.as_ref().expect("cover exists when neither factor is free");
        let back = cover
            .map
            .induced(n)
            .preimage(x)
            .expect("ν ⊗ 1 is a quasi-isomorphism");
        let y = cover.pair.mu(i, j, &back);
        let nu_i = cover.approx.nu.induced(i);
        let id = GroupMorphism::identity(&self.right.homology(j).group);
        cover.pair.tor(i, j).map(&nu_i, &id, &self.tor(i, j)).apply(&y)
    }

    /// `μ_{i,j}: H_{i+j+1}(C⊗D) → Tor(H_i(C), H_j(D))`.
    pub fn mu_map(&self, i: i64, j: i64) -> GroupMorphism {
        let hn = self.product().homology(i + j + 1).group.clone();
        let tor = self.tor(i, j);
        let cols: Vec<Vec<Int>> = (0..hn.gens()).map(|k| self.mu(i, j, &vecops::unit(hn.gens(), k))).collect();
        GroupMorphism::new_unchecked(hn, tor.group().clone(), IntMatrix::from_columns(tor.group().gens(), &cols))
    }

    /// Zig-zag through `0 → Z(C)⊗D → C⊗D → B(C)[−1]⊗D → 0`; needs `C` free.
    /// Sends the component in `C_{i+1} ⊗ D_j` through `∂ ⊗ 1` into `B_i ⊗ H_j(D)`,
    /// which lands in `Tor` for the resolution `0 → B_i → Z_i → H_i → 0`.
    pub fn mu_via_left(&self, i: i64, j: i64, z: &[Int]) -> Result<Vec<Int>> {
        let n = i + j + 1;
        if !self.left.is_free() {
            return Err(Error::NotFree { degree: i + 1 });
        }
        if !self.product().is_cycle(n, z) {
            return Err(Error::NotACycle { degree: n });
        }
        let tor = self.tor(i, j);
        let hc = self.left.homology(i);
        let hd = self.right.homology(j);
        let x = self.tensor.component(n, i + 1, z);
        let y = self.left.boundary(i + 1).mul(&x);
        let orders = tor.resolution_orders();
        let gd = self.right.gens(j);
        let mut u = IntMatrix::zeros(orders.len(), gd);
        for q in 0..gd {
            let cls = hc.class_of(&y.column(q)).expect("∂ lands in cycles");
            let can = hc.group.to_canonical(&cls);
            for (k, d) in orders.iter().enumerate() {
                u[(k, q)] = can[k].div_floor(d);
            }
        }
        let gh = hd.group.gens();
        let mut acc = vecops::zeros(orders.len() * gh);
        for k in 0..orders.len() {
            let cls = hd.class_of(&u.row(k)).map_err(|_| Error::NotACycle { degree: j })?;
            acc[k * gh..(k + 1) * gh].clone_from_slice(&cls);
        }
        Ok(tor
            .from_tensor_coords(&acc)
            .expect("zig-zag image lies in Tor"))
    }

    /// Mirror zig-zag through `C ⊗ B(D)[−1]`; needs `D` free. Carries the sign
    /// `(−1)^{i+1}` so that both zig-zags agree.
    pub fn mu_via_right(&self, i: i64, j: i64, z: &[Int]) -> Result<Vec<Int>> {
        let n = i + j + 1;
        if !self.right.is_free() {
            return Err(Error::NotFree { degree: j + 1 });
        }
        if !self.product().is_cycle(n, z) {
            return Err(Error::NotACycle { degree: n });
        }
        let hc = self.left.homology(i);
        let hd = self.right.homology(j);
        let rev = TorProduct::new(&hd.group, &hc.group);
        let x = self.tensor.component(n, i, z);
        let y = x.mul(&self.right.boundary(j + 1).transpose());
        let orders = rev.resolution_orders();
        let gc = self.left.gens(i);
        let mut v = IntMatrix::zeros(gc, orders.len());
        for p in 0..gc {
            let cls = hd.class_of(&y.row(p)).expect("∂ lands in cycles");
            let can = hd.group.to_canonical(&cls);
            for (l, e) in orders.iter().enumerate() {
                v[(p, l)] = can[l].div_floor(e);
            }
        }
        let gh = hc.group.gens();
        let mut acc = vecops::zeros(orders.len() * gh);
        for l in 0..orders.len() {
            let cls = hc.class_of(&v.column(l)).map_err(|_| Error::NotACycle { degree: i })?;
            acc[l * gh..(l + 1) * gh].clone_from_slice(&cls);
        }
        let swapped = rev.from_tensor_coords(&acc).expect("zig-zag image lies in Tor");
        let tor = self.tor(i, j);
        let out = rev.swap(&tor).apply(&swapped);
        Ok(vecops::scale(&out, &epsilon(i)))
    }
}

impl fmt::Debug for KunnethPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KunnethPair({:?} ⊗ {:?})", self.left, self.right)
    }
}

/// `(C tor D)_n = ⊕ Tor(C_i, D_j)` with the induced boundary.
pub fn tor_complex(c: &FpChainComplex, d: &FpChainComplex) -> FpChainComplex {
    if c.is_empty() || d.is_empty() {
        return FpChainComplex::zero();
    }
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let mut tors: HashMap<(i64, i64), TorProduct> = HashMap::new();
    for i in c.degrees() {
        for j in d.degrees() {
            tors.insert((i, j), TorProduct::new(&c.group(i), &d.group(j)));
        }
    }
    let pairs = |n: i64| -> Vec<(i64, i64)> { c.degrees().map(|i| (i, n - i)).filter(|p| tors.contains_key(p)).collect() };
    let groups: Vec<FpAbGroup> = (lo..=hi)
        .map(|n| {
            pairs(n)
                .iter()
                .fold(FpAbGroup::trivial(), |acc, p| acc.direct_sum(tors[p].group()))
        })
        .collect();
    let offsets = |n: i64| -> Vec<((i64, i64), usize)> {
        let mut off = 0;
        pairs(n)
            .into_iter()
            .map(|p| {
                let o = off;
                off += tors[&p].group().gens();
                (p, o)
            })
            .collect()
    };
    let boundary_morphism = |x: &FpChainComplex, k: i64| {
        GroupMorphism::new_unchecked(x.group(k), x.group(k - 1), x.boundary(k))
    };
    let boundaries: Vec<IntMatrix> = (lo + 1..=hi)
        .map(|n| {
            let src = offsets(n);
            let tgt = offsets(n - 1);
            let rows = groups[(n - 1 - lo) as usize].gens();
            let cols = groups[(n - lo) as usize].gens();
            let mut m = IntMatrix::zeros(rows, cols);
            for &((i, j), so) in &src {
                let t = &tors[&(i, j)];
                if let Some(&(_, to)) = tgt.iter().find(|(p, _)| *p == (i - 1, j)) {
                    let f = t.map(
                        &boundary_morphism(c, i),
                        &GroupMorphism::identity(&d.group(j)),
                        &tors[&(i - 1, j)],
                    );
                    m.set_block(to, so, f.matrix());
                }
                if let Some(&(_, to)) = tgt.iter().find(|(p, _)| *p == (i, j - 1)) {
                    let g = t.map(
                        &GroupMorphism::identity(&c.group(i)),
                        &boundary_morphism(d, j),
                        &tors[&(i, j - 1)],
                    );
                    let mut piece = g.matrix().clone();
                    if i.rem_euclid(2) == 1 {
                        piece = piece.neg();
                    }
                    m.set_block(to, so, &piece);
                }
            }
            m
        })
        .collect();
    FpChainComplex::new_unchecked(lo, groups, boundaries)
}

/// Vacuous when either factor is torsion-free in every degree.
pub fn check_tor_acyclic(c: &FpChainComplex, d: &FpChainComplex) -> Result<()> {
    if c.is_torsion_free() || d.is_torsion_free() {
        return Ok(());
    }
    let t = tor_complex(c, d);
    for n in t.degrees() {
        let h = t.homology(n);
        if !h.group.is_trivial() {
            return Err(Error::NotTorAcyclic {
                degree: n,
                order: h
                    .group
                    .order()
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "infinite".into()),
            });
        }
    }
    Ok(())
}
