use crate::abelian::{FpAbGroup, GroupMorphism};
use crate::complex::{weak_splitting, BoundarySplitting, Chain, FpChainComplex, TensorComplex, WeakSplitting};
use crate::error::{Error, Result};
use crate::linalg::{vecops, Int, IntMatrix, IntegerSolver};

use super::pair::{epsilon, KunnethPair};

/// Splitting data for both factors, from which `λ` is built.
#[derive(Clone, Debug)]
pub enum KunnethSplitting {
    /// Boundary splittings `σ`, `τ` of free complexes.
    Boundary(BoundarySplitting, BoundarySplitting),
    /// Weak splittings of arbitrary complexes.
    Weak(WeakSplitting, WeakSplitting),
}

impl KunnethSplitting {
    /// Default weak splittings of both factors.
    pub fn weak(c: &FpChainComplex, d: &FpChainComplex) -> Self {
        KunnethSplitting::Weak(weak_splitting(c), weak_splitting(d))
    }

    /// The same data with the factors exchanged.
    pub fn swapped(&self) -> Self {
        match self {
            KunnethSplitting::Boundary(s, t) => KunnethSplitting::Boundary(t.clone(), s.clone()),
            KunnethSplitting::Weak(s, t) => KunnethSplitting::Weak(t.clone(), s.clone()),
        }
    }

    fn complexes(&self) -> (&FpChainComplex, &FpChainComplex) {
        match self {
            KunnethSplitting::Boundary(s, t) => (s.complex().as_fp(), t.complex().as_fp()),
            KunnethSplitting::Weak(s, t) => (s.complex(), t.complex()),
        }
    }
}

/// `z`, `w` cycles and `u`, `v` chains with `∂u = r z`, `∂v = r w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifts {
    pub z: Vec<Int>,
    pub u: Vec<Int>,
    pub w: Vec<Int>,
    pub v: Vec<Int>,
}

/// `ε z⊗v + u⊗w` with `ε = (−1)^{|z|+1}`. Checks that `z`, `w` are cycles and
/// `∂u = r z`, `∂v = r w`; the result is then a cycle.
pub fn mac_lane_cycle(t: &TensorComplex, i: i64, j: i64, r: &Int, l: &Lifts) -> Result<Chain> {
    let (c, d) = (&t.left, &t.right);
    if !c.is_cycle(i, &l.z) {
        return Err(Error::NotACycle { degree: i });
    }
    if !d.is_cycle(j, &l.w) {
        return Err(Error::NotACycle { degree: j });
    }
    if !c.chains_equal(i, &c.apply_boundary(i + 1, &l.u), &vecops::scale(&l.z, r)) {
        return Err(Error::NotABoundary { degree: i });
    }
    if !d.chains_equal(j, &d.apply_boundary(j + 1, &l.v), &vecops::scale(&l.w, r)) {
        return Err(Error::NotABoundary { degree: j });
    }
    let a = t.pair_coords(i, &l.z, j + 1, &l.v).scale(&epsilon(i));
    let b = t.pair_coords(i + 1, &l.u, j, &l.w);
    Ok(a.add(&b))
}

impl KunnethPair {
    fn check_splitting(&self, s: &KunnethSplitting) -> Result<()> {
        let (c, d) = s.complexes();
        if !c.same_data(self.left()) || !d.same_data(self.right()) {
            return Err(Error::ShapeMismatch("splitting belongs to different complexes".into()));
        }
        Ok(())
    }

    fn check_admissible(&self, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<()> {
        if num_traits::Zero::is_zero(r) {
            return Err(Error::ZeroModulus);
        }
        if !self.left().homology(i).group.is_torsion_element(a, r) {
            return Err(Error::InadmissibleTor(format!("class in H_{i} is not killed by {r}")));
        }
        if !self.right().homology(j).group.is_torsion_element(b, r) {
            return Err(Error::InadmissibleTor(format!("class in H_{j} is not killed by {r}")));
        }
        Ok(())
    }

    /// Chains entering the Mac Lane cycle of `⟨a, r, b⟩`.
    pub fn lifts(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<Lifts> {
        self.check_splitting(s)?;
        self.check_admissible(i, a, r, j, b)?;
        match s {
            KunnethSplitting::Boundary(sigma, tau) => {
                let z = self.left().homology(i).cycle_of(a);
                let w = self.right().homology(j).cycle_of(b);
                let u = sigma.apply(i, &vecops::scale(&z, r))?;
                let v = tau.apply(j, &vecops::scale(&w, r))?;
                Ok(Lifts { z, u, w, v })
            }
            KunnethSplitting::Weak(wc, wd) => {
                let (z, u) = weak_lift(wc, i, a, r);
                let (w, v) = weak_lift(wd, j, b, r);
                Ok(Lifts { z, u, w, v })
            }
        }
    }

    /// The Mac Lane cycle representing `λ⟨a, r, b⟩`.
    pub fn lambda_cycle(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<Chain> {
        let l = self.lifts(s, i, a, r, j, b)?;
        mac_lane_cycle(self.tensor(), i, j, r, &l)
    }

    /// `λ⟨a, r, b⟩ ∈ H_{i+j+1}(C⊗D)`.
    pub fn lambda(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<Vec<Int>> {
        let x = self.lambda_cycle(s, i, a, r, j, b)?;
        self.product().homology(i + j + 1).class_of(&x.coords)
    }

    /// `λ_{i,j}: Tor(H_i(C), H_j(D)) → H_{i+j+1}(C⊗D)`.
    pub fn lambda_map(&self, s: &KunnethSplitting, i: i64, j: i64) -> Result<GroupMorphism> {
        let tor = self.tor(i, j);
        let hn = self.product().homology(i + j + 1).group.clone();
        let images = tor
            .symbols()
            .iter()
            .map(|t| self.lambda(s, i, &t.a, &t.r, j, &t.b))
            .collect::<Result<Vec<_>>>()?;
        Ok(tor.from_symbol_images(&hn, &images))
    }

    /// `a × y` for `y` generating `H_{j+1}(D)`, and `x × b` for `x` generating `H_{i+1}(C)`.
    pub fn indeterminacy(&self, i: i64, a: &[Int], j: i64, b: &[Int]) -> Vec<Vec<Int>> {
        let hc = self.left().homology(i + 1).group.clone();
        let hd = self.right().homology(j + 1).group.clone();
        let mut out: Vec<Vec<Int>> = (0..hd.gens())
            .map(|q| self.cross(i, a, j + 1, &vecops::unit(hd.gens(), q)))
            .collect();
        out.extend((0..hc.gens()).map(|p| self.cross(i + 1, &vecops::unit(hc.gens(), p), j, b)));
        out
    }

    /// `λ⟨a, r, b⟩` together with its indeterminacy as the splitting varies.
    pub fn lambda_coset(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<TorCoset> {
        let rep = self.lambda(s, i, a, r, j, b)?;
        Ok(TorCoset::new(
            self.product().homology(i + j + 1).group.clone(),
            rep,
            self.indeterminacy(i, a, j, b),
        ))
    }
}

/// `ẑ` with `π ẑ = a`, `û` with `ι û = r ẑ`; returns `(φ ẑ, ψ û)`.
pub(crate) fn weak_lift(ws: &WeakSplitting, n: i64, a: &[Int], r: &Int) -> (Vec<Int>, Vec<Int>) {
    let d = ws.degree(n);
    let zh = ws.lift(n, a);
    let uh = ws
        .iota_solve(n, &vecops::scale(&zh, r))
        .expect("r ẑ lies in ker π = im ι");
    (d.phi.mul_vec(&zh), d.psi.mul_vec(&uh))
}

/// A coset `representative + ⟨indeterminacy⟩` in a group.
#[derive(Clone, Debug)]
pub struct TorCoset {
    pub group: FpAbGroup,
    pub representative: Vec<Int>,
    pub indeterminacy: Vec<Vec<Int>>,
    solver: IntegerSolver,
}

impl TorCoset {
    pub fn new(group: FpAbGroup, representative: Vec<Int>, indeterminacy: Vec<Vec<Int>>) -> Self {
        let gens = IntMatrix::from_columns(group.gens(), &indeterminacy);
        let solver = IntegerSolver::new(&gens.hstack(group.relations()));
        TorCoset {
            group,
            representative,
            indeterminacy,
            solver,
        }
    }

    /// Whether `d` lies in the indeterminacy subgroup.
    pub fn subgroup_contains(&self, d: &[Int]) -> bool {
        self.solver.solve(d).is_some()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.subgroup_contains(&vecops::sub(x, &self.representative))
    }

    /// Same subset of the group.
    pub fn same_as(&self, other: &TorCoset) -> bool {
        self.contains(&other.representative)
            && other.indeterminacy.iter().all(|d| self.subgroup_contains(d))
            && self.indeterminacy.iter().all(|d| other.subgroup_contains(d))
    }

    /// The indeterminacy subgroup is trivial.
    pub fn is_singleton(&self) -> bool {
        self.indeterminacy.iter().all(|d| self.group.is_zero(d))
    }
}

/// Both maps as group morphisms, for checks.
pub(crate) fn compose_is_identity(first: &GroupMorphism, second: &GroupMorphism) -> bool {
    first.then(second).equals(&GroupMorphism::identity(first.source()))
}
