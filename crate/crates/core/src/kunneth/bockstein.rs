use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::abelian::{FpAbGroup, GroupMorphism};
use crate::complex::{mod_reduction, FpChainComplex, WeakSplitting};
use crate::error::{Error, Result};
use crate::linalg::{vecops, Int, IntMatrix, IntegerSolver};

use super::lambda::{weak_lift, KunnethSplitting};
use super::pair::{epsilon, KunnethPair};

/// `β^r: H_{n}(C/r) → H_{n−1}(C)` for a torsion-free complex `C`, the
/// connecting map of `0 → C --r--> C → C/r → 0`.
#[derive(Clone, Debug)]
pub struct Bockstein {
    complex: FpChainComplex,
    reduced: FpChainComplex,
    r: Int,
    solvers: Arc<Mutex<HashMap<i64, Arc<IntegerSolver>>>>,
}

impl Bockstein {
    pub fn new(c: &FpChainComplex, r: &Int) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if let Some(n) = c.degrees().find(|&n| !c.group(n).is_torsion_free()) {
            return Err(Error::NotTorsionFree { degree: n });
        }
        Ok(Bockstein {
            complex: c.clone(),
            reduced: mod_reduction(c, r)?,
            r: r.clone(),
            solvers: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn complex(&self) -> &FpChainComplex {
        &self.complex
    }

    /// `C/r` on the same generators.
    pub fn reduced(&self) -> &FpChainComplex {
        &self.reduced
    }

    pub fn modulus(&self) -> &Int {
        &self.r
    }

    /// Solver for `[r·I | R]`: writes a chain as `r·y` plus relations.
    fn solver(&self, n: i64) -> Arc<IntegerSolver> {
        let mut cache = self.solvers.lock().expect("solver cache poisoned");
        cache
            .entry(n)
            .or_insert_with(|| {
                let g = self.complex.gens(n);
                Arc::new(IntegerSolver::new(
                    &IntMatrix::scalar(g, &self.r).hstack(&self.complex.relations(n)),
                ))
            })
            .clone()
    }

    /// `β` of a chain `x` of degree `n` that is a cycle mod `r`: the class of
    /// `∂x / r` in `H_{n−1}(C)`.
    pub fn apply_chain(&self, n: i64, x: &[Int]) -> Result<Vec<Int>> {
        if !self.reduced.is_cycle(n, x) {
            return Err(Error::NotACycle { degree: n });
        }
        let dx = self.complex.apply_boundary(n, x);
        let sol = self
            .solver(n - 1)
            .solve(&dx)
            .expect("∂x vanishes mod r");
        let y = sol[..self.complex.gens(n - 1)].to_vec();
        self.complex.homology(n - 1).class_of(&y)
    }

    /// `β` of a class in `H_n(C/r)`.
    pub fn apply(&self, n: i64, x: &[Int]) -> Vec<Int> {
        let z = self.reduced.homology(n).cycle_of(x);
        self.apply_chain(n, &z).expect("representing cycle")
    }

    pub fn morphism(&self, n: i64) -> GroupMorphism {
        let h = self.reduced.homology(n).group.clone();
        let t = self.complex.homology(n - 1).group.clone();
        let cols: Vec<Vec<Int>> = (0..h.gens()).map(|k| self.apply(n, &vecops::unit(h.gens(), k))).collect();
        GroupMorphism::new_unchecked(h, t.clone(), IntMatrix::from_columns(t.gens(), &cols))
    }

    /// Reduction `H_n(C) → H_n(C/r)`.
    pub fn reduce_class(&self, n: i64, y: &[Int]) -> Vec<Int> {
        let z = self.complex.homology(n).cycle_of(y);
        self.reduced
            .homology(n)
            .class_of(&z)
            .expect("cycles stay cycles mod r")
    }

    pub fn reduction_morphism(&self, n: i64) -> GroupMorphism {
        let h = self.complex.homology(n).group.clone();
        let t = self.reduced.homology(n).group.clone();
        let cols: Vec<Vec<Int>> = (0..h.gens()).map(|k| self.reduce_class(n, &vecops::unit(h.gens(), k))).collect();
        GroupMorphism::new_unchecked(h, t.clone(), IntMatrix::from_columns(t.gens(), &cols))
    }
}

/// `β^r` of a class in `H_n(C/r)`.
pub fn bockstein(c: &FpChainComplex, r: &Int, n: i64, x: &[Int]) -> Result<Vec<Int>> {
    let b = Bockstein::new(c, r)?;
    let h = b.reduced.homology(n);
    if x.len() != h.group.gens() {
        return Err(Error::DimensionMismatch(format!(
            "class has {} coordinates, H_{n}(C/r) has {} generators",
            x.len(),
            h.group.gens()
        )));
    }
    Ok(b.apply(n, x))
}

/// Generators of the `r`-torsion subgroup `{x : r x = 0}`.
pub fn torsion_subgroup(g: &FpAbGroup, r: &Int) -> Vec<Vec<Int>> {
    let m = GroupMorphism::identity(g).scale(r);
    let k = m.kernel_lattice();
    (0..k.rank()).map(|i| k.vector(i)).collect()
}

/// `ρ^r: {a ∈ H_n(C) : r a = 0} → H_{n+1}(C/r)` from a weak splitting:
/// `ρ(a) = [ψ(û)]` where `ι û = r ẑ`, `π ẑ = a`. Satisfies `β ρ = id`.
#[derive(Clone, Debug)]
pub struct UcSplitting {
    pub degree: i64,
    splitting: WeakSplitting,
    bockstein: Bockstein,
}

impl UcSplitting {
    pub fn new(ws: &WeakSplitting, r: &Int, n: i64) -> Result<Self> {
        Ok(UcSplitting {
            degree: n,
            splitting: ws.clone(),
            bockstein: Bockstein::new(ws.complex(), r)?,
        })
    }

    pub fn modulus(&self) -> &Int {
        self.bockstein.modulus()
    }

    pub fn bockstein(&self) -> &Bockstein {
        &self.bockstein
    }

    /// The chain `ψ(û) ∈ C_{n+1}`, a cycle mod `r`.
    pub fn rho_chain(&self, a: &[Int]) -> Result<Vec<Int>> {
        let h = self.splitting.complex().homology(self.degree);
        if !h.group.is_torsion_element(a, self.modulus()) {
            return Err(Error::NotTorsion {
                r: self.modulus().to_string(),
            });
        }
        Ok(weak_lift(&self.splitting, self.degree, a, self.modulus()).1)
    }

    pub fn rho(&self, a: &[Int]) -> Result<Vec<Int>> {
        let u = self.rho_chain(a)?;
        self.bockstein.reduced().homology(self.degree + 1).class_of(&u)
    }

    /// `β ρ = id` on generators of the `r`-torsion.
    pub fn check(&self) -> Result<()> {
        let h = self.splitting.complex().homology(self.degree);
        for a in torsion_subgroup(&h.group, self.modulus()) {
            let back = self.bockstein.apply(self.degree + 1, &self.rho(&a)?);
            if !h.group.eq_elements(&back, &a) {
                return Err(Error::Incompatible(format!(
                    "β ρ differs from the identity in degree {}",
                    self.degree
                )));
            }
        }
        Ok(())
    }
}

/// The splittings `ρ^r` for every `r`, all coming from one weak splitting.
#[derive(Debug)]
pub struct CompatibleFamily {
    pub degree: i64,
    splitting: WeakSplitting,
    members: Mutex<HashMap<Int, Arc<UcSplitting>>>,
}

impl CompatibleFamily {
    pub fn new(ws: &WeakSplitting, n: i64) -> Result<Self> {
        let c = ws.complex();
        if let Some(k) = c.degrees().find(|&k| !c.group(k).is_torsion_free()) {
            return Err(Error::NotTorsionFree { degree: k });
        }
        Ok(CompatibleFamily {
            degree: n,
            splitting: ws.clone(),
            members: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &FpChainComplex {
        self.splitting.complex()
    }

    pub fn at(&self, r: &Int) -> Result<Arc<UcSplitting>> {
        if let Some(s) = self.members.lock().expect("cache poisoned").get(r) {
            return Ok(s.clone());
        }
        let s = Arc::new(UcSplitting::new(&self.splitting, r, self.degree)?);
        self.members
            .lock()
            .expect("cache poisoned")
            .insert(r.clone(), s.clone());
        Ok(s)
    }

    pub fn rho(&self, r: &Int, a: &[Int]) -> Result<Vec<Int>> {
        self.at(r)?.rho(a)
    }

    /// For `r = r1 r2`: `β ρ^r = id`, `r1 · ρ^{r2}(a) = ρ^{r}(a)` on `r2`-torsion
    /// (via `C/r2 --r1--> C/r`), and `ρ^r(a)` reduces to `ρ^{r1}(r2 a)` in `C/r1`.
    pub fn verify(&self, r1: &Int, r2: &Int) -> Result<()> {
        let r = r1 * r2;
        let big = self.at(&r)?;
        let s1 = self.at(r1)?;
        let s2 = self.at(r2)?;
        for s in [&big, &s1, &s2] {
            s.check()?;
        }
        let n = self.degree;
        let h = self.complex().homology(n);
        let top = big.bockstein().reduced().homology(n + 1);
        for a in torsion_subgroup(&h.group, r2) {
            let lhs = vecops::scale(&s2.rho_chain(&a)?, r1);
            let rhs = big.rho(&a)?;
            if !top.group.eq_elements(&top.class_of(&lhs)?, &rhs) {
                return Err(Error::Incompatible(format!("{r1}·ρ^{r2} ≠ ρ^{r} in degree {n}")));
            }
        }
        let low = s1.bockstein().reduced().homology(n + 1);
        for a in torsion_subgroup(&h.group, &r) {
            let lhs = low.class_of(&big.rho_chain(&a)?)?;
            let rhs = s1.rho(&vecops::scale(&a, r2))?;
            if !low.group.eq_elements(&lhs, &rhs) {
                return Err(Error::Incompatible(format!(
                    "ρ^{r} reduced mod {r1} ≠ ρ^{r1}({r2}·) in degree {n}"
                )));
            }
        }
        Ok(())
    }
}

impl KunnethPair {
    /// `(−1)^{i+1} β^r(u ⊗ v)` with `∂u = r z`, `∂v = r w` from the splitting.
    /// Agrees with `λ` whenever `C ⊗ D` is torsion-free.
    pub fn bockstein_form(&self, s: &KunnethSplitting, i: i64, a: &[Int], r: &Int, j: i64, b: &[Int]) -> Result<Vec<Int>> {
        let l = self.lifts(s, i, a, r, j, b)?;
        let x = self.tensor().pair_coords(i + 1, &l.u, j + 1, &l.v);
        let beta = self.bockstein_on(2, r)?;
        let y = beta.apply_chain(i + j + 2, &x.coords)?;
        Ok(vecops::scale(&y, &epsilon(i)))
    }

    /// `κ(a_r, b_r) = (−1)^{i+1} β^r(a_r × b_r)` for classes of `H_{i+1}(C/r)`
    /// and `H_{j+1}(D/r)`.
    pub fn kappa(&self, r: &Int, i: i64, ar: &[Int], j: i64, br: &[Int]) -> Result<Vec<Int>> {
        let bc = self.bockstein_on(0, r)?;
        let bd = self.bockstein_on(1, r)?;
        let u = bc.reduced().homology(i + 1).cycle_of(ar);
        let v = bd.reduced().homology(j + 1).cycle_of(br);
        let x = self.tensor().pair_coords(i + 1, &u, j + 1, &v);
        let y = self.bockstein_on(2, r)?.apply_chain(i + j + 2, &x.coords)?;
        Ok(vecops::scale(&y, &epsilon(i)))
    }

    /// `κ(ρ^r a, ρ^r b)` from compatible families on both factors.
    pub fn kappa_family(
        &self,
        fc: &CompatibleFamily,
        fd: &CompatibleFamily,
        a: &[Int],
        r: &Int,
        b: &[Int],
    ) -> Result<Vec<Int>> {
        self.kappa(r, fc.degree, &fc.rho(r, a)?, fd.degree, &fd.rho(r, b)?)
    }

    /// `β^{r1 r2}(ρ^{r1 r2}a × ρ^{r1 r2}b) = β^{r2}(ρ^{r2}(r1 a) × ρ^{r2}b)` for
    /// `a` killed by `r1 r2` and `b` killed by `r2`. Returns both sides.
    pub fn kappa_rescaling(
        &self,
        fc: &CompatibleFamily,
        fd: &CompatibleFamily,
        a: &[Int],
        r1: &Int,
        r2: &Int,
        b: &[Int],
    ) -> Result<(Vec<Int>, Vec<Int>)> {
        let r = r1 * r2;
        let lhs = self.kappa_family(fc, fd, a, &r, b)?;
        let rhs = self.kappa_family(fc, fd, &vecops::scale(a, r1), r2, b)?;
        Ok((lhs, rhs))
    }
}

