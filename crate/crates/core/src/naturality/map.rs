use rand::Rng;

use crate::abelian::FpAbGroup;
use crate::complex::{ChainMap, WeakSplitting};
use crate::error::{Error, Result};
use crate::kunneth::torsion_subgroup;
use crate::linalg::{vecops, Int, IntMatrix, IntegerSolver};
use crate::random::random_matrix;

/// A chain map `f: A → B` between weakly split complexes, with
/// `Φ̂_n: Ẑ_n(A) → Ẑ_n(B)` and `ω_n: Ẑ_n(A) → B_{n+1}` such that
/// (p0) `ζ φ_B Φ̂ = f ζ φ_A` and (p1) `∂ ω = φ_B Φ̂ − f φ_A`.
#[derive(Clone, Debug)]
pub struct WeakSplitChainMap {
    pub map: ChainMap,
    pub source: WeakSplitting,
    pub target: WeakSplitting,
    phi_hat: Vec<IntMatrix>,
    omega: Vec<IntMatrix>,
}

impl WeakSplitChainMap {
    /// Canonical completion: `Φ̂` lifts `f_* π_A` through `π_B` and `ω` lifts
    /// the boundary `φ_B Φ̂ − f φ_A`.
    pub fn complete(f: &ChainMap, source: &WeakSplitting, target: &WeakSplitting) -> Result<Self> {
        if !f.source().same_data(source.complex()) || !f.target().same_data(target.complex()) {
            return Err(Error::ShapeMismatch("weak splittings do not match the chain map".into()));
        }
        let a = f.source();
        let mut phi_hat = Vec::new();
        let mut omega = Vec::new();
        for n in a.degrees() {
            let fs = f.induced(n);
            let sd = source.degree(n);
            let td = target.degree(n);
            let cols: Vec<Vec<Int>> = (0..sd.zhat_rank())
                .map(|k| target.lift(n, &fs.apply(&sd.pi.column(k))))
                .collect();
            let ph = IntMatrix::from_columns(td.zhat_rank(), &cols);
            omega.push(lift_difference(f, &td.phi.mul(&ph), &sd.phi, n));
            phi_hat.push(ph);
        }
        Ok(WeakSplitChainMap {
            map: f.clone(),
            source: source.clone(),
            target: target.clone(),
            phi_hat,
            omega,
        })
    }

    /// Another completion of the same map: `Φ̂ + ι_B L` and `ω + ψ_B L + Λ`
    /// for random `L: Ẑ(A) → B̂(B)` and `Λ: Ẑ(A) → Z_{n+1}(B)`.
    pub fn recomplete<R: Rng>(&self, rng: &mut R, bound: i64) -> Self {
        let b = self.target.complex();
        let mut out = self.clone();
        for (k, n) in self.map.source().degrees().enumerate() {
            let sd = self.source.degree(n);
            let td = self.target.degree(n);
            let l = random_matrix(rng, td.bhat_rank(), sd.zhat_rank(), bound);
            let z = b.homology(n + 1).cycles.clone();
            let lambda = z.basis().mul(&random_matrix(rng, z.rank(), sd.zhat_rank(), bound));
            out.phi_hat[k] = self.phi_hat[k].add(&td.iota.mul(&l));
            out.omega[k] = self.omega[k].add(&td.psi.mul(&l)).add(&lambda);
        }
        out
    }

    pub(super) fn raw(f: ChainMap, source: WeakSplitting, target: WeakSplitting, phi_hat: Vec<IntMatrix>, omega: Vec<IntMatrix>) -> Self {
        WeakSplitChainMap {
            map: f,
            source,
            target,
            phi_hat,
            omega,
        }
    }

    /// Assembles from explicit data, checking (p0) and (p1).
    pub fn from_parts(
        f: &ChainMap,
        source: &WeakSplitting,
        target: &WeakSplitting,
        phi_hat: Vec<IntMatrix>,
        omega: Vec<IntMatrix>,
    ) -> Result<Self> {
        let m = WeakSplitChainMap {
            map: f.clone(),
            source: source.clone(),
            target: target.clone(),
            phi_hat,
            omega,
        };
        m.check()?;
        Ok(m)
    }

    fn index(&self, n: i64) -> Option<usize> {
        let a = self.map.source();
        (!a.is_empty() && n >= a.lo() && n <= a.hi()).then(|| (n - a.lo()) as usize)
    }

    pub fn phi_hat(&self, n: i64) -> IntMatrix {
        match self.index(n) {
            Some(k) => self.phi_hat[k].clone(),
            None => IntMatrix::zeros(self.target.degree(n).zhat_rank(), self.source.degree(n).zhat_rank()),
        }
    }

    pub fn omega(&self, n: i64) -> IntMatrix {
        match self.index(n) {
            Some(k) => self.omega[k].clone(),
            None => IntMatrix::zeros(self.target.complex().gens(n + 1), self.source.degree(n).zhat_rank()),
        }
    }

    /// The unique `B̂(A) → B̂(B)` with `ι_B Φ̂|_B̂ = Φ̂ ι_A`.
    pub fn phi_hat_boundaries(&self, n: i64) -> IntMatrix {
        let sd = self.source.degree(n);
        let td = self.target.degree(n);
        let solver = IntegerSolver::new(&td.iota);
        let img = self.phi_hat(n).mul(&sd.iota);
        let cols: Vec<Vec<Int>> = img
            .columns()
            .iter()
            .map(|c| solver.solve(c).expect("Φ̂ preserves the kernel of π"))
            .collect();
        IntMatrix::from_columns(td.bhat_rank(), &cols)
    }

    /// `Θ̄_n = (ψ_B Φ̂|_B̂ − f ψ_A) − ω ι_A: B̂_n(A) → Z_{n+1}(B)`.
    pub fn theta_bar(&self, n: i64) -> IntMatrix {
        let sd = self.source.degree(n);
        let td = self.target.degree(n);
        td.psi
            .mul(&self.phi_hat_boundaries(n))
            .sub(&self.map.matrix(n + 1).mul(&sd.psi))
            .sub(&self.omega(n).mul(&sd.iota))
    }

    pub fn check(&self) -> Result<()> {
        let a = self.map.source();
        let b = self.map.target();
        for n in a.degrees() {
            let sd = self.source.degree(n);
            let td = self.target.degree(n);
            let ph = self.phi_hat(n);
            if ph.rows() != td.zhat_rank() || ph.cols() != sd.zhat_rank() {
                return Err(Error::ShapeMismatch(format!("Φ̂ has the wrong shape in degree {n}")));
            }
            let hb = b.homology(n);
            let fs = self.map.induced(n);
            for k in 0..sd.zhat_rank() {
                let lhs = td.pi.mul_vec(&ph.column(k));
                let rhs = fs.apply(&sd.pi.column(k));
                if !hb.group.eq_elements(&lhs, &rhs) {
                    return Err(Error::InvalidComplex {
                        degree: n,
                        reason: "Φ̂ does not cover f on homology".into(),
                    });
                }
            }
            let lhs = b.boundary(n + 1).mul(&self.omega(n));
            let rhs = td.phi.mul(&ph).sub(&self.map.matrix(n).mul(&sd.phi));
            let g = b.group(n);
            if (0..sd.zhat_rank()).any(|k| !g.eq_elements(&lhs.column(k), &rhs.column(k))) {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: "∂ω differs from φΦ̂ − fφ".into(),
                });
            }
            let tb = self.theta_bar(n);
            if (0..tb.cols()).any(|k| !b.is_cycle(n + 1, &tb.column(k))) {
                return Err(Error::NotACycle { degree: n + 1 });
            }
        }
        Ok(())
    }

    /// `Θ(a)` for an `r`-torsion class `a ∈ H_n(A)`, as integral coordinates of
    /// a class in `H_{n+1}(B)`, meaningful modulo `r`.
    pub fn theta_at(&self, r: &Int, n: i64, a: &[Int]) -> Result<Vec<Int>> {
        let ha = self.map.source().homology(n);
        if num_traits::Zero::is_zero(r) {
            return Err(Error::ZeroModulus);
        }
        if !ha.group.is_torsion_element(a, r) {
            return Err(Error::NotTorsion { r: r.to_string() });
        }
        let zh = self.source.lift(n, a);
        let uh = self
            .source
            .iota_solve(n, &vecops::scale(&zh, r))
            .expect("r ẑ lies in ker π = im ι");
        let x = self.theta_bar(n).mul_vec(&uh);
        self.map.target().homology(n + 1).class_of(&x)
    }

    /// `Θ: {a ∈ H_n(A) : r a = 0} → H_{n+1}(B) ⊗ ℤ/r`.
    pub fn theta(&self, r: &Int, n: i64) -> Result<ThetaMap> {
        let ha = self.map.source().homology(n).group.clone();
        let hb = self.map.target().homology(n + 1).group.clone();
        let domain = torsion_subgroup(&ha, r);
        let images = domain
            .iter()
            .map(|a| self.theta_at(r, n, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaMap::new(r.clone(), n, ha, hb, domain, images))
    }
}

/// Columns `ω` with `∂ω = top − f·phi` (a boundary in every column).
fn lift_difference(f: &ChainMap, top: &IntMatrix, phi: &IntMatrix, n: i64) -> IntMatrix {
    let b = f.target();
    let diff = top.sub(&f.matrix(n).mul(phi));
    let h = b.homology(n);
    let cols: Vec<Vec<Int>> = diff
        .columns()
        .iter()
        .map(|c| h.lift_boundary(c).expect("(p0) makes the difference a boundary"))
        .collect();
    IntMatrix::from_columns(b.gens(n + 1), &cols)
}

/// `Θ` on generators of the `r`-torsion of `H_n(source)`, valued in
/// `H_{n+1}(target) ⊗ ℤ/r` (the same generators with `r` added to the relations).
#[derive(Clone, Debug)]
pub struct ThetaMap {
    pub r: Int,
    pub degree: i64,
    pub source: FpAbGroup,
    pub target: FpAbGroup,
    pub domain: Vec<Vec<Int>>,
    pub images: Vec<Vec<Int>>,
    solver: IntegerSolver,
}

/// `H ⊗ ℤ/r` presented on the generators of `H`.
pub fn reduce_mod(h: &FpAbGroup, r: &Int) -> FpAbGroup {
    let rel = h.relations().hstack(&IntMatrix::scalar(h.gens(), r));
    FpAbGroup::new(h.gens(), rel).expect("shape is consistent")
}

impl ThetaMap {
    fn new(r: Int, degree: i64, source: FpAbGroup, target: FpAbGroup, domain: Vec<Vec<Int>>, images: Vec<Vec<Int>>) -> Self {
        let gens = IntMatrix::from_columns(source.gens(), &domain);
        let solver = IntegerSolver::new(&gens.hstack(source.relations()));
        ThetaMap {
            target: reduce_mod(&target, &r),
            r,
            degree,
            source,
            domain,
            images,
            solver,
        }
    }

    /// `Θ(a)` for any `r`-torsion `a`, by linearity.
    pub fn apply(&self, a: &[Int]) -> Result<Vec<Int>> {
        let sol = self
            .solver
            .solve(a)
            .ok_or_else(|| Error::NotTorsion { r: self.r.to_string() })?;
        let mut acc = vecops::zeros(self.target.gens());
        for (c, img) in sol.iter().zip(&self.images) {
            acc = vecops::add(&acc, &vecops::scale(img, c));
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|x| self.target.is_zero(x))
    }

    /// Agreement on every generator of the domain.
    pub fn equals(&self, other: &ThetaMap) -> bool {
        self.r == other.r
            && self.target.same_presentation(&other.target)
            && self.domain.iter().all(|a| match (self.apply(a), other.apply(a)) {
                (Ok(x), Ok(y)) => self.target.eq_elements(&x, &y),
                _ => false,
            })
    }
}

/// The identity of `A` with matching splittings on both sides.
pub fn identity_map(ws: &WeakSplitting) -> WeakSplitChainMap {
    WeakSplitChainMap::complete(&ChainMap::identity(ws.complex()), ws, ws).expect("same splitting on both sides")
}
