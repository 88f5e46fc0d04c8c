use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, vecops, Int, IntMatrix, LatticeBasis};

/// Finitely presented abelian group `ℤ^gens / (column span of relations)`.
///
/// Cloning is cheap; the canonical decomposition is computed once.
#[derive(Clone)]
pub struct FpAbGroup(Arc<GroupInner>);

struct GroupInner {
    gens: usize,
    relations: IntMatrix,
    /// Torsion orders `d_k ≥ 2` in divisibility order, then one `0` per free summand.
    orders: Vec<Int>,
    /// Rows map generator coordinates to canonical coordinates.
    to_canon: IntMatrix,
    /// Columns are the canonical generators written in the original generators.
    from_canon: IntMatrix,
    relation_lattice: LatticeBasis,
}

impl FpAbGroup {
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {gens} generators",
                relations.rows()
            )));
        }
        let snf = smith_normal_form(&relations);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..gens {
            if i < snf.rank {
                let d = snf.s[(i, i)].clone();
                if !d.is_one() {
                    keep.push(i);
                    orders.push(d);
                }
            } else {
                keep.push(i);
                orders.push(Int::zero());
            }
        }
        let to_canon = snf.u.select_rows(&keep);
        let from_canon = snf.u_inv.select_columns(&keep);
        let relation_lattice = LatticeBasis::span(&relations);
        Ok(FpAbGroup(Arc::new(GroupInner {
            gens,
            relations,
            orders,
            to_canon,
            from_canon,
            relation_lattice,
        })))
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("shape is consistent")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(m: i64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[[m]])).expect("shape is consistent")
    }

    /// `⊕ ℤ/m_i`, with `0` meaning a free summand.
    pub fn from_orders(orders: &[Int]) -> Self {
        let n = orders.len();
        let rel_cols: Vec<Vec<Int>> = orders
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut c = vecops::zeros(n);
                c[i] = m.clone();
                c
            })
            .collect();
        Self::new(n, IntMatrix::from_columns(n, &rel_cols)).expect("shape is consistent")
    }

    pub fn direct_sum(&self, other: &FpAbGroup) -> FpAbGroup {
        Self::new(self.gens() + other.gens(), self.relations().block_diag(other.relations()))
            .expect("shape is consistent")
    }

    #[inline]
    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn relation_lattice(&self) -> &LatticeBasis {
        &self.0.relation_lattice
    }

    /// Presented without relations, i.e. literally `ℤ^gens`.
    pub fn is_free_presentation(&self) -> bool {
        self.0.relations.is_zero()
    }

    /// `(free rank, invariant factors)` of the canonical decomposition.
    pub fn canonical_decomposition(&self) -> (usize, Vec<Int>) {
        (self.free_rank(), self.torsion_orders().to_vec())
    }

    pub fn canonical_orders(&self) -> &[Int] {
        &self.0.orders
    }

    pub fn torsion_orders(&self) -> &[Int] {
        let t = self.torsion_count();
        &self.0.orders[..t]
    }

    pub fn torsion_count(&self) -> usize {
        self.0.orders.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn free_rank(&self) -> usize {
        self.0.orders.len() - self.torsion_count()
    }

    pub fn canonical_rank(&self) -> usize {
        self.0.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.orders.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_count() == 0
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.0.orders.iter().fold(Int::one(), |acc, d| acc * d))
    }

    pub fn to_canonical_matrix(&self) -> &IntMatrix {
        &self.0.to_canon
    }

    pub fn from_canonical_matrix(&self) -> &IntMatrix {
        &self.0.from_canon
    }

    /// Canonical generator `k` in generator coordinates.
    pub fn canonical_generator(&self, k: usize) -> Vec<Int> {
        self.0.from_canon.column(k)
    }

    /// Raw canonical coordinates (not reduced).
    pub fn to_canonical(&self, x: &[Int]) -> Vec<Int> {
        self.check_len(x);
        self.0.to_canon.mul_vec(x)
    }

    pub fn from_canonical(&self, y: &[Int]) -> Vec<Int> {
        self.0.from_canon.mul_vec(y)
    }

    /// Canonical coordinates with torsion components reduced into `[0, d_k)`.
    /// Two vectors represent the same element exactly when these agree.
    pub fn normal_form(&self, x: &[Int]) -> Vec<Int> {
        let mut y = self.to_canonical(x);
        for (yk, d) in y.iter_mut().zip(&self.0.orders) {
            if !d.is_zero() {
                *yk = yk.mod_floor(d);
            }
        }
        y
    }

    /// A short representative in generator coordinates.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        self.from_canonical(&self.normal_form(x))
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        vecops::is_zero(&self.normal_form(x))
    }

    pub fn eq_elements(&self, x: &[Int], y: &[Int]) -> bool {
        self.is_zero(&vecops::sub(x, y))
    }

    /// Order of `x`: least `r > 0` with `r·x = 0`, or `0` if infinite.
    pub fn annihilator(&self, x: &[Int]) -> Int {
        let y = self.normal_form(x);
        let mut acc = Int::one();
        for (yk, d) in y.iter().zip(&self.0.orders) {
            if yk.is_zero() {
                continue;
            }
            if d.is_zero() {
                return Int::zero();
            }
            acc = acc.lcm(&(d / yk.gcd(d)));
        }
        acc
    }

    pub fn is_torsion_element(&self, x: &[Int], r: &Int) -> bool {
        self.is_zero(&vecops::scale(x, r))
    }

    /// Every element of a finite group, as canonical-generator combinations.
    /// Panics on infinite groups.
    pub fn elements(&self) -> Vec<Vec<Int>> {
        assert_eq!(self.free_rank(), 0, "cannot enumerate an infinite group");
        let mut out = vec![vecops::zeros(self.canonical_rank())];
        for (k, d) in self.0.orders.iter().enumerate() {
            let d: u64 = d.try_into().expect("small order");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for v in &out {
                for c in 0..d {
                    let mut w = v.clone();
                    w[k] = Int::from(c);
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter().map(|y| self.from_canonical(&y)).collect()
    }

    pub fn element(&self, coords: Vec<Int>) -> GroupElement {
        self.check_len(&coords);
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    pub fn zero_element(&self) -> GroupElement {
        self.element(vecops::zeros(self.gens()))
    }

    pub fn same_presentation(&self, other: &FpAbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.gens() == other.gens() && self.relations() == other.relations())
    }

    /// Short description such as `Z^2 + Z/2 + Z/6`, or `0`.
    pub fn describe(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        let f = self.free_rank();
        if f == 1 {
            parts.push("Z".to_string());
        } else if f > 1 {
            parts.push(format!("Z^{f}"));
        }
        for d in self.torsion_orders() {
            parts.push(format!("Z/{d}"));
        }
        parts.join(" + ")
    }

    fn check_len(&self, x: &[Int]) {
        assert_eq!(
            x.len(),
            self.gens(),
            "element of length {} in a group with {} generators",
            x.len(),
            self.gens()
        );
    }
}

impl fmt::Debug for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAbGroup({}; gens={})", self.describe(), self.gens())
    }
}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// An element of a specific group; equality is equality in the quotient.
#[derive(Clone)]
pub struct GroupElement {
    pub group: FpAbGroup,
    pub coords: Vec<Int>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.group.is_zero(&self.coords)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        self.group.element(vecops::add(&self.coords, &other.coords))
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.group.element(vecops::sub(&self.coords, &other.coords))
    }

    pub fn scale(&self, s: &Int) -> GroupElement {
        self.group.element(vecops::scale(&self.coords, s))
    }

    pub fn neg(&self) -> GroupElement {
        self.group.element(vecops::neg(&self.coords))
    }

    pub fn annihilator(&self) -> Int {
        self.group.annihilator(&self.coords)
    }

    pub fn normal_form(&self) -> Vec<Int> {
        self.group.normal_form(&self.coords)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_presentation(&other.group)
            && self.group.eq_elements(&self.coords, &other.coords)
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nf: Vec<String> = self.normal_form().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}] in {}", nf.join(","), self.group)
    }
}
