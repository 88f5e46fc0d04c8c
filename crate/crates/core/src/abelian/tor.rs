use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, vecops, Int, IntMatrix, IntegerSolver, LatticeBasis};

use super::group::{FpAbGroup, GroupElement};
use super::morphism::GroupMorphism;

/// The symbol `⟨a, r, b⟩` with `a·r = 0` and `r·b = 0`.
#[derive(Clone, Debug)]
pub struct ElementaryTor {
    pub a: GroupElement,
    pub r: Int,
    pub b: GroupElement,
}

impl ElementaryTor {
    pub fn new(a: GroupElement, r: Int, b: GroupElement) -> Result<Self> {
        check_admissible(&a.group, &a.coords, &r, &b.group, &b.coords)?;
        Ok(ElementaryTor { a, r, b })
    }

    pub fn is_admissible(&self) -> bool {
        check_admissible(&self.a.group, &self.a.coords, &self.r, &self.b.group, &self.b.coords)
            .is_ok()
    }
}

fn check_admissible(ga: &FpAbGroup, a: &[Int], r: &Int, gb: &FpAbGroup, b: &[Int]) -> Result<()> {
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if !ga.is_torsion_element(a, r) {
        return Err(Error::InadmissibleTor(format!("a is not killed by {r}")));
    }
    if !gb.is_torsion_element(b, r) {
        return Err(Error::InadmissibleTor(format!("b is not killed by {r}")));
    }
    Ok(())
}

/// One of the standard generators `⟨(d/g)·α_k, g, (e/g)·β_l⟩` of Tor,
/// where `α_k`, `β_l` are canonical generators of orders `d`, `e` and
/// `g = gcd(d, e) > 1`.
#[derive(Clone, Debug)]
pub struct TorSymbol {
    pub k: usize,
    pub l: usize,
    pub order: Int,
    pub a: Vec<Int>,
    pub r: Int,
    pub b: Vec<Int>,
}

/// `Tor(A, B)` computed as `ker(B̂ ⊗ B → Ẑ ⊗ B)` for the canonical resolution
/// `0 → B̂ → Ẑ → A → 0` (ι diagonal on the torsion orders of `A`).
#[derive(Clone)]
pub struct TorProduct {
    a: FpAbGroup,
    b: FpAbGroup,
    orders: Vec<Int>,
    kernel: LatticeBasis,
    group: FpAbGroup,
    symbols: Vec<TorSymbol>,
    symbol_solver: IntegerSolver,
}

pub fn tor_group(a: &FpAbGroup, b: &FpAbGroup) -> TorProduct {
    TorProduct::new(a, b)
}

impl TorProduct {
    pub fn new(a: &FpAbGroup, b: &FpAbGroup) -> Self {
        let orders = a.torsion_orders().to_vec();
        let t = orders.len();
        let c = a.canonical_rank();
        let gb = b.gens();
        let mut iota = IntMatrix::zeros(c, t);
        for (k, d) in orders.iter().enumerate() {
            iota[(k, k)] = d.clone();
        }
        let iota_b = iota.kron(&IntMatrix::identity(gb));
        let rel_target = IntMatrix::identity(c).kron(b.relations());
        let kb = kernel_basis(&iota_b.hstack(&rel_target));
        let kernel = LatticeBasis::span(&kb.basis().block(0, 0, t * gb, kb.rank()));
        let rel_source = IntMatrix::identity(t).kron(b.relations());
        let rel_cols: Vec<Vec<Int>> = rel_source
            .columns()
            .iter()
            .map(|col| {
                kernel
                    .coordinates(col)
                    .expect("dimension checked")
                    .expect("relations of B̂⊗B lie in the kernel")
            })
            .collect();
        let group = FpAbGroup::new(kernel.rank(), IntMatrix::from_columns(kernel.rank(), &rel_cols))
            .expect("shape is consistent");

        let mut tp = TorProduct {
            a: a.clone(),
            b: b.clone(),
            orders,
            kernel,
            group,
            symbols: Vec::new(),
            symbol_solver: IntegerSolver::new(&IntMatrix::zeros(0, 0)),
        };
        let mut symbols = Vec::new();
        for (k, d) in a.torsion_orders().iter().enumerate() {
            for (l, e) in b.torsion_orders().iter().enumerate() {
                let g = d.gcd(e);
                if g.is_one() {
                    continue;
                }
                symbols.push(TorSymbol {
                    k,
                    l,
                    a: vecops::scale(&a.canonical_generator(k), &(d / &g)),
                    b: vecops::scale(&b.canonical_generator(l), &(e / &g)),
                    r: g.clone(),
                    order: g,
                });
            }
        }
        let cols: Vec<Vec<Int>> = symbols
            .iter()
            .map(|s| tp.reduce_unchecked(&s.a, &s.r, &s.b))
            .collect();
        let t_mat = IntMatrix::from_columns(tp.group.gens(), &cols);
        tp.symbol_solver = IntegerSolver::new(&t_mat.hstack(tp.group.relations()));
        tp.symbols = symbols;
        tp
    }

    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    pub fn left(&self) -> &FpAbGroup {
        &self.a
    }

    pub fn right(&self) -> &FpAbGroup {
        &self.b
    }

    /// Standard generators; Tor is the direct sum of the cyclic groups they span.
    pub fn symbols(&self) -> &[TorSymbol] {
        &self.symbols
    }

    /// Generators of `Tor` as elements of `B̂ ⊗ B`.
    pub fn kernel_lattice(&self) -> &LatticeBasis {
        &self.kernel
    }

    /// Evaluates `⟨a, r, b⟩`: lift `a` to `â`, solve `ι(u) = r·â`, take `u ⊗ b`.
    pub fn reduce(&self, a: &[Int], r: &Int, b: &[Int]) -> Result<Vec<Int>> {
        check_admissible(&self.a, a, r, &self.b, b)?;
        Ok(self.reduce_unchecked(a, r, b))
    }

    pub fn reduce_symbol(&self, t: &ElementaryTor) -> Result<GroupElement> {
        Ok(self.group.element(self.reduce(&t.a.coords, &t.r, &t.b.coords)?))
    }

    fn reduce_unchecked(&self, a: &[Int], r: &Int, b: &[Int]) -> Vec<Int> {
        let hat = self.a.to_canonical(a);
        let u: Vec<Int> = self
            .orders
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let (q, rem) = (r * &hat[k]).div_rem(d);
                debug_assert!(rem.is_zero());
                q
            })
            .collect();
        let x = vecops::kron(&u, b);
        self.kernel
            .coordinates(&x)
            .expect("dimension checked")
            .expect("u ⊗ b lies in the kernel")
    }

    /// Coefficients of `x` on [`Self::symbols`], each reduced modulo its order.
    pub fn decompose(&self, x: &[Int]) -> Vec<Int> {
        let sol = self
            .symbol_solver
            .solve(x)
            .expect("symbols generate Tor");
        self.symbols
            .iter()
            .zip(sol)
            .map(|(s, c)| c.mod_floor(&s.order))
            .collect()
    }

    /// Element with the given symbol coefficients.
    pub fn compose(&self, coeffs: &[Int]) -> Vec<Int> {
        let mut acc = vecops::zeros(self.group.gens());
        for (s, c) in self.symbols.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let v = self.reduce_unchecked(&s.a, &s.r, &s.b);
            acc = vecops::add(&acc, &vecops::scale(&v, c));
        }
        acc
    }

    /// Torsion orders `d_k` of `A`, the diagonal of `ι`.
    pub fn resolution_orders(&self) -> &[Int] {
        &self.orders
    }

    /// Element of Tor represented by `x ∈ B̂ ⊗ B` (index `k·gens(B) + q`),
    /// if `x` lies in the kernel of `ι ⊗ 1`.
    pub fn from_tensor_coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        self.kernel.coordinates(x).expect("dimension checked")
    }

    /// Homomorphism `Tor(A,B) → target` determined by its values on [`Self::symbols`].
    pub fn from_symbol_images(&self, target: &FpAbGroup, images: &[Vec<Int>]) -> GroupMorphism {
        let cols: Vec<Vec<Int>> = (0..self.group.gens())
            .map(|j| {
                let coeffs = self.decompose(&vecops::unit(self.group.gens(), j));
                let mut acc = vecops::zeros(target.gens());
                for (c, img) in coeffs.iter().zip(images) {
                    acc = vecops::add(&acc, &vecops::scale(img, c));
                }
                acc
            })
            .collect();
        GroupMorphism::new_unchecked(
            self.group.clone(),
            target.clone(),
            IntMatrix::from_columns(target.gens(), &cols),
        )
    }

    /// `Tor(f, g)`: `⟨a, r, b⟩ ↦ ⟨f a, r, g b⟩`.
    pub fn map(&self, f: &GroupMorphism, g: &GroupMorphism, target: &TorProduct) -> GroupMorphism {
        let images: Vec<Vec<Int>> = self
            .symbols
            .iter()
            .map(|s| target.reduce_unchecked(&f.apply(&s.a), &s.r, &g.apply(&s.b)))
            .collect();
        self.from_symbol_images(&target.group, &images)
    }

    /// `⟨a, r, b⟩ ↦ ⟨b, r, a⟩` into `Tor(B, A)`.
    pub fn swap(&self, target: &TorProduct) -> GroupMorphism {
        let images: Vec<Vec<Int>> = self
            .symbols
            .iter()
            .map(|s| target.reduce_unchecked(&s.b, &s.r, &s.a))
            .collect();
        self.from_symbol_images(&target.group, &images)
    }
}

impl fmt::Debug for TorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tor({}, {}) = {}", self.a, self.b, self.group)
    }
}

/// Outcome of checking the four symbol relations on one pair of groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the additivity and shift relations exhaustively over all elements of
/// two finite groups, for every admissible `r` with `|r| ≤ max_r`.
/// `budget` caps the number of comparisons.
pub fn verify_tor_relations(a: &FpAbGroup, b: &FpAbGroup, max_r: i64, budget: usize) -> RelationReport {
    let tor = TorProduct::new(a, b);
    verify_relations_with(a, b, max_r, budget, |x, r, y| tor.reduce(x, r, y).ok(), tor.group())
}

/// Shared driver: `eval` evaluates a symbol into `target`.
pub fn verify_relations_with<F>(
    a: &FpAbGroup,
    b: &FpAbGroup,
    max_r: i64,
    budget: usize,
    eval: F,
    target: &FpAbGroup,
) -> RelationReport
where
    F: Fn(&[Int], &Int, &[Int]) -> Option<Vec<Int>>,
{
    let mut rep = RelationReport::default();
    let ea = torsion_elements(a);
    let eb = torsion_elements(b);
    let eq = |x: &Option<Vec<Int>>, y: &Option<Vec<Int>>| match (x, y) {
        (Some(x), Some(y)) => target.eq_elements(x, y),
        _ => false,
    };
    let note = |rep: &mut RelationReport, ok: bool, what: String| {
        rep.checked += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    'outer: for rv in (1..=max_r).flat_map(|r| [r, -r]) {
        let r = Int::from(rv);
        let ka: Vec<&Vec<Int>> = ea.iter().filter(|x| a.is_torsion_element(x, &r)).collect();
        let kb: Vec<&Vec<Int>> = eb.iter().filter(|y| b.is_torsion_element(y, &r)).collect();
        // (1) and (2): additivity in each variable.
        for a1 in &ka {
            for a2 in &ka {
                for y in &kb {
                    if rep.checked >= budget {
                        break 'outer;
                    }
                    let lhs = add_opt(eval(a1, &r, y), eval(a2, &r, y));
                    let rhs = eval(&vecops::add(a1, a2), &r, y);
                    note(&mut rep, eq(&lhs, &rhs), format!("(1) a1={a1:?} a2={a2:?} r={r} b={y:?}"));
                }
            }
        }
        for x in &ka {
            for b1 in &kb {
                for b2 in &kb {
                    if rep.checked >= budget {
                        break 'outer;
                    }
                    let lhs = add_opt(eval(x, &r, b1), eval(x, &r, b2));
                    let rhs = eval(x, &r, &vecops::add(b1, b2));
                    note(&mut rep, eq(&lhs, &rhs), format!("(2) a={x:?} r={r} b1={b1:?} b2={b2:?}"));
                }
            }
        }
        // (3) and (4): every factorization r = r1·r2.
        for r1v in divisors_signed(rv) {
            let r1 = Int::from(r1v);
            let r2 = Int::from(rv / r1v);
            for x in &ka {
                for y in &eb {
                    if rep.checked >= budget {
                        break 'outer;
                    }
                    if b.is_torsion_element(y, &r2) {
                        let lhs = eval(x, &r, y);
                        let rhs = eval(&vecops::scale(x, &r1), &r2, y);
                        note(&mut rep, eq(&lhs, &rhs), format!("(3) a={x:?} r1={r1} r2={r2} b={y:?}"));
                    }
                }
            }
            for x in &ea {
                if !a.is_torsion_element(x, &r1) {
                    continue;
                }
                for y in &kb {
                    if rep.checked >= budget {
                        break 'outer;
                    }
                    let lhs = eval(x, &r, y);
                    let rhs = eval(x, &r1, &vecops::scale(y, &r2));
                    note(&mut rep, eq(&lhs, &rhs), format!("(4) a={x:?} r1={r1} r2={r2} b={y:?}"));
                }
            }
        }
    }
    rep
}

fn add_opt(x: Option<Vec<Int>>, y: Option<Vec<Int>>) -> Option<Vec<Int>> {
    Some(vecops::add(&x?, &y?))
}

fn divisors_signed(r: i64) -> Vec<i64> {
    let n = r.abs();
    (1..=n)
        .filter(|d| n % d == 0)
        .flat_map(|d| [d, -d])
        .collect()
}

/// Elements of the torsion subgroup of a group with finite torsion.
fn torsion_elements(g: &FpAbGroup) -> Vec<Vec<Int>> {
    let t = g.torsion_count();
    let mut out = vec![vecops::zeros(g.canonical_rank())];
    for (k, d) in g.torsion_orders().iter().enumerate() {
        let d: u64 = d.try_into().expect("small torsion order");
        let mut next = Vec::new();
        for v in &out {
            for c in 0..d {
                let mut w = v.clone();
                w[k] = Int::from(c);
                next.push(w);
            }
        }
        out = next;
    }
    debug_assert!(out.iter().all(|v| v[t..].iter().all(Zero::is_zero)));
    out.into_iter().map(|y| g.from_canonical(&y)).collect()
}

/// `∏ gcd(d_i, e_j)` over invariant factors: the order of `Tor(A, B)`.
pub fn tor_order_oracle(a: &FpAbGroup, b: &FpAbGroup) -> Int {
    let mut acc = Int::one();
    for d in a.torsion_orders() {
        for e in b.torsion_orders() {
            acc *= d.gcd(e);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vecops::from_i64;

    #[test]
    fn examples() {
        let z4 = FpAbGroup::cyclic(4);
        let z6 = FpAbGroup::cyclic(6);
        let z2 = FpAbGroup::cyclic(2);
        assert!(tor_group(&FpAbGroup::free(1), &z4).group().is_trivial());
        assert_eq!(tor_group(&z4, &z6).group().describe(), "Z/2");
        let z2z4 = FpAbGroup::from_orders(&from_i64(&[2, 4]));
        assert_eq!(tor_group(&z2z4, &z2).group().describe(), "Z/2 + Z/2");
    }

    #[test]
    fn symbol_examples() {
        let z2 = FpAbGroup::cyclic(2);
        let t = tor_group(&z2, &z2);
        let x = t.reduce(&from_i64(&[1]), &Int::from(2), &from_i64(&[1])).unwrap();
        assert!(!t.group().is_zero(&x));
        let zero = t.reduce(&from_i64(&[0]), &Int::from(2), &from_i64(&[1])).unwrap();
        assert!(t.group().is_zero(&zero));

        let z4 = FpAbGroup::cyclic(4);
        let z6 = FpAbGroup::cyclic(6);
        let t = tor_group(&z4, &z6);
        let lhs = t.reduce(&from_i64(&[1]), &Int::from(12), &from_i64(&[1])).unwrap();
        let rhs = t.reduce(&from_i64(&[2]), &Int::from(2), &from_i64(&[3])).unwrap();
        assert!(t.group().eq_elements(&lhs, &rhs));
        assert!(!t.group().is_zero(&lhs));
    }

    #[test]
    fn inadmissible_rejected() {
        let z4 = FpAbGroup::cyclic(4);
        let t = tor_group(&z4, &z4);
        assert!(t.reduce(&from_i64(&[1]), &Int::from(2), &from_i64(&[2])).is_err());
        assert!(t.reduce(&from_i64(&[1]), &Int::zero(), &from_i64(&[1])).is_err());
    }

    #[test]
    fn relations_small() {
        let z2 = FpAbGroup::cyclic(2);
        assert!(verify_tor_relations(&z2, &z2, 8, usize::MAX).passed());
        let z4 = FpAbGroup::cyclic(4);
        let z6 = FpAbGroup::cyclic(6);
        assert!(verify_tor_relations(&z4, &z6, 24, usize::MAX).passed());
        let rep = verify_tor_relations(&FpAbGroup::free(1), &z6, 6, usize::MAX);
        assert!(rep.passed());
    }

    #[test]
    fn decompose_round_trip() {
        let a = FpAbGroup::from_orders(&from_i64(&[2, 4, 0]));
        let b = FpAbGroup::from_orders(&from_i64(&[6, 4]));
        let t = tor_group(&a, &b);
        assert_eq!(t.group().order(), Some(tor_order_oracle(&a, &b)));
        for j in 0..t.group().gens() {
            let x = vecops::unit(t.group().gens(), j);
            let c = t.decompose(&x);
            assert!(t.group().eq_elements(&t.compose(&c), &x));
        }
    }
}
