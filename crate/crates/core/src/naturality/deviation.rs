use crate::abelian::FpAbGroup;
use crate::error::{Error, Result};
use crate::kunneth::{epsilon, KunnethPair, KunnethSplitting};
use crate::linalg::{vecops, Int};

use super::map::WeakSplitChainMap;

/// Both sides of the deviation formula for `f: A → A'`, `g: B → B'` and a
/// symbol `⟨a, r, b⟩` with `a ∈ H_i(A)`, `b ∈ H_j(B)`. All classes live in
/// `H_{i+j+1}(A'⊗B')`.
#[derive(Clone, Debug)]
pub struct DeviationReport {
    pub i: i64,
    pub group: FpAbGroup,
    /// `λ'⟨f a, r, g b⟩`.
    pub lhs: Vec<Int>,
    /// `(f⊗g)_* λ⟨a, r, b⟩`.
    pub natural: Vec<Int>,
    /// `f(a) × Θ_g(b)`, unsigned.
    pub left_term: Vec<Int>,
    /// `Θ_f(a) × g(b)`.
    pub right_term: Vec<Int>,
}

impl DeviationReport {
    pub fn rhs_with(&self, sign: &Int) -> Vec<Int> {
        let t = vecops::add(&self.natural, &vecops::scale(&self.left_term, sign));
        vecops::add(&t, &self.right_term)
    }

    /// Equality with the sign `(−1)^{i+1}` on the left deviation term.
    pub fn holds(&self) -> bool {
        self.group.eq_elements(&self.lhs, &self.rhs_with(&epsilon(self.i)))
    }

    /// Equality with the sign `(−1)^i` on the left deviation term.
    pub fn holds_as_stated(&self) -> bool {
        self.group.eq_elements(&self.lhs, &self.rhs_with(&-epsilon(self.i)))
    }
}

fn pair_matches(p: &KunnethPair, f: &WeakSplitChainMap, g: &WeakSplitChainMap, source: bool) -> bool {
    let (a, b) = if source {
        (f.map.source(), g.map.source())
    } else {
        (f.map.target(), g.map.target())
    };
    p.left().same_data(a) && p.right().same_data(b)
}

fn check_pairs(src: &KunnethPair, tgt: &KunnethPair, f: &WeakSplitChainMap, g: &WeakSplitChainMap) -> Result<()> {
    if !pair_matches(src, f, g, true) || !pair_matches(tgt, f, g, false) {
        return Err(Error::ShapeMismatch("pairs do not match the maps".into()));
    }
    Ok(())
}

/// Evaluates `λ'⟨f a, r, g b⟩` and the three terms on the right. `λ` uses the
/// source splittings of `f`, `g` and `λ'` their target splittings.
pub fn deviation_check(
    src: &KunnethPair,
    tgt: &KunnethPair,
    f: &WeakSplitChainMap,
    g: &WeakSplitChainMap,
    i: i64,
    a: &[Int],
    r: &Int,
    j: i64,
    b: &[Int],
) -> Result<DeviationReport> {
    check_pairs(src, tgt, f, g)?;
    let s = KunnethSplitting::Weak(f.source.clone(), g.source.clone());
    let t = KunnethSplitting::Weak(f.target.clone(), g.target.clone());
    let n = i + j + 1;
    let fa = f.map.induced(i).apply(a);
    let gb = g.map.induced(j).apply(b);

    let lhs = tgt.lambda(&t, i, &fa, r, j, &gb)?;
    let lam = src.lambda(&s, i, a, r, j, b)?;
    let fg = src.tensor().tensor_map(&f.map, &g.map, tgt.tensor());
    let natural = fg.induced(n).apply(&lam);
    let theta_g = g.theta_at(r, j, b)?;
    let theta_f = f.theta_at(r, i, a)?;
    let left_term = tgt.cross(i, &fa, j + 1, &theta_g);
    let right_term = tgt.cross(i + 1, &theta_f, j, &gb);
    Ok(DeviationReport {
        i,
        group: tgt.product().homology(n).group.clone(),
        lhs,
        natural,
        left_term,
        right_term,
    })
}

/// `(f⊗g)_*` maps the coset of `⟨a, r, b⟩` into the coset of `⟨f a, r, g b⟩`:
/// checked on the representative and on each indeterminacy generator.
pub fn cosets_natural_check(
    src: &KunnethPair,
    tgt: &KunnethPair,
    f: &WeakSplitChainMap,
    g: &WeakSplitChainMap,
    i: i64,
    a: &[Int],
    r: &Int,
    j: i64,
    b: &[Int],
) -> Result<bool> {
    check_pairs(src, tgt, f, g)?;
    let s = KunnethSplitting::Weak(f.source.clone(), g.source.clone());
    let t = KunnethSplitting::Weak(f.target.clone(), g.target.clone());
    let n = i + j + 1;
    let fa = f.map.induced(i).apply(a);
    let gb = g.map.induced(j).apply(b);
    let source = src.lambda_coset(&s, i, a, r, j, b)?;
    let target = tgt.lambda_coset(&t, i, &fa, r, j, &gb)?;
    let fg = src.tensor().tensor_map(&f.map, &g.map, tgt.tensor()).induced(n);
    Ok(target.contains(&fg.apply(&source.representative))
        && source
            .indeterminacy
            .iter()
            .all(|d| target.subgroup_contains(&fg.apply(d))))
}
