use crate::complex::ChainMap;
use crate::error::{Error, Result};
use crate::kunneth::torsion_subgroup;
use crate::linalg::{vecops, Int, IntMatrix};

use super::map::{reduce_mod, WeakSplitChainMap};

/// `g ∘ f` with `Φ̂ = Φ̂_g Φ̂_f` and `ω = g ω_f + ω_g Φ̂_f`.
pub fn compose(f: &WeakSplitChainMap, g: &WeakSplitChainMap) -> Result<WeakSplitChainMap> {
    if !f.target.same_as(&g.source) {
        return Err(Error::Incompatible("target splitting of f is not the source splitting of g".into()));
    }
    let map = f.map.then(&g.map);
    let (phi_hat, omega) = f
        .map
        .source()
        .degrees()
        .map(|n| {
            let pf = f.phi_hat(n);
            let ph = g.phi_hat(n).mul(&pf);
            let om = g.map.matrix(n + 1).mul(&f.omega(n)).add(&g.omega(n).mul(&pf));
            (ph, om)
        })
        .unzip();
    Ok(WeakSplitChainMap::raw(map, f.source.clone(), g.target.clone(), phi_hat, omega))
}

/// `Θ_{g∘f} = g_* Θ_f + Θ_g f_*` on the `r`-torsion of `H_n`.
pub fn theta_composition_holds(f: &WeakSplitChainMap, g: &WeakSplitChainMap, r: &Int, n: i64) -> Result<bool> {
    let gf = compose(f, g)?;
    let ha = f.map.source().homology(n).group.clone();
    let hc = reduce_mod(&g.map.target().homology(n + 1).group, r);
    let g_star = g.map.induced(n + 1);
    let f_star = f.map.induced(n);
    for a in torsion_subgroup(&ha, r) {
        let lhs = gf.theta_at(r, n, &a)?;
        let rhs = vecops::add(&g_star.apply(&f.theta_at(r, n, &a)?), &g.theta_at(r, n, &f_star.apply(&a))?);
        if !hc.eq_elements(&lhs, &rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Data for `g` from data for `f` and `D` with `g − f = ∂D + D∂`:
/// `Φ̂` unchanged and `ω_g = ω_f − D φ_A`. `d[k]` acts on `A_{lo+k}`.
pub fn homotopy_transport(m: &WeakSplitChainMap, d: &[IntMatrix], g: &ChainMap) -> Result<WeakSplitChainMap> {
    let a = m.map.source();
    let b = m.map.target();
    if !g.source().same_data(a) || !g.target().same_data(b) {
        return Err(Error::ShapeMismatch("homotopic maps must share source and target".into()));
    }
    let degs: Vec<i64> = a.degrees().collect();
    if d.len() != degs.len() {
        return Err(Error::ShapeMismatch(format!("{} homotopy matrices for {} degrees", d.len(), degs.len())));
    }
    let dm = |n: i64| -> IntMatrix {
        match degs.iter().position(|&k| k == n) {
            Some(k) => d[k].clone(),
            None => IntMatrix::zeros(b.gens(n + 1), a.gens(n)),
        }
    };
    for (k, &n) in degs.iter().enumerate() {
        if d[k].rows() != b.gens(n + 1) || d[k].cols() != a.gens(n) {
            return Err(Error::ShapeMismatch(format!("homotopy has the wrong shape in degree {n}")));
        }
        let lhs = g.matrix(n).sub(&m.map.matrix(n));
        let rhs = b.boundary(n + 1).mul(&d[k]).add(&dm(n - 1).mul(&a.boundary(n)));
        let grp = b.group(n);
        if (0..a.gens(n)).any(|c| !grp.eq_elements(&lhs.column(c), &rhs.column(c))) {
            return Err(Error::NotAHomotopy { degree: n });
        }
    }
    let phi_hat = degs.iter().map(|&n| m.phi_hat(n)).collect();
    let omega = degs
        .iter()
        .map(|&n| m.omega(n).sub(&dm(n).mul(&m.source.degree(n).phi)))
        .collect();
    Ok(WeakSplitChainMap::raw(g.clone(), m.source.clone(), m.target.clone(), phi_hat, omega))
}

/// `f ⊕ g` over the direct sums of the weak splittings.
pub fn direct_sum(f: &WeakSplitChainMap, g: &WeakSplitChainMap) -> WeakSplitChainMap {
    let map = f.map.direct_sum(&g.map);
    let (phi_hat, omega) = map
        .source()
        .degrees()
        .map(|n| {
            (
                f.phi_hat(n).block_diag(&g.phi_hat(n)),
                f.omega(n).block_diag(&g.omega(n)),
            )
        })
        .unzip();
    WeakSplitChainMap::raw(
        map,
        f.source.direct_sum(&g.source),
        f.target.direct_sum(&g.target),
        phi_hat,
        omega,
    )
}

/// `f + g` with `Φ̂_f + Φ̂_g` and `ω_f + ω_g`.
pub fn internal_sum(f: &WeakSplitChainMap, g: &WeakSplitChainMap) -> Result<WeakSplitChainMap> {
    if !f.source.same_as(&g.source) || !f.target.same_as(&g.target) {
        return Err(Error::ShapeMismatch("internal sum needs identical splittings".into()));
    }
    let map = f.map.add(&g.map);
    let (phi_hat, omega) = map
        .source()
        .degrees()
        .map(|n| (f.phi_hat(n).add(&g.phi_hat(n)), f.omega(n).add(&g.omega(n))))
        .unzip();
    Ok(WeakSplitChainMap::raw(map, f.source.clone(), f.target.clone(), phi_hat, omega))
}
