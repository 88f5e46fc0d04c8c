use num_integer::Integer;

use super::*;
use crate::abelian::{verify_relations_with, FpAbGroup, TorProduct};
use crate::complex::builtin::{moore, rp, sphere};
use crate::complex::{boundary_splitting, mod_reduction, FpChainComplex, WeakSplitting};
use crate::error::Error;
use crate::linalg::vecops::{from_i64, unit};
use crate::linalg::{Int, IntMatrix};
use crate::random::{random_free_complex, random_tor_acyclic_pair, seeded, ComplexParams, FpParams};

fn int(x: i64) -> Int {
    Int::from(x)
}

fn sigma_pair(c: &FpChainComplex, d: &FpChainComplex) -> KunnethSplitting {
    let fc = crate::complex::FreeChainComplex::from_fp(c.clone()).unwrap();
    let fd = crate::complex::FreeChainComplex::from_fp(d.clone()).unwrap();
    KunnethSplitting::Boundary(boundary_splitting(&fc), boundary_splitting(&fd))
}

/// `H_n` of a complex with one generator per degree and scalar boundaries,
/// straight from the Smith form by hand.
fn moore_square() -> KunnethPair {
    KunnethPair::new(&moore(2, 1), &moore(2, 1)).unwrap()
}

#[test]
fn cross_products_of_moore_spaces() {
    let p = moore_square();
    let h2 = p.product().homology(2);
    assert_eq!(h2.group.describe(), "Z/2");
    let x = p.cross(1, &from_i64(&[1]), 1, &from_i64(&[1]));
    assert!(!h2.group.is_zero(&x));
    // the only cycle in degree 2 is e1⊗f1
    assert!(h2.group.eq_elements(&x, &h2.class_of(&from_i64(&[1])).unwrap()));
    let zero = p.cross(1, &from_i64(&[0]), 1, &from_i64(&[1]));
    assert!(h2.group.is_zero(&zero));

    let t = KunnethPair::new(&sphere(1), &sphere(1)).unwrap();
    let h2 = t.product().homology(2);
    assert_eq!(h2.group.describe(), "Z");
    let x = t.cross(1, &from_i64(&[1]), 1, &from_i64(&[1]));
    let can = h2.group.to_canonical(&x);
    assert_eq!(can.len(), 1);
    assert!(can[0] == int(1) || can[0] == int(-1));
}

#[test]
fn mac_lane_cycle_on_moore_square() {
    let p = moore_square();
    let l = Lifts {
        z: from_i64(&[1]),
        u: from_i64(&[1]),
        w: from_i64(&[1]),
        v: from_i64(&[1]),
    };
    let x = mac_lane_cycle(p.tensor(), 1, 1, &int(2), &l).unwrap();
    // degree 3 has e1⊗f2 then e2⊗f1
    assert_eq!(x.coords, from_i64(&[1, 1]));
    assert!(p.product().is_cycle(3, &x.coords));
    let bad = Lifts {
        u: from_i64(&[0]),
        ..l.clone()
    };
    assert!(matches!(
        mac_lane_cycle(p.tensor(), 1, 1, &int(2), &bad),
        Err(Error::NotABoundary { .. })
    ));
    // even degree: sign flips onto z⊗v
    let q = KunnethPair::new(&moore(2, 2), &moore(2, 1)).unwrap();
    let x = mac_lane_cycle(q.tensor(), 2, 1, &int(2), &l).unwrap();
    assert_eq!(x.coords, from_i64(&[-1, 1]));
}

#[test]
fn mu_on_moore_square() {
    let p = moore_square();
    let h3 = p.product().homology(3);
    assert_eq!(h3.group.describe(), "Z/2");
    let x = h3.class_of(&from_i64(&[1, 1])).unwrap();
    let t = p.mu(1, 1, &x);
    let tor = p.tor(1, 1);
    let g = tor.reduce(&from_i64(&[1]), &int(2), &from_i64(&[1])).unwrap();
    assert!(tor.group().eq_elements(&t, &g));
    assert!(!tor.group().is_zero(&t));
    let z = h3.cycle_of(&x);
    assert_eq!(
        p.mu_via_left(1, 1, &z).unwrap(),
        p.mu_via_right(1, 1, &z).unwrap()
    );
}

#[test]
fn lambda_on_moore_square() {
    let p = moore_square();
    for s in [
        sigma_pair(p.left(), p.right()),
        KunnethSplitting::weak(p.left(), p.right()),
    ] {
        let c = p.lambda_cycle(&s, 1, &from_i64(&[1]), &int(2), 1, &from_i64(&[1])).unwrap();
        let h3 = p.product().homology(3);
        let x = h3.class_of(&c.coords).unwrap();
        let expected = h3.class_of(&from_i64(&[1, 1])).unwrap();
        assert!(h3.group.eq_elements(&x, &expected));
        let t = p.lambda(&s, 1, &from_i64(&[0]), &int(2), 1, &from_i64(&[1])).unwrap();
        assert!(h3.group.is_zero(&t));
    }
}

#[test]
fn lambda_moore_4_6() {
    let p = KunnethPair::new(&moore(4, 1), &moore(6, 1)).unwrap();
    let s = sigma_pair(p.left(), p.right());
    // hand computation: ∂(e1⊗f2) = −6 e1⊗f1, ∂(e2⊗f1) = 4 e1⊗f1, so Z_3 = ⟨(2,3)⟩;
    // ∂(e2⊗f2) = (4, 6) = 2·(2,3), so H_3 = ℤ/2 generated by (2,3).
    let c = p.lambda_cycle(&s, 1, &from_i64(&[1]), &int(12), 1, &from_i64(&[1])).unwrap();
    assert_eq!(c.coords, from_i64(&[2, 3]));
    let h3 = p.product().homology(3);
    assert!(!h3.is_boundary(&c.coords).unwrap());
    let x = h3.class_of(&c.coords).unwrap();
    let tor = p.tor(1, 1);
    assert_eq!(tor.group().describe(), "Z/2");
    let mu = p.mu(1, 1, &x);
    let g = tor.reduce(&from_i64(&[2]), &int(2), &from_i64(&[3])).unwrap();
    assert!(tor.group().eq_elements(&mu, &g));
    let bf = p.bockstein_form(&s, 1, &from_i64(&[1]), &int(12), 1, &from_i64(&[1])).unwrap();
    assert!(h3.group.eq_elements(&bf, &x));
}

#[test]
fn left_and_right_mu_agree_on_random_free_pairs() {
    let mut rng = seeded(11);
    let params = ComplexParams::new(3, 3, 6);
    for _ in 0..25 {
        let c = random_free_complex(&mut rng, &params);
        let d = random_free_complex(&mut rng, &params);
        let p = KunnethPair::new(c.as_fp(), d.as_fp()).unwrap();
        for n in p.product().degrees() {
            let h = p.product().homology(n);
            for (i, j) in p.tor_pairs(n) {
                for k in 0..h.cycles.rank() {
                    let z = h.cycles.vector(k);
                    let l = p.mu_via_left(i, j, &z).unwrap();
                    let r = p.mu_via_right(i, j, &z).unwrap();
                    assert!(p.tor(i, j).group().eq_elements(&l, &r));
                }
            }
        }
    }
}

fn check_splits(p: &KunnethPair, s: &KunnethSplitting) {
    for n in p.product().degrees() {
        let dec = p.decomposition(n, Some(s)).unwrap();
        dec.check().unwrap();
        assert!(dec.splitting_map().unwrap().is_iso());
        for (i, j) in p.tor_pairs(n) {
            let tor = p.tor(i, j);
            for sym in tor.symbols() {
                let x = p.lambda(s, i, &sym.a, &sym.r, j, &sym.b).unwrap();
                for (k, l) in p.tor_pairs(n) {
                    let m = p.mu(k, l, &x);
                    if (k, l) == (i, j) {
                        let t = tor.reduce(&sym.a, &sym.r, &sym.b).unwrap();
                        assert!(tor.group().eq_elements(&m, &t));
                    } else {
                        assert!(p.tor(k, l).group().is_zero(&m));
                    }
                }
            }
        }
    }
}

#[test]
fn lambda_splits_on_builtins() {
    let cases: Vec<(FpChainComplex, FpChainComplex)> = vec![
        (moore(2, 1).into_fp(), moore(2, 1).into_fp()),
        (moore(4, 1).into_fp(), moore(6, 2).into_fp()),
        (rp(4).into_fp(), rp(3).into_fp()),
        (sphere(2).into_fp(), moore(3, 1).into_fp()),
    ];
    for (c, d) in cases {
        let p = KunnethPair::new(&c, &d).unwrap();
        check_splits(&p, &sigma_pair(&c, &d));
        check_splits(&p, &KunnethSplitting::weak(&c, &d));
    }
}

#[test]
fn lambda_splits_on_random_free_pairs() {
    let mut rng = seeded(7);
    let params = ComplexParams::new(3, 3, 6);
    for _ in 0..20 {
        let c = random_free_complex(&mut rng, &params);
        let d = random_free_complex(&mut rng, &params);
        let p = KunnethPair::new(c.as_fp(), d.as_fp()).unwrap();
        let s = KunnethSplitting::Boundary(
            boundary_splitting(&c).perturbed(&mut rng, 3),
            boundary_splitting(&d).perturbed(&mut rng, 3),
        );
        check_splits(&p, &s);
    }
}

#[test]
fn fp_pairs_go_through_a_cover() {
    let c = mod_reduction(&moore(2, 1), &int(2)).unwrap();
    let g = FpAbGroup::new(2, IntMatrix::from_rows(&[[2], [0]])).unwrap();
    let d = FpChainComplex::new(1, vec![g.clone(), g], vec![IntMatrix::from_rows(&[[1, 0], [0, 2]])]).unwrap();
    let p = KunnethPair::new(&c, &d).unwrap();
    assert!(p.left_cover().is_some());
    assert!(!p.tor(1, 1).group().is_trivial());
    check_splits(&p, &KunnethSplitting::weak(&c, &d));

    let mut rng = seeded(19);
    for _ in 0..8 {
        let (c, d) = random_tor_acyclic_pair(&mut rng, &FpParams { max_degree: 2, max_gens: 2, max_order: 6 });
        let p = KunnethPair::new(&c, &d).unwrap();
        check_splits(&p, &KunnethSplitting::weak(&c, &d));
    }
}

#[test]
fn non_acyclic_tor_is_rejected() {
    let c = mod_reduction(&moore(2, 1), &int(2)).unwrap();
    let r = KunnethPair::new(&c, &c);
    assert!(matches!(r, Err(Error::NotTorAcyclic { .. })));
    // one free side: vacuous
    assert!(check_tor_acyclic(&c, moore(2, 1).as_fp()).is_ok());
}

#[test]
fn lambda_respects_tor_relations() {
    let p = KunnethPair::new(&moore(4, 1), &moore(6, 1)).unwrap();
    let s = sigma_pair(p.left(), p.right());
    let target = p.product().homology(3).group.clone();
    let ha = p.left().homology(1).group.clone();
    let hb = p.right().homology(1).group.clone();
    let report = verify_relations_with(&ha, &hb, 24, 400, |a, r, b| p.lambda(&s, 1, a, r, 1, b).ok(), &target);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn lambda_ignores_cycle_representative() {
    let c = moore(2, 1).into_fp().direct_sum(sphere(2).as_fp());
    let p = KunnethPair::new(&c, &moore(2, 1)).unwrap();
    let s = sigma_pair(p.left(), p.right());
    let base = p.lambda(&s, 1, &p.left().homology(1).group.canonical_generator(0), &int(2), 1, &from_i64(&[1])).unwrap();
    // e1 + ∂e2 = 3 e1 represents the same class
    let h1 = p.left().homology(1);
    let z = h1.generator_cycles[0].clone();
    let shifted: Vec<Int> = z.iter().zip(p.left().apply_boundary(2, &unit(2, 0))).map(|(a, b)| a + b).collect();
    let a2 = h1.class_of(&shifted).unwrap();
    let again = p.lambda(&s, 1, &a2, &int(2), 1, &from_i64(&[1])).unwrap();
    assert!(p.product().homology(3).group.eq_elements(&base, &again));
}

#[test]
fn cosets() {
    let p = moore_square();
    let s = KunnethSplitting::weak(p.left(), p.right());
    let c = p.lambda_coset(&s, 1, &from_i64(&[1]), &int(2), 1, &from_i64(&[1])).unwrap();
    assert!(c.is_singleton());
    assert!(c.contains(&c.representative));

    let left = moore(2, 1).into_fp().direct_sum(sphere(2).as_fp());
    let p = KunnethPair::new(&left, &moore(2, 1)).unwrap();
    let a = p.left().homology(1).group.canonical_generator(0);
    let h2 = p.left().homology(2).group.clone();
    let b = from_i64(&[1]);
    let sigma = sigma_pair(p.left(), p.right());
    let c = p.lambda_coset(&sigma, 1, &a, &int(2), 1, &b).unwrap();
    assert!(!c.is_singleton());
    let s_class = h2.canonical_generator(0);
    let sh = p.cross(2, &s_class, 1, &b);
    assert!(!c.group.is_zero(&sh));
    assert!(c.contains(&crate::linalg::vecops::add(&c.representative, &sh)));

    let mut rng = seeded(2);
    let fc = crate::complex::FreeChainComplex::from_fp(left.clone()).unwrap();
    for _ in 0..10 {
        let other = KunnethSplitting::Boundary(
            boundary_splitting(&fc).perturbed(&mut rng, 4),
            boundary_splitting(&moore(2, 1)).perturbed(&mut rng, 4),
        );
        let c2 = p.lambda_coset(&other, 1, &a, &int(2), 1, &b).unwrap();
        assert!(c.same_as(&c2));
    }
}

#[test]
fn bockstein_examples() {
    let c = moore(2, 1);
    let b = Bockstein::new(c.as_fp(), &int(2)).unwrap();
    let h2 = b.reduced().homology(2);
    let x = h2.class_of(&from_i64(&[1])).unwrap();
    let y = b.apply(2, &x);
    assert!(c.homology(1).group.eq_elements(&y, &c.homology(1).class_of(&from_i64(&[1])).unwrap()));

    let r3 = rp(3);
    let b = Bockstein::new(r3.as_fp(), &int(2)).unwrap();
    let y = b.apply_chain(2, &from_i64(&[1])).unwrap();
    let h1 = r3.homology(1);
    assert!(!h1.group.is_zero(&y));
    assert!(h1.group.eq_elements(&y, &h1.class_of(&from_i64(&[1])).unwrap()));
    // a genuine cycle goes to 0
    let y = b.apply_chain(3, &from_i64(&[1])).unwrap();
    assert!(r3.homology(2).group.is_zero(&y));

    let fp = mod_reduction(&moore(2, 1), &int(2)).unwrap();
    assert!(matches!(Bockstein::new(&fp, &int(2)), Err(Error::NotTorsionFree { .. })));
    assert!(matches!(Bockstein::new(c.as_fp(), &int(0)), Err(Error::ZeroModulus)));
}

#[test]
fn uc_splittings() {
    let c = moore(2, 1);
    let ws = WeakSplitting::from_boundary_splitting(&boundary_splitting(&c));
    let u = UcSplitting::new(&ws, &int(2), 1).unwrap();
    u.check().unwrap();
    let rho = u.rho(&from_i64(&[1])).unwrap();
    let h2 = u.bockstein().reduced().homology(2);
    assert!(h2.group.eq_elements(&rho, &h2.class_of(&from_i64(&[1])).unwrap()));

    let c = moore(4, 1);
    let ws = WeakSplitting::from_boundary_splitting(&boundary_splitting(&c));
    let u = UcSplitting::new(&ws, &int(2), 1).unwrap();
    u.check().unwrap();
    let rho = u.rho(&from_i64(&[2])).unwrap();
    let h2 = u.bockstein().reduced().homology(2);
    assert!(h2.group.eq_elements(&rho, &h2.class_of(&from_i64(&[1])).unwrap()));
    assert!(matches!(u.rho(&from_i64(&[1])), Err(Error::NotTorsion { .. })));

    let fam = CompatibleFamily::new(&ws, 1).unwrap();
    fam.verify(&int(2), &int(2)).unwrap();
    let c6 = moore(6, 1);
    let fam6 = CompatibleFamily::new(&WeakSplitting::surjective(c6.as_fp()), 1).unwrap();
    fam6.verify(&int(3), &int(2)).unwrap();
    fam6.verify(&int(5), &int(7)).unwrap();
}

#[test]
fn kappa_matches_lambda_cosets() {
    let cases = [(2, 2, 2), (4, 6, 12), (4, 6, 2), (6, 9, 3)];
    for (m, k, r) in cases {
        let c = moore(m, 1);
        let d = moore(k, 1);
        let p = KunnethPair::new(c.as_fp(), d.as_fp()).unwrap();
        let wc = WeakSplitting::from_boundary_splitting(&boundary_splitting(&c));
        let wd = WeakSplitting::from_boundary_splitting(&boundary_splitting(&d));
        let fc = CompatibleFamily::new(&wc, 1).unwrap();
        let fd = CompatibleFamily::new(&wd, 1).unwrap();
        let a = from_i64(&[m / m.gcd(&r)]);
        let b = from_i64(&[k / k.gcd(&r)]);
        let r = int(r);
        let kappa = p.kappa_family(&fc, &fd, &a, &r, &b).unwrap();
        let s = KunnethSplitting::Weak(wc.clone(), wd.clone());
        let coset = p.lambda_coset(&s, 1, &a, &r, 1, &b).unwrap();
        assert!(coset.contains(&kappa));
    }
    // ⟨g,12,h⟩ and ⟨2g,2,3h⟩ give the same κ
    let c = moore(4, 1);
    let d = moore(6, 1);
    let p = KunnethPair::new(c.as_fp(), d.as_fp()).unwrap();
    let fc = CompatibleFamily::new(&WeakSplitting::from_boundary_splitting(&boundary_splitting(&c)), 1).unwrap();
    let fd = CompatibleFamily::new(&WeakSplitting::from_boundary_splitting(&boundary_splitting(&d)), 1).unwrap();
    let x = p.kappa_family(&fc, &fd, &from_i64(&[1]), &int(12), &from_i64(&[1])).unwrap();
    let y = p.kappa_family(&fc, &fd, &from_i64(&[2]), &int(2), &from_i64(&[3])).unwrap();
    let h3 = p.product().homology(3).group.clone();
    assert!(h3.eq_elements(&x, &y));
    assert!(!h3.is_zero(&x));
    let (l, r) = p.kappa_rescaling(&fc, &fd, &from_i64(&[1]), &int(2), &int(2), &from_i64(&[3])).unwrap();
    assert!(h3.eq_elements(&l, &r));
}

#[test]
fn tor_complex_of_reductions() {
    let c = mod_reduction(&moore(2, 1), &int(2)).unwrap();
    let t = tor_complex(&c, &c);
    let orders: Vec<String> = t.degrees().map(|n| t.homology(n).group.describe()).collect();
    assert!(orders.iter().any(|s| s != "0"));
    let tp = TorProduct::new(&c.group(1), &c.group(1));
    assert_eq!(t.group(2).gens(), tp.group().gens());
}

#[test]
fn decompositions_of_moore_square() {
    let p = moore_square();
    let d3 = p.decomposition(3, None).unwrap();
    d3.check().unwrap();
    assert!(d3.cross.source().is_trivial());
    assert_eq!(d3.mu.target().describe(), "Z/2");
    let d2 = p.decomposition(2, None).unwrap();
    d2.check().unwrap();
    assert_eq!(d2.cross.source().describe(), "Z/2");
    assert!(d2.mu.target().is_trivial());
    let q = KunnethPair::new(sphere(3).as_fp(), rp(4).as_fp()).unwrap();
    for n in q.product().degrees() {
        assert!(q.decomposition(n, None).unwrap().mu.target().is_trivial());
    }
}
