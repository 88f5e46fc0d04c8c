use rand::Rng;

use super::*;
use crate::complex::builtin::{moore, sphere};
use crate::complex::{weak_splitting, ChainMap, FpChainComplex, WeakSplitting};
use crate::error::Error;
use crate::kunneth::KunnethPair;
use crate::linalg::vecops::{add, from_i64, neg};
use crate::linalg::{Int, IntMatrix};
use crate::random::{random_chain_map, random_graph_map, random_homotopy, random_torsion_complex, random_torsion_symbol, seeded, ComplexParams, SeededRng};

fn int(x: i64) -> Int {
    Int::from(x)
}

fn moore_to_sum() -> (FpChainComplex, FpChainComplex, ChainMap) {
    let a = moore(4, 1).into_fp();
    let b = moore(2, 1).as_fp().direct_sum(sphere(2).as_fp());
    let f = ChainMap::new(
        a.clone(),
        b.clone(),
        vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[2], [1]])],
    )
    .unwrap();
    (a, b, f)
}

#[test]
fn theta_of_moore_example() {
    let (a, b, f) = moore_to_sum();
    let m = WeakSplitChainMap::complete(&f, &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    m.check().unwrap();
    let r = int(4);
    let s = b.homology(2).class_of(&from_i64(&[0, 1])).unwrap();
    let theta = m.theta_at(&r, 1, &from_i64(&[1])).unwrap();
    let t = reduce_mod(&b.homology(2).group, &r);
    assert!(t.eq_elements(&theta, &neg(&s)));
    assert!(!t.is_zero(&theta));

    // brute force over alternative completions
    let mut rng = seeded(11);
    let th = m.theta(&r, 1).unwrap();
    for _ in 0..20 {
        let m2 = m.recomplete(&mut rng, 3);
        m2.check().unwrap();
        assert!(m2.theta(&r, 1).unwrap().equals(&th));
    }
}

#[test]
fn moore_map_without_sphere_has_zero_omega() {
    let a = moore(4, 1).into_fp();
    let b = moore(2, 1).into_fp();
    let f = ChainMap::new(a.clone(), b.clone(), vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[2]])]).unwrap();
    let m = WeakSplitChainMap::complete(&f, &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    m.check().unwrap();
    assert!(m.omega(1).is_zero());
    assert_eq!(m.phi_hat(1), IntMatrix::from_rows(&[[1]]));
    assert!(m.theta(&int(4), 1).unwrap().is_zero());
}

#[test]
fn identity_and_zero_maps() {
    let c = moore(6, 1).as_fp().direct_sum(moore(4, 2).as_fp());
    let ws = weak_splitting(&c);
    let id = identity_map(&ws);
    id.check().unwrap();
    let z = WeakSplitChainMap::complete(&ChainMap::zero(&c, &c), &ws, &ws).unwrap();
    for n in 0..3 {
        for r in [2, 3, 4, 12] {
            assert!(id.theta(&int(r), n).unwrap().is_zero());
            assert!(z.theta(&int(r), n).unwrap().is_zero());
        }
    }
    assert!((1..3).all(|n| z.phi_hat(n).is_zero() && z.omega(n).is_zero()));
}

#[test]
fn theta_rejects_non_torsion() {
    let (a, b, f) = moore_to_sum();
    let m = WeakSplitChainMap::complete(&f, &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    assert!(matches!(m.theta_at(&int(2), 1, &from_i64(&[1])), Err(Error::NotTorsion { .. })));
    assert!(matches!(m.theta_at(&int(0), 1, &from_i64(&[1])), Err(Error::ZeroModulus)));
}

#[test]
fn target_without_homology_above_gives_zero() {
    let a = moore(4, 1).into_fp();
    let b = moore(2, 1).into_fp();
    let f = random_chain_map(&mut seeded(2), &a, &b, 3);
    let m = WeakSplitChainMap::complete(&f, &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    assert!(m.theta(&int(4), 1).unwrap().is_zero());
}

/// A free complex with at least one torsion summand.
pub(crate) fn torsion_complex(rng: &mut SeededRng) -> FpChainComplex {
    random_torsion_complex(rng, &ComplexParams::new(3, 2, 6))
}

pub(crate) fn random_split(rng: &mut SeededRng, c: &FpChainComplex) -> WeakSplitting {
    let ws = weak_splitting(c);
    if rng.gen_bool(0.5) {
        ws.perturbed(rng, 2)
    } else {
        ws
    }
}

pub(crate) fn random_weak_map(rng: &mut SeededRng, a: &FpChainComplex, b: &FpChainComplex) -> WeakSplitChainMap {
    let f = random_chain_map(rng, a, b, 2);
    let sa = random_split(rng, a);
    let sb = random_split(rng, b);
    let m = WeakSplitChainMap::complete(&f, &sa, &sb).unwrap();
    if rng.gen_bool(0.5) {
        m.recomplete(rng, 2)
    } else {
        m
    }
}

pub(crate) fn random_graph_weak_map(rng: &mut SeededRng, a: &FpChainComplex) -> WeakSplitChainMap {
    let f = random_graph_map(rng, a, 3);
    let sa = random_split(rng, a);
    let sb = random_split(rng, f.target());
    WeakSplitChainMap::complete(&f, &sa, &sb).unwrap().recomplete(rng, 2)
}

#[test]
fn recompletion_leaves_theta_unchanged() {
    let mut rng = seeded(21);
    for _ in 0..25 {
        let a = torsion_complex(&mut rng);
        let b = torsion_complex(&mut rng);
        let m = random_weak_map(&mut rng, &a, &b);
        m.check().unwrap();
        let m2 = m.recomplete(&mut rng, 3);
        m2.check().unwrap();
        for n in a.degrees() {
            for r in [2, 4, 6] {
                assert!(m.theta(&int(r), n).unwrap().equals(&m2.theta(&int(r), n).unwrap()));
            }
        }
    }
}

#[test]
fn deviation_formula_on_moore_example() {
    let (a, b, f) = moore_to_sum();
    let c = moore(2, 1).into_fp();
    let mf = WeakSplitChainMap::complete(&f, &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    let id = identity_map(&weak_splitting(&c));
    let src = KunnethPair::new(&a, &c).unwrap();
    let tgt = KunnethPair::new(&b, &c).unwrap();
    let rep = deviation_check(&src, &tgt, &mf, &id, 1, &from_i64(&[1]), &int(4), 1, &from_i64(&[1])).unwrap();
    assert!(rep.holds());
    assert!(cosets_natural_check(&src, &tgt, &mf, &id, 1, &from_i64(&[1]), &int(4), 1, &from_i64(&[1])).unwrap());
}

#[test]
fn deviation_formula_for_identities() {
    let c = moore(4, 1).into_fp();
    let d = moore(6, 0).into_fp();
    let p = KunnethPair::new(&c, &d).unwrap();
    let (fc, fd) = (identity_map(&weak_splitting(&c)), identity_map(&weak_splitting(&d)));
    let rep = deviation_check(&p, &p, &fc, &fd, 1, &from_i64(&[2]), &int(2), 0, &from_i64(&[3])).unwrap();
    assert!(rep.holds() && rep.holds_as_stated());
    assert!(rep.group.eq_elements(&rep.lhs, &rep.natural));
}

#[test]
fn deviation_formula_on_random_quadruples() {
    let mut rng = seeded(31);
    let mut stated_failures = 0;
    for _ in 0..40 {
        let a = torsion_complex(&mut rng);
        let b = torsion_complex(&mut rng);
        let mf = random_graph_weak_map(&mut rng, &a);
        let mg = random_graph_weak_map(&mut rng, &b);
        let (a2, b2) = (mf.map.target().clone(), mg.map.target().clone());
        let src = KunnethPair::new(&a, &b).unwrap();
        let tgt = KunnethPair::new(&a2, &b2).unwrap();
        let (i, x, r, j, y) = random_torsion_symbol(&mut rng, &a, &b).unwrap();
        let rep = deviation_check(&src, &tgt, &mf, &mg, i, &x, &r, j, &y).unwrap();
        assert!(rep.holds(), "deviation formula fails");
        if !rep.holds_as_stated() {
            stated_failures += 1;
        }
        assert!(cosets_natural_check(&src, &tgt, &mf, &mg, i, &x, &r, j, &y).unwrap());
    }
    // the sign (−1)^i on the left term is refuted by some of these
    assert!(stated_failures > 0);
}

#[test]
fn deviation_sign_separates() {
    // id on moore(4,1) against moore(4,1) → moore(2,1)⊕S²: the left term is a×(−s) of order 4
    let (a, b, g) = moore_to_sum();
    let wa = weak_splitting(&a);
    let mf = identity_map(&wa);
    let mg = WeakSplitChainMap::complete(&g, &wa, &weak_splitting(&b)).unwrap();
    let src = KunnethPair::new(&a, &a).unwrap();
    let tgt = KunnethPair::new(&a, &b).unwrap();
    let one = from_i64(&[1]);
    let rep = deviation_check(&src, &tgt, &mf, &mg, 1, &one, &int(4), 1, &one).unwrap();
    assert!(!rep.group.is_zero(&add(&rep.left_term, &rep.left_term)));
    assert!(rep.holds());
    assert!(!rep.holds_as_stated());
}

#[test]
fn composition() {
    let (a, b, f) = moore_to_sum();
    let wa = weak_splitting(&a);
    let wb = weak_splitting(&b);
    let mf = WeakSplitChainMap::complete(&f, &wa, &wb).unwrap();
    let id_a = identity_map(&wa);
    let id_b = identity_map(&wb);
    let r = int(4);
    let th = mf.theta(&r, 1).unwrap();
    for m in [compose(&id_a, &mf).unwrap(), compose(&mf, &id_b).unwrap()] {
        m.check().unwrap();
        assert!(m.theta(&r, 1).unwrap().equals(&th));
    }
    let zero = WeakSplitChainMap::complete(&ChainMap::zero(&b, &b), &wb, &wb).unwrap();
    assert!(compose(&mf, &zero).unwrap().theta(&r, 1).unwrap().is_zero());
    let other = WeakSplitChainMap::complete(&f, &wa, &wb.perturbed(&mut seeded(1), 2)).unwrap();
    assert!(matches!(compose(&other, &id_b), Err(Error::Incompatible(_))));

    // moore(4,1) → moore(2,1)⊕S² → moore(2,1)⊕S², swapping in s
    let g = ChainMap::new(
        b.clone(),
        b.clone(),
        vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1, 0], [3, 1]])],
    )
    .unwrap();
    let mg = WeakSplitChainMap::complete(&g, &wb, &wb).unwrap();
    assert!(theta_composition_holds(&mf, &mg, &r, 1).unwrap());
}

#[test]
fn composition_on_random_triples() {
    let mut rng = seeded(41);
    for _ in 0..20 {
        let cs: Vec<FpChainComplex> = (0..4).map(|_| torsion_complex(&mut rng)).collect();
        let f = random_weak_map(&mut rng, &cs[0], &cs[1]);
        let s2 = random_split(&mut rng, &cs[2]);
        let s3 = random_split(&mut rng, &cs[3]);
        let g = WeakSplitChainMap::complete(&random_chain_map(&mut rng, &cs[1], &cs[2], 2), &f.target, &s2).unwrap();
        let h = WeakSplitChainMap::complete(&random_chain_map(&mut rng, &cs[2], &cs[3], 2), &s2, &s3).unwrap();
        let gf = compose(&f, &g).unwrap();
        gf.check().unwrap();
        let left = compose(&gf, &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        for n in cs[0].degrees() {
            assert_eq!(left.phi_hat(n), right.phi_hat(n));
            assert_eq!(left.omega(n), right.omega(n));
            for r in [2, 3, 4] {
                assert!(theta_composition_holds(&f, &g, &int(r), n).unwrap());
            }
        }
    }
}

#[test]
fn homotopy_invariance() {
    let mut rng = seeded(51);
    for _ in 0..20 {
        let a = torsion_complex(&mut rng);
        let b = torsion_complex(&mut rng);
        let m = random_weak_map(&mut rng, &a, &b);
        let d = random_homotopy(&mut rng, &a, &b, 2);
        let lo = a.lo();
        let dm = |n: i64| {
            if n < lo || n > a.hi() {
                IntMatrix::zeros(b.gens(n + 1), a.gens(n))
            } else {
                d[(n - lo) as usize].clone()
            }
        };
        let g = ChainMap::from_fn(&a, &b, |n| {
            m.map.matrix(n).add(&b.boundary(n + 1).mul(&dm(n))).add(&dm(n - 1).mul(&a.boundary(n)))
        })
        .unwrap();
        let mg = homotopy_transport(&m, &d, &g).unwrap();
        mg.check().unwrap();
        for n in a.degrees() {
            for r in [2, 4, 6] {
                assert!(m.theta(&int(r), n).unwrap().equals(&mg.theta(&int(r), n).unwrap()));
            }
        }
        let zero_d: Vec<IntMatrix> = d.iter().map(|x| IntMatrix::zeros(x.rows(), x.cols())).collect();
        assert!(matches!(
            homotopy_transport(&m, &zero_d, &g),
            Err(Error::NotAHomotopy { .. })
        ) || g.equals(&m.map));
    }
}

#[test]
fn null_homotopic_map_has_zero_theta() {
    let a = moore(4, 1).into_fp();
    let b = moore(2, 1).as_fp().direct_sum(sphere(2).as_fp());
    let z = WeakSplitChainMap::complete(&ChainMap::zero(&a, &b), &weak_splitting(&a), &weak_splitting(&b)).unwrap();
    let d = vec![IntMatrix::from_rows(&[[1], [0]]), IntMatrix::zeros(0, 1)];
    let g = ChainMap::from_fn(&a, &b, |n| match n {
        1 => IntMatrix::from_rows(&[[2]]),
        _ => IntMatrix::from_rows(&[[4], [0]]),
    })
    .unwrap();
    let mg = homotopy_transport(&z, &d, &g).unwrap();
    mg.check().unwrap();
    assert!(mg.theta(&int(4), 1).unwrap().is_zero());
}

#[test]
fn sums() {
    let mut rng = seeded(61);
    for _ in 0..15 {
        let a = torsion_complex(&mut rng);
        let b = torsion_complex(&mut rng);
        let f = random_weak_map(&mut rng, &a, &b);
        let g = WeakSplitChainMap::complete(&random_chain_map(&mut rng, &a, &b, 2), &f.source, &f.target).unwrap();
        let s = internal_sum(&f, &g).unwrap();
        s.check().unwrap();
        let zero = WeakSplitChainMap::complete(&ChainMap::zero(&a, &b), &f.source, &f.target).unwrap();
        let fz = internal_sum(&f, &zero).unwrap();
        let c = torsion_complex(&mut rng);
        let d = torsion_complex(&mut rng);
        let h = random_weak_map(&mut rng, &c, &d);
        let ds = direct_sum(&f, &h);
        ds.check().unwrap();
        let (i1, i2) = ChainMap::sum_inclusions(&a, &c);
        let (j1, j2) = ChainMap::sum_inclusions(&b, &d);
        for n in a.degrees() {
            for r in [2, 4, 6] {
                let r = int(r);
                let (tf, tg, ts) = (f.theta(&r, n).unwrap(), g.theta(&r, n).unwrap(), s.theta(&r, n).unwrap());
                for x in &tf.domain {
                    let lhs = ts.apply(x).unwrap();
                    let rhs = add(&tf.apply(x).unwrap(), &tg.apply(x).unwrap());
                    assert!(ts.target.eq_elements(&lhs, &rhs));
                }
                assert!(fz.theta(&r, n).unwrap().equals(&tf));
                let th = h.theta(&r, n).unwrap();
                let tds = ds.theta(&r, n).unwrap();
                for x in &tf.domain {
                    for y in &th.domain {
                        let xy = add(&i1.induced(n).apply(x), &i2.induced(n).apply(y));
                        let want = add(&j1.induced(n + 1).apply(&tf.apply(x).unwrap()), &j2.induced(n + 1).apply(&th.apply(y).unwrap()));
                        assert!(tds.target.eq_elements(&tds.apply(&xy).unwrap(), &want));
                    }
                }
            }
        }
        let other = WeakSplitChainMap::complete(&g.map, &f.source.perturbed(&mut rng, 2), &f.target).unwrap();
        if !other.source.same_as(&f.source) {
            assert!(internal_sum(&f, &other).is_err());
        }
    }
}

