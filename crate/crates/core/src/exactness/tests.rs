use rand::Rng;

use super::*;
use crate::complex::builtin::{moore, point, rp, sphere};
use crate::complex::{
    boundary_splitting, mod_reduction, ses_free_approximation_from, weak_splitting, ChainMap, FpChainComplex,
    FreeApproximation, ShortExactSeq,
};
use crate::kunneth::KunnethSplitting;
use crate::linalg::vecops::{from_i64, unit};
use crate::linalg::{Int, IntMatrix};
use crate::random::{
    random_free_ses, random_torsion_complex, random_torsion_symbol, seeded, ComplexParams, SeededRng,
};

fn int(x: i64) -> Int {
    Int::from(x)
}

#[test]
fn interchange_on_moore_square() {
    let c = moore(2, 1).into_fp();
    let fp = FlipPair::new(&c, &c).unwrap();
    let t = &fp.t;
    // degree 3: e₁⊗f₂, e₂⊗f₁ in that order on both sides
    assert_eq!(t.matrix(3), IntMatrix::from_rows(&[[0, 1], [1, 0]]));
    assert_eq!(t.matrix(2), IntMatrix::from_rows(&[[-1]]));
    let back = interchange(fp.backward.tensor(), fp.forward.tensor()).unwrap();
    assert!(t.then(&back).equals(&ChainMap::identity(&fp.forward.product().clone())));
}

#[test]
fn flip_on_moore_square() {
    let c = moore(2, 1).into_fp();
    let fp = FlipPair::new(&c, &c).unwrap();
    let s = KunnethSplitting::weak(&c, &c);
    let one = from_i64(&[1]);
    let rep = fp.flip_check(&s, 1, &one, &int(2), 1, &one).unwrap();
    assert!(rep.holds());
    assert!(!rep.group.is_zero(&rep.lhs));
    let zero = from_i64(&[0]);
    let rep = fp.flip_check(&s, 1, &zero, &int(2), 1, &one).unwrap();
    assert!(rep.group.is_zero(&rep.lhs) && rep.group.is_zero(&rep.rhs));
    for n in 0..=4 {
        assert!(fp.diagram(&s, n).unwrap());
    }
}

#[test]
fn flip_with_free_homology_factor() {
    let c = sphere(2).into_fp();
    let d = moore(3, 1).into_fp();
    let fp = FlipPair::new(&c, &d).unwrap();
    let s = KunnethSplitting::weak(&c, &d);
    for n in 0..=5 {
        assert!(fp.forward.tor_pairs(n).iter().all(|&(i, j)| fp.forward.tor(i, j).group().is_trivial()));
        assert!(fp.diagram(&s, n).unwrap());
    }
}

fn random_pair(rng: &mut SeededRng) -> (FpChainComplex, FpChainComplex) {
    let p = ComplexParams::new(3, 2, 6);
    (random_torsion_complex(rng, &p), random_torsion_complex(rng, &p))
}

#[test]
fn flip_on_random_pairs() {
    let mut rng = seeded(71);
    for _ in 0..15 {
        let (c, d) = random_pair(&mut rng);
        let fp = FlipPair::new(&c, &d).unwrap();
        let ws = weak_splitting(&c).perturbed(&mut rng, 2);
        let wd = weak_splitting(&d).perturbed(&mut rng, 2);
        let s = if rng.gen_bool(0.5) {
            KunnethSplitting::Weak(ws, wd)
        } else {
            let fc = crate::complex::FreeChainComplex::from_fp(c.clone()).unwrap();
            let fd = crate::complex::FreeChainComplex::from_fp(d.clone()).unwrap();
            KunnethSplitting::Boundary(boundary_splitting(&fc).perturbed(&mut rng, 2), boundary_splitting(&fd))
        };
        let (i, a, r, j, b) = random_torsion_symbol(&mut rng, &c, &d).unwrap();
        assert!(fp.flip_check(&s, i, &a, &r, j, &b).unwrap().holds());
        let n = rng.gen_range(0..=5);
        assert!(fp.diagram(&s, n).unwrap());
    }
}

#[test]
fn flip_on_fp_pair() {
    let c = mod_reduction(&moore(4, 1), &int(2)).unwrap();
    let d = moore(2, 0).into_fp();
    let fp = FlipPair::new(&c, &d).unwrap();
    let s = KunnethSplitting::weak(&c, &d);
    for n in 0..=4 {
        assert!(fp.diagram(&s, n).unwrap());
    }
}

fn times_two(m: i64, k: i64) -> ShortExactSeq {
    reduction_sequence(moore(m, k).as_fp(), &int(2)).unwrap()
}

#[test]
fn connecting_on_times_two() {
    let ses = times_two(2, 1);
    let d = ses.connecting(2);
    // H₂(M/2) = ℤ/2 on ē₂, H₁(M) = ℤ/2 on g
    assert_eq!(d.apply(&from_i64(&[1])), from_i64(&[1]));
    let beta = crate::kunneth::Bockstein::new(ses.sub(), &int(2)).unwrap();
    for n in 0..=3 {
        assert!(ses.connecting(n).equals(&beta.morphism(n)));
    }
    ses.long_exact_check(0..=3).unwrap();
}

#[test]
fn connecting_of_split_sequence_vanishes() {
    let ses = ShortExactSeq::split(moore(2, 1).as_fp(), rp(4).as_fp());
    for n in 0..=5 {
        assert!(ses.connecting(n).is_zero());
    }
}

#[test]
fn random_sequences_have_long_exact_homology() {
    let mut rng = seeded(81);
    for _ in 0..20 {
        let (a, c) = random_pair(&mut rng);
        let ses = random_free_ses(&mut rng, &a, &c, 2);
        ses.long_exact_check(-1..=5).unwrap();
        let w = WeakExactSeq::from_ses(&ses).unwrap();
        w.check().unwrap();
        let alt = ses_free_approximation_from(
            &ses,
            FreeApproximation::from_weak(&weak_splitting(ses.quotient()).perturbed(&mut rng, 2)),
        )
        .unwrap();
        let w2 = WeakExactSeq::new(ses.f.clone(), ses.g.clone(), alt).unwrap();
        for n in 0..=5 {
            assert!(w.connecting(n).equals(&ses.connecting(n)));
            assert!(w2.connecting(n).equals(&ses.connecting(n)));
        }
        for r in [2, 3, 4] {
            for n in 0..=5 {
                assert!(bockstein_anticommutes(&ses, &int(r), n).unwrap());
            }
        }
    }
}

#[test]
fn tensoring_weak_exact_sequences() {
    let ses = times_two(4, 1);
    let w = WeakExactSeq::from_ses(&ses).unwrap();
    for side in [Side::Left, Side::Right] {
        let p = tensor_weak_exact(&w, point().as_fp(), side).unwrap();
        for n in 0..=3 {
            let (x, y) = (p.connecting(n), w.connecting(n));
            assert_eq!(x.source().describe(), y.source().describe());
            assert_eq!(x.target().describe(), y.target().describe());
            assert_eq!(x.is_zero(), y.is_zero());
        }
        let m = tensor_weak_exact(&w, moore(2, 1).as_fp(), side).unwrap();
        m.check().unwrap();
        // tensoring with a free complex keeps exactness degreewise
        ShortExactSeq::new(m.f.clone(), m.g.clone()).unwrap();
    }
}

#[test]
fn boundary_theorems_on_times_two_family() {
    let e = moore(2, 1).into_fp();
    for (m, k) in [(2, 1), (4, 1), (2, 0), (8, 2)] {
        let w = WeakExactSeq::from_ses(&times_two(m, k)).unwrap();
        for side in [Side::Left, Side::Right] {
            let bk = BoundaryKunneth::new(&w, &e, side).unwrap();
            let c = w.quotient();
            for i in c.degrees() {
                let hc = c.homology(i).group.clone();
                for g in 0..hc.gens() {
                    for r in [2, 4] {
                        let x = unit(hc.gens(), g);
                        if hc.is_torsion_element(&x, &int(r)) {
                            assert!(bk.tor_check(i, &x, &int(r), 1, &from_i64(&[1])).unwrap(), "m={m} k={k} i={i} r={r} {side:?}");
                        }
                    }
                }
            }
            for n in 0..=5 {
                assert!(bk.diagram(n).unwrap(), "m={m} k={k} n={n} {side:?}");
            }
        }
    }
}

#[test]
fn boundary_theorems_on_random_sequences() {
    let mut rng = seeded(91);
    for _ in 0..10 {
        let (a, c) = random_pair(&mut rng);
        let e = random_torsion_complex(&mut rng, &ComplexParams::new(2, 2, 6));
        let ses = random_free_ses(&mut rng, &a, &c, 2);
        let w = WeakExactSeq::from_ses(&ses).unwrap();
        for side in [Side::Left, Side::Right] {
            let bk = BoundaryKunneth::new(&w, &e, side).unwrap();
            let (i, x, r, j, y) = random_torsion_symbol(&mut rng, ses.quotient(), &e).unwrap();
            assert!(bk.tor_check(i, &x, &r, j, &y).unwrap(), "{side:?}");
            for n in 0..=6 {
                assert!(bk.diagram(n).unwrap(), "n={n} {side:?}");
            }
        }
    }
}
