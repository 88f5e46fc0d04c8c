use std::cell::RefCell;
use std::collections::HashMap;

use rand::Rng;

use super::case::{show, CaseInput, Checker};
use super::Suite;
use crate::abelian::{tor_order_oracle, verify_relations_with, verify_tor_relations, FpAbGroup, TorProduct};
use crate::complex::builtin::moore;
use crate::complex::{
    boundary_splitting, dold_check, free_approximation, mod_reduction, ses_free_approximation,
    ses_free_approximation_from, weak_splitting, ChainMap, FpChainComplex, FreeApproximation, FreeChainComplex,
    ShortExactSeq, WeakSplitting,
};
use crate::error::Result;
use crate::exactness::{
    bockstein_anticommutes, interchange, reduction_sequence, BoundaryKunneth, FlipPair, Side, WeakExactSeq,
};
use crate::kunneth::{Bockstein, CompatibleFamily, KunnethPair, KunnethSplitting};
use crate::linalg::{smith_normal_form, vecops, Int, IntMatrix};
use crate::naturality::{
    cosets_natural_check, deviation_check, homotopy_transport, theta_composition_holds, WeakSplitChainMap,
};
use crate::random::{
    random_chain_map, random_free_complex, random_free_ses, random_graph_map, random_homotopy, random_matrix,
    random_tor_acyclic_pair, random_torsion_complex, random_torsion_symbol, ComplexParams, FpParams, SeededRng,
};

pub static SUITES: &[Suite] = &[
    Suite {
        name: "splitting",
        about: "mu∘lambda = id on every Tor generator of random free pairs",
        default_cases: 200,
        generate: gen_free_pair,
        check: check_splitting,
    },
    Suite {
        name: "relations",
        about: "symbol relations for Tor(Z/m, Z/n), m, n <= 12, r <= 24, in Tor and through lambda",
        default_cases: 144,
        generate: gen_cyclic_pair,
        check: check_relations,
    },
    Suite {
        name: "cosets",
        about: "lambda cosets are independent of the splitting and natural under chain maps",
        default_cases: 100,
        generate: gen_graph_pair,
        check: check_cosets,
    },
    Suite {
        name: "bockstein",
        about: "Bockstein form of lambda, compatible families, kappa in the coset, kappa rescaling",
        default_cases: 52,
        generate: gen_torsion_free_pair,
        check: check_bockstein,
    },
    Suite {
        name: "deviation",
        about: "deviation formula, recompletion, composition and homotopy invariance of Theta",
        default_cases: 100,
        generate: gen_quadruple,
        check: check_deviation,
    },
    Suite {
        name: "flip",
        about: "interchange map against lambda and the Kunneth sequences",
        default_cases: 100,
        generate: gen_torsion_pair,
        check: check_flip,
    },
    Suite {
        name: "boundary",
        about: "connecting maps against cross products and lambda cosets, on both sides",
        default_cases: 58,
        generate: gen_ses,
        check: check_boundary,
    },
    Suite {
        name: "approximation",
        about: "free approximations, approximations of short exact sequences, tensor approximations",
        default_cases: 100,
        generate: gen_approximation,
        check: check_approximation,
    },
    Suite {
        name: "oracles",
        about: "Smith invariants vs minors, Tor order vs gcd formula, exactness of the Kunneth sequence",
        default_cases: 100,
        generate: gen_oracles,
        check: check_oracles,
    },
];

fn int(x: i64) -> Int {
    Int::from(x)
}

fn torsion_params() -> ComplexParams {
    ComplexParams::new(3, 2, 6)
}

fn random_split(rng: &mut SeededRng, c: &FpChainComplex) -> WeakSplitting {
    let ws = weak_splitting(c);
    if rng.gen_bool(0.5) {
        ws.perturbed(rng, 2)
    } else {
        ws
    }
}

fn free(c: &FpChainComplex) -> Result<FreeChainComplex> {
    FreeChainComplex::from_fp(c.clone())
}

/// Boundary splittings when both sides are free, weak ones otherwise; both perturbed.
fn random_kunneth_splitting(rng: &mut SeededRng, c: &FpChainComplex, d: &FpChainComplex) -> KunnethSplitting {
    if c.is_free() && d.is_free() && rng.gen_bool(0.5) {
        let fc = free(c).expect("free");
        let fd = free(d).expect("free");
        KunnethSplitting::Boundary(boundary_splitting(&fc).perturbed(rng, 3), boundary_splitting(&fd).perturbed(rng, 3))
    } else {
        KunnethSplitting::Weak(weak_splitting(c).perturbed(rng, 2), weak_splitting(d).perturbed(rng, 2))
    }
}

fn pair2(input: &CaseInput) -> Result<(FpChainComplex, FpChainComplex)> {
    let cs = input.load_complexes()?;
    Ok((cs[0].clone(), cs[1].clone()))
}

fn has_tor(c: &FpChainComplex, d: &FpChainComplex) -> bool {
    c.degrees().any(|i| {
        let hi = c.homology(i).group.clone();
        d.degrees().any(|j| !TorProduct::new(&hi, &d.homology(j).group).group().is_trivial())
    })
}

/// Most small random pairs have no Tor at all, so draw until one does.
fn gen_free_pair(rng: &mut SeededRng, _: usize) -> CaseInput {
    let p = ComplexParams::new(5, 4, 6);
    let draw = |rng: &mut SeededRng| (random_free_complex(rng, &p), random_free_complex(rng, &p));
    let (mut c, mut d) = draw(rng);
    for _ in 0..200 {
        if has_tor(c.as_fp(), d.as_fp()) {
            break;
        }
        (c, d) = draw(rng);
    }
    CaseInput::new().complex("C", c.as_fp()).complex("D", d.as_fp())
}

fn check_splitting(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let (c, d) = pair2(input)?;
    let mut rng = input.rng();
    let p = KunnethPair::new(&c, &d)?;
    let s = random_kunneth_splitting(&mut rng, &c, &d);
    for n in p.product().degrees() {
        let pairs = p.tor_pairs(n);
        for &(i, j) in &pairs {
            let tor = p.tor(i, j);
            for t in tor.symbols() {
                let x = p.lambda(&s, i, &t.a, &t.r, j, &t.b)?;
                let ctx = || format!("<{}, {}, {}> at ({i}, {j})", show(&t.a), t.r, show(&t.b));
                for &(k, l) in &pairs {
                    let m = p.mu(k, l, &x);
                    let g = p.tor(k, l);
                    if (k, l) == (i, j) {
                        let want = tor.reduce(&t.a, &t.r, &t.b)?;
                        ck.equal("mu_lambda_identity", g.group(), &m, &want, ctx);
                    } else {
                        let z = vecops::zeros(m.len());
                        ck.equal("other_components_vanish", g.group(), &m, &z, || format!("{} seen at ({k}, {l})", ctx()));
                    }
                }
            }
        }
    }
    ck.pass("pair_built");
    Ok(())
}

fn gen_cyclic_pair(_: &mut SeededRng, index: usize) -> CaseInput {
    let m = (index / 12 % 12) as i64 + 1;
    let n = (index % 12) as i64 + 1;
    CaseInput::new()
        .complex("C", moore(m, 1).as_fp())
        .complex("D", moore(n, 1).as_fp())
        .params(&[m, n])
}

fn check_relations(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let (m, n) = (input.param(0)?, input.param(1)?);
    let (a, b) = (FpAbGroup::cyclic(m), FpAbGroup::cyclic(n));
    let rep = verify_tor_relations(&a, &b, 24, usize::MAX);
    ck.flag("group_level", rep.passed(), || format!("Z/{m} x Z/{n}: {:?}", rep.failures.first()));

    let (c, d) = pair2(input)?;
    let p = KunnethPair::new(&c, &d)?;
    let s = KunnethSplitting::weak(&c, &d);
    let target = p.product().homology(3).group.clone();
    let (ha, hb) = (c.homology(1).group.clone(), d.homology(1).group.clone());
    let memo: RefCell<HashMap<(Vec<Int>, Int, Vec<Int>), Option<Vec<Int>>>> = RefCell::new(HashMap::new());
    let eval = |x: &[Int], r: &Int, y: &[Int]| {
        let key = (ha.normal_form(x), r.clone(), hb.normal_form(y));
        if let Some(v) = memo.borrow().get(&key) {
            return v.clone();
        }
        let v = p.lambda(&s, 1, x, r, 1, y).ok();
        memo.borrow_mut().insert(key, v.clone());
        v
    };
    let rep = verify_relations_with(&ha, &hb, 24, usize::MAX, eval, &target);
    ck.flag("homology_level", rep.passed(), || format!("moore({m},1) x moore({n},1): {:?}", rep.failures.first()));
    Ok(())
}

fn gen_graph_pair(rng: &mut SeededRng, _: usize) -> CaseInput {
    let c = random_torsion_complex(rng, &torsion_params());
    let d = random_torsion_complex(rng, &torsion_params());
    let f = random_graph_map(rng, &c, 3);
    let g = random_graph_map(rng, &d, 3);
    CaseInput::new()
        .complex("C", &c)
        .complex("D", &d)
        .complex("C'", f.target())
        .complex("D'", g.target())
        .map(0, 2, &f)
        .map(1, 3, &g)
}

fn complete(rng: &mut SeededRng, f: &ChainMap) -> Result<WeakSplitChainMap> {
    let sa = random_split(rng, f.source());
    let sb = random_split(rng, f.target());
    Ok(WeakSplitChainMap::complete(f, &sa, &sb)?.recomplete(rng, 2))
}

fn check_cosets(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let cs = input.load_complexes()?;
    let maps = input.load_maps(&cs)?;
    let (c, d) = (&cs[0], &cs[1]);
    let mut rng = input.rng();
    let p = KunnethPair::new(c, d)?;
    let Some((i, a, r, j, b)) = random_torsion_symbol(&mut rng, c, d) else {
        return Ok(());
    };
    let ctx = || format!("<{}, {r}, {}> at ({i}, {j})", show(&a), show(&b));
    let s1 = KunnethSplitting::Boundary(
        boundary_splitting(&free(c)?).perturbed(&mut rng, 3),
        boundary_splitting(&free(d)?).perturbed(&mut rng, 3),
    );
    let s2 = KunnethSplitting::Weak(weak_splitting(c).perturbed(&mut rng, 3), weak_splitting(d).perturbed(&mut rng, 3));
    let c1 = p.lambda_coset(&s1, i, &a, &r, j, &b)?;
    let c2 = p.lambda_coset(&s2, i, &a, &r, j, &b)?;
    let diff = vecops::sub(&c1.representative, &c2.representative);
    ck.flag("difference_in_indeterminacy", c1.subgroup_contains(&diff), || {
        format!("{}: {} vs {}", ctx(), show(&c1.representative), show(&c2.representative))
    });
    ck.flag("same_coset", c1.same_as(&c2), ctx);

    let mf = complete(&mut rng, &maps[0])?;
    let mg = complete(&mut rng, &maps[1])?;
    let tgt = KunnethPair::new(&cs[2], &cs[3])?;
    let ok = cosets_natural_check(&p, &tgt, &mf, &mg, i, &a, &r, j, &b)?;
    ck.flag("natural", ok, ctx);
    Ok(())
}

fn gen_torsion_free_pair(rng: &mut SeededRng, index: usize) -> CaseInput {
    let (c, d) = match index {
        0 => (moore(4, 1).into_fp(), moore(6, 1).into_fp()),
        1 => (moore(6, 1).into_fp(), moore(4, 1).into_fp()),
        _ => (
            random_torsion_complex(rng, &torsion_params()),
            random_torsion_complex(rng, &torsion_params()),
        ),
    };
    CaseInput::new().complex("C", &c).complex("D", &d)
}

const RS: [i64; 4] = [2, 3, 4, 6];

fn check_bockstein(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let (c, d) = pair2(input)?;
    let mut rng = input.rng();
    let (wc, wd) = (random_split(&mut rng, &c), random_split(&mut rng, &d));
    for (x, w) in [(&c, &wc), (&d, &wd)] {
        for n in x.degrees() {
            let fam = CompatibleFamily::new(w, n)?;
            for r1 in RS {
                for r2 in RS {
                    let res = fam.verify(&int(r1), &int(r2));
                    ck.ok("compatible_family", res, || format!("degree {n}, r1 = {r1}, r2 = {r2}"));
                }
            }
        }
    }
    let p = KunnethPair::new(&c, &d)?;
    let s = KunnethSplitting::Weak(wc.clone(), wd.clone());
    for n in p.product().degrees() {
        for (i, j) in p.tor_pairs(n) {
            let tor = p.tor(i, j);
            let h = p.product().homology(n).group.clone();
            let fc = CompatibleFamily::new(&wc, i)?;
            let fd = CompatibleFamily::new(&wd, j)?;
            for t in tor.symbols() {
                let ctx = || format!("<{}, {}, {}> at ({i}, {j})", show(&t.a), t.r, show(&t.b));
                let lam = p.lambda(&s, i, &t.a, &t.r, j, &t.b)?;
                let bf = p.bockstein_form(&s, i, &t.a, &t.r, j, &t.b)?;
                ck.equal("bockstein_form", &h, &bf, &lam, ctx);
                let kappa = p.kappa_family(&fc, &fd, &t.a, &t.r, &t.b)?;
                let coset = p.lambda_coset(&s, i, &t.a, &t.r, j, &t.b)?;
                ck.flag("kappa_in_coset", coset.contains(&kappa), ctx);
            }
            // ⟨a, r1 r2, b⟩ against ⟨r1 a, r2, b⟩ on canonical torsion generators
            let (ha, hb) = (c.homology(i).group.clone(), d.homology(j).group.clone());
            for (k, dk) in ha.torsion_orders().iter().enumerate() {
                for (l, el) in hb.torsion_orders().iter().enumerate() {
                    let (a, b) = (ha.canonical_generator(k), hb.canonical_generator(l));
                    let big = num_integer::Integer::lcm(dk, el);
                    let top: i64 = (&big).try_into().unwrap_or(0);
                    for r1 in 2..=top {
                        let r2 = &big / r1;
                        if &big % r1 != int(0) || !hb.is_torsion_element(&b, &r2) {
                            continue;
                        }
                        let (x, y) = p.kappa_rescaling(&fc, &fd, &a, &int(r1), &r2, &b)?;
                        ck.equal("kappa_rescaling", &h, &x, &y, || {
                            format!("{} with r = {big}, r1 = {r1} at ({i}, {j})", show(&a))
                        });
                    }
                }
            }
        }
    }
    ck.pass("pair_built");
    Ok(())
}

fn gen_quadruple(rng: &mut SeededRng, _: usize) -> CaseInput {
    let a = random_torsion_complex(rng, &torsion_params());
    let b = random_torsion_complex(rng, &torsion_params());
    let f = random_graph_map(rng, &a, 3);
    let g = random_graph_map(rng, &b, 3);
    let e = random_torsion_complex(rng, &torsion_params());
    let h = random_chain_map(rng, f.target(), &e, 2);
    CaseInput::new()
        .complex("A", &a)
        .complex("B", &b)
        .complex("A'", f.target())
        .complex("B'", g.target())
        .complex("E", &e)
        .map(0, 2, &f)
        .map(1, 3, &g)
        .map(2, 4, &h)
}

fn check_deviation(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let cs = input.load_complexes()?;
    let maps = input.load_maps(&cs)?;
    let mut rng = input.rng();
    let mf = complete(&mut rng, &maps[0])?;
    let mg = complete(&mut rng, &maps[1])?;
    let src = KunnethPair::new(&cs[0], &cs[1])?;
    let tgt = KunnethPair::new(&cs[2], &cs[3])?;
    if let Some((i, a, r, j, b)) = random_torsion_symbol(&mut rng, &cs[0], &cs[1]) {
        let rep = deviation_check(&src, &tgt, &mf, &mg, i, &a, &r, j, &b)?;
        let ctx = || format!("<{}, {r}, {}> at ({i}, {j})", show(&a), show(&b));
        let rhs = rep.rhs_with(&crate::kunneth::epsilon(i));
        ck.equal("deviation_formula", &rep.group, &rep.lhs, &rhs, ctx);
        ck.info("deviation_formula_as_stated", rep.holds_as_stated(), ctx);
    }

    let m2 = mf.recomplete(&mut rng, 3);
    ck.ok("recompletion_valid", m2.check(), String::new);
    let a = &cs[0];
    for n in a.degrees() {
        for r in [2, 4, 6] {
            let same = mf.theta(&int(r), n)?.equals(&m2.theta(&int(r), n)?);
            ck.flag("recompletion_invariance", same, || format!("degree {n}, r = {r}"));
        }
    }

    let se = random_split(&mut rng, &cs[4]);
    let mh = WeakSplitChainMap::complete(&maps[2], &mf.target, &se)?;
    for n in a.degrees() {
        for r in [2, 3, 4] {
            let ok = theta_composition_holds(&mf, &mh, &int(r), n)?;
            ck.flag("composition", ok, || format!("degree {n}, r = {r}"));
        }
    }

    let b2 = &cs[2];
    let d = random_homotopy(&mut rng, a, b2, 2);
    let dm = |n: i64| {
        if n < a.lo() || n > a.hi() {
            IntMatrix::zeros(b2.gens(n + 1), a.gens(n))
        } else {
            d[(n - a.lo()) as usize].clone()
        }
    };
    let g = ChainMap::from_fn(a, b2, |n| {
        mf.map.matrix(n).add(&b2.boundary(n + 1).mul(&dm(n))).add(&dm(n - 1).mul(&a.boundary(n)))
    })?;
    let mg2 = homotopy_transport(&mf, &d, &g)?;
    ck.ok("homotopy_transport_valid", mg2.check(), String::new);
    for n in a.degrees() {
        for r in [2, 4, 6] {
            let same = mf.theta(&int(r), n)?.equals(&mg2.theta(&int(r), n)?);
            ck.flag("homotopy_invariance", same, || format!("degree {n}, r = {r}"));
        }
    }
    Ok(())
}

fn gen_torsion_pair(rng: &mut SeededRng, _: usize) -> CaseInput {
    let c = random_torsion_complex(rng, &torsion_params());
    let d = random_torsion_complex(rng, &torsion_params());
    CaseInput::new().complex("C", &c).complex("D", &d)
}

fn check_flip(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let (c, d) = pair2(input)?;
    let mut rng = input.rng();
    let fp = FlipPair::new(&c, &d)?;
    let back = interchange(fp.backward.tensor(), fp.forward.tensor())?;
    let id = ChainMap::identity(fp.forward.product());
    ck.flag("interchange_involution", fp.t.then(&back).equals(&id), String::new);
    let s = random_kunneth_splitting(&mut rng, &c, &d);
    if let Some((i, a, r, j, b)) = random_torsion_symbol(&mut rng, &c, &d) {
        let rep = fp.flip_check(&s, i, &a, &r, j, &b)?;
        let sign = if (i * j).rem_euclid(2) == 0 { int(-1) } else { int(1) };
        let rhs = vecops::scale(&rep.rhs, &sign);
        ck.equal("flip_formula", &rep.group, &rep.lhs, &rhs, || {
            format!("<{}, {r}, {}> at ({i}, {j})", show(&a), show(&b))
        });
    }
    for n in fp.forward.product().degrees() {
        let ok = fp.diagram(&s, n)?;
        ck.flag("flip_diagram", ok, || format!("degree {n}"));
    }
    Ok(())
}

/// The reduction-mod-2 family: `(m, k)` for `moore(m, k)`.
const FAMILY: [(i64, i64); 8] = [(2, 0), (2, 1), (2, 2), (4, 1), (6, 1), (8, 1), (4, 2), (12, 1)];

fn gen_ses(rng: &mut SeededRng, index: usize) -> CaseInput {
    if let Some(&(m, k)) = FAMILY.get(index) {
        return CaseInput::new()
            .complex("A", moore(m, k).as_fp())
            .complex("E", moore(2, 1).as_fp())
            .params(&[m, k]);
    }
    let a = random_torsion_complex(rng, &torsion_params());
    let c = random_torsion_complex(rng, &torsion_params());
    let e = random_torsion_complex(rng, &ComplexParams::new(2, 2, 6));
    let ses = random_free_ses(rng, &a, &c, 2);
    CaseInput::new()
        .complex("A", &a)
        .complex("B", ses.middle())
        .complex("C", &c)
        .complex("E", &e)
        .map(0, 1, &ses.f)
        .map(1, 2, &ses.g)
}

fn check_boundary(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let cs = input.load_complexes()?;
    let mut rng = input.rng();
    let family = input.maps.is_empty();
    let (ses, e) = if family {
        let ses = reduction_sequence(&cs[0], &int(2))?;
        let beta = Bockstein::new(&cs[0], &int(2))?;
        for n in ses.quotient().degrees() {
            let same = ses.connecting(n).equals(&beta.morphism(n));
            ck.flag("connecting_is_bockstein", same, || format!("degree {n}"));
        }
        (ses, cs[1].clone())
    } else {
        let maps = input.load_maps(&cs)?;
        (ShortExactSeq::new(maps[0].clone(), maps[1].clone())?, cs[3].clone())
    };
    let (lo, hi) = (ses.middle().lo(), ses.middle().hi());
    ck.ok("long_exact", ses.long_exact_check(lo - 1..=hi + 1), String::new);
    // reduction mod r stays exact only for degreewise split sequences
    let split = ses.quotient().is_free();
    for r in [2, 3].into_iter().filter(|_| split) {
        for n in lo..=hi + 1 {
            let ok = bockstein_anticommutes(&ses, &int(r), n)?;
            ck.flag("bockstein_anticommutes", ok, || format!("degree {n}, r = {r}"));
        }
    }
    let w = WeakExactSeq::from_ses(&ses)?;
    let alt = ses_free_approximation_from(
        &ses,
        FreeApproximation::from_weak(&weak_splitting(ses.quotient()).perturbed(&mut rng, 2)),
    )?;
    let w2 = WeakExactSeq::new(ses.f.clone(), ses.g.clone(), alt)?;
    for n in lo..=hi + 1 {
        let honest = ses.connecting(n);
        let same = w.connecting(n).equals(&honest) && w2.connecting(n).equals(&honest);
        ck.flag("witness_independence", same, || format!("degree {n}"));
    }

    let c = ses.quotient();
    for side in [Side::Left, Side::Right] {
        let tag = match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        let bk = BoundaryKunneth::new(&w, &e, side)?;
        let mut symbols = Vec::new();
        if family {
            for i in c.degrees() {
                let hc = c.homology(i).group.clone();
                for g in 0..hc.gens() {
                    for r in [2, 4] {
                        let x = vecops::unit(hc.gens(), g);
                        if hc.is_torsion_element(&x, &int(r)) {
                            symbols.push((i, x, int(r), 1, vecops::from_i64(&[1])));
                        }
                    }
                }
            }
        }
        symbols.extend(random_torsion_symbol(&mut rng, c, &e));
        for (i, x, r, j, y) in symbols {
            let ok = bk.tor_check(i, &x, &r, j, &y)?;
            ck.flag(&format!("tor_boundary_{tag}"), ok, || {
                format!("<{}, {r}, {}> at ({i}, {j})", show(&x), show(&y))
            });
        }
        let top = c.hi() + e.hi() + 2;
        for n in c.lo() + e.lo()..=top {
            let ok = bk.diagram(n)?;
            ck.flag(&format!("diagram_{tag}"), ok, || format!("degree {n}"));
        }
    }
    Ok(())
}

fn gen_approximation(rng: &mut SeededRng, _: usize) -> CaseInput {
    let fp = FpParams {
        max_degree: 3,
        max_gens: 3,
        max_order: 12,
    };
    let x = crate::random::random_fp_complex(rng, &fp);
    let (c, d) = random_tor_acyclic_pair(rng, &FpParams { max_degree: 2, max_gens: 2, max_order: 6 });
    let a = random_free_complex(rng, &ComplexParams::new(3, 2, 4));
    let q = random_free_complex(rng, &ComplexParams::new(3, 2, 4));
    let ses = random_free_ses(rng, a.as_fp(), q.as_fp(), 2);
    let r = rng.gen_range(2..=4);
    CaseInput::new()
        .complex("X", &x)
        .complex("C", &c)
        .complex("D", &d)
        .complex("A", a.as_fp())
        .complex("B", ses.middle())
        .complex("Q", q.as_fp())
        .map(3, 4, &ses.f)
        .map(4, 5, &ses.g)
        .params(&[r])
}

fn check_approximation(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let cs = input.load_complexes()?;
    let maps = input.load_maps(&cs)?;
    for (k, x) in cs.iter().enumerate().take(3) {
        let fa = free_approximation(x);
        ck.ok("nu_quasi_iso", fa.check(), || format!("complex {k}"));
    }
    let (ac, ad) = (free_approximation(&cs[1]), free_approximation(&cs[2]));
    ck.flag("tensor_approximation_quasi_iso", dold_check(&ac, &ad), String::new);

    let ses = ShortExactSeq::new(maps[0].clone(), maps[1].clone())?;
    let r = int(input.param(0)?);
    let red = |x: &FpChainComplex| mod_reduction(x, &r);
    let (ar, br, qr) = (red(&cs[3])?, red(&cs[4])?, red(&cs[5])?);
    let fr = ChainMap::from_fn(&ar, &br, |k| ses.f.matrix(k))?;
    let gr = ChainMap::from_fn(&br, &qr, |k| ses.g.matrix(k))?;
    let reduced = ShortExactSeq::new(fr, gr)?;
    for (what, s) in [("free", &ses), ("reduced", &reduced)] {
        let res = ses_free_approximation(s).and_then(|w| w.check(s));
        ck.ok("ses_diagram", res, || what.to_string());
    }
    Ok(())
}

fn gen_oracles(rng: &mut SeededRng, _: usize) -> CaseInput {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let m = random_matrix(rng, rows, cols, 6);
    let mat = FreeChainComplex::new(0, &[rows, cols], vec![m]).expect("two-term complex");
    let group = |rng: &mut SeededRng| {
        let orders: Vec<Int> = (0..rng.gen_range(0..=3)).map(|_| int(rng.gen_range(0..=12))).collect();
        let g = FpAbGroup::from_orders(&orders);
        FpChainComplex::new(0, vec![g], vec![]).expect("one-term complex")
    };
    let (ga, gb) = (group(rng), group(rng));
    let p = ComplexParams::new(3, 3, 6);
    let c = random_free_complex(rng, &p);
    let d = random_free_complex(rng, &p);
    CaseInput::new()
        .complex("M", mat.as_fp())
        .complex("G", &ga)
        .complex("H", &gb)
        .complex("C", c.as_fp())
        .complex("D", d.as_fp())
}

fn gcd_of_minors(m: &IntMatrix, k: usize) -> Int {
    use num_integer::Integer;
    let choose = |n: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                out.push((0..n).filter(|b| mask & (1 << b) != 0).collect());
            }
        }
        out
    };
    let mut g = int(0);
    for rs in choose(m.rows()) {
        for cs in choose(m.cols()) {
            g = g.gcd(&m.select_rows(&rs).select_columns(&cs).determinant());
        }
    }
    g
}

fn check_oracles(input: &CaseInput, ck: &mut Checker) -> Result<()> {
    let cs = input.load_complexes()?;
    let m = cs[0].boundary(1);
    let inv = smith_normal_form(&m).invariant_factors();
    let mut prev = int(1);
    let mut want = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let dk = gcd_of_minors(&m, k);
        if dk == int(0) {
            break;
        }
        want.push(&dk / &prev);
        prev = dk;
    }
    ck.flag("snf_invariants", inv == want, || format!("smith {} vs minors {}", show(&inv), show(&want)));

    let (a, b) = (cs[1].group(0), cs[2].group(0));
    let tor = TorProduct::new(&a, &b);
    let order = tor.group().order();
    let oracle = tor_order_oracle(&a, &b);
    ck.flag("tor_order", order.as_ref() == Some(&oracle), || {
        format!("Tor({}, {}): {:?} vs {oracle}", a.describe(), b.describe(), order)
    });

    let p = KunnethPair::new(&cs[3], &cs[4])?;
    let mut rng = input.rng();
    let s = random_kunneth_splitting(&mut rng, &cs[3], &cs[4]);
    for n in p.product().degrees() {
        let dec = p.decomposition(n, Some(&s))?;
        ck.ok("kunneth_exactness", dec.check(), || format!("degree {n}"));
    }
    Ok(())
}
